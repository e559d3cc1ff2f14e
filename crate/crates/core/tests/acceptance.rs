//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::f64::consts::TAU;
use std::process::Command;
use std::time::{Duration, Instant};

use deltoid::algebra::{omega, proj_distance, solve_tangent_cubic, DualLineCoords};
use deltoid::curve::{
    deltoid_relative_residual, dual_curve_residual, dual_line_coords, gamma_affine, gamma_proj,
    lambda_alpha, pedal_point, point_from_tangents, property_a_residual, property_b_midpoint,
    property_c_intersection, region_k,
};
use deltoid::dynamics::{
    apply_f, apply_f_proj, critical_image, fatou_functional_check, green_closed, green_iterative,
    jacobian_det, julia_verdict, psi_inversion_residual, psi_x, GREEN_ESCAPE_RADIUS,
};
use deltoid::monodromy::{
    build_tree, chebyshev_monodromy_perms, preimages, relation_report, Letter, MonodromyAction,
};
use deltoid::toolkit::tree_consistency;
use deltoid::{AffinePoint, ExtendedComplex, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(20240611);
    r.set_stream(stream);
    r
}

fn disk<R: Rng>(r: &mut R, radius: f64) -> C64 {
    C64::from_polar(radius * r.gen::<f64>().sqrt(), TAU * r.gen::<f64>())
}

fn annulus<R: Rng>(r: &mut R, lo: f64, hi: f64) -> C64 {
    let m = (lo.ln() + (hi.ln() - lo.ln()) * r.gen::<f64>()).exp();
    C64::from_polar(m, TAU * r.gen::<f64>())
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |acc, v| {
        if v.is_nan() {
            f64::INFINITY
        } else {
            acc.max(v)
        }
    })
}

fn rel(a: &AffinePoint, b: &AffinePoint) -> f64 {
    a.dist(b) / b.sup_norm().max(1.0)
}

fn finite(t: C64) -> ExtendedComplex {
    ExtendedComplex::Finite(t)
}

fn cubic_round_trip() -> Outcome {
    let mut r = rng(1);
    let points: Vec<AffinePoint> = (0..10_000)
        .map(|_| AffinePoint::new(disk(&mut r, 10.0), disk(&mut r, 10.0)))
        .collect();
    let mut trip: f64 = 0.0;
    let mut product: f64 = 0.0;
    for p in &points {
        let c = solve_tangent_cubic(p);
        let [a, b, d] = c.roots;
        trip = worst([
            trip,
            point_from_tangents(a, b, d).map_or(f64::INFINITY, |q| rel(&q, p)),
        ]);
        product = worst([product, (c.product() - 1.0).norm()]);
    }
    outcome(
        trip <= 1e-8 && product <= 1e-9,
        format!("round trip {trip:.2e} (tol 1e-8), product {product:.2e} (tol 1e-9)"),
    )
}

fn curve_identities() -> Outcome {
    let mut r = rng(2);
    let params: Vec<C64> = (0..1000).map(|_| annulus(&mut r, 0.1, 10.0)).collect();
    let on_curve = worst(
        params
            .iter()
            .map(|&t| deltoid_relative_residual(&gamma_affine(t).unwrap())),
    );
    let incidence = worst(
        params
            .iter()
            .map(|&t| dual_line_coords(finite(t)).incidence(&gamma_proj(finite(t)))),
    );
    let dual = worst(params.iter().map(|&t| {
        let l = dual_line_coords(finite(t)).as_projective().normalized();
        let scale = l.x.norm().powi(3) + l.y.norm().powi(3) + (l.x * l.y * l.z).norm();
        dual_curve_residual(&DualLineCoords {
            a: l.x,
            b: l.y,
            c: l.z,
        })
        .norm()
            / scale
    }));
    let a = worst(params.iter().map(|&t| property_a_residual(t).unwrap()));
    let b = worst(params.iter().map(|&t| {
        let m = property_b_midpoint(t).unwrap();
        rel(&m, &AffinePoint::new((t * t).inv(), t * t))
    }));
    let c = worst(params.iter().map(|&t| {
        let p = property_c_intersection(t).unwrap();
        (p.x * p.y - 1.0).norm() / p.sup_norm().max(1.0).powi(2)
    }));
    outcome(
        on_curve <= 1e-7 && incidence <= 1e-9 && dual <= 1e-9 && a.max(b).max(c) <= 1e-8,
        format!(
            "on curve {on_curve:.2e}, incidence {incidence:.2e}, dual {dual:.2e}, A {a:.2e}, B {b:.2e}, C {c:.2e}"
        ),
    )
}

fn map_identities() -> Outcome {
    let mut r = rng(3);
    let params: Vec<C64> = (0..1000).map(|_| annulus(&mut r, 0.1, 10.0)).collect();
    let equivariance = worst(params.iter().map(|&t| {
        proj_distance(
            &apply_f_proj(&gamma_proj(finite(t))),
            &gamma_proj(finite((t * t).inv())),
        )
    }));
    let critical = worst(
        params
            .iter()
            .map(|&t| rel(&critical_image(t).unwrap(), &gamma_affine(-t).unwrap())),
    );
    // xy = 1 sampled at dyadic and exactly representable points.
    let samples: Vec<AffinePoint> = (-20..=20)
        .map(|k: i32| {
            let a = 2f64.powi(k);
            AffinePoint::real(a, 1.0 / a)
        })
        .chain((0..64).map(|k| {
            let t = C64::new(2f64.powi(k % 8 - 4), 0.0) * if k % 2 == 0 { 1.0 } else { -1.0 };
            AffinePoint::new(t, t.inv())
        }))
        .collect();
    let jacobian_exact = samples
        .iter()
        .all(|p| jacobian_det(p) == C64::new(0.0, 0.0));
    let points: Vec<AffinePoint> = (0..1000)
        .map(|_| AffinePoint::new(disk(&mut r, 10.0), disk(&mut r, 10.0)))
        .collect();
    let w = omega();
    let rot = |q: &AffinePoint| AffinePoint::new(w * q.x, w * w * q.y);
    let iota = worst(
        points
            .iter()
            .map(|p| rel(&apply_f(&p.swap()), &apply_f(p).swap())),
    );
    let r_commute = worst(
        points
            .iter()
            .map(|p| rel(&apply_f(&rot(p)), &rot(&apply_f(p)))),
    );
    outcome(
        equivariance <= 1e-8 && critical <= 1e-9 && jacobian_exact && iota.max(r_commute) <= 1e-10,
        format!(
            "f(γ(t)) {equivariance:.2e}, f(t,1/t) {critical:.2e}, jacobian exact {jacobian_exact}, ι {iota:.2e}, r {r_commute:.2e}"
        ),
    )
}

fn green_function() -> Outcome {
    let mut r = rng(4);
    let mut escaping = Vec::new();
    while escaping.len() < 1000 {
        let p = AffinePoint::new(annulus(&mut r, 0.1, 1e4), annulus(&mut r, 0.1, 1e4));
        let g = green_closed(&p);
        if (1e-3..=10.0).contains(&g) {
            escaping.push((p, g));
        }
    }
    let agree = worst(
        escaping
            .iter()
            .map(|(p, g)| (green_iterative(p, 25, GREEN_ESCAPE_RADIUS).unwrap() - g).abs()),
    );
    let points: Vec<AffinePoint> = (0..10_000)
        .map(|_| AffinePoint::new(disk(&mut r, 10.0), disk(&mut r, 10.0)))
        .collect();
    let functional = worst(
        points
            .iter()
            .map(|p| (green_closed(&apply_f(p)) - 2.0 * green_closed(p)).abs()),
    );

    // Points of K, of E² around K, and generic points of C².
    let mut samples: Vec<AffinePoint> = (0..1000)
        .map(|_| {
            let a = C64::from_polar(1.0, TAU * r.gen::<f64>());
            let b = C64::from_polar(1.0, TAU * r.gen::<f64>());
            AffinePoint::new(a + b + (a * b).inv(), a.inv() + b.inv() + a * b)
        })
        .collect();
    samples.extend((0..1000).map(|_| AffinePoint::euclidean(disk(&mut r, 3.5))));
    samples.extend(points.iter().take(1000));
    let mut in_k = 0;
    let consistent = samples.iter().all(|p| {
        let zero = green_closed(p) <= 1e-7;
        let circle = solve_tangent_cubic(p).max_circle_deviation() <= 1e-7;
        let inside = region_k(p, 1e-7).unwrap().inside;
        in_k += usize::from(inside);
        zero == circle && circle == inside
    });
    outcome(
        agree <= 1e-6 && functional <= 1e-8 && consistent,
        format!(
            "closed vs iterative {agree:.2e} (tol 1e-6), G∘f − 2G {functional:.2e} (tol 1e-8), zero ⟺ roots ⟺ K {consistent} ({in_k} of {} in K)",
            samples.len()
        ),
    )
}

fn julia_pedal() -> Outcome {
    let mut distance: f64 = 0.0;
    let mut quartic: f64 = 0.0;
    for alpha in [C64::new(0.0, 0.0), C64::new(3.0, 0.0), C64::new(1.0, 1.0)] {
        for k in 0..720 {
            let t = C64::from_polar(1.0, TAU * k as f64 / 720.0);
            let v = julia_verdict(&lambda_alpha(alpha, pedal_point(alpha, t).unwrap()));
            distance = worst([distance, v.distance_to_circle]);
            quartic = worst([quartic, v.normalized_quartic_residual().abs()]);
        }
    }
    let mut r = rng(5);
    let e2 = worst((0..1000).map(|_| {
        julia_verdict(&AffinePoint::euclidean(disk(&mut r, 10.0)))
            .normalized_quartic_residual()
            .abs()
    }));
    outcome(
        distance <= 1e-8 && quartic <= 1e-6 && e2 <= 1e-9,
        format!("root distance {distance:.2e} (tol 1e-8), quartic {quartic:.2e} (tol 1e-6), E² quartic {e2:.2e} (tol 1e-9)"),
    )
}

fn fatou_identities() -> Outcome {
    let mut r = rng(6);
    let mut functional: f64 = 0.0;
    let mut inversion: f64 = 0.0;
    for _ in 0..1000 {
        let u = annulus(&mut r, 0.1, 5.0);
        let v = annulus(&mut r, 0.1, 5.0);
        functional = worst([functional, fatou_functional_check(u, v).max()]);
        inversion = worst([inversion, psi_inversion_residual(u, v).unwrap()]);
    }
    let half = C64::new(0.5, 0.0);
    let image = apply_f(&psi_x(half, half).to_affine().unwrap());
    let worked = image.dist(&AffinePoint::real(8.0625, 16.5));
    outcome(
        functional <= 1e-9 && inversion <= 1e-9 && worked <= 1e-12,
        format!(
            "f∘Ψ {functional:.2e}, inversion {inversion:.2e}, worked value {} off by {worked:.1e}",
            format_args!("({}, {})", image.x.re, image.y.re)
        ),
    )
}

fn preimage_structure() -> Outcome {
    let w = omega();
    let expected = [
        AffinePoint::ORIGIN,
        AffinePoint::real(2.0, 2.0),
        AffinePoint::new(w * 2.0, w * w * 2.0),
        AffinePoint::new(w * w * 2.0, w * 2.0),
    ];
    let found = preimages(&AffinePoint::ORIGIN).unwrap();
    let gap = worst(expected.iter().map(|e| {
        found
            .points
            .iter()
            .map(|p| p.dist(e))
            .fold(f64::INFINITY, f64::min)
    }));
    let tree = build_tree(6).unwrap();
    let (residual, four_to_one) = tree_consistency(&tree);
    outcome(
        gap <= 1e-10 && residual <= 1e-8 && four_to_one && tree.leaves().len() == 4096,
        format!(
            "preimage gap {gap:.2e}, depth-6 parent residual {residual:.2e}, 4-to-1 {four_to_one}, leaves {}",
            tree.leaves().len()
        ),
    )
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn letter(k: u8) -> Letter {
    Letter {
        generator: k,
        inverse: false,
    }
}

fn monodromy_relations() -> Outcome {
    let action = MonodromyAction::new(5).unwrap();
    let report = relation_report(&action);
    let tree = action.tree();
    let (a, _) = tree.nearest(1, &AffinePoint::ORIGIN);
    let (b, _) = tree.nearest(1, &AffinePoint::real(2.0, 2.0));
    let eta3 = action.letter_perm(letter(3), 1);
    let transposition = eta3.cycles() == vec![vec![a.min(b), a.max(b)]];
    let oracle = chebyshev_monodromy_perms(&action.generator_loops()[2], tree).unwrap();
    let oracle_agrees = oracle[0] == *eta3;
    let distinct = report.generators_distinct;
    outcome(
        report.involutions_ok
            && report.inverses_ok
            && report.coxeter_ok
            && report.braid_ok
            && distinct
            && transposition
            && oracle_agrees
            && report.coxeter_order_increasing,
        format!(
            "involutions {}, (g_j g_k)³ {}, braids {}, distinct {distinct}, η₃ at depth 1 {eta3} (oracle agrees {oracle_agrees}), orders of η₁η₂η₃ {:?}",
            report.involutions_ok, report.coxeter_ok, report.braid_ok, report.coxeter_element_orders
        ),
    )
}

fn oracle_cross_validation() -> Outcome {
    let action = MonodromyAction::new(3).unwrap();
    let mut compared = 0;
    let mut agree = true;
    for k in 1..=3u8 {
        let predicted =
            chebyshev_monodromy_perms(&action.generator_loops()[usize::from(k - 1)], action.tree())
                .unwrap();
        for (level, p) in predicted.iter().enumerate() {
            compared += 1;
            agree &= p == action.letter_perm(letter(k), level + 1);
        }
    }
    outcome(
        agree,
        format!("{compared} generator/level pairs compared, all equal {agree}"),
    )
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_deltoid"))
            .args(["verify", "--suite", "all", "--seed", "7", "--json"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(
        same && a.status.success(),
        format!(
            "{} bytes, identical {same}, exit {:?}",
            a.stdout.len(),
            a.status.code()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("cubic round trip", Duration::from_secs(5), cubic_round_trip),
        ("curve identities", Duration::from_secs(5), curve_identities),
        ("map identities", Duration::from_secs(5), map_identities),
        ("green function", Duration::from_secs(10), green_function),
        (
            "julia / pedal equivalence",
            Duration::from_secs(5),
            julia_pedal,
        ),
        ("fatou identities", Duration::from_secs(5), fatou_identities),
        (
            "preimage structure",
            Duration::from_secs(60),
            preimage_structure,
        ),
        (
            "monodromy relations",
            Duration::from_secs(300),
            monodromy_relations,
        ),
        (
            "oracle cross-validation",
            Duration::from_secs(60),
            oracle_cross_validation,
        ),
        ("determinism", Duration::from_secs(300), determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let passed = result.passed && elapsed <= *budget;
        println!(
            "criterion {:>2} {}: {name}: {} [{:.2?} of {:?}]",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            result.detail,
            elapsed,
            budget
        );
        if !passed {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
