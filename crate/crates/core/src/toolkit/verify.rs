//! Seeded self-checks behind `deltoid verify`.
//!
//! Every check draws from its own ChaCha stream derived from the seed, so
//! reports are byte-identical across runs and thread counts. Reports carry
//! no timings.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    omega, proj_distance, solve_tangent_cubic, AffinePoint, ExtendedComplex, C64,
};
use crate::curve::{
    deltoid_relative_residual, dual_curve_residual, dual_line_coords, gamma_affine, gamma_proj,
    lambda_alpha, pedal_point, point_from_tangents, property_a_residual, property_b_midpoint,
    property_c_intersection, region_k, trace_hypocycloid,
};
use crate::dynamics::{
    apply_f, apply_f_proj, critical_image, fatou_functional_check, green_closed, green_iterative,
    jacobian_det, julia_verdict, psi_inversion_residual, psi_x, GREEN_ESCAPE_RADIUS,
};
use crate::error::{Error, Result};
use crate::monodromy::{
    build_tree, chebyshev_monodromy_perms, preimages, relation_report, Letter, MonodromyAction,
    PreimageTree, RelationReport,
};

/// Tree depth of the monodromy suite.
pub const MONODROMY_SUITE_DEPTH: usize = 5;

/// Deepest level compared against the one-variable oracle.
pub const ORACLE_DEPTH: usize = 3;

const SAMPLES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Curve,
    Dynamics,
    Fatou,
    Monodromy,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Curve,
        Suite::Dynamics,
        Suite::Fatou,
        Suite::Monodromy,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Curve => "curve",
            Suite::Dynamics => "dynamics",
            Suite::Fatou => "fatou",
            Suite::Monodromy => "monodromy",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// Outcome of one check: the worst value seen against its tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub worst: f64,
    pub tolerance: f64,
    pub samples: usize,
}

impl Check {
    fn bound(name: &str, worst: f64, tolerance: f64, samples: usize) -> Self {
        Self {
            name: name.into(),
            passed: worst <= tolerance,
            worst,
            tolerance,
            samples,
        }
    }

    fn flag(name: &str, passed: bool, samples: usize) -> Self {
        Self {
            name: name.into(),
            passed,
            worst: if passed { 0.0 } else { 1.0 },
            tolerance: 0.0,
            samples,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub relations: Option<RelationReport>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs `suite` with random inputs drawn from `seed`.
pub fn run_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let mut relations = None;
    if matches!(suite, Suite::Curve | Suite::All) {
        checks.extend(curve_checks(seed));
    }
    if matches!(suite, Suite::Dynamics | Suite::All) {
        checks.extend(dynamics_checks(seed));
    }
    if matches!(suite, Suite::Fatou | Suite::All) {
        checks.extend(fatou_checks(seed));
    }
    if matches!(suite, Suite::Monodromy | Suite::All) {
        let (more, report) = monodromy_checks()?;
        checks.extend(more);
        relations = Some(report);
    }
    Ok(SuiteReport {
        suite,
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
        relations,
    })
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform in the disk of radius `r`.
pub fn random_in_disk<R: Rng>(rng: &mut R, r: f64) -> C64 {
    C64::from_polar(r * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())
}

/// Modulus log-uniform in `[lo, hi]`, uniform argument.
pub fn random_in_annulus<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> C64 {
    let m = (lo.ln() + (hi.ln() - lo.ln()) * rng.gen::<f64>()).exp();
    C64::from_polar(m, TAU * rng.gen::<f64>())
}

pub fn random_unit<R: Rng>(rng: &mut R) -> C64 {
    C64::from_polar(1.0, TAU * rng.gen::<f64>())
}

fn worst<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    // NaN counts as a failure.
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

fn curve_checks(seed: u64) -> Vec<Check> {
    let mut rng = stream(seed, 1);
    let points: Vec<AffinePoint> = (0..SAMPLES)
        .map(|_| {
            AffinePoint::new(
                random_in_disk(&mut rng, 10.0),
                random_in_disk(&mut rng, 10.0),
            )
        })
        .collect();
    let params: Vec<C64> = (0..SAMPLES)
        .map(|_| random_in_annulus(&mut rng, 0.2, 5.0))
        .collect();

    let cubics: Vec<_> = points.iter().map(solve_tangent_cubic).collect();
    let round_trip = worst(points.iter().zip(&cubics).map(|(p, c)| {
        let [a, b, d] = c.roots;
        point_from_tangents(a, b, d).map_or(f64::INFINITY, |q| rel(&q, p))
    }));
    let product = worst(cubics.iter().map(|c| (c.product() - 1.0).norm()));

    let on_deltoid = worst(
        params
            .iter()
            .map(|&t| gamma_affine(t).map_or(f64::INFINITY, |p| deltoid_relative_residual(&p))),
    );
    let incidence = worst(params.iter().map(|&t| {
        let t = ExtendedComplex::Finite(t);
        dual_line_coords(t).incidence(&gamma_proj(t))
    }));
    let dual_curve = worst(params.iter().map(|&t| {
        let line = dual_line_coords(ExtendedComplex::Finite(t))
            .as_projective()
            .normalized();
        let scale =
            line.x.norm().powi(3) + line.y.norm().powi(3) + (line.x * line.y * line.z).norm();
        dual_curve_residual(&crate::algebra::DualLineCoords {
            a: line.x,
            b: line.y,
            c: line.z,
        })
        .norm()
            / scale
    }));
    let prop_a = worst(
        params
            .iter()
            .map(|&t| property_a_residual(t).unwrap_or(f64::INFINITY)),
    );
    let prop_b = worst(params.iter().map(|&t| {
        property_b_midpoint(t).map_or(f64::INFINITY, |m| {
            let want = AffinePoint::new((t * t).inv(), t * t);
            rel(&m, &want) + (m.x * m.y - 1.0).norm()
        })
    }));
    let prop_c = worst(params.iter().map(|&t| {
        property_c_intersection(t).map_or(f64::INFINITY, |p| {
            (p.x * p.y - 1.0).norm() / p.sup_norm().max(1.0).powi(2)
        })
    }));
    // Boundary points carry a double root, so roots are only good to about sqrt(eps).
    let hypocycloid = trace_hypocycloid(720).map_or(f64::INFINITY, |pts| {
        worst(
            pts.iter()
                .map(|p| solve_tangent_cubic(p).max_circle_deviation()),
        )
    });

    vec![
        Check::bound("cubic_round_trip", round_trip, 1e-8, SAMPLES),
        Check::bound("root_product", product, 1e-9, SAMPLES),
        Check::bound("deltoid_on_gamma", on_deltoid, 1e-7, SAMPLES),
        Check::bound("dual_incidence", incidence, 1e-9, SAMPLES),
        Check::bound("dual_curve", dual_curve, 1e-9, SAMPLES),
        Check::bound("property_a", prop_a, 1e-8, SAMPLES),
        Check::bound("property_b", prop_b, 1e-8, SAMPLES),
        Check::bound("property_c", prop_c, 1e-8, SAMPLES),
        Check::bound("hypocycloid_in_k", hypocycloid, 1e-6, 720),
    ]
}

fn dynamics_checks(seed: u64) -> Vec<Check> {
    let mut rng = stream(seed, 2);
    let params: Vec<C64> = (0..SAMPLES)
        .map(|_| random_in_annulus(&mut rng, 0.2, 5.0))
        .collect();
    let points: Vec<AffinePoint> = (0..SAMPLES)
        .map(|_| {
            AffinePoint::new(
                random_in_disk(&mut rng, 10.0),
                random_in_disk(&mut rng, 10.0),
            )
        })
        .collect();

    let equivariance = worst(params.iter().map(|&t| {
        let image = apply_f_proj(&gamma_proj(ExtendedComplex::Finite(t)));
        proj_distance(&image, &gamma_proj(ExtendedComplex::Finite((t * t).inv())))
    }));
    let critical = worst(
        params
            .iter()
            .map(|&t| match (critical_image(t), gamma_affine(-t)) {
                (Ok(a), Ok(b)) => rel(&a, &b),
                _ => f64::INFINITY,
            }),
    );
    // Dyadic points of xy = 1 make the Jacobian vanish exactly.
    let dyadic: Vec<f64> = (-8..=8).map(|k: i32| 2f64.powi(k)).collect();
    let jacobian_exact = dyadic
        .iter()
        .all(|&a| jacobian_det(&AffinePoint::real(a, 1.0 / a)) == C64::new(0.0, 0.0));
    let jacobian_random = worst(
        params
            .iter()
            .map(|&t| jacobian_det(&AffinePoint::new(t, t.inv())).norm()),
    );
    let w = omega();
    let iota = worst(
        points
            .iter()
            .map(|p| rel(&apply_f(&p.swap()), &apply_f(p).swap())),
    );
    let rot = worst(points.iter().map(|p| {
        let r = |q: &AffinePoint| AffinePoint::new(w * q.x, w * w * q.y);
        rel(&apply_f(&r(p)), &r(&apply_f(p)))
    }));

    let escaping: Vec<(&AffinePoint, f64)> = points
        .iter()
        .map(|p| (p, green_closed(p)))
        .filter(|&(_, g)| (1e-3..=10.0).contains(&g))
        .collect();
    let green_agree = worst(escaping.iter().map(|&(p, g)| {
        green_iterative(p, 25, GREEN_ESCAPE_RADIUS).map_or(f64::INFINITY, |gi| (gi - g).abs())
    }));
    let functional = worst(
        points
            .iter()
            .map(|p| (green_closed(&apply_f(p)) - 2.0 * green_closed(p)).abs()),
    );

    // Points of K (three unit roots), points of E² near its boundary, and
    // generic points of C².
    let mut k_samples: Vec<AffinePoint> = (0..SAMPLES / 2)
        .map(|_| {
            let (a, b) = (random_unit(&mut rng), random_unit(&mut rng));
            AffinePoint::new(a + b + (a * b).inv(), a.inv() + b.inv() + a * b)
        })
        .collect();
    k_samples
        .extend((0..SAMPLES / 4).map(|_| AffinePoint::euclidean(random_in_disk(&mut rng, 3.5))));
    k_samples.extend(points.iter().take(SAMPLES / 4));
    let trichotomy = k_samples.iter().all(|p| {
        let zero = green_closed(p) <= 1e-7;
        let circle = solve_tangent_cubic(p).max_circle_deviation() <= 1e-7;
        let inside = region_k(p, 1e-7).map(|v| v.inside).unwrap_or(false);
        zero == circle && circle == inside
    });

    let mut pedal_distance: f64 = 0.0;
    let mut pedal_quartic: f64 = 0.0;
    for alpha in [C64::new(0.0, 0.0), C64::new(3.0, 0.0), C64::new(1.0, 1.0)] {
        for k in 0..720 {
            let t = C64::from_polar(1.0, TAU * k as f64 / 720.0);
            match pedal_point(alpha, t) {
                Ok(x) => {
                    let v = julia_verdict(&lambda_alpha(alpha, x));
                    pedal_distance = worst([pedal_distance, v.distance_to_circle]);
                    pedal_quartic = worst([pedal_quartic, v.normalized_quartic_residual().abs()]);
                }
                Err(_) => pedal_distance = f64::INFINITY,
            }
        }
    }
    let e2_quartic = worst(
        (0..SAMPLES)
            .map(|_| AffinePoint::euclidean(random_in_disk(&mut rng, 10.0)))
            .map(|p| julia_verdict(&p).normalized_quartic_residual().abs()),
    );

    vec![
        Check::bound("f_gamma_equivariance", equivariance, 1e-8, SAMPLES),
        Check::bound("critical_image", critical, 1e-9, SAMPLES),
        Check::flag("jacobian_zero_dyadic", jacobian_exact, dyadic.len()),
        Check::bound("jacobian_zero_random", jacobian_random, 1e-12, SAMPLES),
        Check::bound("commutes_iota", iota, 1e-10, SAMPLES),
        Check::bound("commutes_r", rot, 1e-10, SAMPLES),
        Check::bound(
            "green_closed_vs_iterative",
            green_agree,
            1e-6,
            escaping.len(),
        ),
        Check::bound("green_functional_equation", functional, 1e-8, SAMPLES),
        Check::flag("green_zero_iff_k", trichotomy, k_samples.len()),
        Check::bound("pedal_julia_distance", pedal_distance, 1e-8, 3 * 720),
        Check::bound("pedal_julia_quartic", pedal_quartic, 1e-6, 3 * 720),
        Check::bound("e2_quartic", e2_quartic, 1e-9, SAMPLES),
    ]
}

fn fatou_checks(seed: u64) -> Vec<Check> {
    let mut rng = stream(seed, 3);
    let pairs: Vec<(C64, C64)> = (0..SAMPLES)
        .map(|_| {
            (
                random_in_annulus(&mut rng, 0.1, 5.0),
                random_in_annulus(&mut rng, 0.1, 5.0),
            )
        })
        .collect();
    let residuals: Vec<_> = pairs
        .iter()
        .map(|&(u, v)| fatou_functional_check(u, v))
        .collect();
    let inversion = worst(
        pairs
            .iter()
            .map(|&(u, v)| psi_inversion_residual(u, v).unwrap_or(f64::INFINITY)),
    );
    let half = C64::new(0.5, 0.0);
    let worked = psi_x(half, half).to_affine().map_or(f64::INFINITY, |p| {
        apply_f(&p).dist(&AffinePoint::real(8.0625, 16.5))
    });
    vec![
        Check::bound(
            "psi_x_to_psi_y",
            worst(residuals.iter().map(|r| r.x_to_y)),
            1e-9,
            SAMPLES,
        ),
        Check::bound(
            "psi_y_to_psi_x",
            worst(residuals.iter().map(|r| r.y_to_x)),
            1e-9,
            SAMPLES,
        ),
        Check::bound("psi_inversion", inversion, 1e-9, SAMPLES),
        Check::bound("psi_worked_value", worked, 1e-12, 1),
    ]
}

/// Largest distance from `f` of a level-`k+1` vertex to its parent, and
/// whether every level-`k` vertex has exactly four children mapping to it.
pub fn tree_consistency(tree: &PreimageTree) -> (f64, bool) {
    let mut four_to_one = true;
    for level in 1..=tree.depth() {
        let mut hits = vec![0usize; tree.level(level - 1).len()];
        for p in tree.level(level) {
            let (i, _) = tree.nearest(level - 1, &apply_f(p));
            hits[i] += 1;
        }
        four_to_one &= hits.iter().all(|&h| h == 4);
    }
    (tree.max_parent_residual(), four_to_one)
}

fn monodromy_checks() -> Result<(Vec<Check>, RelationReport)> {
    let w = omega();
    let expected = [
        AffinePoint::ORIGIN,
        AffinePoint::real(2.0, 2.0),
        AffinePoint::new(w * 2.0, w * w * 2.0),
        AffinePoint::new(w * w * 2.0, w * 2.0),
    ];
    let found = preimages(&AffinePoint::ORIGIN)?;
    let preimage_gap = worst(expected.iter().map(|e| {
        found
            .points
            .iter()
            .map(|p| p.dist(e))
            .fold(f64::INFINITY, f64::min)
    }));

    let action = MonodromyAction::new(MONODROMY_SUITE_DEPTH)?;
    let tree = action.tree();
    let (parent_residual, four_to_one) = tree_consistency(tree);
    let report = relation_report(&action);

    let eta3 = action.letter_perm(
        Letter {
            generator: 3,
            inverse: false,
        },
        1,
    );
    let (a, _) = tree.nearest(1, &AffinePoint::ORIGIN);
    let (b, _) = tree.nearest(1, &AffinePoint::real(2.0, 2.0));
    let transposition = eta3.cycles() == vec![vec![a.min(b), a.max(b)]];

    let oracle_tree = build_tree(ORACLE_DEPTH)?;
    let mut oracle_ok = true;
    for (k, path) in action.generator_loops().iter().enumerate() {
        let predicted = chebyshev_monodromy_perms(path, &oracle_tree)?;
        for (level, p) in predicted.iter().enumerate() {
            let letter = Letter {
                generator: k as u8 + 1,
                inverse: false,
            };
            oracle_ok &= p == action.letter_perm(letter, level + 1);
        }
    }

    let leaves = tree.leaves().len();
    let checks = vec![
        Check::bound("preimages_of_origin", preimage_gap, 1e-10, 4),
        Check::bound("tree_parent_residual", parent_residual, 1e-8, leaves),
        Check::flag("tree_four_to_one", four_to_one, leaves),
        Check::flag("involutions", report.involutions_ok, leaves),
        Check::flag("inverses", report.inverses_ok, leaves),
        Check::flag("coxeter_relations", report.coxeter_ok, leaves),
        Check::flag("braid_relations", report.braid_ok, leaves),
        Check::flag("generators_distinct", report.generators_distinct, leaves),
        Check::flag("eta3_depth1_transposition", transposition, 4),
        Check::flag(
            "coxeter_order_increasing",
            report.coxeter_order_increasing,
            leaves,
        ),
        Check::flag(
            "chebyshev_oracle",
            oracle_ok,
            3 * oracle_tree.leaves().len(),
        ),
    ];
    Ok((checks, report))
}
