//! Iterated monodromy of `f` based at `(0, 0)`.

mod chebyshev;
mod lift;
mod loops;
mod perm;
mod relations;
mod tree;

pub use chebyshev::{
    chebyshev_lift_1d, chebyshev_monodromy_perms, winding_number, ChartLift, SourceLineLifts,
};
pub use lift::{
    lift_path, monodromy_perm, monodromy_perms, AMBIGUITY_RATIO, ENDPOINT_TOLERANCE,
    MAX_SUBDIVISIONS,
};
pub use loops::{
    generator_loop, rotate, LoopPath, DEFAULT_LOOP_RADIUS, DEFAULT_LOOP_SAMPLES, DELTOID_CLEARANCE,
};
pub use perm::Permutation;
pub use relations::{
    relation_report, verify_relations, word_perm, Letter, LevelReport, MonodromyAction,
    RelationReport, Word, WordOrders, DESIGNATED_WORDS, MAX_RELATION_DEPTH,
};
pub use tree::{
    build_tree, preimages, PreimageTree, Preimages, MAX_TREE_DEPTH, NEAR_CRITICAL_SEPARATION,
    VERTEX_SEPARATION,
};
