//! Source-to-sink path counting on acyclic 3-regular directed multigraphs.
//!
//! Counting code is generic over the [`Count`] scalar; the aliases below fix
//! arbitrary-precision integers for callers that do not care.

pub mod block;
pub mod connectivity;
pub mod count;
mod decimal;
pub mod dag;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod generate;
pub mod hamiltonize;
pub mod report;
pub mod rho;
pub mod search;

pub use num_bigint::BigUint;

pub use connectivity::{edge_connectivity_at_least, prop1_is_3ec, CutWitness, Prop1Outcome};
pub use count::Count;
pub use dag::{
    count_paths_as, vertex_kinds, Dag, DegreeProfile, Edge, PathCountsOf, Vertex, VertexKind,
    Violation,
};
pub use block::{
    assemble_bound, brute_block, growth_factor, solve_block, BlockInstance, BlockSolution, Budget,
    GrowthReport,
};
pub use error::{Error, Result};
pub use format::{parse_graph, write_graph};
pub use hamiltonize::{hamiltonize, incoming_move, outgoing_move, tree_sort, MoveLog};
pub use report::ReportDocument;
pub use search::{check_conjecture, family_generator, find_extremal, Conjecture, ExtremalReport, Family, SearchSpec};
pub use rho::{decode, encode, is_valid, tuple_mu_as, RhoTuple, TupleClass, TupleMuOf};

/// Path counts with arbitrary precision.
pub type PathCounts = PathCountsOf<BigUint>;
/// Arc-level counts with arbitrary precision.
pub type TupleMu = TupleMuOf<BigUint>;

pub fn count_paths(dag: &Dag) -> Result<PathCounts> {
    count_paths_as(dag)
}

pub fn tuple_mu(t: &RhoTuple) -> Result<TupleMu> {
    tuple_mu_as(t)
}
