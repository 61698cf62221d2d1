//! Lattice polygons, unit triangulations, flops, dual webs and the topological
//! vertex. All `q`-series are Laurent series in `t` with `q = t^2`.

mod gw;
mod partition;
mod polygon;
mod vertex;
mod web;

pub use gw::{
    as_integer, collapse_kahler, gv_extract, gw_partition_function, gw_partition_function_with,
    EvaluationOrder, GvTable,
};
pub use partition::Partition;
pub use polygon::{
    flop_adjacent, flop_graph, is_connected, orbifold_polygon, unit_triangulations, LatticePolygon,
    Point, Triangle, UnitTriangulation,
};
pub use vertex::{
    canonical_rotation, schur_principal, skew_schur, vertex, vertex_raw, TSeries, VertexCache,
};
pub use web::{dual_web, DualWeb, WebEdge, WebLeg, WebNode};
