//! Plane geometry plus the path, path-triangle and path-class data model.

mod path;
mod point;
mod triangle;

pub(crate) use path::make_path_in;
pub use path::{
    make_arc_path, make_path, minor_sweep, realize_path, resample_polyline, Edge, PathClass,
    SampledPath, VertexLookup,
};
pub use point::{
    circumcircle, clip_half_plane, collinear, convex_hull, convex_intersection, line_distance,
    orient, polygon_signed_area, segment_distance, triangle_area, Point2, VertexId, EPS,
};
pub use triangle::{
    make_path_triangle, ring_contains, strictly_inside_triangle, BaseFrame, Fiber,
    PathClassTriangle, PathTriangle, TriangleKind,
};
