//! Exact segment predicates for crossing detection.

use robust::{orient2d, Coord};

fn coord(p: [f64; 2]) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

/// Sign of the orientation of `c` relative to the directed line `a -> b`,
/// computed exactly.
pub fn orientation(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> i8 {
    let det = orient2d(coord(a), coord(b), coord(c));
    if det > 0.0 {
        1
    } else if det < 0.0 {
        -1
    } else {
        0
    }
}

/// `c`, known to be collinear with `a b`, lies within their bounding box.
fn within_box(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> bool {
    c[0] >= a[0].min(b[0]) && c[0] <= a[0].max(b[0]) && c[1] >= a[1].min(b[1]) && c[1] <= a[1].max(b[1])
}

/// Whether closed segments `p1 p2` and `q1 q2` share at least one point.
/// Touching endpoints and collinear overlap count.
pub fn segments_intersect(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> bool {
    let o1 = orientation(p1, p2, q1);
    let o2 = orientation(p1, p2, q2);
    let o3 = orientation(q1, q2, p1);
    let o4 = orientation(q1, q2, p2);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && within_box(p1, p2, q1))
        || (o2 == 0 && within_box(p1, p2, q2))
        || (o3 == 0 && within_box(q1, q2, p1))
        || (o4 == 0 && within_box(q1, q2, p2))
}
