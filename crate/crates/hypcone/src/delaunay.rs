//! Local Delaunay test, edge flips and the flip algorithm on cone surfaces.
//!
//! An edge is Delaunay when its two-triangle sinh defect is nonnegative; a
//! triangulation is Delaunay when every edge is. Flips develop exactly the
//! two incident triangles into H^2, never a global embedding.

use crate::conesurf::{ConeSurface, Slot};
use crate::hyptrig::{self, TrigError, V3};
use thiserror::Error;

/// Absolute defect tolerance: edges with defect below `-DEFECT_TOL` count as
/// non-Delaunay, edges within `DEFECT_TOL` of zero as inscribed-borderline.
pub const DEFECT_TOL: f64 = 1e-10;

/// Default cell-merging tolerance for [`decomposition`].
pub const DECOMP_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DelaunayError {
    #[error("flip rejected: edge {edge} has defect {defect} >= 0")]
    FlipRejected { edge: usize, defect: f64 },
    #[error("edge {edge} has both sides on one triangle and cannot be flipped")]
    SelfAdjacentEdge { edge: usize },
    #[error("flip of edge {edge} would create a degenerate triangle")]
    NewTriangleDegenerate { edge: usize },
    #[error("flip budget {budget} exceeded; triangulation may be pathological")]
    FlipBudgetExceeded { budget: usize },
    #[error("surface is not Delaunay: edge {edge} has defect {defect}")]
    NotDelaunay { edge: usize, defect: f64 },
    #[error(transparent)]
    Trig(#[from] TrigError),
}

/// The two-triangle defect of edge `e`: with edge length `l0` and the other
/// side lengths `l1, l2` and `l1', l2'` of the two incident triangles,
///
/// ```text
/// (sinh^2(l1/2) + sinh^2(l2/2) - sinh^2(l0/2)) / (sinh(l1/2) sinh(l2/2))
///   + (same for the primed sides)
/// ```
///
/// The triangulation is Delaunay iff this is >= 0 on every edge.
pub fn delaunay_defect(s: &ConeSurface, e: usize) -> f64 {
    let ((t1, s1), (t2, s2)) = s.edge_slots(e);
    let l0 = s.edge_length(e);
    let h0 = (l0 / 2.0).sinh();
    let term = |a: f64, b: f64| {
        let ha = (a / 2.0).sinh();
        let hb = (b / 2.0).sinh();
        (ha * ha + hb * hb - h0 * h0) / (ha * hb)
    };
    term(
        s.side_length(t1, (s1 + 1) % 3),
        s.side_length(t1, (s1 + 2) % 3),
    ) + term(
        s.side_length(t2, (s2 + 1) % 3),
        s.side_length(t2, (s2 + 2) % 3),
    )
}

pub fn all_defects(s: &ConeSurface) -> Vec<f64> {
    (0..s.num_edges()).map(|e| delaunay_defect(s, e)).collect()
}

pub fn min_defect(s: &ConeSurface) -> f64 {
    all_defects(s).into_iter().fold(f64::INFINITY, f64::min)
}

pub fn is_delaunay(s: &ConeSurface, tol: f64) -> bool {
    (0..s.num_edges()).all(|e| delaunay_defect(s, e) >= -tol)
}

/// The developed quadrilateral around edge `e`: the edge from `p` to `q`,
/// the apex `r` of the first incident triangle (y > 0) and the apex
/// `r_other` of the second (y < 0).
pub struct DevelopedQuad {
    pub p: V3,
    pub q: V3,
    pub r: V3,
    pub r_other: V3,
}

/// Develops the two triangles incident to `e` into H^2 across the edge.
pub fn develop_quad(s: &ConeSurface, e: usize) -> Result<DevelopedQuad, DelaunayError> {
    let ((t1, s1), (t2, s2)) = s.edge_slots(e);
    if t1 == t2 {
        return Err(DelaunayError::SelfAdjacentEdge { edge: e });
    }
    let l0 = s.edge_length(e);
    let qr = s.side_length(t1, (s1 + 1) % 3);
    let rp = s.side_length(t1, (s1 + 2) % 3);
    let pr2 = s.side_length(t2, (s2 + 1) % 3);
    let r2q = s.side_length(t2, (s2 + 2) % 3);

    let p = V3::h2_origin();
    let q = V3::new(l0.cosh(), l0.sinh(), 0.0);
    let place = |to_p: f64, to_q: f64, sign: f64| -> Result<V3, DelaunayError> {
        let cos_at_p = (l0.cosh() * to_p.cosh() - to_q.cosh()) / (l0.sinh() * to_p.sinh());
        let th = hyptrig::acos_clamped(cos_at_p)?;
        Ok(V3::new(
            to_p.cosh(),
            to_p.sinh() * th.cos(),
            sign * to_p.sinh() * th.sin(),
        ))
    };
    Ok(DevelopedQuad {
        p,
        q,
        r: place(rp, qr, 1.0)?,
        r_other: place(pr2, r2q, -1.0)?,
    })
}

/// Flips edge `e`, requiring a strictly negative defect (which makes the
/// developed quadrilateral strictly convex). The metric is unchanged: only
/// the triangulation moves.
pub fn flip(s: &ConeSurface, e: usize) -> Result<ConeSurface, DelaunayError> {
    let defect = delaunay_defect(s, e);
    if defect >= -DEFECT_TOL {
        return Err(DelaunayError::FlipRejected { edge: e, defect });
    }
    flip_forced(s, e)
}

/// Flips edge `e` without the defect precondition. Used to cross between
/// the Delaunay triangulations of a surface whose decomposition has
/// non-triangular cells (defect exactly zero); on a negative-defect edge it
/// is the ordinary flip. Fails when the rearranged triangles degenerate.
pub fn flip_forced(s: &ConeSurface, e: usize) -> Result<ConeSurface, DelaunayError> {
    let quad = develop_quad(s, e)?;
    let new_len = quad.r.h2_dist(&quad.r_other);
    let ((t1, s1), (t2, s2)) = s.edge_slots(e);

    let qr = s.side_length(t1, (s1 + 1) % 3);
    let rp = s.side_length(t1, (s1 + 2) % 3);
    let pr2 = s.side_length(t2, (s2 + 1) % 3);
    let r2q = s.side_length(t2, (s2 + 2) % 3);
    if !hyptrig::triangle_ok(pr2, new_len, rp) || !hyptrig::triangle_ok(qr, new_len, r2q) {
        return Err(DelaunayError::NewTriangleDegenerate { edge: e });
    }

    let p_id = s.tri(t1)[s1];
    let q_id = s.tri(t1)[(s1 + 1) % 3];
    let r_id = s.tri(t1)[(s1 + 2) % 3];
    let r2_id = s.tri(t2)[(s2 + 2) % 3];

    // Old outer slots; t1 becomes (p, r', r) and t2 becomes (q, r, r').
    let a = (t1, (s1 + 1) % 3); // q -> r
    let b = (t1, (s1 + 2) % 3); // r -> p
    let c = (t2, (s2 + 1) % 3); // p -> r'
    let d = (t2, (s2 + 2) % 3); // r' -> q
    let map = |slot: Slot| -> Slot {
        if slot == a {
            (t2, 0)
        } else if slot == b {
            (t1, 2)
        } else if slot == c {
            (t1, 0)
        } else if slot == d {
            (t2, 2)
        } else {
            slot
        }
    };

    let mut data = s.to_data();
    data.tris[t1] = [p_id, r2_id, r_id];
    data.tris[t2] = [q_id, r_id, r2_id];
    // Rebuild the records in edge-id order so every edge keeps its id and
    // `e` becomes the new diagonal.
    let mut gluings: Vec<(Slot, Slot)> = Vec::with_capacity(s.num_edges());
    let mut lengths: Vec<(Slot, f64)> = Vec::with_capacity(s.num_edges());
    for eid in 0..s.num_edges() {
        if eid == e {
            gluings.push(((t1, 1), (t2, 1)));
            lengths.push(((t1, 1), new_len));
        } else {
            let (x, y) = s.edge_slots(eid);
            gluings.push((map(x), map(y)));
            lengths.push((map(x), s.edge_length(eid)));
        }
    }
    data.gluings = gluings;
    data.lengths = lengths;
    ConeSurface::from_data(&data).map_err(|_| DelaunayError::NewTriangleDegenerate { edge: e })
}

/// Outcome of [`make_delaunay`].
#[derive(Debug, Clone)]
pub struct DelaunayRun {
    pub surface: ConeSurface,
    pub flips: usize,
}

/// Flips most-negative-first until every defect is >= `-DEFECT_TOL`.
/// The metric (cone angles, area) is unchanged. The flip budget `100 E^2`
/// converts a pathological non-terminating run into a diagnosable failure.
pub fn make_delaunay(s: &ConeSurface) -> Result<DelaunayRun, DelaunayError> {
    make_delaunay_by(s, |defects| {
        let mut best: Option<usize> = None;
        for (e, &d) in defects.iter().enumerate() {
            if d < -DEFECT_TOL && best.map_or(true, |b| d < defects[b]) {
                best = Some(e);
            }
        }
        best
    })
}

/// Flip loop with a caller-chosen selection rule among negative-defect edges;
/// the rule sees the defect vector and returns an edge index or None to stop.
pub fn make_delaunay_by(
    s: &ConeSurface,
    pick: impl Fn(&[f64]) -> Option<usize>,
) -> Result<DelaunayRun, DelaunayError> {
    let budget = 100 * s.num_edges() * s.num_edges();
    let mut cur = s.clone();
    let mut defects = all_defects(&cur);
    let mut flips = 0usize;
    while let Some(e) = pick(&defects) {
        if defects[e] >= -DEFECT_TOL {
            break;
        }
        if flips >= budget {
            return Err(DelaunayError::FlipBudgetExceeded { budget });
        }
        cur = flip(&cur, e)?;
        flips += 1;
        defects = all_defects(&cur);
    }
    Ok(DelaunayRun { surface: cur, flips })
}

/// A cell of the Delaunay decomposition: the triangles merged across
/// zero-defect edges, with the circumradius certified on a development.
#[derive(Debug, Clone)]
pub struct Cell {
    pub tris: Vec<usize>,
    pub circumradius: f64,
    /// Worst deviation of a cell vertex from the common circumradius.
    pub radius_spread: f64,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub cells: Vec<Cell>,
    /// Edges interior to cells (defect within tolerance of zero).
    pub merged_edges: Vec<usize>,
}

/// Merges triangles across edges with `|defect| <= tol` into inscribed cells
/// and certifies each cell against a development: all cell vertices must be
/// equidistant (within `10 tol`, scaled) from the circumcenter of the root
/// triangle.
pub fn decomposition(s: &ConeSurface, tol: f64) -> Result<Decomposition, DelaunayError> {
    for e in 0..s.num_edges() {
        let d = delaunay_defect(s, e);
        if d < -tol {
            return Err(DelaunayError::NotDelaunay { edge: e, defect: d });
        }
    }
    let merged: Vec<usize> = (0..s.num_edges())
        .filter(|&e| delaunay_defect(s, e).abs() <= tol)
        .collect();
    let is_merged = {
        let mut v = vec![false; s.num_edges()];
        for &e in &merged {
            v[e] = true;
        }
        v
    };

    // Union triangles across merged edges.
    let mut parent: Vec<usize> = (0..s.num_tris()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for &e in &merged {
        let ((t1, _), (t2, _)) = s.edge_slots(e);
        let (a, b) = (find(&mut parent, t1), find(&mut parent, t2));
        if a != b {
            parent[a] = b;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for t in 0..s.num_tris() {
        let r = find(&mut parent, t);
        groups.entry(r).or_default().push(t);
    }

    let mut cells = Vec::new();
    for (_, tris) in groups {
        let root = tris[0];
        // Develop the cell as a tree of triangle instances from the root,
        // crossing merged edges only, and collect all corner positions.
        let [l0, l1, l2] = s.side_lengths(root);
        let dev = hyptrig::develop_triangle(l1, l2, l0)?;
        let mut corners: Vec<V3> = dev.to_vec();
        let mut stack: Vec<(Slot, V3, V3)> = Vec::new();
        for side in 0..3 {
            stack.push(((root, side), dev[side], dev[(side + 1) % 3]));
        }
        let mut guard = 0usize;
        while let Some(((t, side), a, b)) = stack.pop() {
            guard += 1;
            if guard > 4 * s.num_tris() + 16 {
                break; // larger than any cell can be; the spread check flags it
            }
            if !is_merged[s.edge_of_slot((t, side))] {
                continue;
            }
            let (t2, s2) = s.glued((t, side));
            // In t2 the glued side runs b -> a; the apex is corner s2 + 2.
            let to_b = s.side_length(t2, (s2 + 1) % 3);
            let to_a = s.side_length(t2, (s2 + 2) % 3);
            let apex = place_apex(&b, &a, to_b, to_a)?;
            corners.push(apex);
            stack.push(((t2, (s2 + 1) % 3), b, apex));
            stack.push(((t2, (s2 + 2) % 3), apex, a));
        }
        let center = circumcenter_of(&dev[0], &dev[1], &dev[2])
            .ok_or(DelaunayError::NotDelaunay { edge: 0, defect: f64::NAN })?;
        let radius = center.h2_dist(&dev[0]);
        let mut spread: f64 = 0.0;
        for cpt in &corners {
            spread = spread.max((center.h2_dist(cpt) - radius).abs());
        }
        if spread > 10.0 * tol * radius.max(1.0) {
            return Err(DelaunayError::NotDelaunay { edge: usize::MAX, defect: spread });
        }
        cells.push(Cell { tris, circumradius: radius, radius_spread: spread });
    }
    Ok(Decomposition { cells, merged_edges: merged })
}

/// Apex of a triangle developed across the oriented segment `a -> b`,
/// placed on the clockwise side, with the given distances to `a` and `b`.
fn place_apex(a: &V3, b: &V3, to_a: f64, to_b: f64) -> Result<V3, TrigError> {
    let base = a.h2_dist(b);
    let cos_at_a = (base.cosh() * to_a.cosh() - to_b.cosh()) / (base.sinh() * to_a.sinh());
    let th = hyptrig::acos_clamped(cos_at_a)?;
    let u = a.h2_tangent_toward(b);
    let dir = a.h2_rotate_tangent(&u, -th);
    Ok(a.h2_exp(&dir, to_a))
}

/// Circumcenter of three developed points, if the circumscribed curve is a
/// metric circle.
fn circumcenter_of(v0: &V3, v1: &V3, v2: &V3) -> Option<V3> {
    let d1 = v1.sub(v0);
    let d2 = v2.sub(v0);
    let r1 = V3::new(-d1.t, d1.x, d1.y);
    let r2 = V3::new(-d2.t, d2.x, d2.y);
    let c = r1.cross(&r2);
    if c.mink(&c) >= 0.0 {
        return None;
    }
    Some(if c.t > 0.0 {
        c.h2_normalize()
    } else {
        c.scale(-1.0).h2_normalize()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conesurf::one_vertex_torus;
    use std::f64::consts::PI;

    /// Chord length between two points at angles th1, th2 on a metric circle
    /// of radius r (oracle for inscribed configurations).
    fn chord(r: f64, th1: f64, th2: f64) -> f64 {
        (r.cosh().powi(2) - r.sinh().powi(2) * (th1 - th2).cos()).acosh()
    }

    /// Torus whose quad cell is inscribed in a circle of radius r: vertices
    /// at angles 0, phi, pi, pi + phi.
    fn inscribed_quad_torus(r: f64, phi: f64) -> ConeSurface {
        let a = chord(r, 0.0, phi);
        let b = chord(r, phi, PI);
        let x = chord(r, 0.0, PI);
        one_vertex_torus(b, a, x).unwrap()
    }

    #[test]
    fn defect_symmetric_equilateral() {
        let s = one_vertex_torus(1.0, 1.0, 1.0).unwrap();
        for e in 0..3 {
            assert!((delaunay_defect(&s, e) - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn defect_zero_on_inscribed_quad() {
        let s = inscribed_quad_torus(0.8, 1.1);
        let d = delaunay_defect(&s, 2);
        assert!(d.abs() < 1e-10, "defect {d}");
        let a = chord(0.8, 0.0, 1.1);
        let b = chord(0.8, 1.1, PI);
        let x = chord(0.8, 0.0, PI);
        assert!(hyptrig::ptolemy_defect(a, b, a, b, x, x).abs() < 1e-12);
        assert!(matches!(flip(&s, 2), Err(DelaunayError::FlipRejected { .. })));
        // Forcing the zero-defect flip swaps to the other diagonal, which has
        // the same length under this symmetric sampling.
        let s2 = flip_forced(&s, 2).unwrap();
        assert!((s2.edge_length(2) - x).abs() < 1e-10);
    }

    #[test]
    fn defect_negative_on_obtuse_configuration() {
        // Lengthen the diagonal of an inscribed quad: the opposite apex moves
        // strictly inside the circumdisk and the defect goes negative.
        let (r, phi) = (0.8, 1.1);
        let a = chord(r, 0.0, phi);
        let b = chord(r, phi, PI);
        let x = chord(r, 0.0, PI);
        let s = one_vertex_torus(b, a, x + 0.05).unwrap();
        assert!(delaunay_defect(&s, 2) < 0.0);
        // Planar development oracle: the far apex falls strictly inside the
        // circumdisk of the near triangle.
        let quad = develop_quad(&s, 2).unwrap();
        let c = circumcenter_of(&quad.p, &quad.q, &quad.r).unwrap();
        let rad = c.h2_dist(&quad.p);
        assert!(c.h2_dist(&quad.r_other) < rad - 1e-9);
    }

    #[test]
    fn flip_then_flip_back() {
        let s = one_vertex_torus(1.0, 1.0, 1.9).unwrap();
        let s1 = flip(&s, 2).unwrap();
        let s2 = flip_forced(&s1, 2).unwrap();
        let mut a: Vec<f64> = s.edge_lengths().to_vec();
        let mut b: Vec<f64> = s2.edge_lengths().to_vec();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-10, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn flip_preserves_metric() {
        let s = one_vertex_torus(1.0, 1.0, 1.9).unwrap();
        let k0 = s.cone_angle(0).unwrap();
        let area0 = s.area().unwrap();
        let s1 = flip(&s, 2).unwrap();
        assert!((s1.cone_angle(0).unwrap() - k0).abs() < 1e-9);
        assert!((s1.area().unwrap() - area0).abs() < 1e-9);
    }

    #[test]
    fn flip_new_length_matches_klein_oracle() {
        let s = one_vertex_torus(1.0, 1.0, 1.9).unwrap();
        let quad = develop_quad(&s, 2).unwrap();
        let s1 = flip(&s, 2).unwrap();
        let (ux, uy) = quad.r.klein();
        let (vx, vy) = quad.r_other.klein();
        let num = 1.0 - (ux * vx + uy * vy);
        let den = ((1.0 - ux * ux - uy * uy) * (1.0 - vx * vx - vy * vy)).sqrt();
        let oracle = (num / den).acosh();
        assert!((s1.edge_length(2) - oracle).abs() < 1e-11);
    }

    #[test]
    fn make_delaunay_terminates_and_preserves_angles() {
        let s = one_vertex_torus(1.0, 1.0, 1.9).unwrap();
        let k0 = s.cone_angle(0).unwrap();
        let run = make_delaunay(&s).unwrap();
        assert!(run.flips > 0);
        assert!(min_defect(&run.surface) >= -DEFECT_TOL);
        assert!((run.surface.cone_angle(0).unwrap() - k0).abs() < 1e-9);
        let run2 = make_delaunay(&run.surface).unwrap();
        assert_eq!(run2.flips, 0);
    }

    #[test]
    fn already_delaunay_untouched() {
        let s = one_vertex_torus(1.0, 1.0, 1.0).unwrap();
        let run = make_delaunay(&s).unwrap();
        assert_eq!(run.flips, 0);
        assert_eq!(run.surface, s);
    }

    #[test]
    fn flip_order_does_not_change_result() {
        let s = one_vertex_torus(0.8, 1.1, 1.85).unwrap();
        let most_negative = make_delaunay(&s).unwrap().surface;
        let first_by_index =
            make_delaunay_by(&s, |defects| defects.iter().position(|&d| d < -DEFECT_TOL))
                .unwrap()
                .surface;
        let mut a: Vec<f64> = most_negative.edge_lengths().to_vec();
        let mut b: Vec<f64> = first_by_index.edge_lengths().to_vec();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn decomposition_generic_and_quad() {
        let s = one_vertex_torus(1.0, 1.1, 1.2).unwrap();
        let dec = decomposition(&s, DECOMP_TOL).unwrap();
        assert!(dec.merged_edges.is_empty());
        assert_eq!(dec.cells.len(), 2);

        let q = inscribed_quad_torus(0.8, 1.1);
        let dec2 = decomposition(&q, DECOMP_TOL).unwrap();
        assert_eq!(dec2.cells.len(), 1, "quad should merge into one cell");
        assert_eq!(dec2.cells[0].tris.len(), 2);
        assert!(dec2.cells[0].radius_spread < 10.0 * DECOMP_TOL);
        assert!((dec2.cells[0].circumradius - 0.8).abs() < 1e-9);
    }

    #[test]
    fn forced_flip_at_zero_defect_stays_delaunay() {
        let q = inscribed_quad_torus(0.7, 0.9);
        assert!(is_delaunay(&q, DEFECT_TOL));
        let q2 = flip_forced(&q, 2).unwrap();
        assert!(is_delaunay(&q2, 1e-9), "min defect {}", min_defect(&q2));
    }

    #[test]
    fn self_adjacent_edge_never_negative() {
        // Any edge with both sides on one triangle has defect
        // 2 sinh(m/2) / sinh(l0/2) > 0, so the flip loop never selects it.
        let s = one_vertex_torus(1.0, 1.2, 1.9).unwrap();
        let run = make_delaunay(&s).unwrap();
        for e in 0..run.surface.num_edges() {
            let ((t1, _), (t2, _)) = run.surface.edge_slots(e);
            if t1 == t2 {
                assert!(delaunay_defect(&run.surface, e) > 0.0);
            }
        }
    }
}
