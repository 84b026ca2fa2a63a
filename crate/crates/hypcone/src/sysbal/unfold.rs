//! Exact point-to-vertex distances by windowed triangle-chain unfolding.
//!
//! Chains of triangles are developed into H^2; a state carries the developed
//! entry edge and the sub-segment ("window") through which every admissible
//! geodesic from the source passes. Windows are closed, so geodesics grazing
//! a flat vertex stay admissible; paths bending at cone points are never
//! needed because every cone point of interest is itself a target. States
//! are expanded in order of their window distance and pruned against the
//! best candidate, which makes the result exact within float error.

use crate::conesurf::ConeSurface;
use crate::hyptrig::{self, V3};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use thiserror::Error;

/// A triangulated patch: a cone surface, or a piece of one with walls.
#[derive(Debug, Clone)]
pub struct TriPatch {
    pub num_vertices: usize,
    /// Corner vertex ids per triangle.
    pub tris: Vec<[usize; 3]>,
    /// Neighbor slot per (triangle, side); `None` is an uncrossable wall.
    pub glue: Vec<[Option<(usize, usize)>; 3]>,
    /// Side lengths per (triangle, side); glued sides agree.
    pub lengths: Vec<[f64; 3]>,
}

impl TriPatch {
    pub fn from_surface(s: &ConeSurface) -> TriPatch {
        TriPatch {
            num_vertices: s.num_vertices(),
            tris: (0..s.num_tris()).map(|t| s.tri(t)).collect(),
            glue: (0..s.num_tris())
                .map(|t| [Some(s.glued((t, 0))), Some(s.glued((t, 1))), Some(s.glued((t, 2)))])
                .collect(),
            lengths: (0..s.num_tris()).map(|t| s.side_lengths(t)).collect(),
        }
    }

    /// Canonical development: corner 0 at the origin, corner 1 on the
    /// positive x-axis, corner 2 in y > 0.
    pub fn develop(&self, t: usize) -> Result<[V3; 3], hyptrig::TrigError> {
        let l = self.lengths[t];
        let angles = hyptrig::triangle_angles(l[1], l[2], l[0])?;
        // Angle at corner 0 is opposite side 1.
        let th0 = angles[0];
        let c0 = V3::h2_origin();
        let c1 = V3::new(l[0].cosh(), l[0].sinh(), 0.0);
        let c2 = V3::new(l[2].cosh(), l[2].sinh() * th0.cos(), l[2].sinh() * th0.sin());
        Ok([c0, c1, c2])
    }
}

#[derive(Debug, Clone, Error)]
pub enum UnfoldError {
    #[error("expansion budget {0} exhausted before the search settled")]
    Budget(usize),
    #[error(transparent)]
    Trig(#[from] hyptrig::TrigError),
}

/// Where a distance query starts.
#[derive(Debug, Clone, Copy)]
pub enum Source {
    /// A point inside triangle `tri`, in its canonical development frame.
    TriPoint { tri: usize, pos: V3 },
    /// A marked vertex.
    Vertex(usize),
}

struct State {
    /// Slot we entered through: triangle and its side index.
    slot: (usize, usize),
    /// Developed endpoints of the entry side: `a` = corner `slot.1`.
    a: V3,
    b: V3,
    /// Window sub-segment of `[a, b]`, ordered along it.
    w0: V3,
    w1: V3,
    /// Distance from the source to the window (priority).
    lb: f64,
    hops: usize,
    /// Consecutive steps with the window pinned at one point (grazing a
    /// vertex); bounded by a full turn around the fattest vertex link.
    pinned: u16,
}

struct QueueItem(f64, usize);
impl PartialEq for QueueItem {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0 && self.1 == other.1
    }
}
impl Eq for QueueItem {}
impl PartialOrd for QueueItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for QueueItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on the bound.
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

/// The exact geodesic distance from `source` to the nearest target vertex,
/// with the reaching vertex id. Returns `None` if every target is farther
/// than `cap`.
pub fn nearest_target(
    patch: &TriPatch,
    source: &Source,
    is_target: &[bool],
    cap: f64,
    budget: usize,
) -> Result<Option<(f64, usize)>, UnfoldError> {
    assert_eq!(is_target.len(), patch.num_vertices);
    let mut best: Option<(f64, usize)> = None;
    let consider = |d: f64, v: usize, best: &mut Option<(f64, usize)>| {
        if d <= cap && best.map_or(true, |(bd, _)| d < bd) {
            *best = Some((d, v));
        }
    };

    let mut states: Vec<State> = Vec::new();
    let mut heap: BinaryHeap<QueueItem> = BinaryHeap::new();
    let push =
        |st: State, states: &mut Vec<State>, heap: &mut BinaryHeap<QueueItem>| {
            heap.push(QueueItem(st.lb, states.len()));
            states.push(st);
        };

    // Seed states and direct candidates.
    let src: V3;
    match *source {
        Source::TriPoint { tri, pos } => {
            src = pos;
            let dev = patch.develop(tri)?;
            for (k, corner) in dev.iter().enumerate() {
                if is_target[patch.tris[tri][k]] {
                    consider(pos.h2_dist(corner), patch.tris[tri][k], &mut best);
                }
            }
            for s in 0..3 {
                if patch.glue[tri][s].is_none() {
                    continue;
                }
                let (p0, p1) = (dev[s], dev[(s + 1) % 3]);
                let (t2, s2) = patch.glue[tri][s].unwrap();
                // Crossing into t2: its corner s2 sits at p1, corner s2+1 at p0.
                let st = State {
                    slot: (t2, s2),
                    a: p1,
                    b: p0,
                    w0: p1,
                    w1: p0,
                    lb: dist_to_segment(&src, &p1, &p0),
                    hops: 1,
                    pinned: 0,
                };
                push(st, &mut states, &mut heap);
            }
        }
        Source::Vertex(v) => {
            src = V3::h2_origin();
            // Start inside every triangle having a corner at v, source at
            // that corner.
            for t in 0..patch.tris.len() {
                for k in 0..3 {
                    if patch.tris[t][k] != v {
                        continue;
                    }
                    let dev = patch.develop(t)?;
                    // Re-center the development so corner k is the origin.
                    let centered = recenter(&dev, k);
                    for (j, corner) in centered.iter().enumerate() {
                        if j != k && is_target[patch.tris[t][j]] {
                            consider(src.h2_dist(corner), patch.tris[t][j], &mut best);
                        }
                    }
                    // Exit through the opposite side only; exits through the
                    // adjacent sides start at distance 0 and are covered by
                    // the neighboring corner triangles of v.
                    let s = (k + 1) % 3;
                    if patch.glue[t][s].is_none() {
                        continue;
                    }
                    let (p0, p1) = (centered[s], centered[(s + 1) % 3]);
                    let (t2, s2) = patch.glue[t][s].unwrap();
                    let st = State {
                        slot: (t2, s2),
                        a: p1,
                        b: p0,
                        w0: p1,
                        w1: p0,
                        lb: dist_to_segment(&src, &p1, &p0),
                        hops: 1,
                        pinned: 0,
                    };
                    push(st, &mut states, &mut heap);
                }
            }
        }
    }

    let max_link = {
        let mut count = vec![0usize; patch.num_vertices];
        for t in &patch.tris {
            for &v in t {
                count[v] += 1;
            }
        }
        count.into_iter().max().unwrap_or(3)
    };
    let mut expansions = 0usize;
    while let Some(QueueItem(lb, idx)) = heap.pop() {
        // A state whose window is no nearer than the best candidate cannot
        // strictly improve it; candidates tying the minimum are already
        // recorded, so pruning at equality keeps the result exact and stops
        // grazing chains from spiraling around a found vertex.
        if let Some((bd, _)) = best {
            if lb >= bd {
                break;
            }
        }
        if lb > cap {
            break;
        }
        expansions += 1;
        if expansions > budget {
            return Err(UnfoldError::Budget(budget));
        }
        let (slot, a, b, w0, w1, hops, pinned) = {
            let st = &states[idx];
            (st.slot, st.a, st.b, st.w0, st.w1, st.hops, st.pinned)
        };
        let (t, s) = slot;
        // Develop the apex of t across the entry edge a -> b (interior on
        // the left of a -> b).
        let to_a = patch.lengths[t][(s + 2) % 3];
        let to_b = patch.lengths[t][(s + 1) % 3];
        let apex = apex_left(&a, &b, to_a, to_b)?;
        let apex_id = patch.tris[t][(s + 2) % 3];
        if is_target[apex_id] && segment_hits_window(&src, &apex, &w0, &w1) {
            consider(src.h2_dist(&apex), apex_id, &mut best);
        }
        // Entry-edge endpoints as targets: admissible when the window closes
        // onto them.
        for (vpos, vid) in [(a, patch.tris[t][s]), (b, patch.tris[t][(s + 1) % 3])] {
            if is_target[vid] && segment_hits_window(&src, &vpos, &w0, &w1) {
                consider(src.h2_dist(&vpos), vid, &mut best);
            }
        }
        // Far sides: (s+1): b -> apex; (s+2): apex -> a.
        let far = [
            ((s + 1) % 3, b, apex),
            ((s + 2) % 3, apex, a),
        ];
        for (side, p0, p1) in far {
            let Some((t2, s2)) = patch.glue[t][side] else { continue };
            let cap_here = best.map_or(cap, |(bd, _)| bd.min(cap));
            if let Some((nw0, nw1)) = clip_window(&src, &w0, &w1, &p0, &p1, cap_here) {
                // A window pinned at the same point across steps is a chain
                // grazing one vertex; a straight continuation leaves its fan
                // within one full turn, so longer pinned runs are wraps.
                // Klein coordinates avoid the acosh noise floor near zero.
                let kd = |u: &V3, v: &V3| {
                    let (a0, a1) = u.klein();
                    let (b0, b1) = v.klein();
                    ((a0 - b0).powi(2) + (a1 - b1).powi(2)).sqrt()
                };
                let degenerate = kd(&nw0, &nw1) < 1e-11;
                let same_spot =
                    degenerate && kd(&w0, &w1) < 1e-11 && kd(&nw0, &w0) < 1e-11;
                let pinned2 = if same_spot { pinned + 1 } else { 0 };
                if pinned2 as usize > max_link + 2 {
                    continue;
                }
                let lb2 = dist_to_segment(&src, &nw0, &nw1);
                let improvable = best.map_or(true, |(bd, _)| lb2 < bd);
                if improvable && lb2 <= cap_here + 1e-12 {
                    // Crossing into t2: corner s2 at p1, corner s2+1 at p0,
                    // window endpoints swap order accordingly.
                    let st = State {
                        slot: (t2, s2),
                        a: p1,
                        b: p0,
                        w0: nw1,
                        w1: nw0,
                        lb: lb2,
                        hops: hops + 1,
                        pinned: pinned2,
                    };
                    push(st, &mut states, &mut heap);
                }
            }
        }
    }
    Ok(best)
}

fn recenter(dev: &[V3; 3], k: usize) -> [V3; 3] {
    // Isometry sending dev[k] to the origin: translation along the geodesic
    // from dev[k] to the origin. Implemented as a change of frame: express
    // the other corners in lengths/angles from corner k instead.
    if k == 0 {
        return *dev;
    }
    let p = dev[k];
    let move_to_origin = |x: &V3| -> V3 {
        // Reflect through the midpoint of p..origin: a point-symmetry that
        // swaps p and the origin.
        let o = V3::h2_origin();
        let m = p.add(&o).h2_normalize();
        // Point reflection through m: x -> 2 <x, m> / <m, m> m - x with the
        // Minkowski form; since <m,m> = -1, this is -2<x,m> m - x.
        m.scale(-2.0 * x.mink(&m)).sub(x)
    };
    let mut out = [V3::h2_origin(); 3];
    for (i, d) in dev.iter().enumerate() {
        out[i] = if i == k { V3::h2_origin() } else { move_to_origin(d) };
    }
    out
}

/// Apex on the left of the oriented segment a -> b at the given distances.
fn apex_left(a: &V3, b: &V3, to_a: f64, to_b: f64) -> Result<V3, hyptrig::TrigError> {
    let base = a.h2_dist(b);
    let cos_at_a = (base.cosh() * to_a.cosh() - to_b.cosh()) / (base.sinh() * to_a.sinh());
    let th = hyptrig::acos_clamped(cos_at_a)?;
    let u = a.h2_tangent_toward(b);
    let dir = a.h2_rotate_tangent(&u, th);
    Ok(a.h2_exp(&dir, to_a))
}

/// Distance from `p` to the geodesic segment `[a, b]`; for near-degenerate
/// segments an underestimate (safe as a search priority) is returned.
pub fn dist_to_segment(p: &V3, a: &V3, b: &V3) -> f64 {
    // acosh amplifies rounding to ~1e-8 near zero, so treat short segments
    // (and any segment whose raw normal fails to be spacelike) as points;
    // subtracting the length keeps the value a true lower bound.
    let len = a.h2_dist(b);
    let cfull = a.cross(b);
    let nraw = V3::new(-cfull.t, cfull.x, cfull.y);
    let q = nraw.mink(&nraw);
    if len < 1e-7 || q <= 0.0 {
        return (p.h2_dist(a).min(p.h2_dist(b)) - len).max(0.0);
    }
    let n = nraw.scale(1.0 / q.sqrt());
    // Foot parameter test via the tangential coordinate: p projects inside
    // the segment iff it is between the two perpendicular lines at a and b.
    let ta = a.h2_tangent_toward(b);
    let tb = b.h2_tangent_toward(a);
    let beyond_a = p.mink(&ta) < 0.0;
    let beyond_b = p.mink(&tb) < 0.0;
    if beyond_a {
        p.h2_dist(a)
    } else if beyond_b {
        p.h2_dist(b)
    } else {
        p.mink(&n).abs().asinh()
    }
}

/// Klein-plane side function: twice the signed Euclidean area of (p, q, x).
fn side2(p: (f64, f64), q: (f64, f64), x: (f64, f64)) -> f64 {
    (q.0 - p.0) * (x.1 - p.1) - (q.1 - p.1) * (x.0 - p.0)
}

/// Whether the geodesic segment from `src` to `x` crosses the closed window
/// `[w0, w1]`.
fn segment_hits_window(src: &V3, x: &V3, w0: &V3, w1: &V3) -> bool {
    let s = src.klein();
    let k = x.klein();
    let a = w0.klein();
    let b = w1.klein();
    // x and src on opposite (closed) sides of the line w0 w1, and the
    // segment [src, x] meets the strip between the rays.
    let eps = 1e-13;
    let d_side = side2(a, b, k) * side2(a, b, s);
    if d_side > eps {
        return false;
    }
    side2(s, k, a) * side2(s, k, b) <= eps
}

/// Intersects the cone from `src` spanned by the window `[w0, w1]` with the
/// segment `[p0, p1]` and clips it to the ball of radius `cap` around `src`.
/// Returns the clipped endpoints (possibly equal) ordered along `p0 -> p1`.
fn clip_window(src: &V3, w0: &V3, w1: &V3, p0: &V3, p1: &V3, cap: f64) -> Option<(V3, V3)> {
    let s = src.klein();
    let a = w0.klein();
    let b = w1.klein();
    let q0 = p0.klein();
    let q1 = p1.klein();
    // Orientation anchors: the admissible side of the ray src -> w0 is the
    // side containing w1 and vice versa. When these vanish the cone has
    // collapsed to a ray (window pinched to a point, or aligned with the
    // sight line): intersect the ray with the segment instead.
    let c0 = side2(s, a, b);
    let c1 = side2(s, b, a);
    let collapse_scale = 1e-26
        * ((a.0 - s.0).powi(2) + (a.1 - s.1).powi(2))
        * ((b.0 - s.0).powi(2) + (b.1 - s.1).powi(2));
    let (mut lo, mut hi): (f64, f64);
    if c0 * c0 <= collapse_scale || c1 * c1 <= collapse_scale {
        // Ray branch. Cross the segment with the line src -> w, keeping the
        // far (beyond-w) part only.
        let w = a;
        let v0 = side2(s, w, q0);
        let v1 = side2(s, w, q1);
        if (v0 > 0.0 && v1 > 0.0) || (v0 < 0.0 && v1 < 0.0) {
            return None;
        }
        let tau = if v0 == v1 { 0.5 } else { v0 / (v0 - v1) };
        let x = (q0.0 + tau * (q1.0 - q0.0), q0.1 + tau * (q1.1 - q0.1));
        let along = (x.0 - s.0) * (w.0 - s.0) + (x.1 - s.1) * (w.1 - s.1);
        let wlen2 = (w.0 - s.0).powi(2) + (w.1 - s.1).powi(2);
        if along < wlen2 * (1.0 - 1e-9) {
            return None; // hits the line on the near side of the window
        }
        lo = tau.clamp(0.0, 1.0);
        hi = lo;
    } else {
        // Affine constraint functions of tau along the segment.
        let f0 = |tau: f64| {
            let x = (q0.0 + tau * (q1.0 - q0.0), q0.1 + tau * (q1.1 - q0.1));
            side2(s, a, x) * c0.signum()
        };
        let f1 = |tau: f64| {
            let x = (q0.0 + tau * (q1.0 - q0.0), q0.1 + tau * (q1.1 - q0.1));
            side2(s, b, x) * c1.signum()
        };
        lo = 0.0;
        hi = 1.0;
        for f in [&f0 as &dyn Fn(f64) -> f64, &f1] {
            let (v0, v1) = (f(0.0), f(1.0));
            if v0 < 0.0 && v1 < 0.0 {
                return None;
            }
            if v0 < 0.0 {
                lo = lo.max(v0 / (v0 - v1));
            } else if v1 < 0.0 {
                hi = hi.min(v0 / (v0 - v1));
            }
        }
        if lo > hi {
            return None;
        }
    }
    let klein_at = |tau: f64| (q0.0 + tau * (q1.0 - q0.0), q0.1 + tau * (q1.1 - q0.1));
    let at = |tau: f64| -> V3 {
        let x = klein_at(tau);
        V3::new(1.0, x.0, x.1).h2_normalize()
    };
    // Clip to the cap ball: distance along the segment is convex, so the
    // sublevel set is a sub-interval found by bisection from each end.
    // Guarded Klein distance: +inf at or beyond the ideal boundary.
    let dist_at = |tau: f64| -> f64 {
        let v = klein_at(tau);
        let dv = 1.0 - v.0 * v.0 - v.1 * v.1;
        if dv <= 0.0 {
            return f64::INFINITY;
        }
        let ds = 1.0 - s.0 * s.0 - s.1 * s.1;
        let num = 1.0 - (s.0 * v.0 + s.1 * v.1);
        (num / (ds * dv).sqrt()).max(1.0).acosh()
    };
    let margin = cap + 1e-9;
    let (mut lo2, mut hi2) = (lo, hi);
    if dist_at(lo2) > margin && dist_at(hi2) > margin {
        // Interior may still dip below the cap: probe the midpoint; the
        // minimum of a convex function is interior or at an end.
        let mid_tau = 0.5 * (lo + hi);
        if dist_at(mid_tau) > margin {
            return None;
        }
        // Shrink both ends toward the feasible middle.
        let mut l = lo;
        let mut r = mid_tau;
        for _ in 0..60 {
            let m = 0.5 * (l + r);
            if dist_at(m) > margin {
                l = m;
            } else {
                r = m;
            }
        }
        lo2 = r;
        let mut l2 = mid_tau;
        let mut r2 = hi;
        for _ in 0..60 {
            let m = 0.5 * (l2 + r2);
            if dist_at(m) > margin {
                r2 = m;
            } else {
                l2 = m;
            }
        }
        hi2 = l2;
    } else {
        if dist_at(lo2) > margin {
            let mut l = lo2;
            let mut r = hi2;
            for _ in 0..60 {
                let m = 0.5 * (l + r);
                if dist_at(m) > margin {
                    l = m;
                } else {
                    r = m;
                }
            }
            lo2 = r;
        }
        if dist_at(hi2) > margin {
            let mut l = lo2;
            let mut r = hi2;
            for _ in 0..60 {
                let m = 0.5 * (l + r);
                if dist_at(m) > margin {
                    r = m;
                } else {
                    l = m;
                }
            }
            hi2 = l;
        }
    }
    Some((at(lo2), at(hi2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conesurf::one_vertex_torus;

    #[test]
    fn torus_vertex_distance_from_interior_point() {
        // Equilateral one-vertex torus: from the barycenter of a triangle,
        // the nearest vertex is a triangle corner; sanity-check against the
        // direct corner distance.
        let s = one_vertex_torus(1.0, 1.0, 1.0).unwrap();
        let patch = TriPatch::from_surface(&s);
        let dev = patch.develop(0).unwrap();
        let bary = dev[0].add(&dev[1]).add(&dev[2]).h2_normalize();
        let direct = (0..3).map(|k| bary.h2_dist(&dev[k])).fold(f64::INFINITY, f64::min);
        let (d, v) = nearest_target(
            &patch,
            &Source::TriPoint { tri: 0, pos: bary },
            &[true],
            10.0,
            100_000,
        )
        .unwrap()
        .unwrap();
        assert_eq!(v, 0);
        assert!((d - direct).abs() < 1e-12, "{d} vs {direct}");
    }

    #[test]
    fn vertex_to_vertex_on_subdivided_torus() {
        // Subdivide a triangle; the distance from the new flat vertex to the
        // old vertex equals the spoke length (straight in the development).
        let s = one_vertex_torus(1.0, 1.1, 1.2).unwrap();
        let s2 = s.subdivide_triangle(0, [1.0, 1.0, 1.0]).unwrap();
        let patch = TriPatch::from_surface(&s2);
        // Spoke lengths: sides 1 of triangles {0, 2, 3}... take the min of
        // the three spoke edges around vertex 1.
        let mut spoke = f64::INFINITY;
        for t in 0..patch.tris.len() {
            for k in 0..3 {
                let ids = patch.tris[t];
                if (ids[k] == 1) != (ids[(k + 1) % 3] == 1) {
                    spoke = spoke.min(patch.lengths[t][k]);
                }
            }
        }
        let (d, v) = nearest_target(
            &patch,
            &Source::Vertex(1),
            &[true, false],
            10.0,
            100_000,
        )
        .unwrap()
        .unwrap();
        assert_eq!(v, 0);
        assert!(d <= spoke + 1e-12, "unfolded distance {d} > spoke {spoke}");
        assert!(d > 0.3, "suspiciously small distance {d}");
    }

    #[test]
    fn wall_blocks_path() {
        // Cut the torus along every edge except the ones of triangle 0 and
        // check the source can still reach the corner directly.
        let s = one_vertex_torus(1.0, 1.0, 1.0).unwrap();
        let mut patch = TriPatch::from_surface(&s);
        for t in 0..patch.tris.len() {
            for k in 0..3 {
                patch.glue[t][k] = None;
            }
        }
        let dev = patch.develop(0).unwrap();
        let bary = dev[0].add(&dev[1]).add(&dev[2]).h2_normalize();
        let (d, _) = nearest_target(
            &patch,
            &Source::TriPoint { tri: 0, pos: bary },
            &[true],
            10.0,
            1000,
        )
        .unwrap()
        .unwrap();
        let direct = (0..3).map(|k| bary.h2_dist(&dev[k])).fold(f64::INFINITY, f64::min);
        assert!((d - direct).abs() < 1e-12);
    }

    #[test]
    fn cap_returns_none() {
        let s = one_vertex_torus(1.0, 1.0, 1.0).unwrap();
        let patch = TriPatch::from_surface(&s);
        let dev = patch.develop(0).unwrap();
        let bary = dev[0].add(&dev[1]).add(&dev[2]).h2_normalize();
        let out = nearest_target(
            &patch,
            &Source::TriPoint { tri: 0, pos: bary },
            &[true],
            0.05,
            1000,
        )
        .unwrap();
        assert!(out.is_none());
    }
}

#[cfg(test)]
mod debug_probe {
    use super::*;
    use crate::conesurf::one_vertex_torus;

    #[test]
    fn probe() {
        let s = one_vertex_torus(1.0, 1.0, 1.0).unwrap();
        let patch = TriPatch::from_surface(&s);
        let dev = patch.develop(0).unwrap();
        let bary = dev[0].add(&dev[1]).add(&dev[2]).h2_normalize();
        // replicate the init states and one expansion manually, printing
        for st in 0..3 {
            let (p0, p1) = (dev[st], dev[(st + 1) % 3]);
            println!("side {st}: p0 = {:?} norm {:.3e}", p0, p0.mink(&p0) + 1.0);
            println!("          p1 = {:?} norm {:.3e}", p1, p1.mink(&p1) + 1.0);
            let n = crate::hyptrig::line_normal(&p0, &p1);
            println!("          normal q ok {:?}", n);
        }
        let _ = bary;
    }
}
