//! Systole, cone-sparsity, the pair-of-pants constant, and the balancedness
//! certificate.
//!
//! `sys(d)` is enclosed from a sample-graph search in the universal cover;
//! `cosp(d)` from exact unfolding distances on an epsilon-net (the distance
//! function to a point set is 1-Lipschitz, so net pitch bounds the gap);
//! `delta(Delta)` is the constructive bound extracted from the right-angled
//! hexagon estimate: a hexagon either has a short-side corner triangle with
//! a fat incircle, or all short sides are small and the altitude foot region
//! contains one.

pub mod cover;
pub mod unfold;

use crate::conesurf::ConeSurface;
use crate::hyptrig::{self, V3};
use thiserror::Error;

pub use cover::{SourcePolicy, SystoleWitness};
pub use unfold::{Source, TriPatch, UnfoldError};

/// A certified enclosure `[lower, upper]` of a real quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalEstimate {
    pub lower: f64,
    pub upper: f64,
}

impl IntervalEstimate {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

#[derive(Debug, Clone, Error)]
pub enum BalanceError {
    #[error("surface is not convex; balancedness applies to convex metrics")]
    NotConvex,
    #[error(transparent)]
    Unfold(#[from] UnfoldError),
    #[error(transparent)]
    Trig(#[from] hyptrig::TrigError),
}

// ---------------------------------------------------------------------------
// Sparsity
// ---------------------------------------------------------------------------

/// Epsilon-net samples of a triangle: vertices of the recursive midpoint
/// subdivision, refined until every sub-triangle side is at most `eps`
/// (covering radius below `0.65 eps`), pulled slightly toward the barycenter
/// so every source is interior. Levels nest, so refining `eps` only grows
/// the sample set.
fn triangle_net(dev: &[V3; 3], eps: f64) -> Vec<V3> {
    let max_side = dev[0]
        .h2_dist(&dev[1])
        .max(dev[1].h2_dist(&dev[2]))
        .max(dev[2].h2_dist(&dev[0]));
    let levels = if max_side <= eps {
        0
    } else {
        (max_side / eps).log2().ceil() as usize
    };
    let mut tris = vec![*dev];
    for _ in 0..levels {
        let mut next = Vec::with_capacity(tris.len() * 4);
        for t in &tris {
            let m01 = t[0].add(&t[1]).h2_normalize();
            let m12 = t[1].add(&t[2]).h2_normalize();
            let m20 = t[2].add(&t[0]).h2_normalize();
            next.push([t[0], m01, m20]);
            next.push([m01, t[1], m12]);
            next.push([m20, m12, t[2]]);
            next.push([m01, m12, m20]);
        }
        tris = next;
    }
    let bary = dev[0].add(&dev[1]).add(&dev[2]).h2_normalize();
    let shrink = |p: &V3| -> V3 {
        p.scale(1.0 - 1e-9).add(&bary.scale(1e-9)).h2_normalize()
    };
    let mut out = Vec::new();
    for t in &tris {
        for p in t {
            out.push(shrink(p));
        }
    }
    out
}

/// Certified enclosure of `sup_p d(p, targets)` with width at most `eps`:
/// the lower bound is the max of exact unfolding distances over an
/// `eps`-net, the upper bound adds the net pitch.
pub fn sparsity(
    s: &ConeSurface,
    eps: f64,
    targets: &[bool],
) -> Result<IntervalEstimate, BalanceError> {
    assert!(eps > 0.0);
    assert!(targets.iter().any(|&b| b), "sparsity against an empty set");
    let patch = TriPatch::from_surface(s);
    let mut lower: f64 = 0.0;
    for t in 0..patch.tris.len() {
        let dev = patch.develop(t)?;
        for p in triangle_net(&dev, eps) {
            let hit = unfold::nearest_target(
                &patch,
                &Source::TriPoint { tri: t, pos: p },
                targets,
                f64::INFINITY,
                2_000_000,
            )?;
            let (d, _) = hit.expect("nonempty target set is always reachable");
            lower = lower.max(d);
        }
    }
    Ok(IntervalEstimate { lower, upper: lower + eps })
}

/// `cosp(d)`: sparsity of the cone-point set (marked flat vertices do not
/// count).
pub fn cone_sparsity(s: &ConeSurface, eps: f64) -> Result<IntervalEstimate, BalanceError> {
    let cone = s.cone_points()?;
    let mut targets = vec![false; s.num_vertices()];
    for v in cone {
        targets[v] = true;
    }
    Ok(sparsity(s, eps, &targets)?)
}

/// Sparsity against the full marked vertex set `V`, including flat points.
pub fn marked_sparsity(s: &ConeSurface, eps: f64) -> Result<IntervalEstimate, BalanceError> {
    let targets = vec![true; s.num_vertices()];
    sparsity(s, eps, &targets)
}

// ---------------------------------------------------------------------------
// Systole
// ---------------------------------------------------------------------------

/// Encloses the systole with the default sampling (pitch a quarter of the
/// shortest edge) over all graph nodes. See [`systole_with`].
pub fn systole(s: &ConeSurface, cap: f64) -> IntervalEstimate {
    let min_edge = (0..s.num_edges())
        .map(|e| s.edge_length(e))
        .fold(f64::INFINITY, f64::min);
    systole_with(s, cap, min_edge / 4.0, &cover::SourcePolicy::AllNodes)
}

/// Encloses the systole: the upper bound is the shortest non-contractible
/// loop of the sample graph (a genuine loop on the surface); the lower bound
/// subtracts one sample pitch per edge change of the witness loop, the
/// first-order error of snapping a geodesic loop onto the graph (runs along
/// one edge telescope). If no loop at most `cap` is found the result is
/// `[cap, infinity)`. With a restricted source policy the caller asserts
/// that some systolic representative passes through a source.
pub fn systole_with(
    s: &ConeSurface,
    cap: f64,
    pitch: f64,
    policy: &cover::SourcePolicy,
) -> IntervalEstimate {
    let w = cover::graph_systole(s, pitch, cap, policy);
    match w.upper {
        Some(u) => IntervalEstimate {
            lower: (u - w.hops as f64 * w.spacing).max(0.0),
            upper: u,
        },
        None => IntervalEstimate { lower: cap, upper: f64::INFINITY },
    }
}

// ---------------------------------------------------------------------------
// The pants constant
// ---------------------------------------------------------------------------

/// Lower bound on the altitude-intersection height in a right-angled hexagon
/// whose three short alternating sides are all at most `d1`:
/// `tanh(h) >= 1 / (cosh^2(d1) + cosh(d1))`.
fn altitude_height_bound(d1: f64) -> f64 {
    let v = 1.0 / (d1.cosh() * d1.cosh() + d1.cosh());
    // artanh
    0.5 * ((1.0 + v) / (1.0 - v)).ln()
}

/// The pair-of-pants constant: every pair of pants whose boundary components
/// all have length at least `Delta` contains a disk of radius
/// `delta_of(Delta)`. Pants double from right-angled hexagons with
/// alternating sides at least `Delta / 2`; the free threshold separating the
/// two cases of the hexagon estimate is optimized by golden-section search.
pub fn delta_of(delta_big: f64) -> f64 {
    assert!(delta_big > 0.0);
    // Saturate: delta is bounded by the ideal-triangle inradius, reached
    // well before Delta = 60.
    let d = delta_big.min(60.0);
    let objective = |d1: f64| -> f64 {
        let corner_case = hyptrig::right_triangle_inradius(d / 2.0, d1);
        let altitude_case =
            hyptrig::right_triangle_inradius(d / 4.0, altitude_height_bound(d1));
        corner_case.min(altitude_case)
    };
    // Golden-section maximization over the threshold.
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (1e-4f64, 6.0f64);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    for _ in 0..120 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = objective(x1);
        }
    }
    objective(0.5 * (lo + hi))
}

/// Upper bound for `delta_of` over all arguments (the ideal triangle
/// inradius `ln(3) / 2`), used when the systole enclosure is unbounded.
pub const DELTA_SUP: f64 = 0.5494;

// ---------------------------------------------------------------------------
// Balancedness
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum Balancedness {
    /// Certified `cosp(d) < delta(sys(d))`.
    Yes,
    /// Certified `cosp(d) >= delta(sys(d))`.
    No,
    /// The enclosures are too wide to decide; refine `eps` or raise `cap`.
    Unknown,
}

/// Everything the balancedness decision saw, for reporting.
#[derive(Debug, Clone)]
pub struct BalanceReport {
    pub verdict: Balancedness,
    pub cosp: IntervalEstimate,
    pub sys: IntervalEstimate,
    pub delta_at_sys_lower: f64,
    pub delta_at_sys_upper: f64,
}

/// Tri-state balancedness certificate: `Yes` iff the cone-sparsity upper
/// bound is below `delta` of the systole lower bound; `No` iff the sparsity
/// lower bound reaches `delta` of the systole upper bound.
pub fn is_balanced(s: &ConeSurface, eps: f64, cap: f64) -> Result<BalanceReport, BalanceError> {
    let min_edge = (0..s.num_edges())
        .map(|e| s.edge_length(e))
        .fold(f64::INFINITY, f64::min);
    is_balanced_with(s, eps, cap, min_edge / 4.0, &cover::SourcePolicy::AllNodes)
}

/// [`is_balanced`] with explicit systole sampling pitch and source policy.
pub fn is_balanced_with(
    s: &ConeSurface,
    eps: f64,
    cap: f64,
    pitch: f64,
    policy: &cover::SourcePolicy,
) -> Result<BalanceReport, BalanceError> {
    if !s.is_convex()? {
        return Err(BalanceError::NotConvex);
    }
    let cosp = cone_sparsity(s, eps)?;
    let sys = systole_with(s, cap, pitch, policy);
    let delta_lo = delta_of(sys.lower.max(1e-12));
    let delta_hi = if sys.upper.is_finite() {
        delta_of(sys.upper)
    } else {
        DELTA_SUP
    };
    let verdict = if cosp.upper < delta_lo {
        Balancedness::Yes
    } else if cosp.lower >= delta_hi {
        Balancedness::No
    } else {
        Balancedness::Unknown
    };
    Ok(BalanceReport {
        verdict,
        cosp,
        sys,
        delta_at_sys_lower: delta_lo,
        delta_at_sys_upper: delta_hi,
    })
}
