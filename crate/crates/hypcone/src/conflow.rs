//! The cone-angle-decreasing deformation flow.
//!
//! On a Delaunay triangulation, every edge length moves by
//! `sinh(l_t / 2) = e^t sinh(l / 2)`. The function
//! `f(x) = 2 asinh(e^{t/2} sinh(x/2))` is strictly increasing and concave,
//! hence subadditive, so triangle inequalities survive; the triangulation
//! stays Delaunay and every cone angle strictly decreases.

use crate::conesurf::{ConeSurface, InvalidSurface};
use crate::delaunay::{self, DelaunayError, DEFECT_TOL};
use crate::hyptrig::TrigError;
use thiserror::Error;

/// Default step used by [`flow_to_convex`].
pub const DEFAULT_DT: f64 = 0.05;

#[derive(Debug, Clone, Error)]
pub enum FlowError {
    #[error("convexity not reached by t = {t_max}; final cone angles {kappas:?}")]
    NotReached { t_max: f64, kappas: Vec<f64> },
    #[error("corrective pass flipped {flips} edges (more than E = {edges}); drift is not float noise")]
    DriftExceeded { flips: usize, edges: usize },
    #[error(transparent)]
    Invalid(#[from] InvalidSurface),
    #[error(transparent)]
    Delaunay(#[from] DelaunayError),
    #[error(transparent)]
    Trig(#[from] TrigError),
}

/// A point on the flow: a Delaunay surface and the accumulated parameter.
#[derive(Debug, Clone)]
pub struct FlowState {
    surface: ConeSurface,
    t: f64,
    /// Total corrective flips logged across all steps (float drift; zero in
    /// exact arithmetic).
    drift_flips: usize,
}

impl FlowState {
    /// Starts a flow at `t = 0`, making the surface Delaunay first.
    pub fn start(s: &ConeSurface) -> Result<FlowState, FlowError> {
        let run = delaunay::make_delaunay(s)?;
        Ok(FlowState { surface: run.surface, t: 0.0, drift_flips: 0 })
    }

    pub fn surface(&self) -> &ConeSurface {
        &self.surface
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn drift_flips(&self) -> usize {
        self.drift_flips
    }
}

fn rescaled_lengths(s: &ConeSurface, factor_of_edge: impl Fn(usize) -> f64) -> Vec<f64> {
    (0..s.num_edges())
        .map(|e| 2.0 * (factor_of_edge(e) * (s.edge_length(e) / 2.0).sinh()).asinh())
        .collect()
}

/// One uniform step: every edge gets `sinh(l/2) *= e^{dt}`.
pub fn flow_step(state: &FlowState, dt: f64) -> Result<FlowState, FlowError> {
    assert!(dt >= 0.0, "the flow only runs forward");
    if dt == 0.0 {
        return Ok(state.clone());
    }
    let factor = dt.exp();
    let lengths = rescaled_lengths(&state.surface, |_| factor);
    let moved = state.surface.with_lengths(lengths)?;
    // The triangulation must remain Delaunay; if float error pushed a defect
    // below tolerance, re-run the flip loop and log the drift.
    let (surface, drift) = if delaunay::is_delaunay(&moved, DEFECT_TOL) {
        (moved, 0)
    } else {
        let edges = moved.num_edges();
        let run = delaunay::make_delaunay(&moved)?;
        if run.flips > edges {
            return Err(FlowError::DriftExceeded { flips: run.flips, edges });
        }
        (run.surface, run.flips)
    };
    Ok(FlowState {
        surface,
        t: state.t + dt,
        drift_flips: state.drift_flips + drift,
    })
}

/// One directed step: edge `e = vw` gets `sinh(l/2) *= exp((w_v + w_w)/2)`.
///
/// Unlike the uniform flow this carries no monotonicity guarantee and may
/// leave the Delaunay cone; the result is re-Delaunayed (flips here are not
/// drift). Triangle inequalities are only guaranteed near zero weights and
/// violations are reported as errors.
pub fn flow_step_weighted(state: &FlowState, weights: &[f64]) -> Result<FlowState, FlowError> {
    assert_eq!(weights.len(), state.surface.num_vertices());
    let s = &state.surface;
    let lengths = rescaled_lengths(s, |e| {
        let (u, v) = s.edge_endpoints(e);
        ((weights[u] + weights[v]) / 2.0).exp()
    });
    let moved = s.with_lengths(lengths)?;
    let run = delaunay::make_delaunay(&moved)?;
    Ok(FlowState {
        surface: run.surface,
        t: state.t,
        drift_flips: state.drift_flips,
    })
}

/// Flows until every cone angle is below 2 pi; returns the surface and the
/// first multiple of `dt` at which convexity holds.
pub fn flow_to_convex(
    s: &ConeSurface,
    dt: f64,
    t_max: f64,
) -> Result<(ConeSurface, f64), FlowError> {
    let mut state = FlowState::start(s)?;
    loop {
        if state.surface.is_convex()? {
            return Ok((state.surface, state.t));
        }
        if state.t >= t_max {
            return Err(FlowError::NotReached { t_max, kappas: state.surface.cone_angles()? });
        }
        state = step_with_backoff(&state, dt)?;
    }
}

/// Steps by `dt`, halving geometrically (up to 8 times) when the post-step
/// defect check logs drift.
fn step_with_backoff(state: &FlowState, dt: f64) -> Result<FlowState, FlowError> {
    let mut sub = dt;
    for _ in 0..8 {
        let next = flow_step(state, sub)?;
        if next.drift_flips == state.drift_flips {
            if sub < dt {
                let mut cur = next;
                while cur.t < state.t + dt - 1e-15 {
                    cur = flow_step(&cur, sub.min(state.t + dt - cur.t))?;
                }
                return Ok(cur);
            }
            return Ok(next);
        }
        sub /= 2.0;
    }
    flow_step(state, dt)
}

/// One row of the flow trace emitted by the CLI.
#[derive(Debug, Clone)]
pub struct TraceRow {
    pub t: f64,
    pub kappas: Vec<f64>,
    pub min_defect: f64,
}

/// Runs `steps` uniform steps of `dt`, recording cone angles and the minimum
/// defect at every state (including the start).
pub fn flow_trace(s: &ConeSurface, dt: f64, steps: usize) -> Result<Vec<TraceRow>, FlowError> {
    let mut state = FlowState::start(s)?;
    let mut rows = Vec::with_capacity(steps + 1);
    rows.push(TraceRow {
        t: state.t,
        kappas: state.surface.cone_angles()?,
        min_defect: delaunay::min_defect(&state.surface),
    });
    for _ in 0..steps {
        state = flow_step(&state, dt)?;
        rows.push(TraceRow {
            t: state.t,
            kappas: state.surface.cone_angles()?,
            min_defect: delaunay::min_defect(&state.surface),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conesurf::one_vertex_torus;
    use std::f64::consts::PI;

    #[test]
    fn zero_step_is_identity() {
        let s = one_vertex_torus(1.0, 1.0, 1.0).unwrap();
        let st = FlowState::start(&s).unwrap();
        let st2 = flow_step(&st, 0.0).unwrap();
        assert_eq!(st.surface(), st2.surface());
    }

    #[test]
    fn cone_angles_strictly_decrease() {
        let s = one_vertex_torus(1.0, 1.0, 1.0).unwrap();
        let st = FlowState::start(&s).unwrap();
        let k0 = st.surface().cone_angle(0).unwrap();
        let st2 = flow_step(&st, 0.5).unwrap();
        let k1 = st2.surface().cone_angle(0).unwrap();
        assert!(k1 < k0, "{k1} !< {k0}");
        assert_eq!(st2.drift_flips(), 0);
    }

    #[test]
    fn steps_compose_multiplicatively() {
        let s = one_vertex_torus(0.9, 1.1, 1.3).unwrap();
        let st = FlowState::start(&s).unwrap();
        let once = flow_step(&st, 0.5).unwrap();
        let twice = flow_step(&flow_step(&st, 0.25).unwrap(), 0.25).unwrap();
        for e in 0..3 {
            let a = once.surface().edge_length(e);
            let b = twice.surface().edge_length(e);
            assert!((a - b).abs() < 1e-10, "edge {e}: {a} vs {b}");
        }
    }

    #[test]
    fn flow_to_convex_on_nonconvex_surface() {
        // The one-vertex torus is always convex (equilateral corner angles
        // stay below pi/3), so non-convexity comes from a genus-2 cone point
        // with angle surplus.
        let s = crate::conesurf::regular_genus2(2.0 * PI + 0.3).unwrap();
        assert!(!s.is_convex().unwrap());
        let (out, t_star) = flow_to_convex(&s, DEFAULT_DT, 10.0).unwrap();
        assert!(out.is_convex().unwrap());
        assert!(t_star > 0.0 && t_star <= 10.0);
        // Already-convex input exits at t = 0.
        let convex = one_vertex_torus(1.0, 1.0, 1.0).unwrap();
        let (_, t0) = flow_to_convex(&convex, DEFAULT_DT, 1.0).unwrap();
        assert_eq!(t0, 0.0);
    }

    #[test]
    fn not_reached_reports_profile() {
        let s = crate::conesurf::regular_genus2(2.0 * PI + 0.3).unwrap();
        match flow_to_convex(&s, 0.01, 0.02) {
            Err(FlowError::NotReached { kappas, .. }) => assert_eq!(kappas.len(), 1),
            other => panic!("expected NotReached, got {other:?}"),
        }
    }

    #[test]
    fn weighted_step_matches_uniform_for_constant_weights() {
        let s = one_vertex_torus(0.9, 1.1, 1.3).unwrap();
        let st = FlowState::start(&s).unwrap();
        let uniform = flow_step(&st, 0.3).unwrap();
        let weighted = flow_step_weighted(&st, &[0.3]).unwrap();
        for e in 0..3 {
            assert!(
                (uniform.surface().edge_length(e) - weighted.surface().edge_length(e)).abs()
                    < 1e-12
            );
        }
    }

    #[test]
    fn flip_independence_at_zero_defect() {
        // Inscribed quad torus: flowing the two Delaunay triangulations that
        // differ by the zero-defect diagonal commutes with the flip.
        let r: f64 = 0.8;
        let phi = 1.1;
        let chord =
            |t1: f64, t2: f64| (r.cosh().powi(2) - r.sinh().powi(2) * (t1 - t2).cos()).acosh();
        let a = chord(phi, PI);
        let b = chord(0.0, phi);
        let x = chord(0.0, PI);
        let s_a = one_vertex_torus(a, b, x).unwrap();
        let s_b = crate::delaunay::flip_forced(&s_a, 2).unwrap();

        let fa = flow_step(&FlowState::start(&s_a).unwrap(), 0.4).unwrap();
        let fb = flow_step(&FlowState::start(&s_b).unwrap(), 0.4).unwrap();
        let fa_flipped = crate::delaunay::flip_forced(fa.surface(), 2).unwrap();
        for e in 0..3 {
            let u = fa_flipped.edge_length(e);
            let v = fb.surface().edge_length(e);
            assert!((u - v).abs() < 1e-9, "edge {e}: {u} vs {v}");
        }
        // The inscribed cell stays inscribed along the flow.
        assert!(crate::delaunay::delaunay_defect(fa.surface(), 2).abs() < 1e-9);
    }

    #[test]
    fn trace_is_monotone_in_kappa() {
        let s = crate::conesurf::regular_genus2(2.0 * PI + 0.2).unwrap();
        let rows = flow_trace(&s, 0.05, 8).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].kappas[0] < w[0].kappas[0]);
            assert!(w[1].min_defect >= -DEFECT_TOL);
        }
    }
}
