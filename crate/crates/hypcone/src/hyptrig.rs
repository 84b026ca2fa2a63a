//! Hyperbolic trigonometry and hyperboloid-model linear algebra.
//!
//! Points of H^3 live on the upper sheet of the unit hyperboloid in R^{3,1}
//! with the form `<u,v> = -u_t v_t + u_x v_x + u_y v_y + u_z v_z`. Planar
//! constructions (triangle developments, circumcenters, unfoldings) use the
//! analogous R^{2,1} model of H^2.
//!
//! Every closed-form law here (trapezoid cosine/sine laws, right-angled
//! pentagons and hexagons, the Ptolemy identity) is cross-checked in the test
//! suite against explicit coordinate constructions.

use thiserror::Error;

/// Absolute slack allowed when clamping `acosh`/`acos` arguments back into
/// their domains. Anything beyond this is treated as a modeling error rather
/// than float noise.
pub const CLAMP_BUDGET: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrigError {
    #[error("argument {arg} out of domain by {excess:e}, beyond the clamping budget")]
    ClampBudgetExceeded { arg: f64, excess: f64 },
    #[error("no trapezoid with legs {a}, {b} over base of top length {c}")]
    NonexistentTrapezoid { a: f64, b: f64, c: f64 },
    #[error("no right-angled pentagon: sinh(a) sinh(b) = {product} <= 1")]
    NoPentagon { product: f64 },
    #[error("no right-angled hexagon for sides {a}, {b}, {c}")]
    NoHexagon { a: f64, b: f64, c: f64 },
    #[error("degenerate triangle with sides {0}, {1}, {2}")]
    DegenerateTriangle(f64, f64, f64),
}

/// `acosh` with the crate-wide clamping budget.
pub fn acosh_clamped(v: f64) -> Result<f64, TrigError> {
    if v >= 1.0 {
        Ok(v.acosh())
    } else if v >= 1.0 - CLAMP_BUDGET {
        Ok(0.0)
    } else {
        Err(TrigError::ClampBudgetExceeded {
            arg: v,
            excess: 1.0 - v,
        })
    }
}

/// `acos` with the crate-wide clamping budget on both ends.
pub fn acos_clamped(v: f64) -> Result<f64, TrigError> {
    if v.abs() <= 1.0 {
        Ok(v.acos())
    } else if v.abs() <= 1.0 + CLAMP_BUDGET {
        Ok(if v > 0.0 { 0.0 } else { std::f64::consts::PI })
    } else {
        Err(TrigError::ClampBudgetExceeded {
            arg: v,
            excess: v.abs() - 1.0,
        })
    }
}

// ---------------------------------------------------------------------------
// R^{3,1}
// ---------------------------------------------------------------------------

/// A vector of R^{3,1}; `t` is the timelike coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl MVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        MVector { t, x, y, z }
    }

    /// Minkowski form `<u,v> = -u_t v_t + u_x v_x + u_y v_y + u_z v_z`.
    pub fn mink(&self, o: &MVector) -> f64 {
        -self.t * o.t + self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn scale(&self, s: f64) -> MVector {
        MVector::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn add(&self, o: &MVector) -> MVector {
        MVector::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn sub(&self, o: &MVector) -> MVector {
        MVector::new(self.t - o.t, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// A point of the upper hyperboloid sheet: `<p,p> = -1`, `p_t > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint(pub MVector);

impl HPoint {
    /// Normalizes a timelike vector onto the upper sheet.
    ///
    /// Panics if `v` is not timelike with positive `t`.
    pub fn normalize(v: MVector) -> HPoint {
        let q = v.mink(&v);
        assert!(q < 0.0, "not timelike: <v,v> = {q}");
        assert!(v.t > 0.0, "not on the upper sheet: t = {}", v.t);
        HPoint(v.scale(1.0 / (-q).sqrt()))
    }

    pub const fn origin() -> HPoint {
        HPoint(MVector::new(1.0, 0.0, 0.0, 0.0))
    }

    pub fn mink(&self, o: &HPoint) -> f64 {
        self.0.mink(&o.0)
    }

    /// How far `<p,p>` strays from -1.
    pub fn normalization_error(&self) -> f64 {
        (self.0.mink(&self.0) + 1.0).abs()
    }
}

/// Hyperbolic distance `cosh d = -<p,q>`.
///
/// The argument is clamped to `>= 1` within [`CLAMP_BUDGET`]; a violation
/// beyond the budget means the inputs were not valid hyperboloid points and
/// panics.
pub fn dist(p: &HPoint, q: &HPoint) -> f64 {
    acosh_clamped(-p.mink(q)).expect("dist: inputs are not valid hyperboloid points")
}

/// A linear map of R^{3,1} preserving the Minkowski form and the upper sheet.
///
/// Stored row-major: `(Av)_i = sum_j m[i][j] v_j` with index order (t,x,y,z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzIsometry {
    pub m: [[f64; 4]; 4],
}

impl LorentzIsometry {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        LorentzIsometry { m }
    }

    /// The loxodromic isometry with shift `a` along the axis `{y = z = 0}`
    /// (oriented toward positive x) and rotation `alpha` about it.
    pub fn loxodromic(a: f64, alpha: f64) -> Self {
        let (ca, sa) = (a.cosh(), a.sinh());
        let (cr, sr) = (alpha.cos(), alpha.sin());
        LorentzIsometry {
            m: [
                [ca, sa, 0.0, 0.0],
                [sa, ca, 0.0, 0.0],
                [0.0, 0.0, cr, -sr],
                [0.0, 0.0, sr, cr],
            ],
        }
    }

    /// Rotation by `alpha` in the (x,y) coordinate plane, fixing the origin.
    pub fn rotation_xy(alpha: f64) -> Self {
        let (c, s) = (alpha.cos(), alpha.sin());
        LorentzIsometry {
            m: [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, c, -s, 0.0],
                [0.0, s, c, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ],
        }
    }

    /// Rotation by `alpha` in the (x,z) coordinate plane.
    pub fn rotation_xz(alpha: f64) -> Self {
        let (c, s) = (alpha.cos(), alpha.sin());
        LorentzIsometry {
            m: [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, c, 0.0, -s],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, s, 0.0, c],
            ],
        }
    }

    pub fn apply(&self, v: &MVector) -> MVector {
        let u = [v.t, v.x, v.y, v.z];
        let mut w = [0.0; 4];
        for (i, row) in self.m.iter().enumerate() {
            w[i] = row[0] * u[0] + row[1] * u[1] + row[2] * u[2] + row[3] * u[3];
        }
        MVector::new(w[0], w[1], w[2], w[3])
    }

    pub fn apply_point(&self, p: &HPoint) -> HPoint {
        HPoint(self.apply(&p.0))
    }

    pub fn compose(&self, o: &LorentzIsometry) -> LorentzIsometry {
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = (0..4).map(|k| self.m[i][k] * o.m[k][j]).sum();
            }
        }
        LorentzIsometry { m }
    }

    /// Max-norm of `A^T J A - J`; zero for an exact Lorentz matrix.
    pub fn form_error(&self) -> f64 {
        let j = [-1.0, 1.0, 1.0, 1.0];
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let mut s = 0.0;
                for k in 0..4 {
                    s += self.m[k][a] * j[k] * self.m[k][b];
                }
                let target = if a == b { j[a] } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}

// ---------------------------------------------------------------------------
// R^{2,1}: the planar model used by developments and unfoldings
// ---------------------------------------------------------------------------

/// A point or vector of R^{2,1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct V3 {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

impl V3 {
    pub const fn new(t: f64, x: f64, y: f64) -> Self {
        V3 { t, x, y }
    }

    pub fn mink(&self, o: &V3) -> f64 {
        -self.t * o.t + self.x * o.x + self.y * o.y
    }

    pub fn scale(&self, s: f64) -> V3 {
        V3::new(self.t * s, self.x * s, self.y * s)
    }

    pub fn add(&self, o: &V3) -> V3 {
        V3::new(self.t + o.t, self.x + o.x, self.y + o.y)
    }

    pub fn sub(&self, o: &V3) -> V3 {
        V3::new(self.t - o.t, self.x - o.x, self.y - o.y)
    }

    /// Euclidean cross product; the Minkowski-orthogonal complement of a pair
    /// of row vectors `J u`, `J v` in the linear-system sense.
    pub fn cross(&self, o: &V3) -> V3 {
        V3::new(
            self.x * o.y - self.y * o.x,
            self.y * o.t - self.t * o.y,
            self.t * o.x - self.x * o.t,
        )
    }

    pub const fn h2_origin() -> V3 {
        V3::new(1.0, 0.0, 0.0)
    }

    /// Normalizes a timelike vector to the upper H^2 sheet.
    pub fn h2_normalize(&self) -> V3 {
        let q = self.mink(self);
        assert!(q < 0.0 && self.t > 0.0, "not an upper timelike vector");
        self.scale(1.0 / (-q).sqrt())
    }

    pub fn h2_dist(&self, o: &V3) -> f64 {
        acosh_clamped(-self.mink(o)).expect("h2_dist: invalid H^2 points")
    }

    /// Unit tangent at `self` pointing toward `q` (both on H^2, distinct).
    pub fn h2_tangent_toward(&self, q: &V3) -> V3 {
        let d = self.h2_dist(q);
        assert!(d > 0.0, "tangent between equal points");
        // q = p cosh d + t sinh d with cosh d = -<p,q>.
        q.add(&self.scale(self.mink(q))).scale(1.0 / d.sinh())
    }

    /// Geodesic point at arclength `s` from `self` along unit tangent `u`.
    pub fn h2_exp(&self, u: &V3, s: f64) -> V3 {
        self.scale(s.cosh()).add(&u.scale(s.sinh()))
    }

    /// Rotates a unit tangent at `self` by `theta` (counterclockwise in the
    /// orientation where cross(p, u) is the +90 degree rotation of u).
    pub fn h2_rotate_tangent(&self, u: &V3, theta: f64) -> V3 {
        let v = self.cross(u); // J-free trick: cross(p,u) is Minkowski-unit and orthogonal to p,u
        let w = V3::new(-v.t, v.x, v.y); // lower the index so that <w,w> = 1
        u.scale(theta.cos()).add(&w.scale(theta.sin()))
    }

    /// Angle at `self` between the directions toward `q` and `r`.
    pub fn h2_angle(&self, q: &V3, r: &V3) -> f64 {
        let u = self.h2_tangent_toward(q);
        let v = self.h2_tangent_toward(r);
        acos_clamped(u.mink(&v)).expect("h2_angle: tangents not unit")
    }

    pub fn klein(&self) -> (f64, f64) {
        (self.x / self.t, self.y / self.t)
    }
}

/// Distance from an H^2 point to the geodesic through `a`, `b` (as a line).
pub fn h2_dist_to_line(p: &V3, a: &V3, b: &V3) -> f64 {
    // Normal of the line: Minkowski-unit spacelike vector n with <n,a>=<n,b>=0.
    let n = line_normal(a, b);
    let s = p.mink(&n);
    s.abs().asinh()
}

/// Minkowski-unit spacelike normal of the geodesic line through `a`, `b`.
pub fn line_normal(a: &V3, b: &V3) -> V3 {
    // Solve <n,a> = <n,b> = 0: n = J^{-1} (a x b) with J = diag(-1,1,1).
    let c = a.cross(b);
    let n = V3::new(-c.t, c.x, c.y);
    let q = n.mink(&n);
    assert!(q > 0.0, "points do not span a line");
    n.scale(1.0 / q.sqrt())
}

// ---------------------------------------------------------------------------
// Trigonometric laws
// ---------------------------------------------------------------------------

/// Solution of a trapezoid with right angles at the base: legs `a`, `b`,
/// top side `c`, returning the top angles and the base length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trapezoid {
    /// Angle at the top endpoint above the `b` leg (opposite the `a` leg).
    pub alpha: f64,
    /// Angle at the top endpoint above the `a` leg (opposite the `b` leg).
    pub beta: f64,
    /// Base length.
    pub gamma: f64,
}

/// Solves the trapezoid `p1 p2 q2 q1` with right angles at `q1`, `q2`,
/// leg lengths `a = p1 q1`, `b = p2 q2` and top length `c = p1 p2`.
pub fn trapezoid_solve(a: f64, b: f64, c: f64) -> Result<Trapezoid, TrigError> {
    if !(a >= 0.0 && b >= 0.0 && c > 0.0) {
        return Err(TrigError::NonexistentTrapezoid { a, b, c });
    }
    let cos_alpha = (b.sinh() * c.cosh() - a.sinh()) / (b.cosh() * c.sinh());
    let cos_beta = (a.sinh() * c.cosh() - b.sinh()) / (a.cosh() * c.sinh());
    if cos_alpha.abs() > 1.0 + CLAMP_BUDGET || cos_beta.abs() > 1.0 + CLAMP_BUDGET {
        return Err(TrigError::NonexistentTrapezoid { a, b, c });
    }
    let cosh_gamma = (a.sinh() * b.sinh() + c.cosh()) / (a.cosh() * b.cosh());
    Ok(Trapezoid {
        alpha: acos_clamped(cos_alpha)?,
        beta: acos_clamped(cos_beta)?,
        gamma: acosh_clamped(cosh_gamma)?,
    })
}

/// Side `c` of the right-angled pentagon with adjacent sides `a`, `b`:
/// `cosh c = sinh a sinh b`. Exists iff `sinh a sinh b > 1`.
pub fn pentagon_side(a: f64, b: f64) -> Result<f64, TrigError> {
    let product = a.sinh() * b.sinh();
    if product <= 1.0 {
        return Err(TrigError::NoPentagon { product });
    }
    Ok(product.acosh())
}

/// All five sides of the right-angled pentagon `(a, b, alpha, c, beta)`
/// (cyclic order), given the first two.
pub fn pentagon_sides(a: f64, b: f64) -> Result<[f64; 5], TrigError> {
    let c = pentagon_side(a, b)?;
    // cosh a = sinh(alpha) sinh(c), cosh b = sinh(c) sinh(beta)
    let alpha = (a.cosh() / c.sinh()).asinh();
    let beta = (b.cosh() / c.sinh()).asinh();
    Ok([a, b, alpha, c, beta])
}

/// The side opposite `a` in the right-angled hexagon with alternating sides
/// `a`, `b`, `c` (cyclic side order `a, gamma, b, alpha, c, beta`):
/// `cosh alpha = (cosh a + cosh b cosh c) / (sinh b sinh c)`.
///
/// The labeling is the one under which the coordinate construction of the
/// hexagon closes; see the closure test. A right-angled hexagon exists for
/// every positive alternating triple, so the error fires only on invalid
/// (non-positive or non-finite) inputs.
pub fn hexagon_side(a: f64, b: f64, c: f64) -> Result<f64, TrigError> {
    if !(a > 0.0 && b > 0.0 && c > 0.0) {
        return Err(TrigError::NoHexagon { a, b, c });
    }
    let arg = (a.cosh() + b.cosh() * c.cosh()) / (b.sinh() * c.sinh());
    if !(arg > 1.0) {
        return Err(TrigError::NoHexagon { a, b, c });
    }
    Ok(arg.acosh())
}

/// The three remaining alternating sides `(alpha, beta, gamma)` of the
/// right-angled hexagon `a, gamma, b, alpha, c, beta`, opposite `a`, `b`, `c`
/// respectively.
pub fn hexagon_alternate_sides(a: f64, b: f64, c: f64) -> Result<[f64; 3], TrigError> {
    Ok([
        hexagon_side(a, b, c)?,
        hexagon_side(b, c, a)?,
        hexagon_side(c, a, b)?,
    ])
}

/// Signed Ptolemy defect of a hyperbolic quadrilateral with consecutive sides
/// `a, b, c, d` and diagonals `x, y`; zero characterizes quadrilaterals
/// inscribed in a circle.
pub fn ptolemy_defect(a: f64, b: f64, c: f64, d: f64, x: f64, y: f64) -> f64 {
    (a / 2.0).sinh() * (c / 2.0).sinh() + (b / 2.0).sinh() * (d / 2.0).sinh()
        - (x / 2.0).sinh() * (y / 2.0).sinh()
}

/// Whether `l0, l1, l2` satisfy the strict triangle inequalities.
pub fn triangle_ok(l0: f64, l1: f64, l2: f64) -> bool {
    l0 > 0.0
        && l1 > 0.0
        && l2 > 0.0
        && l0 + l1 > l2
        && l1 + l2 > l0
        && l2 + l0 > l1
        && l0.is_finite()
        && l1.is_finite()
        && l2.is_finite()
}

/// Interior angles of the hyperbolic triangle with side lengths `l0, l1, l2`;
/// `A_i` is opposite `l_i`.
pub fn triangle_angles(l0: f64, l1: f64, l2: f64) -> Result<[f64; 3], TrigError> {
    if !triangle_ok(l0, l1, l2) {
        return Err(TrigError::DegenerateTriangle(l0, l1, l2));
    }
    let angle = |opp: f64, u: f64, v: f64| -> Result<f64, TrigError> {
        acos_clamped((u.cosh() * v.cosh() - opp.cosh()) / (u.sinh() * v.sinh()))
    };
    Ok([
        angle(l0, l1, l2)?,
        angle(l1, l2, l0)?,
        angle(l2, l0, l1)?,
    ])
}

/// Side lengths of the hyperbolic triangle with interior angles `a0, a1, a2`
/// (dual law of cosines); `l_i` is opposite `a_i`. Requires angle sum < pi.
pub fn triangle_sides_from_angles(a0: f64, a1: f64, a2: f64) -> Result<[f64; 3], TrigError> {
    if !(a0 > 0.0 && a1 > 0.0 && a2 > 0.0 && a0 + a1 + a2 < std::f64::consts::PI) {
        return Err(TrigError::DegenerateTriangle(a0, a1, a2));
    }
    let side = |opp: f64, u: f64, v: f64| -> Result<f64, TrigError> {
        acosh_clamped((u.cos() * v.cos() + opp.cos()) / (u.sin() * v.sin()))
    };
    Ok([
        side(a0, a1, a2)?,
        side(a1, a2, a0)?,
        side(a2, a0, a1)?,
    ])
}

/// Developed triangle `(v0, v1, v2)` in H^2 with `dist(v0,v1) = l2`,
/// `dist(v1,v2) = l0`, `dist(v2,v0) = l1` (side `l_i` opposite `v_i`),
/// `v0` at the origin, `v1` on the positive x-axis, `v2` in `y > 0`.
pub fn develop_triangle(l0: f64, l1: f64, l2: f64) -> Result<[V3; 3], TrigError> {
    let angles = triangle_angles(l0, l1, l2)?;
    let v0 = V3::h2_origin();
    let v1 = V3::new(l2.cosh(), l2.sinh(), 0.0);
    let a0 = angles[0];
    let v2 = V3::new(
        l1.cosh(),
        l1.sinh() * a0.cos(),
        l1.sinh() * a0.sin(),
    );
    Ok([v0, v1, v2])
}

/// Circumscribed-curve classification for a hyperbolic triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircumCurve {
    /// Metric circle with its center and radius.
    Circle { center: V3, radius: f64 },
    /// The perpendicular-bisector pencil meets at a lightlike direction.
    Horocycle,
    /// The bisectors share a spacelike normal direction.
    Hypercycle,
}

/// Classifies the circumscribed curve of the triangle `l0, l1, l2` by solving
/// the bisector system in R^{2,1} and inspecting the sign of `<c,c>`.
pub fn circumcircle(l0: f64, l1: f64, l2: f64) -> Result<CircumCurve, TrigError> {
    let [v0, v1, v2] = develop_triangle(l0, l1, l2)?;
    // <c, v0> = <c, v1> = <c, v2>  <=>  c is Minkowski-orthogonal to the
    // differences; solve with the lowered cross product.
    let d1 = v1.sub(&v0);
    let d2 = v2.sub(&v0);
    let r1 = V3::new(-d1.t, d1.x, d1.y);
    let r2 = V3::new(-d2.t, d2.x, d2.y);
    let c = r1.cross(&r2);
    let q = c.mink(&c);
    let scale = c.t * c.t + c.x * c.x + c.y * c.y;
    if scale == 0.0 {
        return Err(TrigError::DegenerateTriangle(l0, l1, l2));
    }
    let rel = q / scale;
    const LIGHT_TOL: f64 = 1e-12;
    if rel < -LIGHT_TOL {
        let center = if c.t > 0.0 {
            c.h2_normalize()
        } else {
            c.scale(-1.0).h2_normalize()
        };
        let radius = center.h2_dist(&v0);
        Ok(CircumCurve::Circle { center, radius })
    } else if rel > LIGHT_TOL {
        Ok(CircumCurve::Hypercycle)
    } else {
        Ok(CircumCurve::Horocycle)
    }
}

/// Circumradius of the triangle, or `None` when the circumscribed curve is a
/// horocycle or hypercycle.
pub fn circumradius(l0: f64, l1: f64, l2: f64) -> Result<Option<f64>, TrigError> {
    Ok(match circumcircle(l0, l1, l2)? {
        CircumCurve::Circle { radius, .. } => Some(radius),
        _ => None,
    })
}

/// Inradius of the right triangle with legs `u`, `v` about its right angle,
/// by bisection on the right-angle bisector.
pub fn right_triangle_inradius(u: f64, v: f64) -> f64 {
    assert!(u > 0.0 && v > 0.0);
    let a = V3::h2_origin();
    let b = a.h2_exp(&V3::new(0.0, 1.0, 0.0), u);
    let c = a.h2_exp(&V3::new(0.0, 0.0, 1.0), v);
    let bis = V3::new(
        0.0,
        std::f64::consts::FRAC_1_SQRT_2,
        std::f64::consts::FRAC_1_SQRT_2,
    );
    // The bisector is the symmetry axis of the two legs, so along it the
    // distances to the legs agree. First locate where it crosses the
    // hypotenuse line, then bisect dist-to-leg against dist-to-hypotenuse.
    let n_hyp = line_normal(&b, &c);
    let inward = a.mink(&n_hyp);
    let crossed = |s: f64| a.h2_exp(&bis, s).mink(&n_hyp) * inward < 0.0;
    let mut s_star = 1.0f64;
    for _ in 0..60 {
        if crossed(s_star) {
            break;
        }
        s_star *= 2.0;
    }
    {
        let mut lo = 0.0;
        let mut hi = s_star;
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if crossed(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        s_star = hi;
    }
    let f = |s: f64| {
        let p = a.h2_exp(&bis, s);
        h2_dist_to_line(&p, &a, &b) - h2_dist_to_line(&p, &b, &c)
    };
    let mut lo = 0.0f64;
    let mut hi = s_star;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = a.h2_exp(&bis, 0.5 * (lo + hi));
    h2_dist_to_line(&p, &a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn dist_identity_and_translate() {
        let p = HPoint::origin();
        assert_eq!(dist(&p, &p), 0.0);
        let q = HPoint(MVector::new(1.0f64.cosh(), 1.0f64.sinh(), 0.0, 0.0));
        assert!((dist(&p, &q) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn trapezoid_degenerate_legs() {
        let t = trapezoid_solve(0.0, 0.0, 1.3).unwrap();
        assert!((t.gamma - 1.3).abs() < 1e-14);
        assert!((t.alpha - PI / 2.0).abs() < 1e-14);
        assert!((t.beta - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn trapezoid_symmetry() {
        let t = trapezoid_solve(0.4, 0.4, 0.9).unwrap();
        assert!((t.alpha - t.beta).abs() < 1e-14);
    }

    #[test]
    fn trapezoid_sine_law() {
        let (a, b, c) = (0.3f64, 0.5f64, 1.2f64);
        let t = trapezoid_solve(a, b, c).unwrap();
        let lhs = t.alpha.sin() / a.cosh();
        let mid = t.beta.sin() / b.cosh();
        let rhs = t.gamma.sinh() / c.sinh();
        assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
        assert!((mid - rhs).abs() < 1e-12);
    }

    #[test]
    fn trapezoid_nonexistent() {
        // Tall thin: leg far longer than reachable over the top.
        assert!(matches!(
            trapezoid_solve(3.0, 0.0, 0.1),
            Err(TrigError::NonexistentTrapezoid { .. })
        ));
    }

    #[test]
    fn pentagon_boundary_and_symmetry() {
        assert!(matches!(
            pentagon_side(0.5, (1.0f64 / 0.5f64.sinh()).asinh()),
            Err(TrigError::NoPentagon { .. })
        ));
        let c1 = pentagon_side(1.2, 0.9).unwrap();
        let c2 = pentagon_side(0.9, 1.2).unwrap();
        assert_eq!(c1, c2);
        // sinh a = sinh b = sqrt(2) gives cosh c = 2.
        let s = std::f64::consts::SQRT_2.asinh();
        assert!((pentagon_side(s, s).unwrap() - 2.0f64.acosh()).abs() < 1e-14);
    }

    #[test]
    fn pentagon_cothcoth_relation() {
        let [_, _, alpha, c, beta] = pentagon_sides(1.1, 0.8).unwrap();
        let rel = 1.0 / (alpha.tanh() * beta.tanh());
        assert!((rel - c.cosh()).abs() < 1e-11);
    }

    #[test]
    fn hexagon_symmetric() {
        let a = hexagon_side(1.0, 1.0, 1.0).unwrap();
        let expected = ((1.0f64.cosh().powi(2) + 1.0f64.cosh()) / 1.0f64.sinh().powi(2)).acosh();
        assert!((a - expected).abs() < 1e-14);
        let [x, y, z] = hexagon_alternate_sides(0.8, 0.8, 0.8).unwrap();
        assert!((x - y).abs() < 1e-14 && (y - z).abs() < 1e-14);
    }

    #[test]
    fn hexagon_invalid_input() {
        assert!(hexagon_side(-1.0, 1.0, 1.0).is_err());
        assert!(hexagon_side(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn ptolemy_symmetric_inscribed() {
        let s = 0.9f64;
        let x = 2.0 * (std::f64::consts::SQRT_2 * (s / 2.0).sinh()).asinh();
        assert!(ptolemy_defect(s, s, s, s, x, x).abs() < 1e-14);
    }

    #[test]
    fn triangle_angle_basics() {
        let [a0, a1, a2] = triangle_angles(1.0, 1.0, 1.0).unwrap();
        assert!((a0 - a1).abs() < 1e-14 && (a1 - a2).abs() < 1e-14);
        assert!(a0 + a1 + a2 < PI);
        assert!(triangle_angles(1.0, 1.0, 2.0).is_err());
        // Isosceles: angles opposite equal sides agree.
        let [b0, b1, _] = triangle_angles(0.7, 0.7, 1.1).unwrap();
        assert!((b0 - b1).abs() < 1e-14);
    }

    #[test]
    fn angles_to_sides_round_trip() {
        let sides = [(0.8, 1.1, 1.3), (2.0, 2.5, 3.1), (0.2, 0.25, 0.3)];
        for (l0, l1, l2) in sides {
            let [a0, a1, a2] = triangle_angles(l0, l1, l2).unwrap();
            let [m0, m1, m2] = triangle_sides_from_angles(a0, a1, a2).unwrap();
            assert!((m0 - l0).abs() < 1e-10);
            assert!((m1 - l1).abs() < 1e-10);
            assert!((m2 - l2).abs() < 1e-10);
        }
    }

    #[test]
    fn circumcircle_equilateral() {
        match circumcircle(1.0, 1.0, 1.0).unwrap() {
            CircumCurve::Circle { center, radius } => {
                let [v0, v1, v2] = develop_triangle(1.0, 1.0, 1.0).unwrap();
                for v in [v0, v1, v2] {
                    assert!((center.h2_dist(&v) - radius).abs() < 1e-10);
                }
            }
            other => panic!("expected circle, got {other:?}"),
        }
    }

    #[test]
    fn circumcircle_hypercycle_case() {
        match circumcircle(9.9, 5.0, 5.0).unwrap() {
            CircumCurve::Hypercycle => {}
            other => panic!("expected hypercycle, got {other:?}"),
        }
    }

    #[test]
    fn circumcenter_on_symmetry_axis() {
        // Isosceles with l1 = l2 (sides from v0 to the two others equal):
        // the center is equidistant from v1 and v2 by construction; check it
        // also lies on the perpendicular bisector through the apex angle.
        match circumcircle(1.4, 0.9, 0.9).unwrap() {
            CircumCurve::Circle { center, radius } => {
                let [_, v1, v2] = develop_triangle(1.4, 0.9, 0.9).unwrap();
                assert!((center.h2_dist(&v1) - radius).abs() < 1e-11);
                assert!((center.h2_dist(&v2) - radius).abs() < 1e-11);
            }
            other => panic!("expected circle, got {other:?}"),
        }
    }

    #[test]
    fn loxodromic_translation_length() {
        let g = LorentzIsometry::loxodromic(0.7, 0.0);
        let p = HPoint::origin();
        assert!((dist(&p, &g.apply_point(&p)) - 0.7).abs() < 1e-13);
        assert!(g.form_error() < 1e-14);
    }

    #[test]
    fn loxodromic_group_law() {
        let g = LorentzIsometry::loxodromic(1.0, PI);
        let g2 = g.compose(&g);
        let h = LorentzIsometry::loxodromic(2.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                assert!((g2.m[i][j] - h.m[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn loxodromic_off_axis_distance() {
        // cosh d = cosh^2 x cosh a - sinh^2 x cos(alpha) for p at distance x
        // from the axis.
        let (a, alpha, x) = (0.9f64, 1.3f64, 0.6f64);
        let g = LorentzIsometry::loxodromic(a, alpha);
        let p = HPoint(MVector::new(x.cosh(), 0.0, x.sinh(), 0.0));
        let expected = (x.cosh().powi(2) * a.cosh() - x.sinh().powi(2) * alpha.cos()).acosh();
        assert!((dist(&p, &g.apply_point(&p)) - expected).abs() < 1e-12);
    }

    #[test]
    fn right_inradius_sanity() {
        // Tiny triangles are nearly Euclidean: r = (u + v - w) / 2.
        let (u, v) = (1e-3f64, 1e-3f64);
        let w = (u * u + v * v).sqrt();
        let r = right_triangle_inradius(u, v);
        assert!((r - (u + v - w) / 2.0).abs() < 1e-9, "r = {r}");
        // Monotone in the legs.
        assert!(right_triangle_inradius(0.5, 0.5) < right_triangle_inradius(0.6, 0.5));
        assert!(right_triangle_inradius(2.0, 1.0) < right_triangle_inradius(2.0, 1.5));
    }
}
