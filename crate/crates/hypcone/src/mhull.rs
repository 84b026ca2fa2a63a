//! Convex hulls of finite hyperboloid point sets in R^{3,1}.
//!
//! The part of the hull boundary visible from the origin projects centrally
//! to the boundary of the hyperbolic convex hull; in Klein coordinates this
//! is a Euclidean convex hull, which we compute incrementally with
//! homogeneous Minkowski-coordinate orientation predicates (no division, no
//! crowding near the ball boundary) and an exact rational fallback for tiny
//! determinants. Coplanar triangles are merged into polygonal facets; every
//! supporting functional of a finite point set is spacelike.

use crate::conesurf::{ConeSurface, Slot, SurfaceData};
use crate::hyptrig::{self, HPoint, MVector};
use num::{BigRational, FromPrimitive, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// Coplanarity merge tolerance on normalized supporting functionals.
pub const COPLANAR_TOL: f64 = 1e-9;

/// Relative determinant magnitude below which the exact predicate runs.
pub const EXACT_FALLBACK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Error)]
pub enum HullError {
    #[error("point lies outside the open Klein ball: |k| = {norm}")]
    OutsideBall { norm: f64 },
    #[error("need at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("points do not span: every 4-tuple is coplanar through the origin")]
    DegenerateSpan,
    #[error("hull complex is not a closed surface: {0}")]
    NotSphere(String),
    #[error("HPTS line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Lifts a Klein-ball point to the hyperboloid.
pub fn lift(k: [f64; 3]) -> Result<HPoint, HullError> {
    let norm2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if norm2 >= 1.0 {
        return Err(HullError::OutsideBall { norm: norm2.sqrt() });
    }
    let s = 1.0 / (1.0 - norm2).sqrt();
    Ok(HPoint(MVector::new(s, s * k[0], s * k[1], s * k[2])))
}

/// Central projection back into the Klein ball.
pub fn klein_of(p: &HPoint) -> [f64; 3] {
    [p.0.x / p.0.t, p.0.y / p.0.t, p.0.z / p.0.t]
}

// ---------------------------------------------------------------------------
// Orientation predicate
// ---------------------------------------------------------------------------

fn row(p: &HPoint) -> [f64; 4] {
    [p.0.t, p.0.x, p.0.y, p.0.z]
}

fn det4_f64(m: &[[f64; 4]; 4]) -> f64 {
    let det3 = |a: [f64; 3], b: [f64; 3], c: [f64; 3]| -> f64 {
        a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
    };
    let minor = |skip: usize| -> f64 {
        let rows: Vec<[f64; 3]> = (1..4)
            .map(|i| {
                let mut r = [0.0; 3];
                let mut j2 = 0;
                for j in 0..4 {
                    if j != skip {
                        r[j2] = m[i][j];
                        j2 += 1;
                    }
                }
                r
            })
            .collect();
        det3(rows[0], rows[1], rows[2])
    };
    m[0][0] * minor(0) - m[0][1] * minor(1) + m[0][2] * minor(2) - m[0][3] * minor(3)
}

fn det4_exact_sign(m: &[[f64; 4]; 4]) -> i8 {
    let q: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::from_f64(v).expect("finite coordinate"))
                .collect()
        })
        .collect();
    let det3 = |a: &[BigRational], b: &[BigRational], c: &[BigRational]| -> BigRational {
        &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
            + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
    };
    let minor = |skip: usize| -> BigRational {
        let rows: Vec<Vec<BigRational>> = (1..4)
            .map(|i| {
                (0..4)
                    .filter(|&j| j != skip)
                    .map(|j| q[i][j].clone())
                    .collect()
            })
            .collect();
        det3(&rows[0], &rows[1], &rows[2])
    };
    let det = &q[0][0] * minor(0) - &q[0][1] * minor(1) + &q[0][2] * minor(2)
        - &q[0][3] * minor(3);
    if det.is_zero() {
        0
    } else if det.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `det[a; b; c; d]`: the side of `d` relative to the linear
/// hyperplane spanned by `a, b, c`. Falls back to exact rational arithmetic
/// when the float value is below `EXACT_FALLBACK_TOL` relative to the row
/// magnitudes.
pub fn orient(a: &HPoint, b: &HPoint, c: &HPoint, d: &HPoint) -> i8 {
    let m = [row(a), row(b), row(c), row(d)];
    let v = det4_f64(&m);
    let scale: f64 = m
        .iter()
        .map(|r| r.iter().fold(0.0f64, |acc, x| acc.max(x.abs())))
        .product();
    if v.abs() > EXACT_FALLBACK_TOL * scale.max(f64::MIN_POSITIVE) {
        if v > 0.0 {
            1
        } else {
            -1
        }
    } else {
        det4_exact_sign(&m)
    }
}

// ---------------------------------------------------------------------------
// Hull complex
// ---------------------------------------------------------------------------

/// A polygonal facet of the hull boundary.
#[derive(Debug, Clone)]
pub struct Facet {
    /// Vertex point indices, counterclockwise seen from outside.
    pub vertices: Vec<usize>,
    /// Normalized outward supporting functional: `<n, v> = 0` on the facet,
    /// `<n, p> <= 0` for all hull points, `<n, n> = 1`.
    pub normal: MVector,
}

/// An edge of the polygon complex with its two facets and exterior dihedral.
#[derive(Debug, Clone)]
pub struct HullEdge {
    pub endpoints: (usize, usize),
    pub facets: (usize, usize),
    pub exterior_angle: f64,
}

#[derive(Debug, Clone)]
pub struct HullComplex {
    pub points: Vec<HPoint>,
    /// Input indices in convex position (the complex vertices).
    pub vertices: Vec<usize>,
    pub facets: Vec<Facet>,
    pub edges: Vec<HullEdge>,
    /// Facet pairs whose merge decision was tolerance-sensitive
    /// (normal distance in `(COPLANAR_TOL, 10 COPLANAR_TOL]`), diagnostics.
    pub near_coplanar: Vec<(usize, usize, f64)>,
}

struct TriFace {
    v: [usize; 3],
    alive: bool,
}

/// Builds the boundary complex of the convex hull, keeping the facets first
/// hit by rays from the origin (for compact hulls of hyperboloid points this
/// is the whole boundary sphere, every supporting plane being spacelike).
pub fn visible_hull(points: &[HPoint]) -> Result<HullComplex, HullError> {
    if points.len() < 4 {
        return Err(HullError::TooFewPoints(points.len()));
    }
    let pts = points.to_vec();
    let n = pts.len();

    // Initial simplex: greedy search for a non-degenerate 4-tuple.
    let mut simplex = vec![0usize];
    for i in 1..n {
        let ok = match simplex.len() {
            1 => orient_nondegenerate_pair(&pts[simplex[0]], &pts[i]),
            2 => !collinear(&pts[simplex[0]], &pts[simplex[1]], &pts[i]),
            3 => orient(&pts[simplex[0]], &pts[simplex[1]], &pts[simplex[2]], &pts[i]) != 0,
            _ => break,
        };
        if ok {
            simplex.push(i);
        }
        if simplex.len() == 4 {
            break;
        }
    }
    if simplex.len() < 4 {
        return Err(HullError::DegenerateSpan);
    }
    let [i0, i1, i2, i3] = [simplex[0], simplex[1], simplex[2], simplex[3]];
    let mut faces: Vec<TriFace> = Vec::new();
    // Orient every initial face so the fourth point is on the non-positive side.
    let mut add_face = |a: usize, b: usize, c: usize, opp: usize, faces: &mut Vec<TriFace>| {
        if orient(&pts[a], &pts[b], &pts[c], &pts[opp]) > 0 {
            faces.push(TriFace { v: [a, c, b], alive: true });
        } else {
            faces.push(TriFace { v: [a, b, c], alive: true });
        }
    };
    add_face(i0, i1, i2, i3, &mut faces);
    add_face(i0, i1, i3, i2, &mut faces);
    add_face(i0, i2, i3, i1, &mut faces);
    add_face(i1, i2, i3, i0, &mut faces);

    // Incremental insertion.
    for p in 0..n {
        if simplex.contains(&p) {
            continue;
        }
        let visible: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.alive)
            .filter(|(_, f)| orient(&pts[f.v[0]], &pts[f.v[1]], &pts[f.v[2]], &pts[p]) > 0)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue; // inside or on the boundary: not a hull vertex
        }
        // Horizon: directed edges of visible faces whose reverse belongs to a
        // live invisible face.
        let mut edge_count: BTreeMap<(usize, usize), i32> = BTreeMap::new();
        for &fi in &visible {
            let v = faces[fi].v;
            for k in 0..3 {
                let e = (v[k], v[(k + 1) % 3]);
                *edge_count.entry(e).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for (&(u, v), _) in &edge_count {
            if !edge_count.contains_key(&(v, u)) {
                horizon.push((u, v));
            }
        }
        for &fi in &visible {
            faces[fi].alive = false;
        }
        for (u, v) in horizon {
            faces.push(TriFace { v: [u, v, p], alive: true });
        }
    }

    let tri_faces: Vec<[usize; 3]> = faces.iter().filter(|f| f.alive).map(|f| f.v).collect();
    assemble_complex(pts, tri_faces)
}

fn orient_nondegenerate_pair(a: &HPoint, b: &HPoint) -> bool {
    let (ka, kb) = (klein_of(a), klein_of(b));
    (0..3).any(|i| (ka[i] - kb[i]).abs() > 0.0)
}

fn collinear(a: &HPoint, b: &HPoint, c: &HPoint) -> bool {
    // Rank of the 3x4 row matrix < 3 <=> all 4 3x3 minors vanish. Use the
    // Klein cross product as a cheap proxy with exact confirmation.
    let (ka, kb, kc) = (klein_of(a), klein_of(b), klein_of(c));
    let u = [kb[0] - ka[0], kb[1] - ka[1], kb[2] - ka[2]];
    let v = [kc[0] - ka[0], kc[1] - ka[1], kc[2] - ka[2]];
    let cr = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    cr.iter().all(|x| x.abs() < 1e-14)
}

/// Outward supporting functional of the oriented triangle `(a, b, c)`:
/// `<n, x>` equals `det[a; b; c; x]`.
fn tri_functional(a: &HPoint, b: &HPoint, c: &HPoint) -> MVector {
    let m = [row(a), row(b), row(c)];
    // N_j = cofactor of x_j in det[a;b;c;x]; then <n,x> = N . x requires
    // n = J N with J = diag(-1,1,1,1).
    let det3 = |c0: usize, c1: usize, c2: usize| -> f64 {
        m[0][c0] * (m[1][c1] * m[2][c2] - m[1][c2] * m[2][c1])
            - m[0][c1] * (m[1][c0] * m[2][c2] - m[1][c2] * m[2][c0])
            + m[0][c2] * (m[1][c0] * m[2][c1] - m[1][c1] * m[2][c0])
    };
    // det[a;b;c;x] expanded along the last row with signs (-1)^{3+j}.
    let n_t = -det3(1, 2, 3);
    let n_x = det3(0, 2, 3);
    let n_y = -det3(0, 1, 3);
    let n_z = det3(0, 1, 2);
    let n = MVector::new(-n_t, n_x, n_y, n_z);
    let q = n.mink(&n);
    assert!(q > 0.0, "supporting functional not spacelike: <n,n> = {q}");
    n.scale(1.0 / q.sqrt())
}

fn normal_distance(a: &MVector, b: &MVector) -> f64 {
    ((a.t - b.t).powi(2) + (a.x - b.x).powi(2) + (a.y - b.y).powi(2) + (a.z - b.z).powi(2)).sqrt()
}

fn assemble_complex(
    points: Vec<HPoint>,
    tris: Vec<[usize; 3]>,
) -> Result<HullComplex, HullError> {
    if tris.is_empty() {
        return Err(HullError::DegenerateSpan);
    }
    let normals: Vec<MVector> = tris
        .iter()
        .map(|t| tri_functional(&points[t[0]], &points[t[1]], &points[t[2]]))
        .collect();

    // Adjacency between triangles via directed edges.
    let mut half: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (fi, t) in tris.iter().enumerate() {
        for k in 0..3 {
            if half.insert((t[k], t[(k + 1) % 3]), fi).is_some() {
                return Err(HullError::NotSphere("directed edge repeated".into()));
            }
        }
    }
    // Merge coplanar neighbors.
    let mut parent: Vec<usize> = (0..tris.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let mut near = Vec::new();
    for (&(u, v), &fi) in &half {
        if let Some(&fj) = half.get(&(v, u)) {
            if fi < fj {
                let d = normal_distance(&normals[fi], &normals[fj]);
                if d <= COPLANAR_TOL {
                    let (a, b) = (find(&mut parent, fi), find(&mut parent, fj));
                    if a != b {
                        parent[a] = b;
                    }
                } else if d <= 10.0 * COPLANAR_TOL {
                    near.push((fi, fj, d));
                }
            }
        }
    }
    let mut group_ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut group_tris: Vec<Vec<usize>> = Vec::new();
    for fi in 0..tris.len() {
        let r = find(&mut parent, fi);
        let gid = *group_ids.entry(r).or_insert_with(|| {
            group_tris.push(Vec::new());
            group_tris.len() - 1
        });
        group_tris[gid].push(fi);
    }

    // Polygon boundary of each group: directed edges used once inside it.
    let mut facets = Vec::new();
    for group in &group_tris {
        let mut inner: BTreeMap<(usize, usize), ()> = BTreeMap::new();
        for &fi in group {
            let t = tris[fi];
            for k in 0..3 {
                inner.insert((t[k], t[(k + 1) % 3]), ());
            }
        }
        let boundary: Vec<(usize, usize)> = inner
            .keys()
            .copied()
            .filter(|&(u, v)| !inner.contains_key(&(v, u)))
            .collect();
        if boundary.is_empty() {
            return Err(HullError::NotSphere("merged facet has no boundary".into()));
        }
        let mut next: BTreeMap<usize, usize> = BTreeMap::new();
        for &(u, v) in &boundary {
            if next.insert(u, v).is_some() {
                return Err(HullError::NotSphere("nonsimple facet boundary".into()));
            }
        }
        let start = boundary[0].0;
        let mut cycle = vec![start];
        let mut cur = next[&start];
        while cur != start {
            cycle.push(cur);
            cur = *next
                .get(&cur)
                .ok_or_else(|| HullError::NotSphere("open facet boundary".into()))?;
            if cycle.len() > boundary.len() {
                return Err(HullError::NotSphere("facet boundary does not close".into()));
            }
        }
        if cycle.len() != boundary.len() {
            return Err(HullError::NotSphere("disconnected facet boundary".into()));
        }
        facets.push(Facet { vertices: cycle, normal: normals[group[0]] });
    }

    // Edges of the polygon complex.
    let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (fi, f) in facets.iter().enumerate() {
        let m = f.vertices.len();
        for k in 0..m {
            let e = (f.vertices[k], f.vertices[(k + 1) % m]);
            if owner.insert(e, fi).is_some() {
                return Err(HullError::NotSphere("directed facet edge repeated".into()));
            }
        }
    }
    let mut edges = Vec::new();
    for (&(u, v), &fi) in &owner {
        if u < v {
            let &fj = owner
                .get(&(v, u))
                .ok_or_else(|| HullError::NotSphere("unmatched facet edge".into()))?;
            let cosang = facets[fi].normal.mink(&facets[fj].normal);
            let exterior_angle = cosang.clamp(-1.0, 1.0).acos();
            edges.push(HullEdge { endpoints: (u, v), facets: (fi, fj), exterior_angle });
        }
    }

    let mut vertices: Vec<usize> = facets.iter().flat_map(|f| f.vertices.iter().copied()).collect();
    vertices.sort_unstable();
    vertices.dedup();

    Ok(HullComplex { points, vertices, facets, edges, near_coplanar: near })
}

impl HullComplex {
    /// V - E + F of the polygon complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.facets.len() as i64
    }

    /// Exterior dihedral angles per edge.
    pub fn dihedral_angles(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.exterior_angle).collect()
    }

    /// Maximum of `<n, p>` over facets, for an arbitrary point: negative
    /// means strictly inside the hull.
    pub fn support_value(&self, p: &HPoint) -> f64 {
        self.facets
            .iter()
            .map(|f| f.normal.mink(&p.0))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The facet first crossed by the Euclidean ray `base + t dir` in Klein
    /// coordinates, with uniqueness information: returns `(facet, t, count)`
    /// where `count` is how many facets tie within `1e-9` of the minimal `t`.
    pub fn first_hit(&self, base: [f64; 3], dir: [f64; 3]) -> Option<(usize, f64, usize)> {
        let mut best: Option<(usize, f64)> = None;
        let mut hits: Vec<(usize, f64)> = Vec::new();
        for (fi, f) in self.facets.iter().enumerate() {
            let n = &f.normal;
            let nx = [n.x, n.y, n.z];
            let denom = nx[0] * dir[0] + nx[1] * dir[1] + nx[2] * dir[2];
            if denom.abs() < 1e-15 {
                continue;
            }
            let t = (n.t - (nx[0] * base[0] + nx[1] * base[1] + nx[2] * base[2])) / denom;
            if t <= 1e-12 {
                continue;
            }
            let x = [base[0] + t * dir[0], base[1] + t * dir[1], base[2] + t * dir[2]];
            if self.point_in_facet(fi, x, 1e-12) {
                hits.push((fi, t));
                if best.map_or(true, |(_, bt)| t < bt) {
                    best = Some((fi, t));
                }
            }
        }
        best.map(|(fi, t)| {
            let count = hits.iter().filter(|(_, u)| (u - t).abs() < 1e-9).count();
            (fi, t, count)
        })
    }

    /// Whether the Klein point `x` (assumed on the facet plane) lies inside
    /// the facet polygon, with slack `tol`.
    fn point_in_facet(&self, fi: usize, x: [f64; 3], tol: f64) -> bool {
        let f = &self.facets[fi];
        let n = [f.normal.x, f.normal.y, f.normal.z];
        let m = f.vertices.len();
        for k in 0..m {
            let u = klein_of(&self.points[f.vertices[k]]);
            let v = klein_of(&self.points[f.vertices[(k + 1) % m]]);
            let e = [v[0] - u[0], v[1] - u[1], v[2] - u[2]];
            let w = [x[0] - u[0], x[1] - u[1], x[2] - u[2]];
            let cr = [
                e[1] * w[2] - e[2] * w[1],
                e[2] * w[0] - e[0] * w[2],
                e[0] * w[1] - e[1] * w[0],
            ];
            let s = cr[0] * n[0] + cr[1] * n[1] + cr[2] * n[2];
            if s < -tol {
                return false;
            }
        }
        true
    }

    /// Induced boundary cone-metric: fan-triangulates the polygon facets and
    /// glues them into a closed surface whose edge lengths are hyperbolic
    /// distances of the endpoint points (overridable for callers with a more
    /// stable distance formula).
    pub fn boundary_metric_with(
        &self,
        length: impl Fn(usize, usize) -> f64,
    ) -> Result<ConeSurface, HullError> {
        if self.euler_characteristic() != 2 {
            return Err(HullError::NotSphere(format!(
                "euler characteristic {}",
                self.euler_characteristic()
            )));
        }
        // Relabel hull vertices 0..V.
        let mut vid: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            vid.insert(v, i);
        }
        let mut tris: Vec<[usize; 3]> = Vec::new();
        let mut slot_of_dir: BTreeMap<(usize, usize), Slot> = BTreeMap::new();
        let mut gluings: Vec<(Slot, Slot)> = Vec::new();
        let mut lengths: Vec<(Slot, f64)> = Vec::new();
        for f in &self.facets {
            let c = &f.vertices;
            let m = c.len();
            for i in 1..m - 1 {
                let t = tris.len();
                tris.push([vid[&c[0]], vid[&c[i]], vid[&c[i + 1]]]);
                // Boundary directed edges of the polygon get recorded; fan
                // diagonals are glued immediately between consecutive fans.
                if i == 1 {
                    slot_of_dir.insert((c[0], c[1]), (t, 0));
                }
                slot_of_dir.insert((c[i], c[i + 1]), (t, 1));
                if i == m - 2 {
                    slot_of_dir.insert((c[m - 1], c[0]), (t, 2));
                }
                if i > 1 {
                    gluings.push(((t - 1, 2), (t, 0)));
                    lengths.push(((t - 1, 2), length(c[0], c[i])));
                }
            }
        }
        for (&(u, v), &slot) in &slot_of_dir {
            if u < v {
                let other = slot_of_dir
                    .get(&(v, u))
                    .ok_or_else(|| HullError::NotSphere("unmatched boundary edge".into()))?;
                gluings.push((slot, *other));
                lengths.push((slot, length(u, v)));
            }
        }
        let data = SurfaceData {
            num_vertices: self.vertices.len(),
            tris,
            gluings,
            lengths,
        };
        ConeSurface::from_data(&data)
            .map_err(|e| HullError::NotSphere(format!("induced metric invalid: {e}")))
    }

    /// [`Self::boundary_metric_with`] using the hyperboloid distance.
    pub fn boundary_metric(&self) -> Result<ConeSurface, HullError> {
        self.boundary_metric_with(|u, v| hyptrig::dist(&self.points[u], &self.points[v]))
    }
}

// ---------------------------------------------------------------------------
// HPTS text format
// ---------------------------------------------------------------------------

/// Parses the point-list format: header `HPTS 1`, then per line either
/// `p <t> <x> <y> <z>` (hyperboloid) or `k <x> <y> <z>` (Klein); `#` comments.
pub fn parse_hpts(text: &str) -> Result<Vec<HPoint>, HullError> {
    let mut pts = Vec::new();
    let mut saw_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let parse_f = |s: &str| -> Result<f64, HullError> {
            s.parse()
                .map_err(|e| HullError::Parse { line, msg: format!("bad number: {e}") })
        };
        match toks[0] {
            "HPTS" => {
                if toks.len() != 2 || toks[1] != "1" {
                    return Err(HullError::Parse { line, msg: "expected `HPTS 1`".into() });
                }
                saw_header = true;
            }
            "p" if toks.len() == 5 => {
                let v = MVector::new(
                    parse_f(toks[1])?,
                    parse_f(toks[2])?,
                    parse_f(toks[3])?,
                    parse_f(toks[4])?,
                );
                let q = v.mink(&v);
                if (q + 1.0).abs() > 1e-9 || v.t <= 0.0 {
                    return Err(HullError::Parse {
                        line,
                        msg: format!("not a hyperboloid point: <p,p> = {q}"),
                    });
                }
                pts.push(HPoint::normalize(v));
            }
            "k" if toks.len() == 4 => {
                pts.push(lift([parse_f(toks[1])?, parse_f(toks[2])?, parse_f(toks[3])?])
                    .map_err(|e| HullError::Parse { line, msg: e.to_string() })?);
            }
            other => {
                return Err(HullError::Parse { line, msg: format!("unknown record `{other}`") })
            }
        }
    }
    if !saw_header {
        return Err(HullError::Parse { line: 0, msg: "missing `HPTS 1` header".into() });
    }
    Ok(pts)
}

pub fn print_hpts(pts: &[HPoint]) -> String {
    let mut out = String::from("HPTS 1\n");
    for p in pts {
        out.push_str(&format!(
            "p {:.16e} {:.16e} {:.16e} {:.16e}\n",
            p.0.t, p.0.x, p.0.y, p.0.z
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyptrig::LorentzIsometry;
    use std::f64::consts::PI;

    #[test]
    fn lift_round_trip() {
        let p = lift([0.3, -0.2, 0.5]).unwrap();
        assert!(p.normalization_error() < 1e-12);
        let k = klein_of(&p);
        assert!((k[0] - 0.3).abs() < 1e-12 && (k[1] + 0.2).abs() < 1e-12);
        assert!(lift([0.0, 0.0, 0.0]).unwrap().0.t == 1.0);
        assert!(matches!(lift([1.0, 0.0, 0.0]), Err(HullError::OutsideBall { .. })));
        // Near-ideal stress: still a valid point with a large t.
        let q = lift([0.999999, 0.0, 0.0]).unwrap();
        assert!(q.0.t > 100.0 && q.normalization_error() < 1e-9);
    }

    #[test]
    fn tetrahedron_hull() {
        let pts = vec![
            lift([0.2, 0.2, 0.2]).unwrap(),
            lift([-0.5, 0.1, 0.0]).unwrap(),
            lift([0.1, -0.4, 0.1]).unwrap(),
            lift([0.0, 0.1, -0.5]).unwrap(),
        ];
        let h = visible_hull(&pts).unwrap();
        assert_eq!(h.facets.len(), 4);
        assert_eq!(h.edges.len(), 6);
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.euler_characteristic(), 2);
        for f in &h.facets {
            // Supporting plane contains its vertices; all points inside.
            for &v in &f.vertices {
                assert!(f.normal.mink(&h.points[v].0).abs() < 1e-9);
            }
            assert!((f.normal.mink(&f.normal) - 1.0).abs() < 1e-9);
        }
        for e in &h.edges {
            assert!(e.exterior_angle > 0.0 && e.exterior_angle < PI);
        }
        let m = h.boundary_metric().unwrap();
        assert_eq!(m.euler_characteristic(), 2);
        assert!(m.is_convex().unwrap());
    }

    #[test]
    fn interior_point_dropped() {
        let pts = vec![
            lift([0.4, 0.4, 0.4]).unwrap(),
            lift([-0.6, 0.1, 0.0]).unwrap(),
            lift([0.1, -0.5, 0.1]).unwrap(),
            lift([0.0, 0.1, -0.6]).unwrap(),
            lift([0.0, 0.0, 0.0]).unwrap(), // inside the tetrahedron
        ];
        let h = visible_hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert!(!h.vertices.contains(&4));
        assert!(h.support_value(&pts[4]) < -1e-6);
    }

    #[test]
    fn octahedron_symmetry() {
        let r = 0.6;
        let pts = vec![
            lift([r, 0.0, 0.0]).unwrap(),
            lift([-r, 0.0, 0.0]).unwrap(),
            lift([0.0, r, 0.0]).unwrap(),
            lift([0.0, -r, 0.0]).unwrap(),
            lift([0.0, 0.0, r]).unwrap(),
            lift([0.0, 0.0, -r]).unwrap(),
        ];
        let h = visible_hull(&pts).unwrap();
        assert_eq!(h.facets.len(), 8);
        assert_eq!(h.edges.len(), 12);
        assert_eq!(h.vertices.len(), 6);
        // All dihedral angles equal by symmetry.
        let angles = h.dihedral_angles();
        for a in &angles {
            assert!((a - angles[0]).abs() < 1e-9);
        }
        let m = h.boundary_metric().unwrap();
        let gb = (0..m.num_vertices())
            .map(|v| 2.0 * PI - m.cone_angle(v).unwrap())
            .sum::<f64>()
            - m.area().unwrap();
        assert!((gb - 4.0 * PI).abs() < 1e-9, "gauss-bonnet {gb}");
    }

    #[test]
    fn regular_tetrahedron_boundary_metric() {
        // Orbit of one point under coordinate rotations: 4 symmetric points.
        let r = 0.55;
        let s = r / 3.0f64.sqrt();
        let pts = vec![
            lift([s, s, s]).unwrap(),
            lift([s, -s, -s]).unwrap(),
            lift([-s, s, -s]).unwrap(),
            lift([-s, -s, s]).unwrap(),
        ];
        let h = visible_hull(&pts).unwrap();
        let m = h.boundary_metric().unwrap();
        // Four congruent equilateral triangles; all cone angles equal, < 2pi.
        let k: Vec<f64> = (0..4).map(|v| m.cone_angle(v).unwrap()).collect();
        for v in &k {
            assert!((v - k[0]).abs() < 1e-10 && *v < 2.0 * PI);
        }
        let lens = m.edge_lengths();
        for l in lens {
            assert!((l - lens[0]).abs() < 1e-10);
        }
    }

    #[test]
    fn hull_invariant_under_isometry() {
        let pts: Vec<HPoint> = vec![
            lift([0.2, 0.3, -0.1]).unwrap(),
            lift([-0.4, 0.2, 0.3]).unwrap(),
            lift([0.3, -0.3, 0.2]).unwrap(),
            lift([-0.1, -0.2, -0.4]).unwrap(),
            lift([0.5, 0.1, 0.3]).unwrap(),
            lift([0.0, 0.45, 0.2]).unwrap(),
        ];
        let g = LorentzIsometry::loxodromic(0.4, 0.9)
            .compose(&LorentzIsometry::rotation_xz(0.7));
        let moved: Vec<HPoint> = pts.iter().map(|p| g.apply_point(p)).collect();
        let h1 = visible_hull(&pts).unwrap();
        let h2 = visible_hull(&moved).unwrap();
        assert_eq!(h1.facets.len(), h2.facets.len());
        assert_eq!(h1.edges.len(), h2.edges.len());
        let mut a: Vec<f64> = h1.dihedral_angles();
        let mut b: Vec<f64> = h2.dihedral_angles();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn coplanar_merge() {
        // A square pyramid: four base points on the z = -0.2 Klein plane.
        let pts = vec![
            lift([0.4, 0.4, -0.2]).unwrap(),
            lift([0.4, -0.4, -0.2]).unwrap(),
            lift([-0.4, -0.4, -0.2]).unwrap(),
            lift([-0.4, 0.4, -0.2]).unwrap(),
            lift([0.0, 0.0, 0.5]).unwrap(),
        ];
        let h = visible_hull(&pts).unwrap();
        assert_eq!(h.facets.len(), 5, "base must merge into one quad");
        let quad = h.facets.iter().find(|f| f.vertices.len() == 4).unwrap();
        assert_eq!(quad.vertices.len(), 4);
        // No merged edge survives (all remaining dihedrals positive).
        for e in &h.edges {
            assert!(e.exterior_angle > 1e-6);
        }
    }

    #[test]
    fn ray_coverage_samples() {
        let pts = vec![
            lift([0.2, 0.3, -0.1]).unwrap(),
            lift([-0.4, 0.2, 0.3]).unwrap(),
            lift([0.3, -0.3, 0.2]).unwrap(),
            lift([-0.1, -0.2, -0.4]).unwrap(),
            lift([0.5, 0.1, 0.3]).unwrap(),
        ];
        let h = visible_hull(&pts).unwrap();
        // Interior base: Klein centroid of the vertices.
        let mut base = [0.0; 3];
        for &v in &h.vertices {
            let k = klein_of(&h.points[v]);
            for i in 0..3 {
                base[i] += k[i] / h.vertices.len() as f64;
            }
        }
        let mut th = 0.37f64;
        for _ in 0..200 {
            th += 2.399963;
            let dir = [th.cos() * 0.8, th.sin() * 0.8, (3.1 * th).sin() * 0.6];
            let (fi, _, count) = h.first_hit(base, dir).expect("ray must exit");
            assert_eq!(count, 1, "non-unique first hit");
            assert!(fi < h.facets.len());
        }
        // Rays through each input point exit at or beyond the point.
        for p in &pts {
            let k = klein_of(p);
            let dir = [k[0] - base[0], k[1] - base[1], k[2] - base[2]];
            let (_, t, _) = h.first_hit(base, dir).unwrap();
            assert!(t >= 1.0 - 1e-9, "input point outside hull? t = {t}");
        }
    }

    #[test]
    fn hpts_round_trip() {
        let pts = vec![lift([0.1, 0.2, 0.3]).unwrap(), lift([-0.5, 0.0, 0.1]).unwrap()];
        let text = print_hpts(&pts);
        let parsed = parse_hpts(&text).unwrap();
        assert_eq!(pts.len(), parsed.len());
        for (a, b) in pts.iter().zip(&parsed) {
            assert!((a.0.t - b.0.t).abs() < 1e-15);
        }
        assert!(parse_hpts("k 0 0 0\n").is_err());
        let mixed = "HPTS 1\nk 0.1 0.2 0.3\np 1.0 0.0 0.0 0.0\n";
        assert_eq!(parse_hpts(mixed).unwrap().len(), 2);
    }

    #[test]
    fn degenerate_span_detected() {
        // All points on one Klein plane.
        let pts = vec![
            lift([0.1, 0.1, 0.0]).unwrap(),
            lift([-0.3, 0.2, 0.0]).unwrap(),
            lift([0.2, -0.4, 0.0]).unwrap(),
            lift([0.4, 0.4, 0.0]).unwrap(),
        ];
        assert!(matches!(visible_hull(&pts), Err(HullError::DegenerateSpan)));
    }
}
