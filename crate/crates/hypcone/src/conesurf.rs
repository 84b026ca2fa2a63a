//! Hyperbolic cone-metrics on closed oriented triangulated surfaces.
//!
//! A surface is a list of triangles with corner vertex ids plus a gluing
//! pairing each triangle side with exactly one other side (self-gluings of a
//! triangle to itself on different sides are allowed). Glued sides carry one
//! shared length. Side `s` of a triangle runs from corner `s` to corner
//! `(s+1) % 3`, counterclockwise.

use crate::hyptrig::{self, TrigError};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use thiserror::Error;

/// A triangle side: `(triangle index, side index in 0..3)`.
pub type Slot = (usize, usize);

/// Angle slack under which a vertex counts as flat (cone angle 2 pi).
pub const FLAT_TOL: f64 = 1e-9;

/// Raw, unvalidated description of a glued surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceData {
    pub num_vertices: usize,
    pub tris: Vec<[usize; 3]>,
    /// Each glued pair listed once.
    pub gluings: Vec<(Slot, Slot)>,
    /// One entry per glued pair, keyed by either slot of the pair.
    pub lengths: Vec<(Slot, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostic {
    SlotOutOfRange(Slot),
    SideGluedTwice(Slot),
    SideUnglued(Slot),
    SelfGluedSide(Slot),
    /// Corner vertex ids across the gluing do not match orientation-reversing.
    MisorientedGluing(Slot, Slot),
    VertexIdOutOfRange { tri: usize, corner: usize, id: usize },
    /// The cyclic walk around a vertex visits corners carrying different ids.
    InconsistentVertexIds { tri: usize, corner: usize },
    /// Two disjoint corner cycles share one declared vertex id.
    PinchedVertex { id: usize },
    UnusedVertexId(usize),
    MissingLength(Slot),
    DuplicateLength(Slot),
    NonpositiveLength { slot: Slot, len: f64 },
    TriangleInequality { tri: usize, sides: [f64; 3] },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::SlotOutOfRange(s) => write!(f, "slot {s:?} out of range"),
            Diagnostic::SideGluedTwice(s) => write!(f, "side {s:?} used twice in gluing"),
            Diagnostic::SideUnglued(s) => write!(f, "side {s:?} not glued"),
            Diagnostic::SelfGluedSide(s) => write!(f, "side {s:?} glued to itself"),
            Diagnostic::MisorientedGluing(a, b) => {
                write!(f, "gluing {a:?} <-> {b:?} does not reverse orientation")
            }
            Diagnostic::VertexIdOutOfRange { tri, corner, id } => {
                write!(f, "triangle {tri} corner {corner}: vertex id {id} out of range")
            }
            Diagnostic::InconsistentVertexIds { tri, corner } => {
                write!(f, "triangle {tri} corner {corner}: vertex id differs along its link")
            }
            Diagnostic::PinchedVertex { id } => {
                write!(f, "vertex {id} has a disconnected link (pinched point)")
            }
            Diagnostic::UnusedVertexId(v) => write!(f, "vertex id {v} unused"),
            Diagnostic::MissingLength(s) => write!(f, "no length for edge of side {s:?}"),
            Diagnostic::DuplicateLength(s) => write!(f, "duplicate length for edge of side {s:?}"),
            Diagnostic::NonpositiveLength { slot, len } => {
                write!(f, "edge of side {slot:?} has nonpositive length {len}")
            }
            Diagnostic::TriangleInequality { tri, sides } => {
                write!(
                    f,
                    "triangle {tri} violates the strict triangle inequality: sides {:?}",
                    sides
                )
            }
        }
    }
}

#[derive(Debug, Clone, Error)]
#[error("invalid surface: {0:?}")]
pub struct InvalidSurface(pub Vec<Diagnostic>);

/// Validates a raw surface description. Empty output means all invariants
/// hold: the gluing is a fixed-point-free involution compatible with the
/// orientation, every vertex link is a single cycle matching the declared
/// vertex ids, and every triangle satisfies the strict triangle inequalities.
pub fn validate(data: &SurfaceData) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let nt = data.tris.len();
    let in_range = |s: Slot| s.0 < nt && s.1 < 3;

    for (t, tri) in data.tris.iter().enumerate() {
        for (k, &id) in tri.iter().enumerate() {
            if id >= data.num_vertices {
                out.push(Diagnostic::VertexIdOutOfRange { tri: t, corner: k, id });
            }
        }
    }

    // Gluing: fixed-point-free involution on slots.
    let mut partner: Vec<[Option<Slot>; 3]> = vec![[None; 3]; nt];
    for &(a, b) in &data.gluings {
        for s in [a, b] {
            if !in_range(s) {
                out.push(Diagnostic::SlotOutOfRange(s));
                return out;
            }
        }
        if a == b {
            out.push(Diagnostic::SelfGluedSide(a));
            continue;
        }
        for (s, o) in [(a, b), (b, a)] {
            if partner[s.0][s.1].is_some() {
                out.push(Diagnostic::SideGluedTwice(s));
            } else {
                partner[s.0][s.1] = Some(o);
            }
        }
    }
    for t in 0..nt {
        for s in 0..3 {
            if partner[t][s].is_none() {
                out.push(Diagnostic::SideUnglued((t, s)));
            }
        }
    }
    if !out.is_empty() {
        return out;
    }

    // Orientation compatibility of corner ids across each gluing.
    for &(a, b) in &data.gluings {
        let (t1, s1) = a;
        let (t2, s2) = b;
        let ok = data.tris[t1][s1] == data.tris[t2][(s2 + 1) % 3]
            && data.tris[t1][(s1 + 1) % 3] == data.tris[t2][s2];
        if !ok {
            out.push(Diagnostic::MisorientedGluing(a, b));
        }
    }

    // Vertex links: walk corner cycles and compare against declared ids.
    let mut seen = vec![[false; 3]; nt];
    let mut cycles_of_id: BTreeMap<usize, usize> = BTreeMap::new();
    for t in 0..nt {
        for k in 0..3 {
            if seen[t][k] {
                continue;
            }
            let id = data.tris[t][k];
            *cycles_of_id.entry(id).or_insert(0) += 1;
            let (mut ct, mut ck) = (t, k);
            loop {
                seen[ct][ck] = true;
                if data.tris[ct][ck] != id {
                    out.push(Diagnostic::InconsistentVertexIds { tri: ct, corner: ck });
                }
                let (nt2, ns2) = partner[ct][ck].unwrap();
                let (nt2, nk2) = (nt2, (ns2 + 1) % 3);
                if (nt2, nk2) == (t, k) {
                    break;
                }
                (ct, ck) = (nt2, nk2);
            }
        }
    }
    for (&id, &count) in &cycles_of_id {
        if count > 1 {
            out.push(Diagnostic::PinchedVertex { id });
        }
    }
    for v in 0..data.num_vertices {
        if !cycles_of_id.contains_key(&v) {
            out.push(Diagnostic::UnusedVertexId(v));
        }
    }

    // Lengths: one per glued pair, positive, triangle inequalities.
    let mut len_of: Vec<[Option<f64>; 3]> = vec![[None; 3]; nt];
    for &(slot, len) in &data.lengths {
        if !in_range(slot) {
            out.push(Diagnostic::SlotOutOfRange(slot));
            continue;
        }
        let other = partner[slot.0][slot.1].unwrap();
        if len_of[slot.0][slot.1].is_some() {
            out.push(Diagnostic::DuplicateLength(slot));
            continue;
        }
        if !(len > 0.0) || !len.is_finite() {
            out.push(Diagnostic::NonpositiveLength { slot, len });
        }
        len_of[slot.0][slot.1] = Some(len);
        len_of[other.0][other.1] = Some(len);
    }
    for t in 0..nt {
        for s in 0..3 {
            if len_of[t][s].is_none() {
                out.push(Diagnostic::MissingLength((t, s)));
            }
        }
    }
    if out.is_empty() {
        for t in 0..nt {
            let sides = [
                len_of[t][0].unwrap(),
                len_of[t][1].unwrap(),
                len_of[t][2].unwrap(),
            ];
            if !hyptrig::triangle_ok(sides[0], sides[1], sides[2]) {
                out.push(Diagnostic::TriangleInequality { tri: t, sides });
            }
        }
    }
    out
}

/// A validated hyperbolic cone-metric on a closed oriented surface.
///
/// All triangulation vertices are marked; cone points are the marked vertices
/// whose angle differs from 2 pi.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeSurface {
    num_vertices: usize,
    tris: Vec<[usize; 3]>,
    glue: Vec<[Slot; 3]>,
    /// Edge id per slot; the two slots of a glued pair share an id.
    edge_of: Vec<[usize; 3]>,
    /// Representative pair of slots per edge.
    edge_slots: Vec<(Slot, Slot)>,
    lengths: Vec<f64>,
}

impl ConeSurface {
    pub fn from_data(data: &SurfaceData) -> Result<ConeSurface, InvalidSurface> {
        let diags = validate(data);
        if !diags.is_empty() {
            return Err(InvalidSurface(diags));
        }
        let nt = data.tris.len();
        let mut glue = vec![[(usize::MAX, usize::MAX); 3]; nt];
        for &(a, b) in &data.gluings {
            glue[a.0][a.1] = b;
            glue[b.0][b.1] = a;
        }
        // Edge ids follow the order of the gluing records, so rebuilding a
        // surface with a reordered record list relabels edges predictably.
        let mut edge_of = vec![[usize::MAX; 3]; nt];
        let mut edge_slots = Vec::new();
        for &(a, b) in &data.gluings {
            let id = edge_slots.len();
            edge_of[a.0][a.1] = id;
            edge_of[b.0][b.1] = id;
            edge_slots.push((a, b));
        }
        let mut lengths = vec![f64::NAN; edge_slots.len()];
        for &(slot, len) in &data.lengths {
            lengths[edge_of[slot.0][slot.1]] = len;
        }
        Ok(ConeSurface {
            num_vertices: data.num_vertices,
            tris: data.tris.clone(),
            glue,
            edge_of,
            edge_slots,
            lengths,
        })
    }

    pub fn to_data(&self) -> SurfaceData {
        SurfaceData {
            num_vertices: self.num_vertices,
            tris: self.tris.clone(),
            gluings: self.edge_slots.clone(),
            lengths: self
                .edge_slots
                .iter()
                .enumerate()
                .map(|(e, &(a, _))| (a, self.lengths[e]))
                .collect(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_tris(&self) -> usize {
        self.tris.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_slots.len()
    }

    pub fn tri(&self, t: usize) -> [usize; 3] {
        self.tris[t]
    }

    pub fn glued(&self, slot: Slot) -> Slot {
        self.glue[slot.0][slot.1]
    }

    pub fn edge_of_slot(&self, slot: Slot) -> usize {
        self.edge_of[slot.0][slot.1]
    }

    pub fn edge_slots(&self, e: usize) -> (Slot, Slot) {
        self.edge_slots[e]
    }

    /// Endpoint vertex ids of an edge (source, target along the first slot).
    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        let ((t, s), _) = self.edge_slots[e];
        (self.tris[t][s], self.tris[t][(s + 1) % 3])
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        self.lengths[e]
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn side_length(&self, t: usize, s: usize) -> f64 {
        self.lengths[self.edge_of[t][s]]
    }

    pub fn side_lengths(&self, t: usize) -> [f64; 3] {
        [
            self.side_length(t, 0),
            self.side_length(t, 1),
            self.side_length(t, 2),
        ]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.num_edges() as i64 + self.num_tris() as i64
    }

    /// Interior angles indexed by corner (not by opposite side).
    pub fn corner_angles(&self, t: usize) -> Result<[f64; 3], TrigError> {
        let [l0, l1, l2] = self.side_lengths(t);
        let a = hyptrig::triangle_angles(l0, l1, l2)?;
        // Angle at corner k is opposite side (k+1) % 3.
        Ok([a[1], a[2], a[0]])
    }

    /// Corners around vertex `v` in cyclic link order, starting anywhere.
    pub fn link_of_vertex(&self, v: usize) -> Vec<(usize, usize)> {
        let start = (0..self.tris.len())
            .flat_map(|t| (0..3).map(move |k| (t, k)))
            .find(|&(t, k)| self.tris[t][k] == v)
            .expect("vertex id unused");
        let mut cyc = vec![start];
        let (mut t, mut k) = start;
        loop {
            let (nt, ns) = self.glue[t][k];
            let next = (nt, (ns + 1) % 3);
            if next == start {
                break;
            }
            cyc.push(next);
            (t, k) = next;
        }
        cyc
    }

    /// Total angle around vertex `v`.
    pub fn cone_angle(&self, v: usize) -> Result<f64, TrigError> {
        let mut total = 0.0;
        for (t, k) in self.link_of_vertex(v) {
            total += self.corner_angles(t)?[k];
        }
        Ok(total)
    }

    pub fn cone_angles(&self) -> Result<Vec<f64>, TrigError> {
        (0..self.num_vertices).map(|v| self.cone_angle(v)).collect()
    }

    /// Angle-defect area: sum over triangles of `pi - angle sum`.
    pub fn area(&self) -> Result<f64, TrigError> {
        let mut total = 0.0;
        for t in 0..self.tris.len() {
            let a = self.corner_angles(t)?;
            total += PI - a[0] - a[1] - a[2];
        }
        Ok(total)
    }

    /// Marked vertices whose cone angle differs from 2 pi beyond [`FLAT_TOL`].
    pub fn cone_points(&self) -> Result<Vec<usize>, TrigError> {
        let mut out = Vec::new();
        for v in 0..self.num_vertices {
            if (self.cone_angle(v)? - 2.0 * PI).abs() > FLAT_TOL {
                out.push(v);
            }
        }
        Ok(out)
    }

    pub fn convexity(&self) -> Result<Convexity, TrigError> {
        let mut flat = Vec::new();
        let mut convex = true;
        for v in 0..self.num_vertices {
            let k = self.cone_angle(v)?;
            if (k - 2.0 * PI).abs() <= FLAT_TOL {
                flat.push(v);
            } else if k > 2.0 * PI {
                convex = false;
            }
        }
        Ok(Convexity { is_convex: convex, flat_vertices: flat })
    }

    /// True iff every cone angle is < 2 pi (flat vertices allowed).
    pub fn is_convex(&self) -> Result<bool, TrigError> {
        Ok(self.convexity()?.is_convex)
    }

    /// Replaces every edge length (same combinatorics). Triangle inequalities
    /// are re-checked and reported.
    pub fn with_lengths(&self, lengths: Vec<f64>) -> Result<ConeSurface, InvalidSurface> {
        assert_eq!(lengths.len(), self.lengths.len());
        let mut s = self.clone();
        s.lengths = lengths;
        let mut diags = Vec::new();
        for t in 0..s.tris.len() {
            let sides = s.side_lengths(t);
            if !hyptrig::triangle_ok(sides[0], sides[1], sides[2]) {
                diags.push(Diagnostic::TriangleInequality { tri: t, sides });
            }
        }
        if diags.is_empty() {
            Ok(s)
        } else {
            Err(InvalidSurface(diags))
        }
    }

    /// Subdivides triangle `t` by a new interior vertex placed at the given
    /// weights in the developed triangle, producing a flat marked vertex
    /// (cone angle exactly 2 pi up to rounding).
    pub fn subdivide_triangle(&self, t: usize, w: [f64; 3]) -> Result<ConeSurface, InvalidSurface> {
        let [l0, l1, l2] = self.side_lengths(t);
        // develop_triangle places side L_i opposite corner i; our side s runs
        // from corner s to s+1, i.e. side s is opposite corner s+2.
        let tri = hyptrig::develop_triangle(l1, l2, l0).map_err(|_| {
            InvalidSurface(vec![Diagnostic::TriangleInequality {
                tri: t,
                sides: [l0, l1, l2],
            }])
        })?;
        let total = w[0] + w[1] + w[2];
        let p = tri[0]
            .scale(w[0] / total)
            .add(&tri[1].scale(w[1] / total))
            .add(&tri[2].scale(w[2] / total))
            .h2_normalize();
        let d = [tri[0].h2_dist(&p), tri[1].h2_dist(&p), tri[2].h2_dist(&p)];

        let mut data = self.to_data();
        let new_v = data.num_vertices;
        data.num_vertices += 1;
        let old = data.tris[t];
        let nt = data.tris.len();
        // Replace t by (v0, v1, p) and append (v1, v2, p), (v2, v0, p).
        data.tris[t] = [old[0], old[1], new_v];
        data.tris.push([old[1], old[2], new_v]);
        data.tris.push([old[2], old[0], new_v]);
        let re_slot = |s: Slot| -> Slot {
            if s.0 == t {
                match s.1 {
                    0 => (t, 0),
                    1 => (nt, 0),
                    _ => (nt + 1, 0),
                }
            } else {
                s
            }
        };
        for g in data.gluings.iter_mut() {
            *g = (re_slot(g.0), re_slot(g.1));
        }
        for l in data.lengths.iter_mut() {
            l.0 = re_slot(l.0);
        }
        // Interior spokes.
        data.gluings.push(((t, 1), (nt, 2)));
        data.gluings.push(((nt, 1), (nt + 1, 2)));
        data.gluings.push(((nt + 1, 1), (t, 2)));
        data.lengths.push(((t, 1), d[1]));
        data.lengths.push(((nt, 1), d[2]));
        data.lengths.push(((nt + 1, 1), d[0]));
        ConeSurface::from_data(&data)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Convexity {
    pub is_convex: bool,
    /// Vertices with cone angle 2 pi within [`FLAT_TOL`].
    pub flat_vertices: Vec<usize>,
}

// ---------------------------------------------------------------------------
// HCS text format
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Error, PartialEq)]
pub enum HcsError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing header `HCS 1`")]
    MissingHeader,
}

/// Prints the HCS text form:
///
/// ```text
/// HCS 1
/// nv <n>
/// nt <m>
/// tri <i> <v0> <v1> <v2>
/// glue <i> <s> <j> <t>
/// len <i> <s> <L>
/// ```
///
/// Floats carry 17 significant digits so parse . print is the identity.
pub fn print_hcs(s: &ConeSurface) -> String {
    let mut out = String::new();
    out.push_str("HCS 1\n");
    out.push_str(&format!("nv {}\n", s.num_vertices()));
    out.push_str(&format!("nt {}\n", s.num_tris()));
    for t in 0..s.num_tris() {
        let v = s.tri(t);
        out.push_str(&format!("tri {} {} {} {}\n", t, v[0], v[1], v[2]));
    }
    for e in 0..s.num_edges() {
        let ((t1, s1), (t2, s2)) = s.edge_slots(e);
        out.push_str(&format!("glue {t1} {s1} {t2} {s2}\n"));
    }
    for e in 0..s.num_edges() {
        let ((t1, s1), _) = s.edge_slots(e);
        out.push_str(&format!("len {t1} {s1} {:.16e}\n", s.edge_length(e)));
    }
    out
}

/// Parses HCS text into a raw surface description (no validation).
pub fn parse_hcs(text: &str) -> Result<SurfaceData, HcsError> {
    let mut data = SurfaceData {
        num_vertices: 0,
        tris: Vec::new(),
        gluings: Vec::new(),
        lengths: Vec::new(),
    };
    let mut tri_rows: BTreeMap<usize, [usize; 3]> = BTreeMap::new();
    let mut nt = 0usize;
    let mut saw_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut it = content.split_whitespace();
        let tag = it.next().unwrap();
        let mut next_usize = |what: &str| -> Result<usize, HcsError> {
            it.next()
                .ok_or_else(|| HcsError::Parse { line, msg: format!("missing {what}") })?
                .parse::<usize>()
                .map_err(|e| HcsError::Parse { line, msg: format!("bad {what}: {e}") })
        };
        match tag {
            "HCS" => {
                let ver = next_usize("version")?;
                if ver != 1 {
                    return Err(HcsError::Parse { line, msg: format!("unsupported version {ver}") });
                }
                saw_header = true;
            }
            "nv" => data.num_vertices = next_usize("vertex count")?,
            "nt" => nt = next_usize("triangle count")?,
            "tri" => {
                let i = next_usize("triangle index")?;
                let v0 = next_usize("v0")?;
                let v1 = next_usize("v1")?;
                let v2 = next_usize("v2")?;
                tri_rows.insert(i, [v0, v1, v2]);
            }
            "glue" => {
                let i = next_usize("triangle")?;
                let s = next_usize("side")?;
                let j = next_usize("triangle")?;
                let t = next_usize("side")?;
                data.gluings.push(((i, s), (j, t)));
            }
            "len" => {
                let i = next_usize("triangle")?;
                let s = next_usize("side")?;
                let raw = it
                    .next()
                    .ok_or_else(|| HcsError::Parse { line, msg: "missing length".into() })?;
                let l: f64 = raw
                    .parse()
                    .map_err(|e| HcsError::Parse { line, msg: format!("bad length: {e}") })?;
                data.lengths.push(((i, s), l));
            }
            other => {
                return Err(HcsError::Parse { line, msg: format!("unknown record `{other}`") })
            }
        }
    }
    if !saw_header {
        return Err(HcsError::MissingHeader);
    }
    if tri_rows.len() != nt || tri_rows.keys().copied().ne(0..nt) {
        return Err(HcsError::Parse {
            line: 0,
            msg: format!("expected triangles 0..{nt}, got {:?}", tri_rows.keys()),
        });
    }
    data.tris = tri_rows.into_values().collect();
    Ok(data)
}

// ---------------------------------------------------------------------------
// Builders used across the crate and its tests
// ---------------------------------------------------------------------------

/// The two-triangle one-vertex torus with edge lengths `l0, l1, l2`
/// (side `i` of each triangle glued to side `i` of the other).
pub fn one_vertex_torus(l0: f64, l1: f64, l2: f64) -> Result<ConeSurface, InvalidSurface> {
    ConeSurface::from_data(&SurfaceData {
        num_vertices: 1,
        tris: vec![[0, 0, 0], [0, 0, 0]],
        gluings: vec![((0, 0), (1, 0)), ((0, 1), (1, 1)), ((0, 2), (1, 2))],
        lengths: vec![((0, 0), l0), ((0, 1), l1), ((0, 2), l2)],
    })
}

/// Genus-2 surface from a regular hyperbolic octagon with the side word
/// `a b a^-1 b^-1 c d c^-1 d^-1`, fan-triangulated from one corner. With
/// `angle_sum = 2 pi` the single marked vertex is flat and this is the
/// standard smooth genus-2 surface.
pub fn regular_genus2(angle_sum: f64) -> Result<ConeSurface, InvalidSurface> {
    let corner = angle_sum / 8.0;
    let vertex_at = |r: f64, k: usize| {
        let th = 2.0 * PI * (k as f64) / 8.0;
        crate::hyptrig::V3::new(r.cosh(), r.sinh() * th.cos(), r.sinh() * th.sin())
    };
    let interior_angle = |r: f64| {
        let p = vertex_at(r, 0);
        let q = vertex_at(r, 1);
        let prev = vertex_at(r, 7);
        p.h2_angle(&q, &prev)
    };
    let mut lo = 0.05f64;
    let mut hi = 20.0f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if interior_angle(mid) > corner {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = 0.5 * (lo + hi);
    let v: Vec<_> = (0..8).map(|k| vertex_at(r, k)).collect();
    let diag = |i: usize, j: usize| v[i].h2_dist(&v[j]);
    let side = diag(0, 1);

    // Fan triangles (0, k+1, k+2), k = 0..6, all corners one surface vertex.
    let tris: Vec<[usize; 3]> = vec![[0; 3]; 6];
    // Octagon boundary edges e0..e7, ei from corner i to i+1. In the fan:
    // e0 = t0.s0, ek = t_{k-1}.s1 for k = 1..=6, e7 = t5.s2.
    let boundary: [Slot; 8] = [
        (0, 0),
        (0, 1),
        (1, 1),
        (2, 1),
        (3, 1),
        (4, 1),
        (5, 1),
        (5, 2),
    ];
    let word_pairs = [(0usize, 2usize), (1, 3), (4, 6), (5, 7)];
    let mut gluings: Vec<(Slot, Slot)> = word_pairs
        .iter()
        .map(|&(i, j)| (boundary[i], boundary[j]))
        .collect();
    let mut lengths: Vec<(Slot, f64)> =
        word_pairs.iter().map(|&(i, _)| (boundary[i], side)).collect();
    // Fan diagonals (corner 0 to corner k), k = 2..=6: t_{k-2}.s2 <-> t_{k-1}.s0.
    for k in 2..7 {
        gluings.push(((k - 2, 2), (k - 1, 0)));
        lengths.push(((k - 2, 2), diag(0, k)));
    }
    ConeSurface::from_data(&SurfaceData { num_vertices: 1, tris, gluings, lengths })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_valid_and_angles() {
        let s = one_vertex_torus(1.0, 1.0, 1.0).unwrap();
        assert_eq!(s.euler_characteristic(), 0);
        let k = s.cone_angle(0).unwrap();
        let equilateral = hyptrig::triangle_angles(1.0, 1.0, 1.0).unwrap()[0];
        assert!((k - 6.0 * equilateral).abs() < 1e-12);
        assert!((k - 5.5132).abs() < 1e-3);
        assert!(s.is_convex().unwrap());
        let area = s.area().unwrap();
        assert!((area - (2.0 * PI - k)).abs() < 1e-12);
        assert!((area - 0.7700).abs() < 1e-3);
    }

    #[test]
    fn torus_violations_diagnosed() {
        let mut data = one_vertex_torus(1.0, 1.0, 1.0).unwrap().to_data();
        data.lengths[2].1 = 3.0;
        let diags = validate(&data);
        assert!(diags
            .iter()
            .any(|d| matches!(d, Diagnostic::TriangleInequality { tri: 0, .. })));

        let mut data2 = one_vertex_torus(1.0, 1.0, 1.0).unwrap().to_data();
        data2.gluings[0] = ((0, 0), (1, 1));
        let diags2 = validate(&data2);
        assert!(!diags2.is_empty());
    }

    #[test]
    fn side_used_twice_diagnosed() {
        let mut data = one_vertex_torus(1.0, 1.0, 1.0).unwrap().to_data();
        data.gluings.push(((0, 0), (1, 2)));
        let diags = validate(&data);
        assert!(diags.iter().any(|d| matches!(d, Diagnostic::SideGluedTwice(_))));
    }

    #[test]
    fn genus2_euler_and_gauss_bonnet() {
        let s = regular_genus2(2.0 * PI).unwrap();
        assert_eq!(s.euler_characteristic(), -2);
        let k = s.cone_angle(0).unwrap();
        assert!((k - 2.0 * PI).abs() < 1e-9, "kappa = {k}");
        let gb = (2.0 * PI - k) - s.area().unwrap() - 2.0 * PI * (-2.0);
        assert!(gb.abs() < 1e-9, "gauss-bonnet residual {gb}");
        let c = s.convexity().unwrap();
        assert!(c.is_convex && c.flat_vertices == vec![0]);
        assert!(s.cone_points().unwrap().is_empty());
    }

    #[test]
    fn genus2_cone_variant() {
        let s = regular_genus2(5.6).unwrap();
        let k = s.cone_angle(0).unwrap();
        assert!((k - 5.6).abs() < 1e-9);
        assert!(s.is_convex().unwrap());
    }

    #[test]
    fn subdivision_preserves_area_and_adds_flat_vertex() {
        let s = one_vertex_torus(1.0, 1.1, 1.2).unwrap();
        let s2 = s.subdivide_triangle(0, [1.0, 1.0, 1.0]).unwrap();
        assert_eq!(s2.num_vertices(), 2);
        assert_eq!(s2.euler_characteristic(), 0);
        assert!((s2.area().unwrap() - s.area().unwrap()).abs() < 1e-10);
        let k = s2.cone_angle(1).unwrap();
        assert!((k - 2.0 * PI).abs() < 1e-10, "new vertex angle {k}");
        assert!((s2.cone_angle(0).unwrap() - s.cone_angle(0).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn hcs_round_trip() {
        let s = one_vertex_torus(0.9, 1.3, 1.7).unwrap();
        let text = print_hcs(&s);
        let data = parse_hcs(&text).unwrap();
        let s2 = ConeSurface::from_data(&data).unwrap();
        assert_eq!(s, s2);
        assert_eq!(text, print_hcs(&s2));
    }

    #[test]
    fn hcs_comments_and_errors() {
        let text = "# comment\nHCS 1\nnv 1\nnt 2\ntri 0 0 0 0\ntri 1 0 0 0\n\
                    glue 0 0 1 0\nglue 0 1 1 1\nglue 0 2 1 2\n\
                    len 0 0 1.0 # trailing\nlen 0 1 1.0\nlen 0 2 1.0\n";
        let s = ConeSurface::from_data(&parse_hcs(text).unwrap()).unwrap();
        assert_eq!(s.num_edges(), 3);
        assert!(parse_hcs("nv 1\n").is_err());
        assert!(parse_hcs("HCS 2\n").is_err());
        assert!(matches!(parse_hcs("HCS 1\nbogus 3\n"), Err(HcsError::Parse { .. })));
    }

    #[test]
    fn relabeling_invariance_of_cone_angle() {
        let s = one_vertex_torus(0.8, 1.0, 1.4).unwrap();
        let data = s.to_data();
        let swap = |slot: Slot| (1 - slot.0, slot.1);
        let swapped = SurfaceData {
            num_vertices: 1,
            tris: vec![data.tris[1], data.tris[0]],
            gluings: data.gluings.iter().map(|&(a, b)| (swap(a), swap(b))).collect(),
            lengths: data.lengths.iter().map(|&(a, l)| (swap(a), l)).collect(),
        };
        let s2 = ConeSurface::from_data(&swapped).unwrap();
        assert!((s.cone_angle(0).unwrap() - s2.cone_angle(0).unwrap()).abs() < 1e-14);
    }
}
