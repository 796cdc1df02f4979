//! Units on cube edges from closed foam evaluation.
//!
//! Faces of the diagram are checkerboard coloured. An arc is in the agree
//! class when the black face lies on its left. Every circle of a resolution
//! is traversed with black on its left, so agree segments run with the
//! link orientation and singular points separate runs of opposite class.
//!
//! A circle is capped off by one disk per run of disagree segments plus one
//! central disk containing all agree segments; chords between consecutive
//! singular points are seams, with the disagree side preferred. The basis
//! element `X` is the disk with a dot on its agree region (negated when the
//! circle has only disagree segments).
//!
//! For an edge of the cube the saddle cobordism, the vertical pieces over
//! the affected circles and these disks glue into closed foams. Evaluating
//! them against the pairing of the target gives the edge map in the basis,
//! which must be a unit multiple of the multiplication or comultiplication.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{Coefficient, GaussianInt, GaussianPolynomial};
use crate::diagram::{LinkDiagram, Port, UnionFind};
use crate::foamval::{evaluate_foam, ClosedFoam, Facet, Seam};
use crate::frobenius;
use crate::state::{is_piecewise, smoothing, CubeState};

use super::{ComplexError, EdgeKind};

type P = GaussianPolynomial;

/// Agree class of each arc.
pub fn arc_classes(d: &LinkDiagram) -> Vec<bool> {
    if d.crossing_count() == 0 {
        return Vec::new();
    }
    let (faces, black) = d.checkerboard().expect("validated diagrams are planar");
    (0..d.arc_count())
        .map(|a| {
            let tail = d.arc_ends(a).0;
            black[faces[tail.crossing][tail.pos as usize]]
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum VKey {
    Port(Port, u8),
    Mid(usize, u8, u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum EKey {
    Vert(Port),
    Arc(usize, u8),
    Conn(usize, u8, u8),
    Half(usize, u8, u8, u8),
    VSeam(usize, u8),
    Chord(u8, usize, usize),
    Saddle,
}

impl EKey {
    fn is_seam(self) -> bool {
        matches!(self, EKey::VSeam(..) | EKey::Chord(..) | EKey::Saddle)
    }
}

struct LevelEdge {
    key: EKey,
    agree: bool,
    from: VKey,
    to: VKey,
}

struct FaceRec {
    agree: bool,
    edges: Vec<EKey>,
}

#[derive(Default)]
struct Builder {
    edges: BTreeMap<EKey, (VKey, VKey)>,
    faces: Vec<FaceRec>,
}

impl Builder {
    fn edge(&mut self, key: EKey, a: VKey, b: VKey) -> EKey {
        self.edges.insert(key, (a, b));
        key
    }

    fn face(&mut self, agree: bool, edges: Vec<EKey>) -> usize {
        self.faces.push(FaceRec { agree, edges });
        self.faces.len() - 1
    }
}

/// Position of the connection containing `pos` and its partner.
fn connection(bit: u8, pos: u8) -> (u8, u8) {
    for (s, (p, q)) in smoothing(bit).into_iter().enumerate() {
        if p == pos {
            return (s as u8, q);
        }
        if q == pos {
            return (s as u8, p);
        }
    }
    unreachable!()
}

struct Geometry<'a> {
    d: &'a LinkDiagram,
    agree: &'a [bool],
    levels: [CubeState; 2],
}

impl Geometry<'_> {
    /// Level edges of the circle through `start_arc`, traversed with black on the left.
    fn trace(&self, start_arc: usize, t: u8) -> Vec<LevelEdge> {
        let state = self.levels[t as usize];
        let (tail, head) = self.d.arc_ends(start_arc);
        let (x0, y0) = if self.agree[start_arc] { (tail, head) } else { (head, tail) };
        let mut out = Vec::new();
        let (mut a, mut x, mut y) = (start_arc, x0, y0);
        loop {
            out.push(LevelEdge {
                key: EKey::Arc(a, t),
                agree: self.agree[a],
                from: VKey::Port(x, t),
                to: VKey::Port(y, t),
            });
            let bit = state.bit(y.crossing);
            let (s, p2) = connection(bit, y.pos);
            let next = Port::new(y.crossing, p2);
            let next_arc = self.d.arc_at(next);
            if is_piecewise(self.d.sign(y.crossing), bit) {
                let mid = VKey::Mid(y.crossing, s, t);
                out.push(LevelEdge {
                    key: EKey::Half(y.crossing, s, y.pos, t),
                    agree: self.agree[a],
                    from: VKey::Port(y, t),
                    to: mid,
                });
                out.push(LevelEdge {
                    key: EKey::Half(y.crossing, s, p2, t),
                    agree: self.agree[next_arc],
                    from: mid,
                    to: VKey::Port(next, t),
                });
            } else {
                out.push(LevelEdge {
                    key: EKey::Conn(y.crossing, s, t),
                    agree: self.agree[a],
                    from: VKey::Port(y, t),
                    to: VKey::Port(next, t),
                });
            }
            a = next_arc;
            x = next;
            y = self.d.opposite_port(next);
            if a == start_arc && x == x0 {
                break;
            }
        }
        out
    }
}

/// Adds the disks capping one circle; returns the face carrying the dot and
/// the sign attached to `X`.
fn cap_circle(b: &mut Builder, edges: &[LevelEdge], t: u8, circle: usize) -> (usize, bool) {
    for e in edges {
        b.edge(e.key, e.from, e.to);
    }
    if edges.iter().all(|e| e.agree == edges[0].agree) {
        let f = b.face(edges[0].agree, edges.iter().map(|e| e.key).collect());
        return (f, edges[0].agree);
    }
    let n = edges.len();
    let start = (0..n).find(|&i| !edges[i].agree && edges[(i + n - 1) % n].agree).unwrap();
    let mut central: Vec<EKey> = edges.iter().filter(|e| e.agree).map(|e| e.key).collect();
    let mut run: Vec<usize> = Vec::new();
    let mut run_id = 0;
    for k in 0..n {
        let i = (start + k) % n;
        if !edges[i].agree {
            run.push(i);
        }
        let ends_run = !edges[i].agree && edges[(i + 1) % n].agree;
        if ends_run {
            let first = &edges[run[0]];
            let last = &edges[*run.last().unwrap()];
            let chord = b.edge(EKey::Chord(t, circle, run_id), last.to, first.from);
            let mut small: Vec<EKey> = run.iter().map(|&j| edges[j].key).collect();
            small.push(chord);
            b.face(false, small);
            central.push(chord);
            run.clear();
            run_id += 1;
        }
    }
    (b.face(true, central), true)
}

/// Closed foam pieces shared by every basis pairing of one cobordism.
struct FoamShape {
    foam: ClosedFoam,
    facet_of_face: Vec<usize>,
}

fn assemble(b: &Builder) -> Result<FoamShape, ComplexError> {
    let nf = b.faces.len();
    let mut incident: BTreeMap<EKey, Vec<usize>> = BTreeMap::new();
    for (f, face) in b.faces.iter().enumerate() {
        for e in &face.edges {
            incident.entry(*e).or_default().push(f);
        }
    }
    let mut uf = UnionFind::new(nf);
    for (e, fs) in &incident {
        if fs.len() != 2 {
            return Err(ComplexError::MalformedFoam);
        }
        if !e.is_seam() {
            uf.union(fs[0], fs[1]);
        }
    }
    let mut facet_id = BTreeMap::new();
    let facet_of_face: Vec<usize> = (0..nf)
        .map(|f| {
            let r = uf.find(f);
            let len = facet_id.len();
            *facet_id.entry(r).or_insert(len)
        })
        .collect();
    let nfacets = facet_id.len();

    let mut faces_in = vec![0i64; nfacets];
    for f in 0..nf {
        faces_in[facet_of_face[f]] += 1;
    }
    let mut edges_in = vec![0i64; nfacets];
    let mut verts: Vec<BTreeSet<VKey>> = vec![BTreeSet::new(); nfacets];
    for (e, fs) in &incident {
        if e.is_seam() {
            continue;
        }
        let facet = facet_of_face[fs[0]];
        edges_in[facet] += 1;
        let (a, c) = b.edges[e];
        for v in [a, c] {
            if matches!(v, VKey::Port(..)) {
                verts[facet].insert(v);
            }
        }
    }

    // Seam circles: seam edges joined at their midpoint vertices.
    let seam_edges: Vec<EKey> = incident.keys().copied().filter(|e| e.is_seam()).collect();
    let mut at_vertex: BTreeMap<VKey, Vec<usize>> = BTreeMap::new();
    for (i, e) in seam_edges.iter().enumerate() {
        let (a, c) = b.edges[e];
        at_vertex.entry(a).or_default().push(i);
        at_vertex.entry(c).or_default().push(i);
    }
    let mut suf = UnionFind::new(seam_edges.len());
    for es in at_vertex.values() {
        if es.len() != 2 {
            return Err(ComplexError::MalformedFoam);
        }
        suf.union(es[0], es[1]);
    }
    let mut seams = Vec::new();
    let mut boundary = vec![0i64; nfacets];
    let mut seen = BTreeSet::new();
    for (i, e) in seam_edges.iter().enumerate() {
        if !seen.insert(suf.find(i)) {
            continue;
        }
        let fs = &incident[e];
        let (f0, f1) = (fs[0], fs[1]);
        let (pref, other) = match (b.faces[f0].agree, b.faces[f1].agree) {
            (false, true) => (f0, f1),
            (true, false) => (f1, f0),
            _ => return Err(ComplexError::MalformedFoam),
        };
        let seam = Seam { preferred: facet_of_face[pref], other: facet_of_face[other] };
        boundary[seam.preferred] += 1;
        boundary[seam.other] += 1;
        seams.push(seam);
    }

    let mut facets = Vec::with_capacity(nfacets);
    for f in 0..nfacets {
        let chi = faces_in[f] - edges_in[f] + verts[f].len() as i64;
        let twice_genus = 2 - chi - boundary[f];
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(ComplexError::MalformedFoam);
        }
        facets.push(Facet { genus: (twice_genus / 2) as u32, dots: 0 });
    }
    let foam = ClosedFoam::from_seams(facets, seams).map_err(|_| ComplexError::MalformedFoam)?;
    Ok(FoamShape { foam, facet_of_face })
}

struct Capped {
    face: usize,
    positive: bool,
}

/// Builds the cobordism between two resolutions over the given circles.
/// With `saddle = Some(c)` the resolutions differ at crossing `c` only.
fn cobordism(
    g: &Geometry<'_>,
    bottom: &[usize],
    top: &[usize],
    saddle: Option<usize>,
) -> Result<(FoamShape, Vec<Capped>, Vec<Capped>), ComplexError> {
    let mut b = Builder::default();
    let mut caps: [Vec<Capped>; 2] = [Vec::new(), Vec::new()];
    let mut level_edges: [Vec<Vec<LevelEdge>>; 2] = [Vec::new(), Vec::new()];
    for (t, starts) in [(0u8, bottom), (1u8, top)] {
        for (i, &arc) in starts.iter().enumerate() {
            let edges = g.trace(arc, t);
            let (face, positive) = cap_circle(&mut b, &edges, t, i);
            caps[t as usize].push(Capped { face, positive });
            level_edges[t as usize].push(edges);
        }
    }

    let mut arcs = BTreeSet::new();
    for e in level_edges[0].iter().flatten() {
        match e.key {
            EKey::Arc(a, _) => {
                arcs.insert(a);
            }
            EKey::Conn(dd, s, _) if Some(dd) != saddle => {
                let (p, q) = smoothing(g.levels[0].bit(dd))[s as usize];
                let (pp, qp) = (Port::new(dd, p), Port::new(dd, q));
                let v0 = b.edge(EKey::Vert(pp), VKey::Port(pp, 0), VKey::Port(pp, 1));
                let v1 = b.edge(EKey::Vert(qp), VKey::Port(qp, 0), VKey::Port(qp, 1));
                b.face(g.agree[g.d.arc_at(pp)], vec![e.key, EKey::Conn(dd, s, 1), v0, v1]);
            }
            EKey::Half(dd, s, p, _) if Some(dd) != saddle => {
                let pp = Port::new(dd, p);
                let v = b.edge(EKey::Vert(pp), VKey::Port(pp, 0), VKey::Port(pp, 1));
                let seam = b.edge(EKey::VSeam(dd, s), VKey::Mid(dd, s, 0), VKey::Mid(dd, s, 1));
                b.face(g.agree[g.d.arc_at(pp)], vec![e.key, EKey::Half(dd, s, p, 1), v, seam]);
            }
            _ => {}
        }
    }
    for &a in &arcs {
        let (x, y) = g.d.arc_ends(a);
        let vx = b.edge(EKey::Vert(x), VKey::Port(x, 0), VKey::Port(x, 1));
        let vy = b.edge(EKey::Vert(y), VKey::Port(y, 0), VKey::Port(y, 1));
        b.face(g.agree[a], vec![EKey::Arc(a, 0), EKey::Arc(a, 1), vx, vy]);
    }

    if let Some(c) = saddle {
        let sign = g.d.sign(c);
        let t_pw: u8 = if is_piecewise(sign, g.levels[0].bit(c)) { 0 } else { 1 };
        let t_or = 1 - t_pw;
        let pw_bit = g.levels[t_pw as usize].bit(c);
        let or_bit = g.levels[t_or as usize].bit(c);
        let chord = b.edge(EKey::Saddle, VKey::Mid(c, 0, t_pw), VKey::Mid(c, 1, t_pw));
        for (s, (p, q)) in smoothing(or_bit).into_iter().enumerate() {
            let (sp, _) = connection(pw_bit, p);
            let (sq, _) = connection(pw_bit, q);
            let (pp, qp) = (Port::new(c, p), Port::new(c, q));
            let vp = b.edge(EKey::Vert(pp), VKey::Port(pp, 0), VKey::Port(pp, 1));
            let vq = b.edge(EKey::Vert(qp), VKey::Port(qp, 0), VKey::Port(qp, 1));
            b.face(
                g.agree[g.d.arc_at(pp)],
                vec![
                    EKey::Conn(c, s as u8, t_or),
                    vp,
                    vq,
                    EKey::Half(c, sp, p, t_pw),
                    EKey::Half(c, sq, q, t_pw),
                    chord,
                ],
            );
        }
    }

    let shape = assemble(&b)?;
    let [bottom_caps, top_caps] = caps;
    Ok((shape, bottom_caps, top_caps))
}

/// Value of the foam with dots on the given cap faces.
fn pairing(shape: &FoamShape, dotted: &[(&Capped, bool)]) -> P {
    let mut foam = shape.foam.clone();
    let mut sign = true;
    for (cap, has_dot) in dotted {
        if *has_dot {
            foam.add_dot(shape.facet_of_face[cap.face]);
            if !cap.positive {
                sign = !sign;
            }
        }
    }
    let v = evaluate_foam(&foam);
    if sign {
        v
    } else {
        v.neg()
    }
}

fn bits(word: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| word >> i & 1 == 1).collect()
}

/// Inverse of a 2x2 matrix with unit determinant.
fn inverse2(m: &[[P; 2]; 2]) -> Option<[[P; 2]; 2]> {
    let det = m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]));
    let inv = det.pivot_inverse()?;
    Some([
        [m[1][1].mul(&inv), m[0][1].neg().mul(&inv)],
        [m[1][0].neg().mul(&inv), m[0][0].mul(&inv)],
    ])
}

/// Inverse pairing matrix of one circle, from the identity cobordism.
fn gram_inverse(g_top: &Geometry<'_>, arc: usize) -> Result<[[P; 2]; 2], ComplexError> {
    let (shape, bottom, top) = cobordism(g_top, &[arc], &[arc], None)?;
    let mut gm = [[P::zero(), P::zero()], [P::zero(), P::zero()]];
    for (v, row) in gm.iter_mut().enumerate() {
        for (u, slot) in row.iter_mut().enumerate() {
            *slot = pairing(&shape, &[(&top[0], v == 1), (&bottom[0], u == 1)]);
        }
    }
    inverse2(&gm).ok_or(ComplexError::DegeneratePairing)
}

/// Unit `u` such that the edge map equals `u` times the multiplication or
/// comultiplication on the affected circles.
#[allow(clippy::too_many_arguments)]
pub fn edge_unit(
    d: &LinkDiagram,
    agree: &[bool],
    source: CubeState,
    crossing: usize,
    src_arcs: &[usize],
    tgt_arcs: &[usize],
    kind: EdgeKind,
) -> Result<GaussianInt, ComplexError> {
    let target = source.with(crossing);
    let g = Geometry { d, agree, levels: [source, target] };
    let g_top = Geometry { d, agree, levels: [target, target] };
    let (shape, bottom, top) = cobordism(&g, src_arcs, tgt_arcs, Some(crossing))?;
    let ginv: Vec<[[P; 2]; 2]> = tgt_arcs.iter().map(|&a| gram_inverse(&g_top, a)).collect::<Result<_, _>>()?;

    let ns = src_arcs.len();
    let nt = tgt_arcs.len();
    let mut e = vec![vec![P::zero(); 1 << ns]; 1 << nt];
    for (v, row) in e.iter_mut().enumerate() {
        for (w, slot) in row.iter_mut().enumerate() {
            let mut dotted = Vec::new();
            for (i, x) in bits(v, nt).into_iter().enumerate() {
                dotted.push((&top[i], x));
            }
            for (i, x) in bits(w, ns).into_iter().enumerate() {
                dotted.push((&bottom[i], x));
            }
            *slot = pairing(&shape, &dotted);
        }
    }
    let mut m = vec![vec![P::zero(); 1 << ns]; 1 << nt];
    for (u, row) in m.iter_mut().enumerate() {
        for (w, slot) in row.iter_mut().enumerate() {
            let mut acc = P::zero();
            for (v, erow) in e.iter().enumerate() {
                let mut coeff = erow[w].clone();
                for i in 0..nt {
                    coeff = coeff.mul(&ginv[i][u >> i & 1][v >> i & 1]);
                }
                acc = acc.add(&coeff);
            }
            *slot = acc;
        }
    }

    let reference = reference_map(kind);
    let (ru, rw) = match kind {
        EdgeKind::Merge => (0, 0),
        EdgeKind::Split => (2, 0),
    };
    let unit = m[ru][rw].as_constant().filter(|c| c.is_unit()).ok_or(ComplexError::NonUnitEdge {
        state: source.0,
        crossing,
    })?;
    let up = P::constant(unit.clone());
    for (u, row) in m.iter().enumerate() {
        for (w, val) in row.iter().enumerate() {
            if *val != reference[u][w].mul(&up) {
                return Err(ComplexError::NonUnitEdge { state: source.0, crossing });
            }
        }
    }
    Ok(unit)
}

/// Matrix of the multiplication (two circles to one) or comultiplication,
/// rows indexed by target words and columns by source words.
fn reference_map(kind: EdgeKind) -> Vec<Vec<P>> {
    match kind {
        EdgeKind::Merge => {
            let mut m = vec![vec![P::zero(); 4]; 2];
            for w in 0..4usize {
                let (b, k) = frobenius::merge_basis((w & 1) as u8, (w >> 1) as u8);
                m[b as usize][w] = k;
            }
            m
        }
        EdgeKind::Split => {
            let mut m = vec![vec![P::zero(); 2]; 4];
            for w in 0..2usize {
                for ((l, r), k) in frobenius::split_basis(w as u8) {
                    m[(l as usize) | (r as usize) << 1][w] = k;
                }
            }
            m
        }
    }
}
