//! Planar diagrams in PD notation.
//!
//! `X[i,j,k,l]` lists the four arcs at a crossing counterclockwise, starting
//! with the incoming under-strand, so the under-strand runs `i -> k` and the
//! over-strand joins `j` and `l`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: &'static str },
    #[error("arc label {0} must be positive")]
    BadLabel(i64),
    #[error("arc label {label} occurs {count} times, expected 2")]
    LabelCount { label: i64, count: usize },
    #[error("inconsistent orientation on the component through arc {label}")]
    Orientation { label: i64 },
    #[error("diagram is not planar")]
    NotPlanar,
    #[error("too many crossings ({0}); at most 63 are supported")]
    TooLarge(usize),
}

/// A crossing port: crossing index and position `0..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub crossing: usize,
    pub pos: u8,
}

impl Port {
    pub fn new(crossing: usize, pos: u8) -> Self {
        Port { crossing, pos }
    }

    /// The port reached by passing straight through the crossing.
    pub fn through(self) -> Port {
        Port { crossing: self.crossing, pos: (self.pos + 2) % 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    /// Arc indices at each crossing, counterclockwise from the incoming under-strand.
    crossings: Vec<[usize; 4]>,
    /// Original label of each arc index (ascending).
    labels: Vec<i64>,
    /// Each arc runs from `ends[a].0` to `ends[a].1`.
    ends: Vec<(Port, Port)>,
    signs: Vec<i8>,
    loops: usize,
    components: usize,
}

impl LinkDiagram {
    pub fn from_pd(pd: &[[i64; 4]], loops: usize) -> Result<Self, DiagramError> {
        if pd.len() > 63 {
            return Err(DiagramError::TooLarge(pd.len()));
        }
        let mut occurrences: BTreeMap<i64, Vec<Port>> = BTreeMap::new();
        for (d, x) in pd.iter().enumerate() {
            for (p, &label) in x.iter().enumerate() {
                if label <= 0 {
                    return Err(DiagramError::BadLabel(label));
                }
                occurrences.entry(label).or_default().push(Port::new(d, p as u8));
            }
        }
        for (&label, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(DiagramError::LabelCount { label, count: occ.len() });
            }
        }
        let labels: Vec<i64> = occurrences.keys().copied().collect();
        let index: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let crossings: Vec<[usize; 4]> = pd.iter().map(|x| x.map(|l| index[&l])).collect();
        let ports: Vec<[Port; 2]> = occurrences.values().map(|o| [o[0], o[1]]).collect();

        let mut ends: Vec<Option<(Port, Port)>> = vec![None; labels.len()];
        let mut components = loops;
        for start in 0..labels.len() {
            if ends[start].is_some() {
                continue;
            }
            components += 1;
            // Trace one way around, recording (arc, tail, head).
            let mut walk = Vec::new();
            let (mut arc, mut tail) = (start, ports[start][0]);
            loop {
                let head = if ports[arc][0] == tail { ports[arc][1] } else { ports[arc][0] };
                walk.push((arc, tail, head));
                let next_tail = head.through();
                let next_arc = crossings[next_tail.crossing][next_tail.pos as usize];
                if next_arc == start && next_tail == ports[start][0] {
                    break;
                }
                arc = next_arc;
                tail = next_tail;
                if walk.len() > 4 * labels.len() + 4 {
                    return Err(DiagramError::Orientation { label: labels[start] });
                }
            }
            let mut forward = false;
            let mut backward = false;
            for &(_, t, h) in &walk {
                if h.pos == 0 || t.pos == 2 {
                    forward = true;
                }
                if h.pos == 2 || t.pos == 0 {
                    backward = true;
                }
            }
            if forward && backward {
                return Err(DiagramError::Orientation { label: labels[start] });
            }
            if !forward && !backward && walk.len() > 1 {
                // Only over-crossings: follow increasing labels.
                let next = labels[walk[1].0];
                let prev = labels[walk[walk.len() - 1].0];
                backward = prev > next && walk.len() > 2;
            }
            for (a, t, h) in walk {
                ends[a] = Some(if backward { (h, t) } else { (t, h) });
            }
        }
        let ends: Vec<(Port, Port)> = ends.into_iter().map(|e| e.unwrap()).collect();

        let mut signs = vec![0i8; crossings.len()];
        for &(_, head) in &ends {
            if head.pos == 3 {
                signs[head.crossing] = 1;
            } else if head.pos == 1 {
                signs[head.crossing] = -1;
            }
        }
        let diagram = LinkDiagram { crossings, labels, ends, signs, loops, components };
        diagram.check_planar()?;
        Ok(diagram)
    }

    /// Parses `PD[X[1,4,2,5], X[3,6,4,1], ...]`; `Loop[k]` entries add
    /// crossingless circles.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let (pd, loops) = parse_pd_text(text)?;
        Self::from_pd(&pd, loops)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.labels.len()
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn label(&self, arc: usize) -> i64 {
        self.labels[arc]
    }

    pub fn arc_at(&self, port: Port) -> usize {
        self.crossings[port.crossing][port.pos as usize]
    }

    /// `(tail, head)` ports of an arc along the orientation.
    pub fn arc_ends(&self, arc: usize) -> (Port, Port) {
        self.ends[arc]
    }

    /// The other end of the arc attached at `port`.
    pub fn opposite_port(&self, port: Port) -> Port {
        let (t, h) = self.ends[self.arc_at(port)];
        if t == port {
            h
        } else {
            t
        }
    }

    /// True when the arc at `port` leaves the crossing there.
    pub fn is_outgoing(&self, port: Port) -> bool {
        self.ends[self.arc_at(port)].0 == port
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, crossing: usize) -> i8 {
        self.signs[crossing]
    }

    pub fn n_plus(&self) -> usize {
        self.signs.iter().filter(|s| **s > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.signs.iter().filter(|s| **s < 0).count()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    /// PD code with the original labels.
    pub fn pd(&self) -> Vec<[i64; 4]> {
        self.crossings.iter().map(|x| x.map(|a| self.labels[a])).collect()
    }

    pub fn to_pd_string(&self) -> String {
        let mut s = String::from("PD[");
        let mut first = true;
        for x in self.pd() {
            if !first {
                s.push_str(", ");
            }
            first = false;
            s.push_str(&alloc::format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3]));
        }
        for _ in 0..self.loops {
            if !first {
                s.push_str(", ");
            }
            first = false;
            s.push_str("Loop[1]");
        }
        s.push(']');
        s
    }

    /// The mirror image: every crossing changes from over to under.
    pub fn mirror(&self) -> Self {
        let pd: Vec<[i64; 4]> = self
            .pd()
            .into_iter()
            .zip(&self.signs)
            .map(|(x, s)| if *s > 0 { [x[3], x[0], x[1], x[2]] } else { [x[1], x[2], x[3], x[0]] })
            .collect();
        Self::from_pd(&pd, self.loops).expect("mirror of a valid diagram")
    }

    /// Relabels arcs `1..=m` so that each arc is followed along its component
    /// by the next label.
    pub fn renumbered(&self) -> Self {
        let mut new_label = vec![0i64; self.labels.len()];
        let mut next = 1;
        for start in 0..self.labels.len() {
            if new_label[start] != 0 {
                continue;
            }
            let mut a = start;
            while new_label[a] == 0 {
                new_label[a] = next;
                next += 1;
                a = self.arc_at(self.ends[a].1.through());
            }
        }
        let pd: Vec<[i64; 4]> = self.crossings.iter().map(|x| x.map(|a| new_label[a])).collect();
        Self::from_pd(&pd, self.loops).expect("relabelling preserves validity")
    }

    /// Face of each corner; corner `(d, p)` is the sector between positions
    /// `p` and `p + 1` counterclockwise. Faces of split pieces are distinct.
    pub fn corner_faces(&self) -> (Vec<[usize; 4]>, usize) {
        let n = self.crossings.len();
        let mut uf = UnionFind::new(4 * n);
        for d in 0..n {
            for p in 0..4u8 {
                let ray = Port::new(d, (p + 1) % 4);
                let q = self.opposite_port(ray);
                uf.union(4 * d + p as usize, 4 * q.crossing + q.pos as usize);
            }
        }
        let mut ids = BTreeMap::new();
        let mut out = vec![[0usize; 4]; n];
        for d in 0..n {
            for p in 0..4 {
                let r = uf.find(4 * d + p);
                let len = ids.len();
                out[d][p] = *ids.entry(r).or_insert(len);
            }
        }
        (out, ids.len())
    }

    /// Two-colouring of faces with adjacent faces coloured differently;
    /// `true` is black. Returns `None` if no such colouring exists.
    pub fn checkerboard(&self) -> Option<(Vec<[usize; 4]>, Vec<bool>)> {
        let (faces, nf) = self.corner_faces();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nf];
        for corners in &faces {
            for p in 0..4 {
                let (a, b) = (corners[(p + 3) % 4], corners[p]);
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut color: Vec<Option<bool>> = vec![None; nf];
        for s in 0..nf {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(true);
            let mut stack = vec![s];
            while let Some(f) = stack.pop() {
                let c = color[f].unwrap();
                for &g in &adj[f] {
                    match color[g] {
                        None => {
                            color[g] = Some(!c);
                            stack.push(g);
                        }
                        Some(cg) if cg == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some((faces, color.into_iter().map(|c| c.unwrap()).collect()))
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        // Each connected piece must satisfy V - E + F = 2.
        let mut uf = UnionFind::new(n);
        for &(t, h) in &self.ends {
            uf.union(t.crossing, h.crossing);
        }
        let (faces, _) = self.corner_faces();
        let mut piece_faces: BTreeMap<usize, alloc::collections::BTreeSet<usize>> = BTreeMap::new();
        let mut piece_vertices: BTreeMap<usize, i64> = BTreeMap::new();
        for (d, corners) in faces.iter().enumerate() {
            let r = uf.find(d);
            *piece_vertices.entry(r).or_insert(0) += 1;
            piece_faces.entry(r).or_default().extend(corners.iter().copied());
        }
        for (r, v) in piece_vertices {
            let f = piece_faces[&r].len() as i64;
            let e = 2 * v;
            if v - e + f != 2 {
                return Err(DiagramError::NotPlanar);
            }
        }
        if self.checkerboard().is_none() {
            return Err(DiagramError::NotPlanar);
        }
        Ok(())
    }
}

/// Plain union-find over `0..n`.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

fn parse_pd_text(text: &str) -> Result<(Vec<[i64; 4]>, usize), DiagramError> {
    let mut p = Parser { s: text.as_bytes(), i: 0 };
    p.ws();
    p.expect(b"PD")?;
    p.ws();
    p.expect(b"[")?;
    let mut pd = Vec::new();
    let mut loops = 0;
    p.ws();
    if p.peek() == Some(b']') {
        p.i += 1;
    } else {
        loop {
            p.ws();
            if p.starts_with(b"Loop") {
                p.expect(b"Loop")?;
                p.ws();
                p.expect(b"[")?;
                p.ws();
                let k = p.int()?;
                if k < 0 {
                    return Err(DiagramError::Syntax { pos: p.i, msg: "negative loop count" });
                }
                loops += k as usize;
                p.ws();
                p.expect(b"]")?;
            } else {
                p.expect(b"X")?;
                p.ws();
                p.expect(b"[")?;
                let mut x = [0i64; 4];
                for (k, slot) in x.iter_mut().enumerate() {
                    p.ws();
                    *slot = p.int()?;
                    p.ws();
                    p.expect(if k < 3 { b"," } else { b"]" })?;
                }
                pd.push(x);
            }
            p.ws();
            match p.peek() {
                Some(b',') => p.i += 1,
                Some(b']') => {
                    p.i += 1;
                    break;
                }
                _ => return Err(DiagramError::Syntax { pos: p.i, msg: "expected ',' or ']'" }),
            }
        }
    }
    p.ws();
    if p.i != p.s.len() {
        return Err(DiagramError::Syntax { pos: p.i, msg: "trailing input" });
    }
    Ok((pd, loops))
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }
    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }
    fn starts_with(&self, lit: &[u8]) -> bool {
        self.s[self.i..].starts_with(lit)
    }
    fn expect(&mut self, lit: &'static [u8]) -> Result<(), DiagramError> {
        if self.starts_with(lit) {
            self.i += lit.len();
            Ok(())
        } else {
            Err(DiagramError::Syntax { pos: self.i, msg: "unexpected token" })
        }
    }
    fn int(&mut self) -> Result<i64, DiagramError> {
        let start = self.i;
        if self.peek() == Some(b'-') {
            self.i += 1;
        }
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.i += 1;
        }
        core::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or(DiagramError::Syntax { pos: start, msg: "expected integer" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]";
    const FIGURE_EIGHT: &str = "PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]";

    #[test]
    fn trefoil_signs() {
        let d = LinkDiagram::parse(TREFOIL).unwrap();
        assert_eq!(d.signs(), &[-1, -1, -1]);
        assert_eq!(d.component_count(), 1);
        let m = d.mirror();
        assert_eq!(m.signs(), &[1, 1, 1]);
        assert_eq!(m.mirror().pd(), d.pd());
    }

    #[test]
    fn figure_eight_signs() {
        let d = LinkDiagram::parse(FIGURE_EIGHT).unwrap();
        assert_eq!(d.signs(), &[1, 1, -1, -1]);
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn kinks() {
        assert_eq!(LinkDiagram::parse("PD[X[1,1,2,2]]").unwrap().signs(), &[1]);
        assert_eq!(LinkDiagram::parse("PD[X[1,2,2,1]]").unwrap().signs(), &[-1]);
    }

    #[test]
    fn hopf_link_has_two_components() {
        let d = LinkDiagram::parse("PD[X[4,1,3,2], X[2,3,1,4]]").unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.signs()[0], d.signs()[1]);
    }

    #[test]
    fn loops_and_empty() {
        let d = LinkDiagram::parse("PD[Loop[2]]").unwrap();
        assert_eq!((d.crossing_count(), d.component_count()), (0, 2));
        assert_eq!(LinkDiagram::parse("PD[]").unwrap().component_count(), 0);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            LinkDiagram::parse("PD[X[1,2,3,4]]").unwrap_err(),
            DiagramError::LabelCount { label: 1, count: 1 }
        );
        assert!(matches!(LinkDiagram::parse("PD[X[1,2,3]]"), Err(DiagramError::Syntax { .. })));
        assert_eq!(LinkDiagram::parse("PD[X[0,0,1,1]]").unwrap_err(), DiagramError::BadLabel(0));
        // Under-strand entering at both ends of one component.
        assert!(matches!(
            LinkDiagram::parse("PD[X[1,4,2,5], X[3,6,4,1], X[2,5,3,6]]"),
            Err(DiagramError::Orientation { .. }) | Err(DiagramError::NotPlanar)
        ));
    }

    #[test]
    fn faces_of_trefoil() {
        let d = LinkDiagram::parse(TREFOIL).unwrap();
        let (_, nf) = d.corner_faces();
        assert_eq!(nf, 5);
        assert!(d.checkerboard().is_some());
    }

    #[test]
    fn renumbering_follows_orientation() {
        let d = LinkDiagram::parse("PD[X[10,40,20,50], X[30,60,40,10], X[50,20,60,30]]").unwrap();
        let r = d.renumbered();
        for a in 0..r.arc_count() {
            let next = r.arc_at(r.arc_ends(a).1.through());
            assert_eq!(r.label(next), r.label(a) % 6 + 1);
        }
        assert_eq!(r.signs(), d.signs());
    }
}
