//! Reidemeister moves as rewrites of PD codes, and braid closures.
//!
//! Moves are located through faces: a face is walked counterclockwise as a
//! cycle of corners `(crossing, p)`, and the side leaving corner `(d, p)` is
//! the arc at port `(d, p)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::diagram::{DiagramError, LinkDiagram, Port};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Adds a curl on an arc (`None`: on a crossingless circle). `form`
    /// picks one of the four curls, `0..4`.
    Kink { arc: Option<usize>, form: u8 },
    /// Pushes a finger of the side at `first` across the side at `second`;
    /// both corners lie on one face.
    Poke { first: Port, second: Port, first_over: bool },
    /// Moves a strand across the opposite crossing of the triangular face
    /// containing `corner`.
    Slide { corner: Port },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move does not apply here")]
    NotApplicable,
    #[error("orientation of a component would change")]
    Orientation,
    #[error("rewrite produced an invalid diagram: {0}")]
    Invalid(#[from] DiagramError),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    E,
    N,
    W,
    S,
}

impl Dir {
    fn ccw(self) -> Dir {
        match self {
            Dir::E => Dir::N,
            Dir::N => Dir::W,
            Dir::W => Dir::S,
            Dir::S => Dir::E,
        }
    }

    fn back(self) -> Dir {
        self.ccw().ccw()
    }
}

/// Rays in PD order for a crossing whose under-strand travels along `under`.
fn pd_rays(under: Dir) -> [Dir; 4] {
    let a = under.back();
    [a, a.ccw(), a.ccw().ccw(), a.ccw().ccw().ccw()]
}

fn crossing_from_rays(under: Dir, label: impl Fn(Dir) -> i64) -> [i64; 4] {
    pd_rays(under).map(label)
}

/// Faces as counterclockwise cycles of corners.
pub fn faces(d: &LinkDiagram) -> Vec<Vec<Port>> {
    let (corner, count) = d.corner_faces();
    let mut out = vec![Vec::new(); count];
    let mut seen = vec![[false; 4]; d.crossing_count()];
    for c in 0..d.crossing_count() {
        for p in 0..4u8 {
            if seen[c][p as usize] {
                continue;
            }
            let f = corner[c][p as usize];
            let mut cur = Port::new(c, p);
            loop {
                seen[cur.crossing][cur.pos as usize] = true;
                out[f].push(cur);
                let q = d.opposite_port(cur);
                cur = Port::new(q.crossing, (q.pos + 3) % 4);
                if cur == Port::new(c, p) {
                    break;
                }
            }
        }
    }
    out
}

/// Every move applicable to `d`.
pub fn candidates(d: &LinkDiagram) -> Vec<Move> {
    let mut out = Vec::new();
    for arc in 0..d.arc_count() {
        for form in 0..4 {
            out.push(Move::Kink { arc: Some(arc), form });
        }
    }
    if d.loops() > 0 {
        for form in 0..4 {
            out.push(Move::Kink { arc: None, form });
        }
    }
    for face in faces(d) {
        for &a in &face {
            for &b in &face {
                if d.arc_at(a) != d.arc_at(b) {
                    out.push(Move::Poke { first: a, second: b, first_over: true });
                    out.push(Move::Poke { first: a, second: b, first_over: false });
                }
            }
        }
        if face.len() == 3 && slide_strand(d, &face).is_some() {
            out.push(Move::Slide { corner: face[0] });
        }
    }
    out
}

pub fn apply(d: &LinkDiagram, mv: Move) -> Result<LinkDiagram, MoveError> {
    let mut pd = d.pd();
    let mut next = pd.iter().flatten().copied().max().unwrap_or(0) + 1;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut loops = d.loops();
    let set = |pd: &mut Vec<[i64; 4]>, p: Port, l: i64| pd[p.crossing][p.pos as usize] = l;
    match mv {
        Move::Kink { arc, form } => {
            let (a1, a2, l) = match arc {
                Some(arc) => {
                    if arc >= d.arc_count() {
                        return Err(MoveError::NotApplicable);
                    }
                    let (tail, head) = d.arc_ends(arc);
                    let (a1, a2) = (fresh(), fresh());
                    set(&mut pd, tail, a1);
                    set(&mut pd, head, a2);
                    (a1, a2, fresh())
                }
                None => {
                    if loops == 0 {
                        return Err(MoveError::NotApplicable);
                    }
                    loops -= 1;
                    let a = fresh();
                    (a, a, fresh())
                }
            };
            pd.push(match form % 4 {
                0 => [a1, l, l, a2],
                1 => [a1, a2, l, l],
                2 => [l, a1, a2, l],
                _ => [l, l, a2, a1],
            });
        }
        Move::Poke { first, second, first_over } => {
            if d.arc_at(first) == d.arc_at(second) || !same_face(d, first, second) {
                return Err(MoveError::NotApplicable);
            }
            // Counterclockwise along the face boundary, the finger of the
            // first side descends across the second at its far end and comes
            // back at the near end.
            let (a_start, a_end) = (first, d.opposite_port(first));
            let (b_start, b_end) = (second, d.opposite_port(second));
            let (aa, ab, ac) = (fresh(), fresh(), fresh());
            let (ba, bb, bc) = (fresh(), fresh(), fresh());
            set(&mut pd, a_start, aa);
            set(&mut pd, a_end, ac);
            set(&mut pd, b_start, ba);
            set(&mut pd, b_end, bc);
            let a_fwd = d.is_outgoing(first);
            let b_fwd = d.is_outgoing(second);
            let b_dir = if b_fwd { Dir::E } else { Dir::W };
            // Far crossing: first side runs north to south when forward.
            let far = |r: Dir| match r {
                Dir::N => aa,
                Dir::S => ab,
                Dir::W => bb,
                Dir::E => bc,
            };
            let near = |r: Dir| match r {
                Dir::N => ac,
                Dir::S => ab,
                Dir::W => ba,
                Dir::E => bb,
            };
            let (far_a, near_a) = if a_fwd { (Dir::S, Dir::N) } else { (Dir::N, Dir::S) };
            let (far_u, near_u) = if first_over { (b_dir, b_dir) } else { (far_a, near_a) };
            pd.push(crossing_from_rays(far_u, far));
            pd.push(crossing_from_rays(near_u, near));
        }
        Move::Slide { corner } => {
            let face = faces(d).into_iter().find(|f| f.contains(&corner)).ok_or(MoveError::NotApplicable)?;
            if face.len() != 3 || slide_strand(d, &face).is_none() {
                return Err(MoveError::NotApplicable);
            }
            let old = d.pd();
            for &p in &face {
                let q = d.opposite_port(p);
                let (po, qo) = (p.through(), q.through());
                let inner = fresh();
                set(&mut pd, p, old[qo.crossing][qo.pos as usize]);
                set(&mut pd, q, old[po.crossing][po.pos as usize]);
                set(&mut pd, po, inner);
                set(&mut pd, qo, inner);
            }
        }
    }
    let out = LinkDiagram::from_pd(&pd, loops)?;
    if out.signs()[..d.crossing_count()] != *d.signs() {
        return Err(MoveError::Orientation);
    }
    Ok(out.renumbered())
}

fn same_face(d: &LinkDiagram, a: Port, b: Port) -> bool {
    faces(d).iter().any(|f| f.contains(&a) && f.contains(&b))
}

/// The side of a triangular face lying over both of its crossings, if the
/// three crossings are distinct and the sides are distinct arcs.
fn slide_strand(d: &LinkDiagram, face: &[Port]) -> Option<Port> {
    let crossings: Vec<usize> = face.iter().map(|p| p.crossing).collect();
    if crossings[0] == crossings[1] || crossings[1] == crossings[2] || crossings[0] == crossings[2] {
        return None;
    }
    let arcs: Vec<usize> = face.iter().map(|p| d.arc_at(*p)).collect();
    if arcs[0] == arcs[1] || arcs[1] == arcs[2] || arcs[0] == arcs[2] {
        return None;
    }
    face.iter().copied().find(|&p| p.pos % 2 == 1 && d.opposite_port(p).pos % 2 == 1)
}

/// Closure of a braid on `strands` strands; generator `k > 0` is the
/// positive twist of strands `k` and `k + 1`, `-k` its inverse.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<LinkDiagram, DiagramError> {
    let mut next = 1i64;
    let mut first: Vec<Option<i64>> = vec![None; strands];
    let mut cur: Vec<Option<i64>> = vec![None; strands];
    let mut pd: Vec<[i64; 4]> = Vec::new();
    let label = |cur: &mut Vec<Option<i64>>, first: &mut Vec<Option<i64>>, next: &mut i64, k: usize| match cur[k] {
        Some(l) => l,
        None => {
            let l = *next;
            *next += 1;
            first[k] = Some(l);
            cur[k] = Some(l);
            l
        }
    };
    for &g in word {
        let k = g.unsigned_abs() as usize;
        if k == 0 || k >= strands {
            return Err(DiagramError::Syntax { pos: 0, msg: "braid generator out of range" });
        }
        let (i, j) = (k - 1, k);
        let sw = label(&mut cur, &mut first, &mut next, i);
        let se = label(&mut cur, &mut first, &mut next, j);
        let (nw, ne) = (next, next + 1);
        next += 2;
        pd.push(if g > 0 { [se, ne, nw, sw] } else { [sw, se, ne, nw] });
        cur[i] = Some(nw);
        cur[j] = Some(ne);
    }
    // Close up: the last label on each strand is the first one.
    let mut rename: BTreeMap<i64, i64> = BTreeMap::new();
    let mut loops = 0;
    for k in 0..strands {
        match (cur[k], first[k]) {
            (Some(last), Some(start)) => {
                rename.insert(last, start);
            }
            _ => loops += 1,
        }
    }
    for x in pd.iter_mut() {
        for l in x.iter_mut() {
            while let Some(&r) = rename.get(l) {
                if r == *l {
                    break;
                }
                *l = r;
            }
        }
    }
    Ok(LinkDiagram::from_pd(&pd, loops)?.renumbered())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::jones;

    fn trefoil() -> LinkDiagram {
        LinkDiagram::parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap()
    }

    #[test]
    fn faces_partition_corners() {
        let d = trefoil();
        let f = faces(&d);
        assert_eq!(f.len(), 5);
        assert_eq!(f.iter().map(|x| x.len()).sum::<usize>(), 12);
        assert_eq!(f.iter().filter(|x| x.len() == 3).count(), 2);
    }

    #[test]
    fn every_candidate_preserves_jones() {
        for d in [trefoil(), LinkDiagram::parse("PD[X[4,1,3,2], X[2,3,1,4]]").unwrap(), LinkDiagram::parse("PD[Loop[1]]").unwrap()] {
            let j = jones(&d, true);
            let cands = candidates(&d);
            assert!(!cands.is_empty());
            for mv in cands {
                match apply(&d, mv) {
                    Ok(e) => assert_eq!(jones(&e, true), j, "{:?}", mv),
                    Err(MoveError::Orientation) => {}
                    Err(err) => panic!("{:?}: {}", mv, err),
                }
            }
        }
    }

    #[test]
    fn braid_trefoil() {
        let d = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.writhe(), 3);
        let t = trefoil();
        assert!(jones(&d, true) == jones(&t.mirror(), true));
    }
}
