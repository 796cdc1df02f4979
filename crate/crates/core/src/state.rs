//! Resolutions of a diagram and the graded state sum.
//!
//! Bit `c` of a state selects the smoothing at crossing `c`: bit `0` joins
//! positions `{0,3}` and `{1,2}`, bit `1` joins `{0,1}` and `{2,3}`. For a
//! positive crossing the `1` smoothing is the oriented one; for a negative
//! crossing it is the `0` smoothing. The other smoothing carries two
//! singular points, a sink (both arcs incoming) and a source.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::LaurentPoly;
use crate::diagram::{LinkDiagram, Port, UnionFind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeState(pub u64);

impl CubeState {
    pub fn bit(self, c: usize) -> u8 {
        ((self.0 >> c) & 1) as u8
    }

    pub fn height(self) -> u32 {
        self.0.count_ones()
    }

    pub fn with(self, c: usize) -> CubeState {
        CubeState(self.0 | (1 << c))
    }

    /// Number of `1` bits below position `c`.
    pub fn ones_below(self, c: usize) -> u32 {
        (self.0 & ((1u64 << c) - 1)).count_ones()
    }
}

/// The two connections of a smoothing, as position pairs.
pub fn smoothing(bit: u8) -> [(u8, u8); 2] {
    if bit == 0 {
        [(0, 3), (1, 2)]
    } else {
        [(0, 1), (2, 3)]
    }
}

/// True when `bit` selects the smoothing with singular points.
pub fn is_piecewise(sign: i8, bit: u8) -> bool {
    (sign > 0) == (bit == 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebComponent {
    /// Arcs on this circle, ascending.
    pub arcs: Vec<usize>,
    pub singular_points: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub state: CubeState,
    /// Circles through crossings, ordered by smallest arc, followed by the
    /// crossingless loops (which carry no arcs).
    pub circles: Vec<WebComponent>,
    pub circle_of_arc: Vec<usize>,
}

impl Resolution {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circle_at(&self, d: &LinkDiagram, port: Port) -> usize {
        self.circle_of_arc[d.arc_at(port)]
    }
}

pub fn resolve(d: &LinkDiagram, state: CubeState) -> Resolution {
    let n = d.crossing_count();
    let mut uf = UnionFind::new(4 * n);
    let idx = |p: Port| 4 * p.crossing + p.pos as usize;
    for a in 0..d.arc_count() {
        let (t, h) = d.arc_ends(a);
        uf.union(idx(t), idx(h));
    }
    let mut piecewise_roots = Vec::new();
    for c in 0..n {
        let bit = state.bit(c);
        for (p, q) in smoothing(bit) {
            uf.union(idx(Port::new(c, p)), idx(Port::new(c, q)));
            if is_piecewise(d.sign(c), bit) {
                piecewise_roots.push(idx(Port::new(c, p)));
            }
        }
    }
    let mut circle_of_root = vec![usize::MAX; 4 * n];
    let mut circles: Vec<WebComponent> = Vec::new();
    let mut circle_of_arc = vec![0; d.arc_count()];
    for (a, slot) in circle_of_arc.iter_mut().enumerate() {
        let r = uf.find(idx(d.arc_ends(a).0));
        if circle_of_root[r] == usize::MAX {
            circle_of_root[r] = circles.len();
            circles.push(WebComponent { arcs: Vec::new(), singular_points: 0 });
        }
        let ci = circle_of_root[r];
        circles[ci].arcs.push(a);
        *slot = ci;
    }
    for p in piecewise_roots {
        let r = uf.find(p);
        circles[circle_of_root[r]].singular_points += 1;
    }
    for _ in 0..d.loops() {
        circles.push(WebComponent { arcs: Vec::new(), singular_points: 0 });
    }
    Resolution { state, circles, circle_of_arc }
}

/// Homological degree of a vertex.
pub fn homological_degree(d: &LinkDiagram, state: CubeState) -> i64 {
    state.height() as i64 - d.n_plus() as i64
}

/// Quantum shift of a vertex.
pub fn quantum_shift(d: &LinkDiagram, state: CubeState) -> i64 {
    2 * d.n_plus() as i64 - d.n_minus() as i64 - state.height() as i64
}

/// Evaluation of a resolution: closed webs evaluate to `[2]^k`.
pub fn bracket(res: &Resolution) -> LaurentPoly {
    LaurentPoly::quantum_two().pow(res.circle_count() as u32)
}

/// The unnormalised quantum sl(2) invariant, summed over resolutions.
pub fn quantum_sl2(d: &LinkDiagram) -> LaurentPoly {
    let n = d.crossing_count();
    let mut total = LaurentPoly::zero();
    for s in 0..(1u64 << n) {
        let state = CubeState(s);
        let mut weight = LaurentPoly::one();
        for c in 0..n {
            let bit = state.bit(c);
            let w = match (d.sign(c) > 0, is_piecewise(d.sign(c), bit)) {
                (true, false) => LaurentPoly::monomial(1, 1),
                (true, true) => LaurentPoly::monomial(-1, 2),
                (false, false) => LaurentPoly::monomial(1, -1),
                (false, true) => LaurentPoly::monomial(-1, -2),
            };
            weight = &weight * &w;
        }
        total = &total + &(&weight * &bracket(&resolve(d, state)));
    }
    total
}

/// The Jones-type polynomial; `normalized` divides by the unknot value `[2]`.
pub fn jones(d: &LinkDiagram, normalized: bool) -> LaurentPoly {
    let p = quantum_sl2(d);
    if normalized {
        p.div_exact(&LaurentPoly::quantum_two()).unwrap_or(p)
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn unknot_diagrams() {
        for pd in ["PD[Loop[1]]", "PD[X[1,1,2,2]]", "PD[X[1,2,2,1]]"] {
            let d = LinkDiagram::parse(pd).unwrap();
            assert_eq!(quantum_sl2(&d).to_string(), "q^-1 + q", "{}", pd);
        }
    }

    #[test]
    fn negative_kink_resolutions() {
        let d = LinkDiagram::parse("PD[X[1,2,2,1]]").unwrap();
        let r0 = resolve(&d, CubeState(0));
        let r1 = resolve(&d, CubeState(1));
        assert_eq!(r0.circle_count(), 2);
        assert_eq!(r0.circles.iter().map(|c| c.singular_points).sum::<usize>(), 0);
        assert_eq!(r1.circle_count(), 1);
        assert_eq!(r1.circles[0].singular_points, 2);
        assert_eq!(quantum_shift(&d, CubeState(0)), -1);
        assert_eq!(quantum_shift(&d, CubeState(1)), -2);
    }

    #[test]
    fn hopf_and_unlink() {
        let d = LinkDiagram::parse("PD[Loop[2]]").unwrap();
        assert_eq!(quantum_sl2(&d).to_string(), "q^-2 + 2 + q^2");
        let h = LinkDiagram::parse("PD[X[4,1,3,2], X[2,3,1,4]]").unwrap();
        let p = quantum_sl2(&h);
        assert!(p.div_exact(&LaurentPoly::quantum_two()).is_some());
    }

    #[test]
    fn singular_points_are_even() {
        let d = LinkDiagram::parse("PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]").unwrap();
        for s in 0..16 {
            let r = resolve(&d, CubeState(s));
            for c in &r.circles {
                assert_eq!(c.singular_points % 2, 0);
            }
        }
    }
}
