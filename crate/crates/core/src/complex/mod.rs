//! The cube of resolutions and its chain complex over `Z[i][a]`.

mod faithful;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::arith::{Coefficient, GaussianInt, GaussianPolynomial, LaurentPoly};
use crate::diagram::{LinkDiagram, Port};
use crate::frobenius;
use crate::matrix::SparseMatrix;
use crate::state::{resolve, CubeState, Resolution};

pub use faithful::arc_classes;

type P = GaussianPolynomial;

/// Largest crossing number accepted by the cube builder.
pub const MAX_CROSSINGS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Edge maps carry the units obtained from foam evaluation.
    Faithful,
    /// Every edge unit is `1`.
    KhovanovStyle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Merge,
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("edge from state {state:#b} at crossing {crossing} is not a unit multiple of a structure map")]
    NonUnitEdge { state: u64, crossing: usize },
    #[error("assembled cobordism is not a closed seamed foam")]
    MalformedFoam,
    #[error("pairing on a circle is not invertible")]
    DegeneratePairing,
    #[error("diagram has {0} crossings; at most {MAX_CROSSINGS} are supported")]
    TooLarge(usize),
}

/// One edge of the cube, before the sign rule is applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMap {
    pub source: CubeState,
    pub crossing: usize,
    pub kind: EdgeKind,
    pub unit: GaussianInt,
    /// Affected circles of the source and target, ascending.
    pub src_circles: Vec<usize>,
    pub tgt_circles: Vec<usize>,
    /// Target circle of each unaffected source circle.
    pub circle_map: Vec<usize>,
}

impl EdgeMap {
    pub fn target(&self) -> CubeState {
        self.source.with(self.crossing)
    }

    /// `(-1)^(number of 1s below the changing crossing)`.
    pub fn sign(&self) -> i64 {
        if self.source.ones_below(self.crossing) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Image of a source word, without the sign rule.
    pub fn apply(&self, word: u64) -> Vec<(u64, P)> {
        let mut base = 0u64;
        for (i, &t) in self.circle_map.iter().enumerate() {
            if t != usize::MAX && word >> i & 1 == 1 {
                base |= 1 << t;
            }
        }
        let u = P::constant(self.unit.clone());
        let bit = |c: usize| (word >> c & 1) as u8;
        match self.kind {
            EdgeKind::Merge => {
                let (b, k) = frobenius::merge_basis(bit(self.src_circles[0]), bit(self.src_circles[1]));
                vec![(base | (b as u64) << self.tgt_circles[0], k.mul(&u))]
            }
            EdgeKind::Split => frobenius::split_basis(bit(self.src_circles[0]))
                .into_iter()
                .map(|((l, r), k)| {
                    let w = base | (l as u64) << self.tgt_circles[0] | (r as u64) << self.tgt_circles[1];
                    (w, k.mul(&u))
                })
                .collect(),
        }
    }
}

/// Resolutions and edge maps of the full cube.
#[derive(Clone, Debug)]
pub struct Cube {
    pub crossings: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub mode: Mode,
    pub resolutions: Vec<Resolution>,
    pub edges: BTreeMap<(u64, usize), EdgeMap>,
}

/// Per-diagram data needed to compute edges independently.
pub struct CubeContext<'a> {
    pub diagram: &'a LinkDiagram,
    pub resolutions: Vec<Resolution>,
    agree: Vec<bool>,
    mode: Mode,
}

impl<'a> CubeContext<'a> {
    pub fn new(diagram: &'a LinkDiagram, mode: Mode) -> Result<Self, ComplexError> {
        let n = diagram.crossing_count();
        if n > MAX_CROSSINGS {
            return Err(ComplexError::TooLarge(n));
        }
        let resolutions = (0..1u64 << n).map(|s| resolve(diagram, CubeState(s))).collect();
        let agree = match mode {
            Mode::Faithful => arc_classes(diagram),
            Mode::KhovanovStyle => Vec::new(),
        };
        Ok(CubeContext { diagram, resolutions, agree, mode })
    }

    /// All cube edges as `(source state, crossing)`.
    pub fn edge_list(&self) -> Vec<(u64, usize)> {
        let n = self.diagram.crossing_count();
        let mut out = Vec::new();
        for s in 0..1u64 << n {
            for c in 0..n {
                if s >> c & 1 == 0 {
                    out.push((s, c));
                }
            }
        }
        out
    }

    pub fn edge(&self, source: u64, crossing: usize) -> Result<EdgeMap, ComplexError> {
        let d = self.diagram;
        let src = &self.resolutions[source as usize];
        let tgt_state = CubeState(source).with(crossing);
        let tgt = &self.resolutions[tgt_state.0 as usize];
        let touched = |r: &Resolution| {
            let mut cs: Vec<usize> = (0..4).map(|p| r.circle_at(d, Port::new(crossing, p))).collect();
            cs.sort_unstable();
            cs.dedup();
            cs
        };
        let src_circles = touched(src);
        let tgt_circles = touched(tgt);
        let kind = match (src_circles.len(), tgt_circles.len()) {
            (2, 1) => EdgeKind::Merge,
            (1, 2) => EdgeKind::Split,
            _ => return Err(ComplexError::NonUnitEdge { state: source, crossing }),
        };
        let mut circle_map = vec![usize::MAX; src.circle_count()];
        for (i, circle) in src.circles.iter().enumerate() {
            if src_circles.contains(&i) {
                continue;
            }
            circle_map[i] = match circle.arcs.first() {
                Some(&a) => tgt.circle_of_arc[a],
                // Crossingless loops keep their position at the end.
                None => i + tgt.circle_count() - src.circle_count(),
            };
        }
        let unit = match self.mode {
            Mode::KhovanovStyle => GaussianInt::one(),
            Mode::Faithful => {
                let first_arc = |r: &Resolution, cs: &[usize]| -> Vec<usize> {
                    cs.iter().map(|&c| r.circles[c].arcs[0]).collect()
                };
                faithful::edge_unit(
                    d,
                    &self.agree,
                    CubeState(source),
                    crossing,
                    &first_arc(src, &src_circles),
                    &first_arc(tgt, &tgt_circles),
                    kind,
                )?
            }
        };
        Ok(EdgeMap { source: CubeState(source), crossing, kind, unit, src_circles, tgt_circles, circle_map })
    }

    pub fn into_cube(self, edges: Vec<EdgeMap>) -> Cube {
        Cube {
            crossings: self.diagram.crossing_count(),
            n_plus: self.diagram.n_plus(),
            n_minus: self.diagram.n_minus(),
            mode: self.mode,
            resolutions: self.resolutions,
            edges: edges.into_iter().map(|e| ((e.source.0, e.crossing), e)).collect(),
        }
    }
}

pub fn build_cube(d: &LinkDiagram, mode: Mode) -> Result<Cube, ComplexError> {
    let ctx = CubeContext::new(d, mode)?;
    let edges = ctx.edge_list().into_iter().map(|(s, c)| ctx.edge(s, c)).collect::<Result<Vec<_>, _>>()?;
    Ok(ctx.into_cube(edges))
}

/// A basis element: a resolution and a word in `{1, X}` over its circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub state: CubeState,
    pub word: u64,
    pub q: i64,
}

/// A bounded complex of free graded modules; `diffs[k]` maps degree
/// `min_h + k` to `min_h + k + 1`, rows indexed by the target basis.
#[derive(Clone, Debug)]
pub struct ChainComplex<R> {
    pub min_h: i64,
    pub gens: Vec<Vec<Generator>>,
    pub diffs: Vec<SparseMatrix<R>>,
    cube: Option<Cube>,
}

impl<R: Coefficient> ChainComplex<R> {
    pub fn new(min_h: i64, gens: Vec<Vec<Generator>>, diffs: Vec<SparseMatrix<R>>) -> Self {
        ChainComplex { min_h, gens, diffs, cube: None }
    }

    pub fn max_h(&self) -> i64 {
        self.min_h + self.gens.len() as i64 - 1
    }

    pub fn gens_at(&self, h: i64) -> &[Generator] {
        let k = h - self.min_h;
        if k < 0 || k >= self.gens.len() as i64 {
            &[]
        } else {
            &self.gens[k as usize]
        }
    }

    /// Differential leaving degree `h`, if any.
    pub fn diff_at(&self, h: i64) -> Option<&SparseMatrix<R>> {
        let k = h - self.min_h;
        if k < 0 {
            None
        } else {
            self.diffs.get(k as usize)
        }
    }

    pub fn rank(&self) -> usize {
        self.gens.iter().map(|g| g.len()).sum()
    }

    pub fn cube(&self) -> Option<&Cube> {
        self.cube.as_ref()
    }

    pub fn cube_mut(&mut self) -> Option<&mut Cube> {
        self.cube.as_mut()
    }

    pub fn map_coefficients<S: Coefficient>(&self, f: impl Fn(&R) -> S + Copy) -> ChainComplex<S> {
        ChainComplex {
            min_h: self.min_h,
            gens: self.gens.clone(),
            diffs: self.diffs.iter().map(|m| m.map(f)).collect(),
            cube: None,
        }
    }

    /// Checks `d o d = 0`; returns the first failing degree.
    pub fn verify_d_squared(&self) -> Result<(), i64> {
        for k in 1..self.diffs.len() {
            if !self.diffs[k].mul(&self.diffs[k - 1]).is_zero() {
                return Err(self.min_h + k as i64 - 1);
            }
        }
        Ok(())
    }

    /// Checks that every entry has internal degree matching the quantum
    /// degrees of its endpoints.
    pub fn verify_homogeneous(&self) -> Result<(), (i64, usize, usize)> {
        for (k, m) in self.diffs.iter().enumerate() {
            for (r, c, v) in m.entries() {
                let deg = v.internal_degree();
                let expected = self.gens[k][c].q - self.gens[k + 1][r].q;
                if deg != Some(expected) {
                    return Err((self.min_h + k as i64, r, c));
                }
            }
        }
        Ok(())
    }
}

impl Cube {
    pub fn edge(&self, source: CubeState, crossing: usize) -> Option<&EdgeMap> {
        self.edges.get(&(source.0, crossing))
    }

    /// Replaces the unit on one edge; used to exercise the consistency checks.
    pub fn set_unit(&mut self, source: CubeState, crossing: usize, unit: GaussianInt) {
        if let Some(e) = self.edges.get_mut(&(source.0, crossing)) {
            e.unit = unit;
        }
    }

    pub fn generator(&self, state: CubeState, word: u64) -> Generator {
        let res = &self.resolutions[state.0 as usize];
        let mut q = 2 * self.n_plus as i64 - self.n_minus as i64 - state.height() as i64;
        for i in 0..res.circle_count() {
            q += frobenius::degree((word >> i & 1) as u8);
        }
        Generator { state, word, q }
    }

    /// Assembles the signed chain complex.
    pub fn complex(self) -> ChainComplex<P> {
        let n = self.crossings;
        let mut gens: Vec<Vec<Generator>> = vec![Vec::new(); n + 1];
        let mut offset = vec![0usize; 1 << n];
        let mut states: Vec<u64> = (0..1u64 << n).collect();
        states.sort_by_key(|s| (s.count_ones(), *s));
        for s in states {
            let h = s.count_ones() as usize;
            offset[s as usize] = gens[h].len();
            let k = self.resolutions[s as usize].circle_count();
            for w in 0..1u64 << k {
                gens[h].push(self.generator(CubeState(s), w));
            }
        }
        let mut diffs: Vec<SparseMatrix<P>> = (0..n).map(|h| SparseMatrix::new(gens[h + 1].len(), gens[h].len())).collect();
        for e in self.edges.values() {
            let h = e.source.height() as usize;
            let sign = P::from(e.sign());
            let k = self.resolutions[e.source.0 as usize].circle_count();
            for w in 0..1u64 << k {
                let col = offset[e.source.0 as usize] + w as usize;
                for (tw, coeff) in e.apply(w) {
                    let row = offset[e.target().0 as usize] + tw as usize;
                    diffs[h].add_to(row, col, &coeff.mul(&sign));
                }
            }
        }
        ChainComplex { min_h: -(self.n_plus as i64), gens, diffs, cube: Some(self) }
    }
}

/// Builds the complex of a diagram over `Z[i][a]`.
pub fn build_complex(d: &LinkDiagram, mode: Mode) -> Result<ChainComplex<P>, ComplexError> {
    Ok(build_cube(d, mode)?.complex())
}

/// Graded Euler characteristic `sum (-1)^h q^j rank C^{h,j}`.
pub fn euler_characteristic<R: Coefficient>(c: &ChainComplex<R>) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (k, gens) in c.gens.iter().enumerate() {
        let sign = if (c.min_h + k as i64).rem_euclid(2) == 0 { 1 } else { -1 };
        for g in gens {
            out.add_term(g.q, sign);
        }
    }
    out
}

/// A square of the cube whose two composites disagree before signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareViolation {
    pub state: CubeState,
    pub first: usize,
    pub second: usize,
    pub word: u64,
}

/// Checks that every square face of the cube commutes before the sign rule,
/// so that the signed differential anticommutes. Returns the number of
/// faces checked.
pub fn verify_anticommutativity<R: Coefficient>(c: &ChainComplex<R>) -> Result<usize, SquareViolation> {
    let cube = c.cube.as_ref().expect("complex carries its cube");
    verify_cube(cube)
}

pub fn verify_cube(cube: &Cube) -> Result<usize, SquareViolation> {
    let n = cube.crossings;
    let mut faces = 0;
    let compose = |first: &EdgeMap, second: &EdgeMap, w: u64| {
        let mut acc: BTreeMap<u64, P> = BTreeMap::new();
        for (w1, c1) in first.apply(w) {
            for (w2, c2) in second.apply(w1) {
                let e = acc.entry(w2).or_insert_with(P::zero);
                *e = e.add(&c1.mul(&c2));
            }
        }
        acc.retain(|_, v| !v.is_zero());
        acc
    };
    for s in 0..1u64 << n {
        let state = CubeState(s);
        for c1 in 0..n {
            for c2 in c1 + 1..n {
                if state.bit(c1) == 1 || state.bit(c2) == 1 {
                    continue;
                }
                faces += 1;
                let e1 = cube.edge(state, c1).unwrap();
                let e12 = cube.edge(state.with(c1), c2).unwrap();
                let e2 = cube.edge(state, c2).unwrap();
                let e21 = cube.edge(state.with(c2), c1).unwrap();
                let k = cube.resolutions[s as usize].circle_count();
                for w in 0..1u64 << k {
                    if compose(e1, e12, w) != compose(e2, e21, w) {
                        return Err(SquareViolation { state, first: c1, second: c2, word: w });
                    }
                }
            }
        }
    }
    Ok(faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::quantum_sl2;
    use alloc::string::ToString;

    fn complex(pd: &str, mode: Mode) -> ChainComplex<P> {
        build_complex(&LinkDiagram::parse(pd).unwrap(), mode).unwrap()
    }

    #[test]
    fn negative_kink_layout() {
        let c = complex("PD[X[1,2,2,1]]", Mode::Faithful);
        assert_eq!(c.min_h, 0);
        let qs: Vec<i64> = c.gens[0].iter().map(|g| g.q).collect();
        assert_eq!(qs, vec![-3, -1, -1, 1]);
        let qs: Vec<i64> = c.gens[1].iter().map(|g| g.q).collect();
        assert_eq!(qs, vec![-3, -1]);
        assert_eq!(euler_characteristic(&c).to_string(), "q^-1 + q");
    }

    #[test]
    fn d_squared_and_homogeneity() {
        for pd in [
            "PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]",
            "PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]",
            "PD[X[4,1,3,2], X[2,3,1,4]]",
        ] {
            for mode in [Mode::Faithful, Mode::KhovanovStyle] {
                let c = complex(pd, mode);
                assert_eq!(c.verify_d_squared(), Ok(()), "{} {:?}", pd, mode);
                assert_eq!(c.verify_homogeneous(), Ok(()));
                let d = LinkDiagram::parse(pd).unwrap();
                assert_eq!(euler_characteristic(&c), quantum_sl2(&d));
            }
        }
    }

    #[test]
    fn faithful_squares_commute() {
        let c = complex("PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]", Mode::Faithful);
        assert_eq!(verify_anticommutativity(&c), Ok(24));
    }

    #[test]
    fn injected_fault_is_caught() {
        let mut c = complex("PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]", Mode::Faithful);
        let cube = c.cube_mut().unwrap();
        let e = cube.edge(CubeState(0), 0).unwrap().unit.clone();
        cube.set_unit(CubeState(0), 0, -e);
        assert!(verify_anticommutativity(&c).is_err());
    }
}
