//! An independent Khovanov homology computation used as a cross-check.
//!
//! Built directly from the PD code with its own resolution bookkeeping and
//! its own normal form, using the algebra `Z[X]/(X^2)` tensored with `Z[i]`.
//! Here the `0` smoothing of `X[i,j,k,l]` joins `i` with `j` and `k` with `l`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::GaussianInt;
use crate::complex::{build_complex, ComplexError, Mode};
use crate::diagram::LinkDiagram;
use crate::homology::{homology_at, Coefficients, Group, Homology, Strategy};
use crate::reduce::simplify;

struct Circles {
    count: usize,
    of_label: BTreeMap<i64, usize>,
}

fn circles(pd: &[[i64; 4]], loops: usize, state: u64) -> Circles {
    let mut parent: BTreeMap<i64, i64> = BTreeMap::new();
    fn root(parent: &mut BTreeMap<i64, i64>, x: i64) -> i64 {
        let p = *parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let r = root(parent, p);
        parent.insert(x, r);
        r
    }
    for (c, x) in pd.iter().enumerate() {
        let pairs = if state >> c & 1 == 0 { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
        for (p, q) in pairs {
            let (a, b) = (root(&mut parent, x[p]), root(&mut parent, x[q]));
            if a != b {
                parent.insert(a.max(b), a.min(b));
            }
        }
    }
    let labels: Vec<i64> = parent.keys().copied().collect();
    let mut ids: BTreeMap<i64, usize> = BTreeMap::new();
    let mut of_label = BTreeMap::new();
    for l in labels {
        let r = root(&mut parent, l);
        let n = ids.len();
        let id = *ids.entry(r).or_insert(n);
        of_label.insert(l, id);
    }
    Circles { count: ids.len() + loops, of_label }
}

/// Khovanov homology keyed by `(h, q)`; over `Q(i)` torsion is dropped.
pub fn khovanov_homology(d: &LinkDiagram, coeffs: Coefficients) -> Homology {
    let mut h = integral_homology(d);
    if coeffs == Coefficients::GaussianRationals {
        h.groups.values_mut().for_each(|g| g.torsion.clear());
        h.groups.retain(|_, g| g.free > 0);
    }
    h
}

fn integral_homology(d: &LinkDiagram) -> Homology {
    let pd = d.pd();
    let n = pd.len();
    let n_minus = d.n_minus() as i64;
    let n_plus = d.n_plus() as i64;
    let res: Vec<Circles> = (0..1u64 << n).map(|s| circles(&pd, d.loops(), s)).collect();

    // Generators: (state, word) with bit 1 meaning v-.
    let mut index: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    let mut gens: Vec<(i64, i64, u64, u64)> = Vec::new();
    for s in 0..1u64 << n {
        let k = res[s as usize].count;
        for w in 0..1u64 << k {
            let minus = w.count_ones() as i64;
            let h = s.count_ones() as i64 - n_minus;
            let q = (k as i64 - 2 * minus) + s.count_ones() as i64 + n_plus - 2 * n_minus;
            index.insert((s, w), gens.len());
            gens.push((h, q, s, w));
        }
    }

    // Differential as (source, target, coefficient).
    let mut entries: Vec<(usize, usize, i64)> = Vec::new();
    for s in 0..1u64 << n {
        for c in 0..n {
            if s >> c & 1 == 1 {
                continue;
            }
            let t = s | 1 << c;
            let sign = if (s & ((1 << c) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            let (rs, rt) = (&res[s as usize], &res[t as usize]);
            let x = pd[c];
            let before: Vec<usize> = {
                let mut v: Vec<usize> = x.iter().map(|l| rs.of_label[l]).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let after: Vec<usize> = {
                let mut v: Vec<usize> = x.iter().map(|l| rt.of_label[l]).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            // Unaffected circles, matched through any label they contain.
            let mut carry: BTreeMap<usize, usize> = BTreeMap::new();
            for (l, &ci) in &rs.of_label {
                if !before.contains(&ci) {
                    carry.insert(ci, rt.of_label[l]);
                }
            }
            let crossing_circles = rs.count - d.loops();
            for i in 0..d.loops() {
                carry.insert(crossing_circles + i, rt.count - d.loops() + i);
            }
            for w in 0..1u64 << rs.count {
                let mut base = 0u64;
                for (&from, &to) in &carry {
                    if w >> from & 1 == 1 {
                        base |= 1 << to;
                    }
                }
                let src = index[&(s, w)];
                let mut push = |tw: u64| entries.push((src, index[&(t, tw)], sign));
                if before.len() == 2 {
                    let (a, b) = (w >> before[0] & 1, w >> before[1] & 1);
                    match a + b {
                        0 => push(base),
                        1 => push(base | 1 << after[0]),
                        _ => {}
                    }
                } else {
                    let (l, r) = (after[0], after[1]);
                    if w >> before[0] & 1 == 0 {
                        push(base | 1 << r);
                        push(base | 1 << l);
                    } else {
                        push(base | 1 << l | 1 << r);
                    }
                }
            }
        }
    }

    let mut slices: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, g) in gens.iter().enumerate() {
        slices.entry((g.0, g.1)).or_default().push(i);
    }
    let position: Vec<usize> = {
        let mut p = vec![0; gens.len()];
        for ids in slices.values() {
            for (k, &i) in ids.iter().enumerate() {
                p[i] = k;
            }
        }
        p
    };
    // Matrix of d from (h, q) to (h + 1, q).
    let mut mats: BTreeMap<(i64, i64), Vec<Vec<GaussianInt>>> = BTreeMap::new();
    for &(src, tgt, coeff) in &entries {
        let (h, q, _, _) = gens[src];
        let rows = slices.get(&(h + 1, q)).map(|v| v.len()).unwrap_or(0);
        let cols = slices[&(h, q)].len();
        let m = mats.entry((h, q)).or_insert_with(|| vec![vec![GaussianInt::zero(); cols]; rows]);
        let cell = &mut m[position[tgt]][position[src]];
        *cell += &GaussianInt::from_int(coeff);
    }

    let mut out = Homology { quantum_graded: true, groups: BTreeMap::new() };
    let mut factors: BTreeMap<(i64, i64), Vec<GaussianInt>> = BTreeMap::new();
    for (key, m) in &mats {
        factors.insert(*key, elementary_divisors(m.clone()));
    }
    for (&(h, q), ids) in &slices {
        let outgoing = factors.get(&(h, q)).map(|f| f.len()).unwrap_or(0);
        let incoming = factors.get(&(h - 1, q)).cloned().unwrap_or_default();
        let free = ids.len() - outgoing - incoming.len();
        let torsion: Vec<GaussianInt> = incoming.into_iter().filter(|x| !x.is_unit()).collect();
        let g = Group { free, torsion };
        if !g.is_zero() {
            out.groups.insert((h, q), g);
        }
    }
    out
}

/// Nonzero elementary divisors of a matrix over `Z[i]`, canonical and in
/// divisibility order. Column-major Euclidean sweeps, then a gcd/lcm pass
/// over the resulting diagonal.
fn elementary_divisors(mut a: Vec<Vec<GaussianInt>>) -> Vec<GaussianInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut r0 = 0;
    let mut c0 = 0;
    while r0 < rows && c0 < cols {
        // Bring a nonzero into column c0 if any.
        let Some(p) = (r0..rows).find(|&r| !a[r][c0].is_zero()) else {
            c0 += 1;
            continue;
        };
        a.swap(r0, p);
        loop {
            // Clear the column below by Euclid between pairs of rows.
            for r in r0 + 1..rows {
                while !a[r][c0].is_zero() {
                    let (q, _) = a[r][c0].div_rem(&a[r0][c0]).unwrap();
                    let pivot_row = a[r0].clone();
                    for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                        *x -= &(&q * y);
                    }
                    if !a[r][c0].is_zero() {
                        a.swap(r, r0);
                    }
                }
            }
            // Clear the row to the right in the same way on columns.
            let mut again = false;
            for c in c0 + 1..cols {
                while !a[r0][c].is_zero() {
                    let (q, _) = a[r0][c].div_rem(&a[r0][c0]).unwrap();
                    for row in a.iter_mut() {
                        let t = &q * &row[c0];
                        row[c] -= &t;
                    }
                    if !a[r0][c].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(c, c0);
                        }
                        again = true;
                    }
                }
            }
            if !again {
                break;
            }
        }
        diag.push(a[r0][c0].clone());
        r0 += 1;
        c0 += 1;
    }
    // Diagonal to invariant factors: repeatedly replace (x, y) by (gcd, lcm).
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = GaussianInt::gcd(&diag[i], &diag[j]);
            if g.is_zero() {
                continue;
            }
            let l = (&diag[i] * &diag[j]).div_exact(&g).unwrap();
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag.into_iter().map(|x| x.canonical_associate()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorMismatch {
    pub h: i64,
    pub q: i64,
    pub ours: Group,
    pub theirs: Group,
}

/// Checks `H^{i,j}(D) = Kh^{i,-j}(mirror D)` over `Z[i]` at `a = 0`.
pub fn verify_mirror_relation(d: &LinkDiagram) -> Result<Result<usize, MirrorMismatch>, ComplexError> {
    let c = build_complex(d, Mode::Faithful)?;
    let (c, _) = simplify(c);
    let ours = homology_at(&c, 0, Coefficients::GaussianIntegers, Strategy::Eliminate).expect("a = 0 over Z[i]");
    let theirs = integral_homology(&d.mirror());
    let mut keys: Vec<(i64, i64)> = ours.groups.keys().copied().collect();
    keys.extend(theirs.groups.keys().map(|(h, q)| (*h, -q)));
    keys.sort_unstable();
    keys.dedup();
    for &(h, q) in &keys {
        let (a, b) = (ours.get(h, q), theirs.get(h, -q));
        if a != b {
            return Ok(Err(MirrorMismatch { h, q, ours: a, theirs: b }));
        }
    }
    Ok(Ok(keys.len()))
}

/// Graded Euler characteristic of the oracle complex.
pub fn khovanov_euler(d: &LinkDiagram) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for ((h, q), g) in khovanov_homology(d, Coefficients::GaussianRationals).groups {
        *out.entry(q).or_insert(0) += if h.rem_euclid(2) == 0 { g.free as i64 } else { -(g.free as i64) };
    }
    out.retain(|_, v| *v != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_and_trefoil() {
        let u = khovanov_homology(&LinkDiagram::parse("PD[Loop[1]]").unwrap(), Coefficients::GaussianIntegers);
        let keys: Vec<_> = u.groups.keys().copied().collect();
        assert_eq!(keys, vec![(0, -1), (0, 1)]);
        // Right-handed trefoil: Kh at (0,1),(0,3),(2,5),(3,9) free and Z/2 at (3,7).
        let d = LinkDiagram::parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap().mirror();
        let kh = khovanov_homology(&d, Coefficients::GaussianIntegers);
        let free: Vec<_> = kh.groups.iter().filter(|(_, g)| g.free > 0).map(|(k, _)| *k).collect();
        assert_eq!(free, vec![(0, 1), (0, 3), (2, 5), (3, 9)]);
        let t = kh.get(3, 7);
        assert_eq!(t.free, 0);
        assert_eq!(t.torsion, vec![GaussianInt::from_int(2)]);
    }

    #[test]
    fn divisors_are_invariant_factors() {
        let g = |a: i64| GaussianInt::from_int(a);
        let m = vec![vec![g(2), g(0)], vec![g(0), g(3)]];
        assert_eq!(elementary_divisors(m), vec![g(1), g(6)]);
    }

    #[test]
    fn mirror_relation_small() {
        for pd in [
            "PD[Loop[1]]",
            "PD[X[1,1,2,2]]",
            "PD[X[4,1,3,2], X[2,3,1,4]]",
            "PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]",
            "PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]",
        ] {
            let d = LinkDiagram::parse(pd).unwrap();
            for d in [d.mirror(), d] {
                assert!(matches!(verify_mirror_relation(&d), Ok(Ok(_))), "{}: {:?}", pd, verify_mirror_relation(&d));
            }
        }
    }

    #[test]
    fn euler_is_mirrored_sl2_polynomial() {
        use crate::state::quantum_sl2;
        for pd in ["PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]", "PD[X[4,1,3,2], X[2,3,1,4]]"] {
            let d = LinkDiagram::parse(pd).unwrap();
            let e = khovanov_euler(&d.mirror());
            let p = quantum_sl2(&d).bar();
            let expect: BTreeMap<i64, i64> = p.terms().collect();
            assert_eq!(e, expect, "{}", pd);
        }
    }
}
