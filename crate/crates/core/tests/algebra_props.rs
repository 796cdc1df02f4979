use foamhom::arith::{Coefficient, GaussianInt, GaussianPolynomial};
use foamhom::homology::smith_normal_form;
use proptest::prelude::*;

fn gi() -> impl Strategy<Value = GaussianInt> {
    (-6i64..7, -6i64..7).prop_map(|(a, b)| GaussianInt::new(a, b))
}

fn matrix() -> impl Strategy<Value = Vec<Vec<GaussianInt>>> {
    (1usize..4, 1usize..4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(gi(), c), r))
}

fn mul(a: &[Vec<GaussianInt>], b: &[Vec<GaussianInt>]) -> Vec<Vec<GaussianInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(GaussianInt::zero(), |acc, k| &acc + &(&row[k] * &b[k][j])))
                .collect()
        })
        .collect()
}

fn det(m: &[Vec<GaussianInt>]) -> GaussianInt {
    match m.len() {
        0 => GaussianInt::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = GaussianInt::zero();
            for j in 0..n {
                let minor: Vec<Vec<GaussianInt>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = &m[0][j] * &det(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n).flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| { s.push(last); s })).collect()
}

/// gcd of all k x k minors.
fn minor_gcd(m: &[Vec<GaussianInt>], k: usize) -> GaussianInt {
    let cols = m[0].len();
    let mut g = GaussianInt::zero();
    for rs in subsets(m.len(), k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<GaussianInt>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
            g = GaussianInt::gcd(&g, &det(&sub));
        }
    }
    g
}

proptest! {
    #[test]
    fn division_with_small_remainder(x in gi(), y in gi()) {
        prop_assume!(!y.is_zero());
        let (q, r) = x.div_rem(&y).unwrap();
        prop_assert_eq!(&(&q * &y) + &r, x);
        prop_assert!(r.norm() < y.norm());
    }

    #[test]
    fn evaluation_is_a_ring_map(p in prop::collection::vec(gi(), 0..4), s in prop::collection::vec(gi(), 0..4), v in gi()) {
        let poly = |c: &[GaussianInt]| c.iter().enumerate().fold(GaussianPolynomial::zero(), |acc, (k, x)| {
            acc.add(&GaussianPolynomial::monomial(x.clone(), k as u32))
        });
        let (p, s) = (poly(&p), poly(&s));
        prop_assert_eq!(p.mul(&s).eval(&v), &p.eval(&v) * &s.eval(&v));
        prop_assert_eq!(p.add(&s).eval(&v), &p.eval(&v) + &s.eval(&v));
    }

    #[test]
    fn smith_form_is_a_unimodular_diagonalisation(m in matrix()) {
        let ncols = m[0].len();
        let f = smith_normal_form(&m, ncols);
        prop_assert!(det(&f.u).is_unit());
        prop_assert!(det(&f.v).is_unit());
        let d = mul(&mul(&f.u, &m), &f.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j && i < f.diagonal.len() { f.diagonal[i].clone() } else { GaussianInt::zero() };
                prop_assert_eq!(x, &expect);
            }
        }
        for w in f.diagonal.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        // Products of leading invariant factors are the minor gcds.
        let mut prod = GaussianInt::one();
        for k in 1..=m.len().min(ncols) {
            let dk = f.diagonal.get(k - 1).cloned().unwrap_or_else(GaussianInt::zero);
            prod = &prod * &dk;
            prop_assert_eq!(prod.canonical_associate(), minor_gcd(&m, k).canonical_associate());
        }
    }
}
