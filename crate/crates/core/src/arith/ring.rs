use core::fmt::Debug;

/// The coefficient interface shared by chain complexes, elimination and
/// the normal forms.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Inverse of `self` when it may serve as an elimination pivot.
    fn pivot_inverse(&self) -> Option<Self>;

    /// Internal grading of a homogeneous element; `None` when mixed.
    fn internal_degree(&self) -> Option<i64> {
        Some(0)
    }

    fn from_i64(n: i64) -> Self {
        let mut acc = Self::zero();
        let one = Self::one();
        let step = if n < 0 { one.neg() } else { one };
        for _ in 0..n.unsigned_abs() {
            acc = acc.add(&step);
        }
        acc
    }
}

impl Coefficient for super::GaussianInt {
    fn zero() -> Self {
        Self::zero()
    }
    fn one() -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pivot_inverse(&self) -> Option<Self> {
        self.unit_inverse()
    }
    fn from_i64(n: i64) -> Self {
        Self::from_int(n)
    }
}
