//! Scalar abstraction for side lengths, areas and distances.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign};

/// Floating point types usable as lengths (`f32` and `f64`).
///
/// Implemented automatically for every type satisfying the super-traits.
pub trait Scalar:
    Float + FloatConst + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant into this scalar type.
    #[inline]
    fn cst(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("constant representable as scalar")
    }

    #[inline]
    fn from_usize(n: usize) -> Self {
        <Self as num_traits::NumCast>::from(n).expect("count representable as scalar")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Relative tolerance for matching the lengths of glued sides.
    ///
    /// `1e-9` for `f64`; widened to a few hundred ulps for narrower types.
    #[inline]
    fn pair_tol() -> Self {
        let eps = Self::epsilon() * Self::cst(64.0);
        Self::cst(1e-9).max(eps)
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

/// Order-independent sum: the values are sorted before summation, so any
/// permutation of the same multiset gives a bit-identical result.
pub fn canonical_sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    let mut v: Vec<T> = values.into_iter().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    v.into_iter().fold(T::zero(), |acc, x| acc + x)
}

/// `|a - b| <= tol * max(|a|, |b|)`.
#[inline]
pub fn rel_eq<T: Scalar>(a: T, b: T, tol: T) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Total order wrapper used for priority queues and sorting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Ordered<T>(pub T);

impl<T: PartialOrd> Eq for Ordered<T> {}

impl<T: PartialOrd> PartialOrd for Ordered<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: PartialOrd> Ord for Ordered<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .partial_cmp(&other.0)
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_sum_is_permutation_invariant() {
        let a = [0.1f64, 0.7, 1e-3, 0.2, 0.3];
        let b = [0.3f64, 1e-3, 0.2, 0.7, 0.1];
        assert_eq!(canonical_sum(a), canonical_sum(b));
    }

    #[test]
    fn pair_tol_widens_for_f32() {
        assert_eq!(f64::pair_tol(), 1e-9);
        assert!(f32::pair_tol() > 1e-6);
    }
}
