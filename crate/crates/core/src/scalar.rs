//! Branch-length scalar abstraction.
//!
//! Diversity values are exact sums of non-negative integer branch lengths, so
//! the tree, the oracles and the solvers are generic over any unsigned
//! primitive integer. Ratios and approximation floors are the only floating
//! point quantities and are derived at report time through [`Weight::to_f64_lossy`].

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{PrimInt, Unsigned};

/// Non-negative integer branch length / diversity value.
pub trait Weight:
    PrimInt + Unsigned + FromStr + Display + Debug + Hash + Default + Sum + Send + Sync + 'static
{
    /// Widen to `u128` for overflow-free cross multiplication.
    fn widen(self) -> u128 {
        self.to_u128().unwrap_or(u128::MAX)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl<T> Weight for T where
    T: PrimInt + Unsigned + FromStr + Display + Debug + Hash + Default + Sum + Send + Sync + 'static
{
}

/// Compares `num_a / den_a` against `num_b / den_b` without division.
///
/// Denominators must be positive.
pub fn cmp_ratio<W: Weight>(num_a: W, den_a: usize, num_b: W, den_b: usize) -> std::cmp::Ordering {
    let lhs = num_a.widen().saturating_mul(den_b as u128);
    let rhs = num_b.widen().saturating_mul(den_a as u128);
    lhs.cmp(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    #[test]
    fn ratio_cross_multiplication() {
        assert_eq!(cmp_ratio(10u64, 2, 1u64, 1), Ordering::Greater);
        assert_eq!(cmp_ratio(2u32, 2, 1u32, 1), Ordering::Equal);
        assert_eq!(cmp_ratio(1u8, 3, 1u8, 2), Ordering::Less);
        assert_eq!(cmp_ratio(0u16, 1, 0u16, 5), Ordering::Equal);
    }
}
