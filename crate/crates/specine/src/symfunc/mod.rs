//! Exact arithmetic on cycle index series in the power-sum basis.
//!
//! A cycle index series is a graded series whose degree-`n` component is a
//! finite linear combination of power-sum monomials `p_1^{e_1} p_2^{e_2} ...`
//! of total degree `n` (weighting `p_k` with degree `k`), with rational
//! coefficients.  All coefficients are exact `BigRational`s; nothing in this
//! module ever rounds.
//!
//! Series are lazy: slices are produced on demand by a generator closure and
//! memoized.  Forcing is synchronized, so a series can be shared across
//! threads.  Truncation is always caller-supplied — there is no global
//! precision.

mod monomial;
mod partitions;
mod power;
mod series;

pub mod json;

pub use monomial::{PMonomial, Slice};
pub use partitions::{cycle_type, pair_cycle_count, partitions, z_lambda};
pub use power::PowerSeries;
pub use series::{sum_stretches_over_k, CycleIndexSeries};

/// Exact rational scalar used throughout: arbitrary-precision numerator and
/// denominator, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer re-export for callers building coefficients.
pub type Integer = num_bigint::BigInt;

/// Errors raised by the partial operations on series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    /// Composition `F ∘ G` requires the degree-0 slice of `G` to vanish.
    #[error("composition argument has a nonzero constant term")]
    NonZeroConstantTerm,
    /// Multiplicative inversion requires constant term exactly `+1` or `-1`.
    #[error("multiplicative inverse requires constant term +1 or -1")]
    BadConstantTerm,
    /// Compositional inversion requires zero constant term and linear slice
    /// exactly `+p_1` or `-p_1`.
    #[error("compositional inverse requires zero constant term and linear term +p1 or -p1")]
    BadLinearTerm,
}

#[cfg(test)]
pub(crate) mod test_support {
    //! Oracles shared by unit tests.  Everything here is computed from first
    //! principles (permutation enumeration), independently of the series
    //! recursions it is used to check.

    use super::monomial::{PMonomial, Slice};
    use super::Rational;
    use num_bigint::BigInt;

    /// All permutations of `0..n` by Heap's algorithm.
    pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        let mut items: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k <= 1 {
                out.push(items.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, items, out);
                if k % 2 == 0 {
                    items.swap(i, k - 1);
                } else {
                    items.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut items, &mut out);
        out
    }

    /// `Z_{E_n}` computed directly from the definition: average of
    /// `p_{cycle type}` over the full symmetric group.
    pub fn z_set_slice_by_permutations(n: usize) -> Slice {
        let mut slice = Slice::zero(n);
        let fact: BigInt = (1..=n as u64).product::<u64>().into();
        for perm in all_permutations(n) {
            let mono = PMonomial::from_partition(&super::cycle_type(&perm));
            slice.add_term(mono, Rational::new(1.into(), fact.clone()));
        }
        slice
    }
}
