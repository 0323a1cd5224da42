//! Lazy univariate power series with exact rational coefficients.

use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use super::{Rational, SeriesError};

type Gen = Box<dyn Fn(usize, &[Rational]) -> Rational + Send + Sync>;

struct PsInner {
    coeffs: Mutex<Vec<Rational>>,
    gen: Gen,
}

/// A formal power series `Σ c_n x^n`; coefficient access is memoized and
/// idempotent.  Clones share the memo.
#[derive(Clone)]
pub struct PowerSeries {
    inner: Arc<PsInner>,
}

impl PowerSeries {
    pub fn from_fn<F>(gen: F) -> Self
    where
        F: Fn(usize, &[Rational]) -> Rational + Send + Sync + 'static,
    {
        PowerSeries {
            inner: Arc::new(PsInner {
                coeffs: Mutex::new(Vec::new()),
                gen: Box::new(gen),
            }),
        }
    }

    /// A polynomial: the given coefficients, zero beyond.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        PowerSeries::from_fn(move |n, _| coeffs.get(n).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn zero() -> Self {
        PowerSeries::from_coeffs(Vec::new())
    }

    pub fn one() -> Self {
        PowerSeries::from_coeffs(vec![Rational::one()])
    }

    pub fn x() -> Self {
        PowerSeries::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeff(&self, n: usize) -> Rational {
        let mut coeffs = self.inner.coeffs.lock().unwrap();
        while coeffs.len() <= n {
            let next = coeffs.len();
            let c = (self.inner.gen)(next, &coeffs[..]);
            coeffs.push(c);
        }
        coeffs[n].clone()
    }

    /// Coefficients `0..=max_degree`.
    pub fn prefix(&self, max_degree: usize) -> Vec<Rational> {
        (0..=max_degree).map(|n| self.coeff(n)).collect()
    }

    pub fn eq_up_to(&self, other: &Self, max_degree: usize) -> bool {
        (0..=max_degree).all(|n| self.coeff(n) == other.coeff(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        PowerSeries::from_fn(move |n, _| a.coeff(n) + b.coeff(n))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        PowerSeries::from_fn(move |n, _| a.coeff(n) - b.coeff(n))
    }

    pub fn neg(&self) -> Self {
        let a = self.clone();
        PowerSeries::from_fn(move |n, _| -a.coeff(n))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        PowerSeries::from_fn(move |n, _| (0..=n).map(|i| a.coeff(i) * b.coeff(n - i)).sum())
    }

    /// Composition `self(other)`; `other` must have zero constant term.
    pub fn compose(&self, other: &Self) -> Result<Self, SeriesError> {
        if !other.coeff(0).is_zero() {
            return Err(SeriesError::NonZeroConstantTerm);
        }
        let (a, b) = (self.clone(), other.clone());
        // powers[m] holds the known coefficients of b^m, each row extended
        // on demand.
        let powers: Mutex<Vec<Vec<Rational>>> = Mutex::new(Vec::new());
        Ok(PowerSeries::from_fn(move |n, _| {
            let mut powers = powers.lock().unwrap();
            if powers.is_empty() {
                powers.push(vec![Rational::one()]);
            }
            while powers.len() <= n {
                powers.push(Vec::new());
            }
            powers[0].resize(n + 1, Rational::zero());
            for m in 1..=n {
                let prev = powers[m - 1].clone();
                let row = &mut powers[m];
                for d in row.len()..=n {
                    // (b^m)_d = Σ_i (b^{m-1})_i b_{d-i}; zero below degree m.
                    let mut acc = Rational::zero();
                    if d >= m {
                        for (i, p) in prev.iter().enumerate().take(d + 1) {
                            if p.is_zero() {
                                continue;
                            }
                            acc += p * b.coeff(d - i);
                        }
                    }
                    row.push(acc);
                }
            }
            let mut acc = Rational::zero();
            for (m, pow) in powers.iter().enumerate().take(n + 1) {
                let c = a.coeff(m);
                if c.is_zero() {
                    continue;
                }
                acc += c * pow[n].clone();
            }
            acc
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rational {
        Rational::new(n.into(), 1.into())
    }

    #[test]
    fn coefficient_access_is_idempotent() {
        let geo = PowerSeries::from_fn(|_, _| Rational::one());
        assert_eq!(geo.coeff(5), rat(1));
        assert_eq!(geo.coeff(5), rat(1));
        assert_eq!(geo.coeff(2), rat(1));
    }

    #[test]
    fn mul_is_cauchy_product() {
        let geo = PowerSeries::from_fn(|_, _| Rational::one());
        let sq = geo.mul(&geo);
        assert_eq!(sq.prefix(4), vec![rat(1), rat(2), rat(3), rat(4), rat(5)]);
    }

    #[test]
    fn compose_substitutes() {
        // 1/(1-x) composed with 2x gives Σ 2^n x^n.
        let geo = PowerSeries::from_fn(|_, _| Rational::one());
        let twox = PowerSeries::from_coeffs(vec![rat(0), rat(2)]);
        let c = geo.compose(&twox).unwrap();
        assert_eq!(c.prefix(4), vec![rat(1), rat(2), rat(4), rat(8), rat(16)]);
        assert!(geo.compose(&geo).is_err());
    }
}
