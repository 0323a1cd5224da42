//! Power-sum monomials and homogeneous slices.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::Rational;

/// A monomial `p_1^{e_1} p_2^{e_2} ...` in the power-sum generators.
///
/// Stored as a sorted list of `(part, exponent)` pairs with every exponent
/// positive; the empty list is the monomial `1` of degree 0.  The derived
/// `Ord` gives one fixed canonical order, which makes slice equality and
/// printed output deterministic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PMonomial {
    parts: Vec<(u32, u32)>,
}

impl PMonomial {
    /// The monomial `1`.
    pub fn one() -> Self {
        PMonomial { parts: Vec::new() }
    }

    /// The single generator `p_k`, `k >= 1`.
    pub fn p(k: u32) -> Self {
        assert!(k >= 1, "power sums are indexed from 1");
        PMonomial { parts: vec![(k, 1)] }
    }

    /// Builds a monomial from `(part, exponent)` pairs; merges duplicates and
    /// drops zero exponents.
    pub fn from_exponents<I: IntoIterator<Item = (u32, u32)>>(iter: I) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (k, e) in iter {
            if e == 0 {
                continue;
            }
            assert!(k >= 1, "power sums are indexed from 1");
            *map.entry(k).or_insert(0) += e;
        }
        PMonomial {
            parts: map.into_iter().collect(),
        }
    }

    /// `p_λ` for a partition given as a list of (possibly repeated) parts.
    pub fn from_partition(parts: &[usize]) -> Self {
        Self::from_exponents(parts.iter().map(|&k| (k as u32, 1)))
    }

    /// Grading: `p_k` has degree `k`.
    pub fn degree(&self) -> usize {
        self.parts
            .iter()
            .map(|&(k, e)| k as usize * e as usize)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sorted `(part, exponent)` pairs.
    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.parts
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_exponents(
            self.parts
                .iter()
                .chain(other.parts.iter())
                .map(|&(k, e)| (k, e)),
        )
    }

    /// The algebra endomorphism `p_i -> p_{ik}` applied to this monomial.
    pub fn stretched(&self, k: u32) -> Self {
        assert!(k >= 1);
        PMonomial {
            parts: self.parts.iter().map(|&(i, e)| (i * k, e)).collect(),
        }
    }
}

impl fmt::Display for PMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1");
        }
        for (i, &(k, e)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "p{k}")?;
            } else {
                write!(f, "p{k}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A homogeneous component of a cycle index series: a finite linear
/// combination of monomials of one common degree.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// the represented elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Slice {
    degree: usize,
    terms: BTreeMap<PMonomial, Rational>,
}

impl Slice {
    pub fn zero(degree: usize) -> Self {
        Slice {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The degree-0 slice holding the scalar `c`.
    pub fn scalar(c: Rational) -> Self {
        let mut s = Slice::zero(0);
        s.add_term(PMonomial::one(), c);
        s
    }

    pub fn term(degree: usize, mono: PMonomial, coeff: Rational) -> Self {
        let mut s = Slice::zero(degree);
        s.add_term(mono, coeff);
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PMonomial, &Rational)> {
        self.terms.iter()
    }

    /// Adds `coeff * mono`, keeping the no-zero-coefficients invariant.
    pub fn add_term(&mut self, mono: PMonomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(mono.degree(), self.degree, "monomial degree mismatch");
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, mono: &PMonomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Slice) -> Slice {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (m, c) in other.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &Slice) {
        assert_eq!(self.degree, other.degree);
        for (m, c) in other.iter() {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Slice, factor: &Rational) {
        assert_eq!(self.degree, other.degree);
        if factor.is_zero() {
            return;
        }
        for (m, c) in other.iter() {
            self.add_term(m.clone(), c * factor);
        }
    }

    pub fn neg(&self) -> Slice {
        self.scaled(&-Rational::one())
    }

    pub fn scaled(&self, factor: &Rational) -> Slice {
        let mut out = Slice::zero(self.degree);
        for (m, c) in self.iter() {
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    /// Product of homogeneous slices; degrees add.
    pub fn mul(&self, other: &Slice) -> Slice {
        let mut out = Slice::zero(self.degree + other.degree);
        for (ma, ca) in self.iter() {
            for (mb, cb) in other.iter() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// `p_i -> p_{ik}` applied termwise; the degree is multiplied by `k`.
    pub fn stretched(&self, k: u32) -> Slice {
        let mut out = Slice::zero(self.degree * k as usize);
        for (m, c) in self.iter() {
            out.add_term(m.stretched(k), c.clone());
        }
        out
    }

    /// Specialization `p_k -> x^k`: every degree-`n` monomial becomes `x^n`,
    /// so the type-series coefficient is the plain sum of coefficients.
    pub fn sum_of_coeffs(&self) -> Rational {
        let mut acc = Rational::zero();
        for (_, c) in self.iter() {
            acc += c;
        }
        acc
    }

    /// Coefficient of `p_1^degree` (the only monomial surviving `p_k -> 0`
    /// for `k > 1`).
    pub fn p1_power_coeff(&self) -> Rational {
        let mono = if self.degree == 0 {
            PMonomial::one()
        } else {
            PMonomial::from_exponents([(1u32, self.degree as u32)])
        };
        self.coeff(&mono)
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn monomial_degree_and_canonical_form() {
        let m = PMonomial::from_exponents([(2, 1), (1, 2), (2, 1)]);
        assert_eq!(m.degree(), 6);
        assert_eq!(m.exponents(), &[(1, 2), (2, 2)]);
        assert_eq!(PMonomial::one().degree(), 0);
        assert_eq!(m.to_string(), "p1^2*p2^2");
    }

    #[test]
    fn monomial_stretch_multiplies_parts() {
        let m = PMonomial::from_exponents([(1, 2), (3, 1)]);
        let s = m.stretched(2);
        assert_eq!(s.exponents(), &[(2, 2), (6, 1)]);
        assert_eq!(s.degree(), m.degree() * 2);
    }

    #[test]
    fn slice_terms_cancel_to_zero() {
        let mut s = Slice::zero(2);
        s.add_term(PMonomial::p(2), rat(1, 2));
        s.add_term(PMonomial::p(2), rat(-1, 2));
        assert!(s.is_zero());
        assert_eq!(s, Slice::zero(2));
    }

    #[test]
    fn slice_mul_adds_degrees() {
        let a = Slice::term(1, PMonomial::p(1), rat(1, 1));
        let b = a.mul(&a);
        assert_eq!(b.degree(), 2);
        assert_eq!(
            b.coeff(&PMonomial::from_exponents([(1, 2)])),
            rat(1, 1)
        );
    }
}
