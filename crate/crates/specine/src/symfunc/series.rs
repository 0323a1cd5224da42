//! Lazy cycle index series and their ring/plethysm operations.
//!
//! A series is an `Arc` around a memo of forced slices plus a generator
//! closure producing slice `n` from the series' own slices `0..n` (needed by
//! the self-referential recursions for inverses and `exp`).  Forcing holds
//! the memo lock for the duration of the slice computation, so sharing a
//! series across threads is safe; generators must never force their own
//! series, only the prefix they are handed and other, previously constructed
//! series.  Expression trees are built bottom-up, so the dependency graph is
//! acyclic and cross-series forcing cannot deadlock.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::monomial::{PMonomial, Slice};
use super::power::PowerSeries;
use super::{Rational, SeriesError};

type Gen = Box<dyn Fn(usize, &[Arc<Slice>]) -> Slice + Send + Sync>;

struct SeriesInner {
    slices: Mutex<Vec<Arc<Slice>>>,
    gen: Gen,
}

/// A graded series in the power-sum generators with exact rational
/// coefficients, forced slice by slice.  Clones share the memo.
#[derive(Clone)]
pub struct CycleIndexSeries {
    inner: Arc<SeriesInner>,
}

impl std::fmt::Debug for CycleIndexSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let slices = self.inner.slices.lock().unwrap();
        write!(f, "CycleIndexSeries[forced {} slices]", slices.len())
    }
}

impl CycleIndexSeries {
    /// Builds a series from a slice generator.  `gen(n, prefix)` receives the
    /// already-forced slices `0..n` of the series itself and must return the
    /// degree-`n` slice.
    pub fn from_fn<F>(gen: F) -> Self
    where
        F: Fn(usize, &[Arc<Slice>]) -> Slice + Send + Sync + 'static,
    {
        CycleIndexSeries {
            inner: Arc::new(SeriesInner {
                slices: Mutex::new(Vec::new()),
                gen: Box::new(gen),
            }),
        }
    }

    /// A polynomial: the given slices, zero beyond.  Slice `i` must have
    /// degree `i`.
    pub fn from_polynomial(slices: Vec<Slice>) -> Self {
        for (i, s) in slices.iter().enumerate() {
            assert_eq!(s.degree(), i, "slice at position {i} has wrong degree");
        }
        let slices: Vec<Arc<Slice>> = slices.into_iter().map(Arc::new).collect();
        CycleIndexSeries::from_fn(move |n, _| {
            slices.get(n).map(|s| (**s).clone()).unwrap_or_else(|| Slice::zero(n))
        })
    }

    /// A series reconstructed from previously forced slices (for example a
    /// cache file).  Forcing past the stored truncation is a caller bug and
    /// panics.
    pub fn from_forced_slices(slices: Vec<Slice>) -> Self {
        for (i, s) in slices.iter().enumerate() {
            assert_eq!(s.degree(), i, "slice at position {i} has wrong degree");
        }
        let slices: Vec<Arc<Slice>> = slices.into_iter().map(Arc::new).collect();
        CycleIndexSeries::from_fn(move |n, _| match slices.get(n) {
            Some(s) => (**s).clone(),
            None => panic!("series forced past its stored truncation ({n} > {})", slices.len() - 1),
        })
    }

    pub fn zero() -> Self {
        CycleIndexSeries::from_fn(|n, _| Slice::zero(n))
    }

    /// The constant series `c`.
    pub fn constant(c: Rational) -> Self {
        CycleIndexSeries::from_polynomial(vec![Slice::scalar(c)])
    }

    pub fn one() -> Self {
        CycleIndexSeries::constant(Rational::one())
    }

    /// `Z_X = p_1`.
    pub fn x() -> Self {
        CycleIndexSeries::p(1)
    }

    /// The single generator `p_k` as a series.
    pub fn p(k: u32) -> Self {
        let mut slices = Vec::new();
        for d in 0..k as usize {
            slices.push(Slice::zero(d));
        }
        slices.push(Slice::term(k as usize, PMonomial::p(k), Rational::one()));
        CycleIndexSeries::from_polynomial(slices)
    }

    /// Forces and returns slice `n`.  Never mutates slices below `n`.
    pub fn slice(&self, n: usize) -> Arc<Slice> {
        let mut slices = self.inner.slices.lock().unwrap();
        while slices.len() <= n {
            let next = slices.len();
            let s = (self.inner.gen)(next, &slices[..]);
            assert_eq!(s.degree(), next, "generator produced slice of wrong degree");
            slices.push(Arc::new(s));
        }
        slices[n].clone()
    }

    /// Highest degree forced so far, if any.
    pub fn truncation_order(&self) -> Option<usize> {
        let slices = self.inner.slices.lock().unwrap();
        slices.len().checked_sub(1)
    }

    /// Forces everything up to `max_degree` and returns owned slices.
    pub fn forced_prefix(&self, max_degree: usize) -> Vec<Slice> {
        (0..=max_degree).map(|n| (*self.slice(n)).clone()).collect()
    }

    pub fn eq_up_to(&self, other: &Self, max_degree: usize) -> bool {
        (0..=max_degree).all(|n| *self.slice(n) == *other.slice(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        CycleIndexSeries::from_fn(move |n, _| a.slice(n).add(&b.slice(n)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let a = self.clone();
        CycleIndexSeries::from_fn(move |n, _| a.slice(n).neg())
    }

    pub fn scaled(&self, factor: Rational) -> Self {
        let a = self.clone();
        CycleIndexSeries::from_fn(move |n, _| a.slice(n).scaled(&factor))
    }

    /// Graded Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        CycleIndexSeries::from_fn(move |n, _| {
            let mut acc = Slice::zero(n);
            for i in 0..=n {
                let ai = a.slice(i);
                if ai.is_zero() {
                    continue;
                }
                let bj = b.slice(n - i);
                if bj.is_zero() {
                    continue;
                }
                acc.add_assign(&ai.mul(&bj));
            }
            acc
        })
    }

    /// Plethysm `self ∘ g`: every `p_k` of `self` is replaced by `g` with
    /// `p_i` renamed `p_{ik}`, extended as an algebra morphism and linearly
    /// over the coefficients of `self`.  Requires `g` to have zero constant
    /// term; negative coefficients in either argument are fine.
    pub fn plethysm(&self, g: &Self) -> Result<Self, SeriesError> {
        if !g.slice(0).is_zero() {
            return Err(SeriesError::NonZeroConstantTerm);
        }
        let f = self.clone();
        let g = g.clone();
        let cache = Mutex::new(PlethysmCache::default());
        Ok(CycleIndexSeries::from_fn(move |n, _| {
            let mut cache = cache.lock().unwrap();
            plethysm_slice(n, &f, &g, &mut cache)
        }))
    }

    /// Multiplicative inverse by the graded recursion; the constant term must
    /// be `+1` or `-1`.
    pub fn mul_inverse(&self) -> Result<Self, SeriesError> {
        let c = self.slice(0).coeff(&PMonomial::one());
        if !(c.is_one() || (-&c).is_one()) {
            return Err(SeriesError::BadConstantTerm);
        }
        let f = self.clone();
        Ok(CycleIndexSeries::from_fn(move |n, own| {
            if n == 0 {
                // 1/c = c for c = ±1
                return Slice::scalar(c.clone());
            }
            let mut acc = Slice::zero(n);
            for i in 1..=n {
                let fi = f.slice(i);
                if fi.is_zero() || own[n - i].is_zero() {
                    continue;
                }
                acc.add_assign(&fi.mul(&own[n - i]));
            }
            acc.scaled(&-c.clone())
        }))
    }

    /// Compositional inverse: the unique `H` with `self ∘ H = H ∘ self = Z_X`,
    /// solved degree by degree.  Requires zero constant term and linear slice
    /// exactly `±p_1`; the sign is tracked through the solve.
    pub fn comp_inverse(&self) -> Result<Self, SeriesError> {
        if !self.slice(0).is_zero() {
            return Err(SeriesError::BadLinearTerm);
        }
        let s1 = self.slice(1);
        let lin = s1.coeff(&PMonomial::p(1));
        if s1.len() != 1 || !(lin.is_one() || (-&lin).is_one()) {
            return Err(SeriesError::BadLinearTerm);
        }
        let f = self.clone();
        Ok(CycleIndexSeries::from_fn(move |n, own| match n {
            0 => Slice::zero(0),
            1 => Slice::term(1, PMonomial::p(1), lin.clone()),
            _ => {
                // In (f ∘ H)_n the unknown H_n enters only through the linear
                // slice ±p_1 of f; substituting the known prefix (H_n = 0)
                // isolates it: H_n = -(1/lin) * (f ∘ prefix)_n.
                let prefix = PrefixSource { slices: own };
                let mut cache = PlethysmCache::default();
                let t = plethysm_slice(n, &f, &prefix, &mut cache);
                t.scaled(&-lin.clone())
            }
        }))
    }

    /// Graded exponential of a series with zero constant term, via the
    /// degree-derivation recursion `n·H_n = Σ_m m·B_m·H_{n-m}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.slice(0).is_zero() {
            return Err(SeriesError::NonZeroConstantTerm);
        }
        let b = self.clone();
        Ok(CycleIndexSeries::from_fn(move |n, own| {
            if n == 0 {
                return Slice::scalar(Rational::one());
            }
            let mut acc = Slice::zero(n);
            for m in 1..=n {
                let bm = b.slice(m);
                if bm.is_zero() || own[n - m].is_zero() {
                    continue;
                }
                acc.add_assign_scaled(&bm.mul(&own[n - m]), &Rational::from_integer(m.into()));
            }
            acc.scaled(&Rational::new(1.into(), n.into()))
        }))
    }

    /// `Σ_{lo <= n < hi} Z_{E_n}` where `Z_{E_n}` follows the Newton
    /// recursion `n·Z_{E_n} = Σ_{k=1}^{n} p_k·Z_{E_{n-k}}`.  `hi = None`
    /// means no upper bound.
    pub fn sets_range(lo: usize, hi: Option<usize>) -> Self {
        if let Some(h) = hi {
            assert!(lo <= h, "empty range must still satisfy lo <= hi");
        }
        CycleIndexSeries::from_fn(move |n, _| {
            if n >= lo && hi.map_or(true, |h| n < h) {
                (*set_slice(n)).clone()
            } else {
                Slice::zero(n)
            }
        })
    }

    /// `Z_E`, the species of sets.
    pub fn sets() -> Self {
        CycleIndexSeries::sets_range(0, None)
    }

    /// Specialization `p_k -> x^k`: the isomorphism-type generating series.
    pub fn type_series(&self) -> PowerSeries {
        let f = self.clone();
        PowerSeries::from_fn(move |n, _| f.slice(n).sum_of_coeffs())
    }

    /// Specialization `p_1 -> x`, `p_k -> 0` for `k > 1`, rescaled so that
    /// coefficient `n` is the number of labeled structures `|F[n]|` (the
    /// coefficient of `x^n/n!`).  Exact rationals; integrality is not
    /// asserted, since virtual series may have fractional labeled counts.
    pub fn egf(&self) -> PowerSeries {
        let f = self.clone();
        PowerSeries::from_fn(move |n, _| {
            let mut fact = Rational::one();
            for k in 1..=n {
                fact *= Rational::from_integer(k.into());
            }
            f.slice(n).p1_power_coeff() * fact
        })
    }

    /// Scalar specialization `p_k -> g(x^k)`: the type generating series of a
    /// composition, computed without building the composed cycle index
    /// series.  This is the second, independent route to
    /// `type_series(self ∘ G)` when `g = type_series(G)`.
    pub fn substitute_type(&self, g: &PowerSeries) -> PowerSeries {
        let f = self.clone();
        let g = g.clone();
        let cache: Mutex<ScalarCache> = Mutex::new(ScalarCache::default());
        PowerSeries::from_fn(move |n, _| {
            let mut cache = cache.lock().unwrap();
            let mut acc = Rational::zero();
            for m in 0..=n {
                let fm = f.slice(m);
                for (mono, c) in fm.iter() {
                    acc += c * cache.mono_coeff(&g, mono, n);
                }
            }
            acc
        })
    }
}

/// `Σ_{k >= 1} stretch_k(g) / k`, the exponent making `exp` compute
/// `Z_E ∘ g`.  Requires zero constant term.
pub fn sum_stretches_over_k(g: &CycleIndexSeries) -> Result<CycleIndexSeries, SeriesError> {
    if !g.slice(0).is_zero() {
        return Err(SeriesError::NonZeroConstantTerm);
    }
    let g = g.clone();
    Ok(CycleIndexSeries::from_fn(move |n, _| {
        let mut acc = Slice::zero(n);
        if n == 0 {
            return acc;
        }
        for k in 1..=n {
            if n % k != 0 {
                continue;
            }
            let gd = g.slice(n / k);
            if gd.is_zero() {
                continue;
            }
            acc.add_assign_scaled(&gd.stretched(k as u32), &Rational::new(1.into(), k.into()));
        }
        acc
    }))
}

/// Memo of `Z_{E_m}` slices by the Newton recursion, shared process-wide.
fn set_slice(m: usize) -> Arc<Slice> {
    static MEMO: OnceLock<Mutex<Vec<Arc<Slice>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(vec![Arc::new(Slice::scalar(Rational::one()))]));
    let mut memo = memo.lock().unwrap();
    while memo.len() <= m {
        let n = memo.len();
        let mut acc = Slice::zero(n);
        for k in 1..=n {
            let pk = Slice::term(k, PMonomial::p(k as u32), Rational::one());
            acc.add_assign(&pk.mul(&memo[n - k]));
        }
        memo.push(Arc::new(acc.scaled(&Rational::new(1.into(), n.into()))));
    }
    memo[m].clone()
}

/// Anything that can hand out slices by degree; lets the plethysm kernel run
/// against either a real series or a fixed prefix padded with zeros.
trait SliceSource {
    fn slice_at(&self, d: usize) -> Arc<Slice>;
}

impl SliceSource for CycleIndexSeries {
    fn slice_at(&self, d: usize) -> Arc<Slice> {
        self.slice(d)
    }
}

struct PrefixSource<'a> {
    slices: &'a [Arc<Slice>],
}

impl SliceSource for PrefixSource<'_> {
    fn slice_at(&self, d: usize) -> Arc<Slice> {
        match self.slices.get(d) {
            Some(s) => s.clone(),
            None => Arc::new(Slice::zero(d)),
        }
    }
}

/// Degree-`deg` component of the product of two slice sequences.
fn conv_at(a: &[Arc<Slice>], b: &[Arc<Slice>], deg: usize) -> Slice {
    let mut acc = Slice::zero(deg);
    for i in 0..=deg {
        let (ai, bj) = (&a[i], &b[deg - i]);
        if ai.is_zero() || bj.is_zero() {
            continue;
        }
        acc.add_assign(&ai.mul(bj));
    }
    acc
}

/// Memo for plethysm against one fixed right argument: the slices of
/// `stretch_k(G)^e` and of full monomial substitutions, each filled
/// contiguously by degree.
#[derive(Default)]
struct PlethysmCache {
    powers: HashMap<(u32, u32), Vec<Arc<Slice>>>,
    products: HashMap<PMonomial, Vec<Arc<Slice>>>,
}

impl PlethysmCache {
    fn powers_upto(&mut self, g: &dyn SliceSource, k: u32, e: u32, d: usize) {
        if e > 1 {
            self.powers_upto(g, k, e - 1, d);
            self.powers_upto(g, k, 1, d);
        }
        let have = self.powers.get(&(k, e)).map_or(0, |v| v.len());
        for deg in have..=d {
            let s = if e == 1 {
                if deg % k as usize == 0 {
                    g.slice_at(deg / k as usize).stretched(k)
                } else {
                    Slice::zero(deg)
                }
            } else {
                let a = &self.powers[&(k, e - 1)];
                let b = &self.powers[&(k, 1)];
                conv_at(a, b, deg)
            };
            self.powers.entry((k, e)).or_default().push(Arc::new(s));
        }
    }

    fn mono_upto(&mut self, g: &dyn SliceSource, mono: &PMonomial, d: usize) {
        let parts = mono.exponents();
        if parts.len() <= 1 {
            if let Some(&(k, e)) = parts.first() {
                self.powers_upto(g, k, e, d);
            }
            return;
        }
        let &(k, e) = parts.last().unwrap();
        let prefix = PMonomial::from_exponents(parts[..parts.len() - 1].iter().copied());
        self.mono_upto(g, &prefix, d);
        self.powers_upto(g, k, e, d);
        let have = self.products.get(mono).map_or(0, |v| v.len());
        for deg in have..=d {
            let s = {
                let a = if prefix.exponents().len() == 1 {
                    &self.powers[&prefix.exponents()[0]]
                } else {
                    &self.products[&prefix]
                };
                let b = &self.powers[&(k, e)];
                conv_at(a, b, deg)
            };
            self.products.entry(mono.clone()).or_default().push(Arc::new(s));
        }
    }

    /// Degree-`d` slice of the substitution of `mono` by `g`.
    fn mono_slice(&mut self, g: &dyn SliceSource, mono: &PMonomial, d: usize) -> Arc<Slice> {
        if mono.is_one() {
            return Arc::new(if d == 0 {
                Slice::scalar(Rational::one())
            } else {
                Slice::zero(d)
            });
        }
        self.mono_upto(g, mono, d);
        let parts = mono.exponents();
        if parts.len() == 1 {
            self.powers[&parts[0]][d].clone()
        } else {
            self.products[mono][d].clone()
        }
    }
}

/// Degree-`n` slice of `f ∘ g` for `g` with zero constant term.
fn plethysm_slice(
    n: usize,
    f: &dyn SliceSource,
    g: &dyn SliceSource,
    cache: &mut PlethysmCache,
) -> Slice {
    let mut acc = Slice::zero(n);
    // Monomials of f-degree m substitute to series starting at degree m, so
    // only slices m <= n of f can contribute.
    for m in 0..=n {
        let fm = f.slice_at(m);
        for (mono, c) in fm.iter() {
            let s = cache.mono_slice(g, mono, n);
            if s.is_zero() {
                continue;
            }
            acc.add_assign_scaled(&s, c);
        }
    }
    acc
}

/// Memo for the scalar specialization `p_k -> g(x^k)`.
#[derive(Default)]
struct ScalarCache {
    g_coeffs: Vec<Rational>,
    powers: HashMap<(u32, u32), Vec<Rational>>,
    products: HashMap<PMonomial, Vec<Rational>>,
}

impl ScalarCache {
    fn g_coeff(&mut self, g: &PowerSeries, j: usize) -> Rational {
        while self.g_coeffs.len() <= j {
            let next = self.g_coeffs.len();
            self.g_coeffs.push(g.coeff(next));
        }
        self.g_coeffs[j].clone()
    }

    fn powers_upto(&mut self, g: &PowerSeries, k: u32, e: u32, d: usize) {
        if e > 1 {
            self.powers_upto(g, k, e - 1, d);
            self.powers_upto(g, k, 1, d);
        }
        let have = self.powers.get(&(k, e)).map_or(0, |v| v.len());
        for deg in have..=d {
            let c = if e == 1 {
                if deg % k as usize == 0 {
                    self.g_coeff(g, deg / k as usize)
                } else {
                    Rational::zero()
                }
            } else {
                let a = &self.powers[&(k, e - 1)];
                let b = &self.powers[&(k, 1)];
                (0..=deg).map(|i| &a[i] * &b[deg - i]).sum()
            };
            self.powers.entry((k, e)).or_default().push(c);
        }
    }

    fn mono_upto(&mut self, g: &PowerSeries, mono: &PMonomial, d: usize) {
        let parts = mono.exponents();
        if parts.len() <= 1 {
            if let Some(&(k, e)) = parts.first() {
                self.powers_upto(g, k, e, d);
            }
            return;
        }
        let &(k, e) = parts.last().unwrap();
        let prefix = PMonomial::from_exponents(parts[..parts.len() - 1].iter().copied());
        self.mono_upto(g, &prefix, d);
        self.powers_upto(g, k, e, d);
        let have = self.products.get(mono).map_or(0, |v| v.len());
        for deg in have..=d {
            let c = {
                let a = if prefix.exponents().len() == 1 {
                    &self.powers[&prefix.exponents()[0]]
                } else {
                    &self.products[&prefix]
                };
                let b = &self.powers[&(k, e)];
                (0..=deg).map(|i| &a[i] * &b[deg - i]).sum()
            };
            self.products.entry(mono.clone()).or_default().push(c);
        }
    }

    fn mono_coeff(&mut self, g: &PowerSeries, mono: &PMonomial, d: usize) -> Rational {
        if mono.is_one() {
            return if d == 0 { Rational::one() } else { Rational::zero() };
        }
        self.mono_upto(g, mono, d);
        let parts = mono.exponents();
        if parts.len() == 1 {
            self.powers[&parts[0]][d].clone()
        } else {
            self.products[mono][d].clone()
        }
    }
}
