//! Counting connected graphs by sibling and tuft number, optionally refined
//! by the reduction, through scalar specialization of the co-mating series.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_traits::Signed;
use serde_json::{json, Value};

use super::{z_comating, z_comating_reducing_to, SpeciesExpr};
use crate::graphs::Graph;
use crate::symfunc::{PowerSeries, Rational};

/// A sibling or tuft bound; `Infinite` means unrestricted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Bound {
    Finite(u32),
    Infinite,
}

impl Bound {
    /// `[bound > 0]` — with `Infinite` counting as positive.
    pub fn is_positive(self) -> bool {
        !matches!(self, Bound::Finite(0))
    }

    pub fn allows(self, value: usize) -> bool {
        match self {
            Bound::Finite(b) => value <= b as usize,
            Bound::Infinite => true,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(k) => write!(f, "{k}"),
            Bound::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Bound {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Bound::Infinite),
            _ => s
                .parse::<u32>()
                .map(Bound::Finite)
                .map_err(|_| format!("bad bound {s:?} (expected a number or \"inf\")")),
        }
    }
}

impl From<u32> for Bound {
    fn from(k: u32) -> Self {
        Bound::Finite(k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountError {
    #[error("degree {0} exceeds the configured truncation {1}")]
    DegreeOverflow(usize, usize),
    #[error("not a reduced graph: {0}")]
    NotReduced(String),
}

/// Closed form for the type series of the bounded virtual species:
/// `(1 - x^{s+2})(1 - x^{t+2})/(1 - x) - 1`, a factor degenerating to 1 when
/// its bound is infinite.  Manifestly symmetric in `s` and `t`.
pub fn q_type_series_closed(s: Bound, t: Bound) -> PowerSeries {
    PowerSeries::from_fn(move |n, _| {
        let mut c: i64 = 1;
        if let Bound::Finite(s) = s {
            if n >= s as usize + 2 {
                c -= 1;
            }
        }
        if let Bound::Finite(t) = t {
            if n >= t as usize + 2 {
                c -= 1;
            }
        }
        if let (Bound::Finite(s), Bound::Finite(t)) = (s, t) {
            if n >= s as usize + t as usize + 4 {
                c += 1;
            }
        }
        if n == 0 {
            c -= 1;
        }
        Rational::from_integer(c.into())
    })
}

fn e_below(bound: Bound, offset: u32) -> SpeciesExpr {
    match bound {
        Bound::Finite(b) => SpeciesExpr::ERange {
            lo: 0,
            hi: Some(b + offset),
        },
        Bound::Infinite => SpeciesExpr::sets(),
    }
}

/// The bounded virtual species as a single-sort expression:
/// `E_{<2+s}(X) · E(X·(E_{<1+t}(X)·E(-X) - 1)) - 1`.
pub fn q_species_expr(s: Bound, t: Bound) -> SpeciesExpr {
    let e_neg_x = SpeciesExpr::compose(SpeciesExpr::sets(), SpeciesExpr::neg(SpeciesExpr::X));
    let inner = SpeciesExpr::product(
        SpeciesExpr::X,
        SpeciesExpr::difference(
            SpeciesExpr::product(e_below(t, 1), e_neg_x),
            SpeciesExpr::One,
        ),
    );
    SpeciesExpr::difference(
        SpeciesExpr::product(e_below(s, 2), SpeciesExpr::compose(SpeciesExpr::sets(), inner)),
        SpeciesExpr::One,
    )
}

/// The single-sort patch species with its leaf slot substituted by
/// `Ω(E_{1 <= • < 1+t}) - X` and every sort set to `X`:
/// `(1 + X + E_{2 <= • < 2+s}(X)) · E(X·E_{>=1}(Ω(E_{1<=•<1+t}(X)) - X)) - 1`.
/// Equal to [`q_species_expr`] as a series; the two are compared as an
/// engine-level identity check.
pub fn substituted_patch_expr(s: Bound, t: Bound) -> SpeciesExpr {
    let z_part = match s {
        Bound::Finite(b) => SpeciesExpr::ERange {
            lo: 2,
            hi: Some(b + 2),
        },
        Bound::Infinite => SpeciesExpr::ERange { lo: 2, hi: None },
    };
    let first = SpeciesExpr::sum(SpeciesExpr::sum(SpeciesExpr::One, SpeciesExpr::X), z_part);
    let y_t = match t {
        Bound::Finite(b) => SpeciesExpr::ERange {
            lo: 1,
            hi: Some(b + 1),
        },
        Bound::Infinite => SpeciesExpr::nonempty_sets(),
    };
    let omega_y = SpeciesExpr::compose(
        SpeciesExpr::CompInverse(Box::new(SpeciesExpr::nonempty_sets())),
        y_t,
    );
    let leaf_slot = SpeciesExpr::difference(omega_y, SpeciesExpr::X);
    let tufts = SpeciesExpr::compose(
        SpeciesExpr::sets(),
        SpeciesExpr::product(
            SpeciesExpr::X,
            SpeciesExpr::compose(SpeciesExpr::nonempty_sets(), leaf_slot),
        ),
    );
    SpeciesExpr::difference(SpeciesExpr::product(first, tufts), SpeciesExpr::One)
}

/// Counts of unlabeled connected graphs by exact `(sibling, tuft)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    n: usize,
    entries: BTreeMap<(u32, u32), u64>,
}

impl CountTable {
    pub fn new(n: usize) -> Self {
        CountTable {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, s: u32, t: u32, count: u64) {
        if count > 0 {
            *self.entries.entry((s, t)).or_insert(0) += count;
        }
    }

    pub fn get(&self, s: u32, t: u32) -> u64 {
        self.entries.get(&(s, t)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &u64)> {
        self.entries.iter()
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|(&(s, t), &c)| self.get(t, s) == c)
    }

    /// First `(s, t)` witnessing asymmetry, if any.
    pub fn asymmetry_witness(&self) -> Option<(u32, u32)> {
        self.entries
            .iter()
            .find(|(&(s, t), &c)| self.get(t, s) != c)
            .map(|(&k, _)| k)
    }

    pub fn max_s(&self) -> u32 {
        self.entries.keys().map(|&(s, _)| s).max().unwrap_or(0)
    }

    pub fn max_t(&self) -> u32 {
        self.entries.keys().map(|&(_, t)| t).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(&(s, t), &c)| json!({"s": s, "t": t, "count": c}))
            .collect();
        json!({"n": self.n, "entries": entries})
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ms, mt) = (self.max_s(), self.max_t());
        write!(f, "s\\t")?;
        for t in 0..=mt {
            write!(f, " {t:>6}")?;
        }
        writeln!(f)?;
        for s in 0..=ms {
            write!(f, "{s:>3}")?;
            for t in 0..=mt {
                write!(f, " {:>6}", self.get(s, t))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Species-side counting engine with one configured truncation; all series
/// and substitutions are computed lazily and shared.
pub struct CountEngine {
    max_degree: usize,
    cumulative: Mutex<HashMap<(Bound, Bound), Arc<Vec<Rational>>>>,
    by_reduction: Mutex<HashMap<(Vec<u8>, Bound, Bound), Arc<Vec<Rational>>>>,
}

impl CountEngine {
    pub fn new(max_degree: usize) -> Self {
        CountEngine {
            max_degree,
            cumulative: Mutex::new(HashMap::new()),
            by_reduction: Mutex::new(HashMap::new()),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn check_degree(&self, n: usize) -> Result<(), CountError> {
        assert!(n >= 1, "counts are defined for n >= 1");
        if n > self.max_degree {
            Err(CountError::DegreeOverflow(n, self.max_degree))
        } else {
            Ok(())
        }
    }

    /// `Σ_{k <= n} x^k`-style prefix of the co-mating series with `p_k`
    /// specialized to the bounded type series, plus the size-2 corrections:
    /// the count of connected graphs with sibling number `<= s` and tuft
    /// number `<= t`, by vertex count.
    fn cumulative_counts(&self, s: Bound, t: Bound) -> Arc<Vec<Rational>> {
        if let Some(found) = self.cumulative.lock().unwrap().get(&(s, t)) {
            return found.clone();
        }
        let subs = z_comating().substitute_type(&q_type_series_closed(s, t));
        let mut counts = subs.prefix(self.max_degree);
        if self.max_degree >= 2 {
            // +x² - [t>0]x² - [s>0]x² from the enumeration theorem, then K2
            // (excluded from the species, sibling and tuft number both 1)
            // added back when the bounds admit it.
            let mut corr: i64 = 1;
            if t.is_positive() {
                corr -= 1;
            }
            if s.is_positive() {
                corr -= 1;
            }
            if s.is_positive() && t.is_positive() {
                corr += 1;
            }
            counts[2] += Rational::from_integer(corr.into());
        }
        let arc = Arc::new(counts);
        self.cumulative
            .lock()
            .unwrap()
            .insert((s, t), arc.clone());
        arc
    }

    /// Number of unlabeled connected graphs on `n` vertices with sibling
    /// number `<= s` and tuft number `<= t`.
    pub fn count_leq(&self, n: usize, s: Bound, t: Bound) -> Result<u64, CountError> {
        self.check_degree(n)?;
        Ok(to_count(&self.cumulative_counts(s, t)[n]))
    }

    /// Exact joint distribution on `n` vertices via four-term
    /// inclusion-exclusion over [`Self::count_leq`].
    pub fn joint_matrix(&self, n: usize) -> Result<CountTable, CountError> {
        self.check_degree(n)?;
        let mut table = CountTable::new(n);
        let cl = |s: Option<u32>, t: Option<u32>| -> Result<i128, CountError> {
            match (s, t) {
                (Some(s), Some(t)) => Ok(self.count_leq(n, s.into(), t.into())? as i128),
                _ => Ok(0),
            }
        };
        for s in 0..n as u32 {
            for t in 0..n as u32 {
                let count = cl(Some(s), Some(t))? - cl(s.checked_sub(1), Some(t))?
                    - cl(Some(s), t.checked_sub(1))?
                    + cl(s.checked_sub(1), t.checked_sub(1))?;
                assert!(count >= 0, "negative joint count at (n={n}, s={s}, t={t})");
                table.add(s, t, count as u64);
            }
        }
        Ok(table)
    }

    fn validate_reduced(r: &Graph) -> Result<(), CountError> {
        if !r.is_connected() {
            return Err(CountError::NotReduced("not connected".into()));
        }
        if r.leaves() != 0 {
            return Err(CountError::NotReduced("has a leaf".into()));
        }
        if r.sibling_number() != 0 {
            return Err(CountError::NotReduced("has a sibling pair".into()));
        }
        Ok(())
    }

    fn reduction_counts(
        &self,
        r: &Graph,
        s: Bound,
        t: Bound,
    ) -> Result<Arc<Vec<Rational>>, CountError> {
        Self::validate_reduced(r)?;
        let key = (crate::graphs::canonical_form(r), s, t);
        if let Some(found) = self.by_reduction.lock().unwrap().get(&key) {
            return Ok(found.clone());
        }
        let series = z_comating_reducing_to(r);
        let subs = series.substitute_type(&q_type_series_closed(s, t));
        let mut counts = subs.prefix(self.max_degree);
        if r.n() == 1 && self.max_degree >= 2 {
            // The bullet class carries the same size-2 corrections as the
            // unrefined count: K2 reduces to the single vertex.
            let mut corr: i64 = 1;
            if t.is_positive() {
                corr -= 1;
            }
            if s.is_positive() {
                corr -= 1;
            }
            if s.is_positive() && t.is_positive() {
                corr += 1;
            }
            counts[2] += Rational::from_integer(corr.into());
        }
        let arc = Arc::new(counts);
        self.by_reduction.lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    /// Number of unlabeled connected graphs on `n` vertices reducing to `r`
    /// with sibling number `<= s` and tuft number `<= t`.
    pub fn count_by_reduction(
        &self,
        n: usize,
        r: &Graph,
        s: Bound,
        t: Bound,
    ) -> Result<u64, CountError> {
        self.check_degree(n)?;
        Ok(to_count(&self.reduction_counts(r, s, t)?[n]))
    }

    /// Joint distribution among graphs on `n` vertices reducing to `r`.
    pub fn reduction_matrix(&self, n: usize, r: &Graph) -> Result<CountTable, CountError> {
        self.check_degree(n)?;
        Self::validate_reduced(r)?;
        let mut table = CountTable::new(n);
        let cl = |s: Option<u32>, t: Option<u32>| -> Result<i128, CountError> {
            match (s, t) {
                (Some(s), Some(t)) => {
                    Ok(self.count_by_reduction(n, r, s.into(), t.into())? as i128)
                }
                _ => Ok(0),
            }
        };
        for s in 0..n as u32 {
            for t in 0..n as u32 {
                let count = cl(Some(s), Some(t))? - cl(s.checked_sub(1), Some(t))?
                    - cl(Some(s), t.checked_sub(1))?
                    + cl(s.checked_sub(1), t.checked_sub(1))?;
                assert!(
                    count >= 0,
                    "negative refined count at (n={n}, s={s}, t={t})"
                );
                table.add(s, t, count as u64);
            }
        }
        Ok(table)
    }
}

fn to_count(value: &Rational) -> u64 {
    assert!(
        value.is_integer() && !value.is_negative(),
        "species count {value} is not a nonnegative integer"
    );
    u64::try_from(value.to_integer()).expect("count fits in u64")
}
