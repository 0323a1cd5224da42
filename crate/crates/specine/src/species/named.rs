//! Cycle-index recipes for the named graph species, memoized process-wide.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use super::{GraphSeries, SpeciesExpr};
use crate::graphs::{automorphisms, canonical_form, Graph};
use crate::symfunc::{
    cycle_type, pair_cycle_count, partitions, z_lambda, CycleIndexSeries, PMonomial, Rational,
    Slice,
};

/// Keys accepted by [`series_by_key`] (the `q` family takes parameters and
/// is handled separately by callers).
pub const SERIES_KEYS: [&str; 5] = ["all_graphs", "connected", "comating", "m_bullet", "p_inv"];

fn registry() -> &'static Mutex<HashMap<String, CycleIndexSeries>> {
    static REGISTRY: OnceLock<Mutex<HashMap<String, CycleIndexSeries>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: &str, make: impl FnOnce() -> CycleIndexSeries) -> CycleIndexSeries {
    if let Some(found) = registry().lock().unwrap().get(key) {
        return found.clone();
    }
    // Built without holding the lock: recipes call back into `cached` for
    // their dependencies.  A concurrent builder of the same key loses the
    // race and its (lazy, unforced) series is dropped.
    let series = make();
    registry()
        .lock()
        .unwrap()
        .entry(key.to_string())
        .or_insert(series)
        .clone()
}

/// Degree-`n` slice of the species of all simple graphs:
/// `Σ_{λ ⊢ n} 2^{c₂(λ)} / z_λ · p_λ`, where `c₂` counts the cycles of the
/// induced action on vertex pairs.
fn polya_graph_slice(n: usize) -> Slice {
    let mut slice = Slice::zero(n);
    for lam in partitions(n) {
        let coeff = Rational::new(BigInt::from(2).pow(pair_cycle_count(&lam) as u32), z_lambda(&lam));
        slice.add_term(PMonomial::from_partition(&lam), coeff);
    }
    slice
}

/// `Z` of the species of all simple graphs.
pub fn z_all_graphs() -> CycleIndexSeries {
    cached("all_graphs", || {
        CycleIndexSeries::from_fn(|n, _| polya_graph_slice(n))
    })
}

/// The combinatorial logarithm: compositional inverse of `E_{>=1}`.
pub fn z_omega() -> CycleIndexSeries {
    cached("omega", || {
        CycleIndexSeries::sets_range(1, None)
            .comp_inverse()
            .expect("E_{>=1} has linear term p1")
    })
}

/// `Z` of connected graphs: `Ω ∘ (Z_G - 1)`.
pub fn z_connected_graphs() -> CycleIndexSeries {
    cached("connected", || {
        let g_minus_one = z_all_graphs().sub(&CycleIndexSeries::one());
        z_omega()
            .plethysm(&g_minus_one)
            .expect("Z_G - 1 has zero constant term")
    })
}

/// `Z` of co-mating graphs (connected, sibling-free): `Z_Gc ∘ Ω`.
pub fn z_comating() -> CycleIndexSeries {
    cached("comating", || {
        z_connected_graphs()
            .plethysm(&z_omega())
            .expect("Ω has zero constant term")
    })
}

/// The single-sort patch kernel `(1 + X)·E(X·E_{>=1}(-X)) - 1`: the virtual
/// species whose compositional inverse expands a vertex into everything that
/// contracts back to it.
pub(crate) fn patch_kernel_expr() -> SpeciesExpr {
    let inner = SpeciesExpr::product(
        SpeciesExpr::X,
        SpeciesExpr::compose(SpeciesExpr::nonempty_sets(), SpeciesExpr::neg(SpeciesExpr::X)),
    );
    SpeciesExpr::difference(
        SpeciesExpr::product(
            SpeciesExpr::sum(SpeciesExpr::One, SpeciesExpr::X),
            SpeciesExpr::compose(SpeciesExpr::sets(), inner),
        ),
        SpeciesExpr::One,
    )
}

pub fn z_patch_kernel() -> CycleIndexSeries {
    cached("patch_kernel", || {
        patch_kernel_expr()
            .eval(0)
            .expect("the patch kernel expression is well formed")
    })
}

/// Compositional inverse of the patch kernel (a proper species: ordered
/// rooted trees of co-mating graphs reducing to a point).
pub fn z_patch_kernel_inverse() -> CycleIndexSeries {
    cached("p_inv", || {
        z_patch_kernel()
            .comp_inverse()
            .expect("the patch kernel has linear term p1")
    })
}

/// `Z` of co-mating graphs reducing to the single vertex:
/// `(X - X²) ∘ patch_kernel⁻¹`.
pub fn z_m_bullet() -> CycleIndexSeries {
    cached("m_bullet", || {
        let x = CycleIndexSeries::x();
        let x_minus_x2 = x.sub(&x.mul(&x));
        x_minus_x2
            .plethysm(&z_patch_kernel_inverse())
            .expect("the inverse has zero constant term")
    })
}

/// Cycle index of the automorphism group of `r`: one homogeneous slice
/// `(1/|Aut|) Σ_σ p_{cycletype(σ)}` in degree `n`.
pub fn aut_cycle_index(r: &Graph) -> CycleIndexSeries {
    let n = r.n();
    let auts = automorphisms(r);
    let order = Rational::new(1.into(), BigInt::from(auts.len()));
    let mut slice = Slice::zero(n);
    for perm in &auts {
        slice.add_term(PMonomial::from_partition(&cycle_type(perm)), order.clone());
    }
    let mut slices: Vec<Slice> = (0..n).map(Slice::zero).collect();
    slices.push(slice);
    CycleIndexSeries::from_polynomial(slices)
}

/// `Z` of co-mating graphs reducing to `r` (which must be connected,
/// leafless, and sibling-free): `Z_Aut(r) ∘ patch_kernel⁻¹` for `r` with at
/// least two vertices, and the bullet series otherwise.  Cached by the
/// canonical form of `r`.
pub fn z_comating_reducing_to(r: &Graph) -> CycleIndexSeries {
    assert!(
        r.is_connected() && r.leaves() == 0 && r.sibling_number() == 0,
        "reduction targets are connected, leafless and sibling-free"
    );
    if r.n() == 1 {
        return z_m_bullet();
    }
    let key = format!(
        "m_reduce:{}",
        canonical_form(r)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect::<String>()
    );
    let r = r.clone();
    cached(&key, move || {
        aut_cycle_index(&r)
            .plethysm(&z_patch_kernel_inverse())
            .expect("the inverse has zero constant term")
    })
}

pub(super) fn graph_series(tag: &GraphSeries) -> CycleIndexSeries {
    match tag {
        GraphSeries::AllGraphs => z_all_graphs(),
        GraphSeries::ConnectedGraphs => z_connected_graphs(),
        GraphSeries::CoMating => z_comating(),
        GraphSeries::CoMatingBullet => z_m_bullet(),
        GraphSeries::CoMatingReducingTo(r) => z_comating_reducing_to(r),
        GraphSeries::PatchInverse => z_patch_kernel_inverse(),
    }
}

/// Looks up a named series by its CLI key.
pub fn series_by_key(key: &str) -> Option<CycleIndexSeries> {
    match key {
        "all_graphs" => Some(z_all_graphs()),
        "connected" => Some(z_connected_graphs()),
        "comating" => Some(z_comating()),
        "m_bullet" => Some(z_m_bullet()),
        "p_inv" => Some(z_patch_kernel_inverse()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn type_prefix(series: &CycleIndexSeries, max: usize) -> Vec<i64> {
        series
            .type_series()
            .prefix(max)
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "type coefficient {c} is not an integer");
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn all_graphs_series_counts() {
        assert_eq!(type_prefix(&z_all_graphs(), 7), vec![1, 1, 2, 4, 11, 34, 156, 1044]);
        // Labeled counts 2^C(n,2).
        let egf = z_all_graphs().egf().prefix(5);
        let expect: Vec<i64> = vec![1, 1, 2, 8, 64, 1024];
        for (c, e) in egf.iter().zip(expect) {
            assert_eq!(c, &Rational::from_integer(e.into()));
        }
    }

    #[test]
    fn connected_graphs_series_counts() {
        assert_eq!(
            type_prefix(&z_connected_graphs(), 7),
            vec![0, 1, 1, 2, 6, 21, 112, 853]
        );
    }

    #[test]
    fn sets_of_connected_recovers_all_graphs() {
        let rebuilt = crate::symfunc::sum_stretches_over_k(&z_connected_graphs())
            .unwrap()
            .exp()
            .unwrap();
        assert!(rebuilt.eq_up_to(&z_all_graphs(), 8));
    }

    #[test]
    fn comating_series_counts() {
        // Kilibarda numbers: connected leafless graph counts.
        assert_eq!(
            type_prefix(&z_comating(), 7),
            vec![0, 1, 0, 1, 3, 11, 61, 507]
        );
    }

    #[test]
    fn comating_composed_with_nonempty_sets_is_connected() {
        let rebuilt = z_comating()
            .plethysm(&CycleIndexSeries::sets_range(1, None))
            .unwrap();
        assert!(rebuilt.eq_up_to(&z_connected_graphs(), 8));
    }

    #[test]
    fn m_bullet_and_inverse_match_published_series() {
        assert_eq!(
            type_prefix(&z_m_bullet(), 10),
            vec![0, 1, 0, 1, 2, 5, 14, 43, 141, 491, 1778]
        );
        assert_eq!(
            type_prefix(&z_patch_kernel_inverse(), 10),
            vec![0, 1, 1, 3, 9, 29, 99, 353, 1300, 4913, 18945]
        );
    }

    #[test]
    fn patch_kernel_round_trip() {
        let composed = z_patch_kernel()
            .plethysm(&z_patch_kernel_inverse())
            .unwrap();
        assert!(composed.eq_up_to(&CycleIndexSeries::x(), 10));
    }

    #[test]
    fn aut_cycle_index_examples() {
        // Single vertex: p1.
        let bullet = aut_cycle_index(&Graph::bullet());
        assert_eq!(*bullet.slice(1), Slice::term(1, PMonomial::p(1), Rational::from_integer(1.into())));
        // C5: dihedral of order 10, (p1^5 + 4 p5 + 5 p1 p2^2)/10.
        let c5 = aut_cycle_index(&Graph::cycle(5));
        let s = c5.slice(5);
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(s.coeff(&PMonomial::from_exponents([(1, 5)])), r(1, 10));
        assert_eq!(s.coeff(&PMonomial::p(5)), r(4, 10));
        assert_eq!(s.coeff(&PMonomial::from_exponents([(1, 1), (2, 2)])), r(1, 2));
        assert_eq!(s.len(), 3);
        // C4: (p1^4 + 2 p4 + 3 p2^2 + 2 p1^2 p2)/8.
        let c4 = aut_cycle_index(&Graph::cycle(4));
        let s = c4.slice(4);
        assert_eq!(s.coeff(&PMonomial::from_exponents([(1, 4)])), r(1, 8));
        assert_eq!(s.coeff(&PMonomial::p(4)), r(2, 8));
        assert_eq!(s.coeff(&PMonomial::from_exponents([(2, 2)])), r(3, 8));
        assert_eq!(s.coeff(&PMonomial::from_exponents([(1, 2), (2, 1)])), r(2, 8));
    }

    #[test]
    fn reduction_series_for_c5_counts_only_itself_at_degree_5() {
        let m_c5 = z_comating_reducing_to(&Graph::cycle(5));
        let ts = type_prefix(&m_c5, 5);
        assert_eq!(ts[5], 1);
        assert_eq!(&ts[0..5], &[0, 0, 0, 0, 0]);
    }
}
