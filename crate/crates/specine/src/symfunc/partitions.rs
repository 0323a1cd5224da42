//! Integer partitions and the group-theoretic quantities attached to them.

use num_bigint::BigInt;
use num_integer::Integer as _;

/// All partitions of `n` with parts in descending order, in a fixed
/// (reverse-lexicographic) order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// `z_λ = Π_i i^{m_i} m_i!` where `m_i` is the multiplicity of `i` in `λ`;
/// the order of the centralizer of a permutation of cycle type `λ`.
pub fn z_lambda(parts: &[usize]) -> BigInt {
    let mut z = BigInt::from(1);
    let mut i = 0;
    while i < parts.len() {
        let part = parts[i];
        let mut mult = 0usize;
        while i < parts.len() && parts[i] == part {
            mult += 1;
            i += 1;
        }
        z *= BigInt::from(part).pow(mult as u32);
        for m in 1..=mult {
            z *= BigInt::from(m);
        }
    }
    z
}

/// Cycle type of a permutation of `0..n` given as images, as a descending
/// partition.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = perm[v];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Number of cycles of the action induced on unordered vertex pairs by a
/// permutation of cycle type `λ`:
/// `Σ_{i<j} gcd(λ_i, λ_j) + Σ_i floor(λ_i / 2)`.
pub fn pair_cycle_count(parts: &[usize]) -> u64 {
    let mut c = 0u64;
    for (i, &a) in parts.iter().enumerate() {
        c += (a / 2) as u64;
        for &b in &parts[i + 1..] {
            c += a.gcd(&b) as u64;
        }
    }
    c
}
