//! Closed-form counts of link types.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::combinatorics::{count_partitions, factorial, multichoose, partitions, Partition};
use crate::error::{Error, Result};

/// Number of `(s-1)`-faces of `R_{k,q}` whose relative-interior vertices have
/// link `K_β`, for `β` a partition of `k` into `s` parts: `k (s-1)! / Π m_i!`
/// with `m_i` the part multiplicities, or 0 when `s > q`.
pub fn count_faces_with_link_type(k: u32, q: u32, beta: &Partition) -> Result<BigUint> {
    if beta.size() != k {
        return Err(Error::domain(format!("{beta} is not a partition of {k}")));
    }
    let s = beta.len() as u64;
    if s > q as u64 {
        return Ok(BigUint::zero());
    }
    let denom: BigUint = beta.multiplicities().iter().map(|&(_, m)| factorial(m as u64)).product();
    Ok(factorial(s - 1) * k / denom)
}

/// The per-partition face counts for `k`, grouped by number of parts and
/// reverse-lexicographic within a group.
pub fn face_count_table(k: u32, q: u32) -> Result<Vec<(Partition, BigUint)>> {
    let mut rows = Vec::new();
    for s in 1..=k as usize {
        for beta in partitions(k, Some(s))? {
            let n = count_faces_with_link_type(k, q, &beta)?;
            rows.push((beta, n));
        }
    }
    Ok(rows)
}

/// Number of combinatorial types of vertex links of `T_{k,q}`: partitions of
/// `k` into at most `q` parts.
pub fn count_link_types(k: u32, q: u32) -> BigUint {
    count_partitions(k, Some(q.min(k)))
}

/// `Q_s`: joins of complexes `K_σ` with `σ` of at least two parts, of
/// dimension `s`.
pub fn q_sequence(s: u32) -> BigUint {
    q_weighted(s, None, |n| count_partitions(n, None))
}

/// `1 + Q_0 + .. + Q_m`: distinct `m`-dimensional links over all `T_{k,q}`.
pub fn count_distinct_links_dim(m: u32) -> BigUint {
    (0..=m).map(q_sequence).fold(BigUint::one(), |acc, x| acc + x)
}

/// `Q^{s,t}_{k,q}`: as `Q_s` but over partitions of `s + 1` with at most
/// `t - 1` parts (at most `t` when `s = k - t - 1`), and with each `K_σ`
/// restricted to `σ` of at most `q` parts.
pub fn q_st(k: u32, q: u32, s: u32, t: u32) -> BigUint {
    let max_parts = if s + t + 1 == k { t } else { t.saturating_sub(1) };
    q_weighted(s, Some(max_parts as usize), |n| count_partitions(n, Some(q)))
}

/// Number of combinatorial types among links of `(t-1)`-faces of `T_{k,q}`:
/// `1 + Σ_{s=0}^{k-t-1} Q^{s,t}_{k,q}`.
pub fn count_link_types_of_faces(k: u32, q: u32, t: u32) -> Result<BigUint> {
    if k < 2 || q < 1 || t < 1 || t > k {
        return Err(Error::domain(format!("need k >= 2, q >= 1, 1 <= t <= k; got ({k}, {q}, {t})")));
    }
    Ok((0..k - t).map(|s| q_st(k, q, s, t)).fold(BigUint::one(), |acc, x| acc + x))
}

/// `Σ_{μ ∈ Par(s+1)} Π_i multichoose(count(n_i + 1) - 1, m_i)` over partitions
/// with at most `max_parts` parts, `μ = (n_1^{m_1}, ..)`.
fn q_weighted(s: u32, max_parts: Option<usize>, count: impl Fn(u32) -> BigUint) -> BigUint {
    if max_parts == Some(0) {
        return BigUint::zero();
    }
    let mut total = BigUint::zero();
    let all = partitions(s + 1, None).expect("s + 1 >= 1");
    for mu in all.iter().filter(|mu| max_parts.is_none_or(|m| mu.len() <= m)) {
        let mut term = BigUint::one();
        for (n, m) in mu.multiplicities() {
            let choices = count(n + 1) - 1u32;
            term *= multichoose(u64::try_from(&choices).expect("small partition count"), m as u64);
        }
        total += term;
    }
    total
}
