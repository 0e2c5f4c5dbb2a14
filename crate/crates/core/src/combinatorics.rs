//! Permutation and partition statistics.
//!
//! Descents and descent sets are reported with 1-based positions (position
//! `i` is a descent when `w[i] > w[i+1]` in 1-based indexing). The faithful
//! initial part of a permutation `w` of `[n]` is the least `t` such that the
//! first `t` letters are exactly `{1, .., t}`; `X_n` counts permutations of
//! `[n]` whose faithful initial part is `n`.
//!
//! Closed-form and recursive counts are returned as [`BigUint`]; exhaustive
//! tables use `u64` cells.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Binomial coefficient with the combinatorial convention that it vanishes
/// whenever `n < 0`, `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of multisets of size `m` drawn from `n` kinds.
pub fn multichoose(n: u64, m: u64) -> BigUint {
    if m == 0 {
        return BigUint::one();
    }
    if n == 0 {
        return BigUint::zero();
    }
    binomial((n + m - 1) as i64, m as i64)
}

/// Convolution of two coefficient sequences: `c_j = sum_i a_i b_{j-i}`.
pub fn convolve(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Lifts a table of machine integers into exact integers.
pub fn to_big(values: &[u64]) -> Vec<BigUint> {
    values.iter().map(|&v| BigUint::from(v)).collect()
}

/// Converts a signed exact integer known to be nonnegative.
pub(crate) fn nonneg(value: BigInt) -> BigUint {
    debug_assert!(!value.is_negative(), "expected a nonnegative count, got {value}");
    value.to_biguint().unwrap_or_default()
}

/// Rearranges `items` into the next lexicographically greater permutation.
/// Returns `false` (leaving `items` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        items.reverse();
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// All permutations of `[n]` (letters `1..=n`) in lexicographic order.
pub fn permutations(n: usize) -> Vec<Word> {
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    let mut out = Vec::new();
    loop {
        out.push(Word(cur.clone()));
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from parts given in any order; parts are sorted
    /// decreasingly. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The integer being partitioned.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Largest part, zero for the empty partition.
    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// The multiplicity view `(n_1^{m_1}, ..., n_t^{m_t})` with `n_1 > .. > n_t`.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((n, m)) if *n == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Compact rendering used in tables, e.g. `321` or `111111`; parts above
    /// nine fall back to the comma form.
    pub fn compact(&self) -> String {
        if self.0.iter().all(|&p| p < 10) {
            self.0.iter().map(|p| p.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        let sorted = Partition::new(parts.clone())?;
        if sorted.0 != parts {
            return Err(Error::domain("partition parts must be weakly decreasing"));
        }
        Ok(sorted)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = trimmed
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::domain(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `k`, or only those with exactly `s` parts, in
/// reverse-lexicographic order.
pub fn partitions(k: u32, s: Option<usize>) -> Result<Vec<Partition>> {
    if k == 0 {
        return Err(Error::domain("partitions: k must be positive"));
    }
    if let Some(s) = s {
        if s == 0 || s > k as usize {
            return Err(Error::domain(format!("partitions: need 1 <= s <= {k}, got {s}")));
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen_partitions(k, k, s, &mut cur, &mut out);
    Ok(out)
}

fn gen_partitions(
    rest: u32,
    max: u32,
    exact: Option<usize>,
    cur: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if rest == 0 {
        if exact.is_none_or(|s| s == cur.len()) {
            out.push(Partition(cur.clone()));
        }
        return;
    }
    if let Some(s) = exact {
        let left = s.saturating_sub(cur.len());
        // remaining parts must fit: at least one, at most `max` each
        if left == 0 || rest as usize > left * max as usize || (rest as usize) < left {
            return;
        }
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        gen_partitions(rest - p, p, exact, cur, out);
        cur.pop();
    }
}

/// Number of partitions of `n` into at most `max_parts` parts (all
/// partitions when `None`). `count_partitions(0, _) = 1`.
pub fn count_partitions(n: u32, max_parts: Option<u32>) -> BigUint {
    // partitions into at most m parts == partitions with largest part <= m
    let n = n as usize;
    let cap = max_parts.map_or(n, |m| (m as usize).min(n));
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for part in 1..=cap {
        for total in part..=n {
            let add = ways[total - part].clone();
            ways[total] += add;
        }
    }
    ways[n].clone()
}

/// A finite word over positive integers: a permutation of `[n]` or of a multiset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether the word is a permutation of `{1, .., len}`.
    pub fn is_permutation(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n + 1];
        for &x in &self.0 {
            let x = x as usize;
            if x == 0 || x > n || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    /// Number of descents.
    pub fn des(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// Descent positions, 1-based.
    pub fn descent_set(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().all(|&x| x < 10) { "" } else { " " };
        let letters: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&letters.join(sep))
    }
}

/// Descent data of a word; `init` is present only for plain permutations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentStats {
    pub descent_set: Vec<usize>,
    pub des: usize,
    pub init: Option<usize>,
}

pub fn descent_stats(w: &Word) -> Result<DescentStats> {
    if w.is_empty() {
        return Err(Error::domain("descent_stats: empty word"));
    }
    Ok(DescentStats {
        descent_set: w.descent_set(),
        des: w.des(),
        init: faithful_initial_part(w).ok(),
    })
}

/// Least `t` with `{w_1, .., w_t} = [t]`.
pub fn faithful_initial_part(w: &Word) -> Result<usize> {
    if w.is_empty() || !w.is_permutation() {
        return Err(Error::domain(format!(
            "faithful initial part is defined only for permutations of [n], got {w}"
        )));
    }
    Ok(init_unchecked(w.letters()))
}

/// Faithful initial part of a slice already known to be a permutation.
pub(crate) fn init_unchecked(letters: &[u32]) -> usize {
    let mut max = 0;
    for (t, &x) in letters.iter().enumerate() {
        max = max.max(x as usize);
        if max == t + 1 {
            return t + 1;
        }
    }
    letters.len()
}

/// All words over the multiset `{1^{λ_1}, .., s^{λ_s}}`, lexicographically.
pub fn multiset_permutations(lambda: &Partition) -> Vec<Word> {
    let mut cur: Vec<u32> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| std::iter::repeat_n(i as u32 + 1, m as usize))
        .collect();
    let mut out = Vec::new();
    loop {
        out.push(Word(cur.clone()));
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
}

/// Eulerian number `A(k, i)`.
pub fn eulerian(k: u32, i: u32) -> Result<BigUint> {
    if k == 0 || i >= k {
        return Err(Error::domain(format!("eulerian: need k >= 1 and 0 <= i < k, got ({k}, {i})")));
    }
    Ok(eulerian_row(k as usize).swap_remove(i as usize))
}

/// `(A(k,0), .., A(k,k-1))` via `A(k,i) = (i+1)A(k-1,i) + (k-i)A(k-1,i-1)`.
/// `eulerian_row(0)` is `[1]` so that it serves as the h-vector of the
/// empty sphere in convolutions.
pub fn eulerian_row(k: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for n in 2..=k {
        let mut next = vec![BigUint::zero(); n];
        for (i, slot) in next.iter_mut().enumerate() {
            if i < row.len() {
                *slot += &row[i] * (i as u64 + 1);
            }
            if i >= 1 {
                *slot += &row[i - 1] * (n - i) as u64;
            }
        }
        row = next;
    }
    row
}

/// `X_1, .., X_n` from `X_j = j! - sum_{t<j} (j-t)! X_t`.
pub fn x_sequence(n: usize) -> Vec<BigUint> {
    let mut xs: Vec<BigUint> = Vec::with_capacity(n);
    for j in 1..=n {
        let mut value = BigInt::from(factorial(j as u64));
        for (t, x) in xs.iter().enumerate() {
            value -= BigInt::from(factorial((j - t - 1) as u64) * x);
        }
        xs.push(nonneg(value));
    }
    xs
}

/// The `k x k` table `H_k` of permutations of `[k]` counted by faithful
/// initial part (rows) and number of descents (columns).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentInitTable {
    k: usize,
    cells: Vec<Vec<u64>>,
}

impl DescentInitTable {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of permutations with faithful initial part `init` (`1..=k`)
    /// and exactly `des` descents (`0..k`).
    pub fn count_for(&self, init: usize, des: usize) -> u64 {
        assert!((1..=self.k).contains(&init) && des < self.k, "cell ({init}, {des}) out of range");
        self.cells[init - 1][des]
    }

    /// Row for faithful initial part `init`, indexed by descent count.
    pub fn row_for_init(&self, init: usize) -> &[u64] {
        &self.cells[init - 1]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.cells
    }

    /// Column sums, indexed by descent count.
    pub fn column_sums(&self) -> Vec<u64> {
        (0..self.k).map(|d| self.cells.iter().map(|r| r[d]).sum()).collect()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.cells.iter().map(|r| r.iter().sum()).collect()
    }

    /// Row vector product `(w_1, .., w_k) H_k`.
    pub fn weighted_column_sums(&self, weights: &[u64]) -> Vec<u64> {
        assert_eq!(weights.len(), self.k);
        (0..self.k)
            .map(|d| self.cells.iter().zip(weights).map(|(r, w)| r[d] * w).sum())
            .collect()
    }
}

/// `H_k` by exhaustive enumeration of the symmetric group.
pub fn h_matrix(k: usize) -> Result<DescentInitTable> {
    if k == 0 {
        return Err(Error::domain("h_matrix: k must be positive"));
    }
    if k > 12 {
        return Err(Error::Capacity {
            what: "permutation enumeration",
            requested: k as u128,
            limit: 12,
        });
    }
    let mut cells = vec![vec![0u64; k]; k];
    let mut cur: Vec<u32> = (1..=k as u32).collect();
    loop {
        let init = init_unchecked(&cur);
        let des = cur.windows(2).filter(|w| w[0] > w[1]).count();
        cells[init - 1][des] += 1;
        if !next_permutation(&mut cur) {
            break;
        }
    }
    Ok(DescentInitTable { k, cells })
}

/// Rows of `H_k` from the convolution recursions: the first row is the
/// Eulerian row of `k-1` padded by a zero, row `t` for `1 < t < k` is the
/// last row of `H_t` convolved with the Eulerian row of `k-t`, and the last
/// row closes the column sums to the Eulerian row of `k`.
pub fn h_rows_recursive(k: usize) -> Result<Vec<Vec<BigUint>>> {
    if k == 0 {
        return Err(Error::domain("h_rows_recursive: k must be positive"));
    }
    // last_rows[t] = last row of H_t
    let mut last_rows: Vec<Vec<BigUint>> = vec![Vec::new()];
    let mut rows = Vec::new();
    for n in 1..=k {
        rows = Vec::with_capacity(n);
        for t in 1..n {
            let mut row = if t == 1 {
                eulerian_row(n - 1)
            } else {
                convolve(&last_rows[t], &eulerian_row(n - t))
            };
            row.resize(n, BigUint::zero());
            rows.push(row);
        }
        let mut last: Vec<BigInt> = eulerian_row(n).into_iter().map(BigInt::from).collect();
        for row in &rows {
            for (slot, v) in last.iter_mut().zip(row) {
                *slot -= BigInt::from(v.clone());
            }
        }
        let last: Vec<BigUint> = last.into_iter().map(nonneg).collect();
        rows.push(last.clone());
        last_rows.push(last);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(list: &[&[u32]]) -> Vec<Word> {
        list.iter().map(|w| Word(w.to_vec())).collect()
    }

    #[test]
    fn partitions_of_six() {
        let all = partitions(6, None).unwrap();
        assert_eq!(all.len(), 11);
        assert_eq!(all[0].parts(), &[6]);
        assert_eq!(all[1].parts(), &[5, 1]);
        assert_eq!(all.last().unwrap().parts(), &[1, 1, 1, 1, 1, 1]);
        let three: Vec<Vec<u32>> = partitions(6, Some(3))
            .unwrap()
            .into_iter()
            .map(Vec::from)
            .collect();
        assert_eq!(three, vec![vec![4, 1, 1], vec![3, 2, 1], vec![2, 2, 2]]);
        assert_eq!(partitions(1, None).unwrap(), vec![Partition(vec![1])]);
    }

    #[test]
    fn partitions_reject_bad_part_count() {
        assert!(partitions(4, Some(0)).is_err());
        assert!(partitions(4, Some(5)).is_err());
        assert!(partitions(0, None).is_err());
    }

    #[test]
    fn partition_parsing_and_multiplicities() {
        let p: Partition = "3,1,2,1".parse().unwrap();
        assert_eq!(p.parts(), &[3, 2, 1, 1]);
        assert_eq!(p.multiplicities(), vec![(3, 1), (2, 1), (1, 2)]);
        assert_eq!(p.compact(), "3211");
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::try_from(vec![1, 2]).is_err());
    }

    #[test]
    fn multiset_words() {
        let lam = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(multiset_permutations(&lam), words(&[&[1, 1, 2], &[1, 2, 1], &[2, 1, 1]]));
        let single = Partition::new(vec![4]).unwrap();
        assert_eq!(multiset_permutations(&single), words(&[&[1, 1, 1, 1]]));
        let plain = Partition::new(vec![1, 1, 1]).unwrap();
        assert_eq!(multiset_permutations(&plain), permutations(3));
    }

    #[test]
    fn descent_examples() {
        let s = descent_stats(&Word(vec![2, 1, 3])).unwrap();
        assert_eq!((s.descent_set.clone(), s.des, s.init), (vec![1], 1, Some(2)));
        let id = descent_stats(&Word(vec![1, 2, 3, 4])).unwrap();
        assert_eq!((id.des, id.init), (0, Some(1)));
        assert_eq!(faithful_initial_part(&Word(vec![3, 1, 2])).unwrap(), 3);
        assert_eq!(descent_stats(&Word(vec![5])).unwrap().des, 0);
        assert!(faithful_initial_part(&Word(vec![1, 1, 2])).is_err());
        assert_eq!(descent_stats(&Word(vec![1, 2, 1])).unwrap().init, None);
        assert!(descent_stats(&Word(vec![])).is_err());
    }

    #[test]
    fn eulerian_values() {
        assert_eq!(eulerian(3, 1).unwrap(), BigUint::from(4u32));
        for k in 1..8 {
            assert_eq!(eulerian(k, 0).unwrap(), BigUint::one());
            let total: BigUint = eulerian_row(k as usize).iter().sum();
            assert_eq!(total, factorial(k as u64));
        }
        assert!(eulerian(3, 3).is_err());
        assert!(eulerian(0, 0).is_err());
    }

    #[test]
    fn x_sequence_values() {
        assert_eq!(x_sequence(4), to_big(&[1, 1, 3, 13]));
        assert_eq!(x_sequence(6)[4], BigUint::from(71u32));
    }

    #[test]
    fn h3_and_h1() {
        let h3 = h_matrix(3).unwrap();
        assert_eq!(h3.rows(), &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 2, 1]]);
        assert_eq!(h3.count_for(3, 1), 2);
        assert_eq!(h3.weighted_column_sums(&[1, 2, 3]), vec![1, 9, 3]);
        assert_eq!(h_matrix(1).unwrap().rows(), &[vec![1]]);
        let rec = h_rows_recursive(3).unwrap();
        assert_eq!(rec[1], to_big(&[0, 1, 0]));
        assert_eq!(rec[2], to_big(&[0, 2, 1]));
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert!(binomial(-1, 0).is_zero());
        assert!(binomial(3, 4).is_zero());
        assert_eq!(multichoose(2, 1), BigUint::from(2u32));
        assert_eq!(multichoose(0, 0), BigUint::one());
        assert!(multichoose(0, 2).is_zero());
        assert_eq!(convolve(&to_big(&[1, 1]), &to_big(&[1, 1])), to_big(&[1, 2, 1]));
    }

    #[test]
    fn count_partitions_small() {
        assert_eq!(count_partitions(6, None), BigUint::from(11u32));
        assert_eq!(count_partitions(6, Some(2)), BigUint::from(4u32));
        assert_eq!(count_partitions(0, Some(0)), BigUint::one());
    }
}
