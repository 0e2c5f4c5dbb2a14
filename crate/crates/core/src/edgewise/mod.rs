//! The edgewise subdivision `T_{k,q}` of the simplex
//! `R_{k,q} = {x ∈ R^{k-1} : 0 ≤ x_1 ≤ .. ≤ x_{k-1} ≤ q}`.
//!
//! Vertices are the integer points of `R_{k,q}`. A facet is a chain
//! `v = v^(1), v^(2), .., v^(k) = v + 𝟙` raising one coordinate at a time,
//! and facets are in bijection with codes `a ∈ {0, .., q-1}^{k-1}`.
//!
//! Decoding `a`: sort the positions of `a` by value, ties by position, to get
//! `v_a`; then raise the coordinate holding `a_{k-1}`, then the one holding
//! `a_{k-2}`, and so on. For `k = 3` the code `(1, 0)` gives the facet
//! `(0,1), (1,1), (1,2)`.
//!
//! Steps are indexed `1..=k`: step `j < k` adds `e_j` and step `k` subtracts
//! `𝟙`. Going once around all `k` steps returns to the starting vertex, which
//! is how links and stars are described.

mod counting;
mod face;
mod off;
mod vertex;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, Word};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub use counting::{
    count_distinct_links_dim, count_faces_with_link_type, count_link_types, count_link_types_of_faces,
    face_count_table, q_sequence, q_st,
};
pub use face::{ArcPoint, FaceLink, LinkClass, LinkDescriptor};
pub use off::{parse_off, OffMesh};
pub use vertex::{support_signature, VertexLink, VertexType};

/// Exhaustive constructions refuse instances with more facets than this.
pub const DEFAULT_MAX_FACETS: u64 = 1_000_000;

/// A point of `W_{k,q}`: a weakly increasing integer tuple in `[0, q]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVertex(pub Vec<u32>);

/// A facet code `a ∈ {0, .., q-1}^{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FacetCode(pub Vec<u32>);

macro_rules! tuple_text {
    ($t:ident) => {
        impl $t {
            pub fn coords(&self) -> &[u32] {
                &self.0
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, x) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }

        /// Parses `1,2,3` or `(1,2,3)`.
        impl FromStr for $t {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
                if inner.trim().is_empty() {
                    return Ok($t(Vec::new()));
                }
                inner
                    .split(',')
                    .map(|x| x.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map($t)
                    .map_err(|e| Error::domain(format!("cannot parse {s:?}: {e}")))
            }
        }
    };
}

tuple_text!(LatticeVertex);
tuple_text!(FacetCode);

/// The pair `(k, q)` and everything computed from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edgewise {
    k: u32,
    q: u32,
}

impl Edgewise {
    pub fn new(k: u32, q: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::domain(format!("edgewise subdivision needs k >= 2, got {k}")));
        }
        if q < 1 {
            return Err(Error::domain(format!("edgewise subdivision needs q >= 1, got {q}")));
        }
        Ok(Edgewise { k, q })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    fn dim(&self) -> usize {
        self.k as usize - 1
    }

    /// `q^{k-1}`, saturating at `u128::MAX`.
    pub fn num_facets(&self) -> u128 {
        (self.q as u128).checked_pow(self.k - 1).unwrap_or(u128::MAX)
    }

    /// `C(q + k - 1, k - 1)`.
    pub fn num_vertices(&self) -> BigUint {
        binomial((self.q + self.k - 1) as i64, (self.k - 1) as i64)
    }

    /// The corner `w_i = (0^{k-i}, q^{i-1})` of `R_{k,q}`, `1 ≤ i ≤ k`.
    pub fn corner(&self, i: u32) -> Result<LatticeVertex> {
        if !(1..=self.k).contains(&i) {
            return Err(Error::domain(format!("corner index {i} outside 1..={}", self.k)));
        }
        let mut c = vec![0; (self.k - i) as usize];
        c.extend(std::iter::repeat_n(self.q, i as usize - 1));
        Ok(LatticeVertex(c))
    }

    pub fn contains_vertex(&self, v: &LatticeVertex) -> bool {
        v.0.len() == self.dim() && v.0.windows(2).all(|w| w[0] <= w[1]) && v.0.iter().all(|&x| x <= self.q)
    }

    pub(crate) fn check_vertex(&self, v: &LatticeVertex) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::domain(format!("{v} is not a vertex of T_{{{},{}}}", self.k, self.q)))
        }
    }

    pub fn is_valid_code(&self, a: &FacetCode) -> bool {
        a.0.len() == self.dim() && a.0.iter().all(|&x| x < self.q)
    }

    pub(crate) fn check_code(&self, a: &FacetCode) -> Result<()> {
        if self.is_valid_code(a) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{a} is not a facet code for k = {}, q = {}",
                self.k, self.q
            )))
        }
    }

    /// All of `W_{k,q}` in lexicographic order.
    pub fn vertex_set(&self) -> Vec<LatticeVertex> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.dim());
        self.fill_vertices(&mut cur, 0, &mut out);
        out
    }

    fn fill_vertices(&self, cur: &mut Vec<u32>, low: u32, out: &mut Vec<LatticeVertex>) {
        if cur.len() == self.dim() {
            out.push(LatticeVertex(cur.clone()));
            return;
        }
        for x in low..=self.q {
            cur.push(x);
            self.fill_vertices(cur, x, out);
            cur.pop();
        }
    }

    /// All codes in lexicographic order.
    pub fn codes(&self) -> impl Iterator<Item = FacetCode> {
        let (n, q) = (self.dim(), self.q);
        let mut next = Some(vec![0u32; n]);
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            let mut i = n;
            while i > 0 {
                i -= 1;
                if succ[i] + 1 < q {
                    succ[i] += 1;
                    next = Some(succ);
                    break;
                }
                succ[i] = 0;
            }
            Some(FacetCode(cur))
        })
    }

    /// The ordered vertices `v^(1), .., v^(k)` of `F(a)`.
    pub fn decode(&self, a: &FacetCode) -> Result<Vec<LatticeVertex>> {
        self.check_code(a)?;
        Ok(decode_unchecked(&a.0))
    }

    /// The ordered vertices of `F(v, π)` for `π` a permutation of `1..=k-1`.
    pub fn facet_of(&self, v: &LatticeVertex, pi: &Word) -> Result<Vec<LatticeVertex>> {
        self.check_start(v, pi)?;
        let mut cur = v.0.clone();
        let mut out = vec![LatticeVertex(cur.clone())];
        for &p in pi.0.iter().rev() {
            cur[p as usize - 1] += 1;
            out.push(LatticeVertex(cur.clone()));
        }
        Ok(out)
    }

    fn check_start(&self, v: &LatticeVertex, pi: &Word) -> Result<()> {
        self.check_vertex(v)?;
        if pi.len() != self.dim() || !pi.is_permutation() {
            return Err(Error::domain(format!("{pi} is not a permutation of 1..={}", self.dim())));
        }
        let mut pos = vec![0usize; self.dim() + 1];
        for (i, &p) in pi.0.iter().enumerate() {
            pos[p as usize] = i;
        }
        for i in 1..self.dim() {
            if v.0[i - 1] == v.0[i] && pos[i] > pos[i + 1] {
                return Err(Error::domain(format!(
                    "{pi} is not consistent with {v}: {} must precede {}",
                    i,
                    i + 1
                )));
            }
        }
        if v.0.last().is_some_and(|&x| x >= self.q) {
            return Err(Error::domain(format!("F({v}, {pi}) leaves W_{{{},{}}}", self.k, self.q)));
        }
        Ok(())
    }

    /// The code `(v_{π_1}, .., v_{π_{k-1}})` of `F(v, π)`.
    pub fn encode(&self, v: &LatticeVertex, pi: &Word) -> Result<FacetCode> {
        self.check_start(v, pi)?;
        Ok(FacetCode(pi.0.iter().map(|&p| v.0[p as usize - 1]).collect()))
    }

    /// `T_{k,q}` with at most [`DEFAULT_MAX_FACETS`] facets.
    pub fn build_complex(&self) -> Result<SimplicialComplex<LatticeVertex>> {
        self.build_complex_with_cap(DEFAULT_MAX_FACETS)
    }

    pub fn build_complex_with_cap(&self, max_facets: u64) -> Result<SimplicialComplex<LatticeVertex>> {
        self.check_capacity(max_facets)?;
        Ok(SimplicialComplex::from_facets(self.codes().map(|a| decode_unchecked(&a.0))))
    }

    pub(crate) fn check_capacity(&self, max_facets: u64) -> Result<()> {
        let n = self.num_facets();
        if n > max_facets as u128 {
            return Err(Error::Capacity {
                what: "facets of T_{k,q}",
                requested: n,
                limit: max_facets as u128,
            });
        }
        Ok(())
    }

    /// Facets sharing a ridge with `F(a)`, keyed by the 1-based position in
    /// `v^(1), .., v^(k)` of the vertex left out. Ridges on the boundary of
    /// `R_{k,q}` have no entry.
    pub fn ridge_neighbors(&self, a: &FacetCode) -> Result<BTreeMap<usize, FacetCode>> {
        self.check_code(a)?;
        let k = self.k as usize;
        let a = &a.0;
        let mut out = BTreeMap::new();
        if a[0] > 0 {
            let mut b: Vec<u32> = a[1..].to_vec();
            b.push(a[0] - 1);
            out.insert(k, FacetCode(b));
        }
        if a[k - 2] + 2 <= self.q {
            let mut b = vec![a[k - 2] + 1];
            b.extend_from_slice(&a[..k - 2]);
            out.insert(1, FacetCode(b));
        }
        for i in 1..k - 1 {
            if a[i - 1] != a[i] {
                let mut b = a.clone();
                b.swap(i - 1, i);
                out.insert(k - i, FacetCode(b));
            }
        }
        Ok(out)
    }
}

/// Decoding without bounds checks; `a` must be a valid code.
pub(crate) fn decode_unchecked(a: &[u32]) -> Vec<LatticeVertex> {
    let n = a.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| (a[p], p));
    let mut rank = vec![0usize; n];
    for (r, &p) in order.iter().enumerate() {
        rank[p] = r;
    }
    let mut cur: Vec<u32> = order.iter().map(|&p| a[p]).collect();
    let mut out = Vec::with_capacity(n + 1);
    out.push(LatticeVertex(cur.clone()));
    for p in (0..n).rev() {
        cur[rank[p]] += 1;
        out.push(LatticeVertex(cur.clone()));
    }
    out
}
