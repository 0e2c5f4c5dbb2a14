//! Vertex types, stars and links of vertices.

use std::fmt;

use serde::Serialize;

use super::face::{certify, Arc};
use super::{decode_unchecked, Edgewise, FacetCode, LatticeVertex};
use crate::combinatorics::{permutations, Partition, Word};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::poset::k_lambda_any;

/// `(α_0; α_1, .., α_{s-1}; α_s)`: leading zeros, runs of equal middle
/// values, trailing `q`s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VertexType {
    pub alpha0: u32,
    pub runs: Vec<u32>,
    pub alpha_s: u32,
}

impl VertexType {
    /// `λ(v)`: the parts `α_0 + α_s + 1, α_1, .., α_{s-1}` sorted.
    pub fn partition(&self) -> Partition {
        let mut parts = vec![self.alpha0 + self.alpha_s + 1];
        parts.extend(&self.runs);
        Partition::new(parts).expect("parts are positive")
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let runs: Vec<String> = self.runs.iter().map(ToString::to_string).collect();
        write!(f, "({};{};{})", self.alpha0, runs.join(","), self.alpha_s)
    }
}

/// The link of a vertex with its model `K_{λ(v)}`.
#[derive(Debug, Clone, Serialize)]
pub struct VertexLink {
    pub vertex: LatticeVertex,
    pub vertex_type: VertexType,
    pub partition: Partition,
    pub link: SimplicialComplex<LatticeVertex>,
    pub model: SimplicialComplex<Vec<u32>>,
    /// Model vertex (a point of the chain product) to link vertex.
    pub witness: Vec<(Vec<u32>, LatticeVertex)>,
    pub certified: bool,
}

/// The multiset of cyclic differences `i_2 - i_1, .., i_s - i_{s-1},
/// k + i_1 - i_s` of the corner indices spanning a support.
pub fn support_signature(corners: &[u32], k: u32) -> Result<Partition> {
    let mut c = corners.to_vec();
    c.sort_unstable();
    c.dedup();
    if c.len() != corners.len() || c.is_empty() || c[0] < 1 || c[c.len() - 1] > k {
        return Err(Error::domain(format!("{corners:?} is not a set of corners of a {k}-vertex simplex")));
    }
    let mut parts: Vec<u32> = c.windows(2).map(|w| w[1] - w[0]).collect();
    parts.push(k + c[0] - c[c.len() - 1]);
    Partition::new(parts)
}

impl Edgewise {
    pub fn vertex_type(&self, v: &LatticeVertex) -> Result<VertexType> {
        self.check_vertex(v)?;
        let c = &v.0;
        let alpha0 = c.iter().take_while(|&&x| x == 0).count();
        let alpha_s = c[alpha0..].iter().rev().take_while(|&&x| x == self.q).count();
        let middle = &c[alpha0..c.len() - alpha_s];
        let runs = middle
            .chunk_by(|a, b| a == b)
            .map(|r| r.len() as u32)
            .collect();
        Ok(VertexType {
            alpha0: alpha0 as u32,
            runs,
            alpha_s: alpha_s as u32,
        })
    }

    pub fn vertex_partition(&self, v: &LatticeVertex) -> Result<Partition> {
        Ok(self.vertex_type(v)?.partition())
    }

    /// Whether `v` lies in the interior of `R_{k,q}`.
    pub fn is_interior(&self, v: &LatticeVertex) -> Result<bool> {
        self.check_vertex(v)?;
        let c = &v.0;
        Ok(c[0] > 0 && c[c.len() - 1] < self.q && c.windows(2).all(|w| w[0] < w[1]))
    }

    /// Indices `i` of the corners `w_i` spanning the support of `v`.
    pub fn support_corners(&self, v: &LatticeVertex) -> Result<Vec<u32>> {
        self.check_vertex(v)?;
        let c = &v.0;
        let n = c.len();
        let mut out = Vec::new();
        if c[n - 1] < self.q {
            out.push(1);
        }
        for i in 2..=self.k {
            let j = (self.k - i) as usize;
            let gap = if j == 0 { c[0] } else { c[j] - c[j - 1] };
            if gap > 0 {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// `S_v`: the orders in which the `k` steps can be taken from `v`
    /// staying inside `W_{k,q}`, read off the labelled chains of the arc
    /// poset of `v`. Sorted lexicographically.
    pub fn star_permutations(&self, v: &LatticeVertex) -> Result<Vec<Word>> {
        self.check_vertex(v)?;
        let steps: Vec<u32> = (1..=self.k).collect();
        let poset = Arc::new(self, v, &steps)?.poset();
        let mut out: Vec<Word> = poset.labeled_chains()?.into_iter().map(|c| Word(c.labels)).collect();
        out.sort();
        Ok(out)
    }

    /// `S_v` by filtering all of `S_k` through the ordering conditions on
    /// leading zeros, equal runs and trailing `q`s.
    pub fn star_permutations_by_conditions(&self, v: &LatticeVertex) -> Result<Vec<Word>> {
        let ty = self.vertex_type(v)?;
        let k = self.k;
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        let mut next = ty.alpha0 + 1;
        for &r in &ty.runs {
            blocks.push((next..next + r).collect());
            next += r;
        }
        let lead: Vec<u32> = (1..=ty.alpha0).collect();
        let trail: Vec<u32> = (k - ty.alpha_s..k).collect();
        let reversed = |pos: &[usize], idx: &[u32]| idx.windows(2).all(|w| pos[w[1] as usize] < pos[w[0] as usize]);
        let out = permutations(k as usize)
            .into_iter()
            .filter(|pi| {
                let mut pos = vec![0usize; k as usize + 1];
                for (i, &p) in pi.0.iter().enumerate() {
                    pos[p as usize] = i;
                }
                let at_k = pos[k as usize];
                lead.iter().all(|&j| pos[j as usize] < at_k)
                    && reversed(&pos, &lead)
                    && blocks.iter().all(|b| reversed(&pos, b))
                    && trail.iter().all(|&j| pos[j as usize] > at_k)
                    && reversed(&pos, &trail)
            })
            .collect();
        Ok(out)
    }

    /// `a_π = (v_{π_{i-1}}, .., v_{π_1}, v_{π_k} - 1, .., v_{π_{i+1}} - 1)`
    /// where `π_i = k`.
    pub fn a_pi(&self, v: &LatticeVertex, pi: &Word) -> Result<FacetCode> {
        self.check_vertex(v)?;
        let k = self.k as usize;
        if pi.len() != k || !pi.is_permutation() {
            return Err(Error::domain(format!("{pi} is not a permutation of 1..={k}")));
        }
        let i = pi.0.iter().position(|&p| p as usize == k).expect("k occurs in π");
        let mut a: Vec<u32> = pi.0[..i].iter().rev().map(|&p| v.0[p as usize - 1]).collect();
        for &p in pi.0[i + 1..].iter().rev() {
            let x = v.0[p as usize - 1]
                .checked_sub(1)
                .ok_or_else(|| Error::domain(format!("{pi} leaves W_{{{},{}}} from {v}", self.k, self.q)))?;
            a.push(x);
        }
        let a = FacetCode(a);
        self.check_code(&a)?;
        Ok(a)
    }

    /// The facets containing `v`, as `F(a_π)` for `π ∈ S_v`.
    pub(crate) fn star_facets(&self, v: &LatticeVertex) -> Result<Vec<Vec<LatticeVertex>>> {
        self.star_permutations(v)?
            .iter()
            .map(|pi| Ok(decode_unchecked(&self.a_pi(v, pi)?.0)))
            .collect()
    }

    pub fn star_of_vertex(&self, v: &LatticeVertex) -> Result<SimplicialComplex<LatticeVertex>> {
        Ok(SimplicialComplex::from_facets(self.star_facets(v)?))
    }

    /// The link of `v` from its local star, with the model `K_{λ(v)}` and the
    /// vertex bijection given by the arc poset of `v`.
    pub fn link_of_vertex(&self, v: &LatticeVertex) -> Result<VertexLink> {
        let vertex_type = self.vertex_type(v)?;
        let partition = vertex_type.partition();
        let link = self.star_of_vertex(v)?.link(std::slice::from_ref(v))?;
        let steps: Vec<u32> = (1..=self.k).collect();
        let arc = Arc::new(self, v, &steps)?;
        debug_assert_eq!(arc.sigma(), partition);
        let model = k_lambda_any(&partition)?;
        let witness = arc.interior();
        let certified = certify(&model, &witness, &link);
        Ok(VertexLink {
            vertex: v.clone(),
            vertex_type,
            partition,
            link,
            model,
            witness,
            certified,
        })
    }
}
