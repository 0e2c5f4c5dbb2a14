//! Star clusters: the union of the stars of the vertices of a face.
//!
//! For an interior facet `F = F(v, Id)` with vertices `v^(1), .., v^(k)` the
//! star of each `v^(j)` is indexed by `S_k`. Layer `j` keeps the facets of
//! the star of `v^(j)` not seen in earlier layers; relabelling `π` as
//! `Φ_j(π) = (π_k + j) .. (π_1 + j)` (mod `k`, values in `1..=k`), these are
//! exactly the `π` with `init(Φ_j(π)) ≥ j`. Listing each layer by
//! `(init, lex)` of `Φ_j(π)` gives a shelling whose h-vector is
//! `(1, 2, .., k) · H_k`.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::{factorial, h_matrix, init_unchecked, nonneg, partitions, permutations, x_sequence, Word};
use crate::complex::{h_from_f, verify_shelling, ShellingCertificate, SimplicialComplex, Vertex};
use crate::edgewise::{Edgewise, FacetCode, LatticeVertex};
use crate::error::{Error, Result};
use crate::poset::sd_boundary_simplex;

/// Largest `k` accepted by the subset sums and the structured construction.
pub const MAX_STAR_CLUSTER_K: u32 = 10;

/// `SC_K(σ)`: all facets of `K` meeting `σ`.
pub fn star_cluster<V: Vertex>(k: &SimplicialComplex<V>, sigma: &[V]) -> Result<SimplicialComplex<V>> {
    if !k.contains_face(sigma) {
        return Err(Error::domain(format!("{sigma:?} is not a face")));
    }
    let facets: Vec<Vec<V>> = k.facets().filter(|f| sigma.iter().any(|v| f.contains(v))).collect();
    Ok(SimplicialComplex::from_facets(facets))
}

/// `Φ_j(π) = (π_k + j) (π_{k-1} + j) .. (π_1 + j)`, sums mod `k` in `1..=k`.
pub fn phi(pi: &Word, j: u32) -> Word {
    let k = pi.len() as u32;
    Word(pi.0.iter().rev().map(|&p| (p + j - 1) % k + 1).collect())
}

/// `S_k` sorted by faithful initial part, then lexicographically.
pub fn init_shelling_order(k: usize) -> Vec<Word> {
    let mut perms = permutations(k);
    perms.sort_by_key(|w| init_unchecked(&w.0));
    perms
}

/// Checks [`init_shelling_order`] on `Sd(∂Δ^{k-1})`, with facet `F_π` the
/// chain `{π_1} ⊂ {π_1, π_2} ⊂ .. ⊂ [k] \ {π_k}`.
pub fn verify_init_shelling(k: u32) -> Result<(Vec<Word>, ShellingCertificate<u32>)> {
    let complex = sd_boundary_simplex(k)?;
    let order = init_shelling_order(k as usize);
    let facets: Vec<Vec<u32>> = order
        .iter()
        .map(|w| {
            let mut mask = 0u32;
            let mut f: Vec<u32> = w.0[..k as usize - 1]
                .iter()
                .map(|&i| {
                    mask |= 1 << (i - 1);
                    mask
                })
                .collect();
            f.sort_unstable();
            f
        })
        .collect();
    let cert = verify_shelling(&complex, &facets)?;
    Ok((order, cert))
}

/// Inclusion-exclusion over index sets `i_1 < .. < i_t` of `[k]` with the
/// cyclic gaps `(i_2 - i_1)! .. (k - i_t + i_1)!`.
pub fn sc_count_ie(k: u32) -> Result<BigUint> {
    let positions: Vec<u32> = (1..=k).collect();
    cyclic_ie(k, &positions)
}

/// The same count grouped by the partition of `k` formed by the gaps:
/// `Σ (-1)^{s-1} k (s-1)! / Π m_i! · Π λ_i!`.
pub fn sc_count_partition(k: u32) -> Result<BigUint> {
    check_k(k)?;
    let mut total = BigInt::zero();
    for lambda in partitions(k, None)? {
        let s = lambda.len() as u64;
        let mult: BigUint = lambda.multiplicities().iter().map(|&(_, m)| factorial(m as u64)).product();
        let fact: BigUint = lambda.parts().iter().map(|&p| factorial(p as u64)).product();
        let term = BigInt::from(factorial(s - 1) * k / mult * fact);
        if s % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(nonneg(total))
}

/// `X_{k+1}`.
pub fn x_k_plus_one(k: u32) -> BigUint {
    x_sequence(k as usize + 1).pop().expect("nonempty")
}

fn check_k(k: u32) -> Result<()> {
    if !(2..=MAX_STAR_CLUSTER_K).contains(&k) {
        return Err(Error::domain(format!("star cluster counts need 2 <= k <= {MAX_STAR_CLUSTER_K}, got {k}")));
    }
    Ok(())
}

/// `Σ_t (-1)^{t-1} Σ_{i_1 < .. < i_t} Π (x_{i_{r+1}} - x_{i_r})!`
/// with the last gap wrapping around `k`, so one-element sets give `k!`.
fn cyclic_ie(k: u32, x: &[u32]) -> Result<BigUint> {
    check_k(k)?;
    let m = x.len();
    let mut total = BigInt::zero();
    for mask in 1u32..(1 << m) {
        let idx: Vec<u32> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| x[i]).collect();
        let t = idx.len();
        let mut term = BigUint::from(1u32);
        for w in idx.windows(2) {
            term *= factorial((w[1] - w[0]) as u64);
        }
        term *= factorial((k + idx[0] - idx[t - 1]) as u64);
        if t % 2 == 1 {
            total += BigInt::from(term);
        } else {
            total -= BigInt::from(term);
        }
    }
    Ok(nonneg(total))
}

/// Layer-by-layer description of the star cluster of an interior facet.
#[derive(Debug, Clone, Serialize)]
pub struct StarClusterReport {
    pub k: u32,
    pub q: u32,
    pub base: FacetCode,
    pub base_vertices: Vec<LatticeVertex>,
    /// New facets of each layer, in shelling order.
    pub layers: Vec<Vec<Word>>,
    pub layer_sizes: Vec<usize>,
    /// All facets in shelling order, vertices sorted.
    pub facets: Vec<Vec<LatticeVertex>>,
    /// Facet count of the union of vertex stars taken directly.
    pub count_enumeration: usize,
    #[serde(serialize_with = "crate::bigserde::decimal")]
    pub count_ie: BigUint,
    #[serde(serialize_with = "crate::bigserde::decimal")]
    pub count_partition: BigUint,
    #[serde(serialize_with = "crate::bigserde::decimal")]
    pub x_k_plus_one: BigUint,
    /// Whether the layer rule picked exactly the facets not seen earlier.
    pub layers_match_union: bool,
    pub certificate: ShellingCertificate<LatticeVertex>,
    /// Restriction sizes of the shelling, length `k`.
    pub h_shelling: Vec<u64>,
    /// `(1, .., k) · H_k`.
    pub h_formula: Vec<u64>,
    /// `Σ init(π)` over `π` with `des(π) = j`.
    pub h_init_weighted: Vec<u64>,
    /// From the f-vector, `k + 1` entries.
    pub h_from_f: Vec<i64>,
}

impl StarClusterReport {
    /// All counts agree, the order is a shelling and the h-vectors match.
    pub fn is_consistent(&self) -> bool {
        let n = BigUint::from(self.count_enumeration);
        let h_f_ok = self.h_from_f.len() == self.k as usize + 1
            && self.h_from_f[self.k as usize] == 0
            && self.h_from_f[..self.k as usize]
                .iter()
                .zip(&self.h_formula)
                .all(|(&a, &b)| a == b as i64);
        n == self.count_ie
            && n == self.count_partition
            && n == self.x_k_plus_one
            && self.facets.len() == self.count_enumeration
            && self.layers_match_union
            && self.certificate.valid
            && self.h_shelling == self.h_formula
            && self.h_init_weighted == self.h_formula
            && h_f_ok
    }
}

impl Edgewise {
    /// `(1, 2, .., k-1)`, the start of the first facet whose vertices are
    /// all interior. Needs `q ≥ k + 1`.
    pub fn default_star_cluster_base(&self) -> Result<LatticeVertex> {
        let v = LatticeVertex((1..self.k()).collect());
        self.check_interior_base(&v)?;
        Ok(v)
    }

    fn check_interior_base(&self, v: &LatticeVertex) -> Result<()> {
        self.check_vertex(v)?;
        let c = v.coords();
        let ok = c[0] > 0 && c.windows(2).all(|w| w[0] < w[1]) && c[c.len() - 1] + 1 < self.q();
        if !ok {
            return Err(Error::domain(format!(
                "F({v}, Id) has a vertex on the boundary; need 0 < v_1 < .. < v_{{k-1}} < q - 1 (q >= {} for the default base)",
                self.k() + 1
            )));
        }
        Ok(())
    }

    /// The facets of the star of an interior vertex, indexed by `S_k`.
    fn interior_star_facet(&self, w: &LatticeVertex, pi: &Word) -> Result<Vec<LatticeVertex>> {
        let mut f = self.decode(&self.a_pi(w, pi)?)?;
        f.sort();
        Ok(f)
    }

    /// The star cluster of `F(v, Id)` built layer by layer, with its shelling
    /// and every count and h-vector route.
    pub fn star_cluster_report(&self, v: &LatticeVertex) -> Result<StarClusterReport> {
        let k = self.k();
        check_k(k)?;
        self.check_interior_base(v)?;
        let id = Word((1..k).collect());
        let base_vertices = self.facet_of(v, &id)?;
        let base = self.encode(v, &id)?;

        let mut seen: HashSet<Vec<LatticeVertex>> = HashSet::new();
        let mut layers = Vec::new();
        let mut facets = Vec::new();
        let mut layers_match_union = true;
        let mut all_perms = permutations(k as usize);
        for (j, w) in (1..=k).zip(&base_vertices) {
            all_perms.sort_by_cached_key(|pi| {
                let p = phi(pi, j);
                (init_unchecked(&p.0), p)
            });
            let mut layer = Vec::new();
            for pi in &all_perms {
                let f = self.interior_star_facet(w, pi)?;
                let fresh = init_unchecked(&phi(pi, j).0) >= j as usize;
                layers_match_union &= fresh == !seen.contains(&f);
                if fresh {
                    layer.push(pi.clone());
                    facets.push(f.clone());
                }
                seen.insert(f);
            }
            layers.push(layer);
        }
        let layer_sizes = layers.iter().map(Vec::len).collect();

        let mut region: Vec<Vec<LatticeVertex>> = Vec::new();
        for w in &base_vertices {
            region.extend(self.star_of_vertex(w)?.facets());
        }
        let union = SimplicialComplex::from_facets(region);
        let count_enumeration = union.num_facets();
        let certificate = verify_shelling(&union, &facets)?;
        let mut h_shelling = certificate.type_histogram();
        h_shelling.truncate(k as usize);

        let table = h_matrix(k as usize)?;
        let weights: Vec<u64> = (1..=k as u64).collect();
        let h_formula = table.weighted_column_sums(&weights);
        let mut h_init_weighted = vec![0u64; k as usize];
        for pi in permutations(k as usize) {
            h_init_weighted[pi.des()] += init_unchecked(&pi.0) as u64;
        }
        let h_from_f = h_from_f(&union.f_vector(), k as isize - 1)?;

        Ok(StarClusterReport {
            k,
            q: self.q(),
            base,
            base_vertices,
            layers,
            layer_sizes,
            facets,
            count_enumeration,
            count_ie: sc_count_ie(k)?,
            count_partition: sc_count_partition(k)?,
            x_k_plus_one: x_k_plus_one(k),
            layers_match_union,
            certificate,
            h_shelling,
            h_formula,
            h_init_weighted,
            h_from_f,
        })
    }

    /// `m k! + Σ_{t ≥ 2} (-1)^{t-1} Σ Π (x_{i_{r+1}} - x_{i_r})!` for a face
    /// with all vertices interior, where `x_1 = 1` and `x_{i+1} - x_i` is the
    /// number of coordinates in which consecutive vertices differ.
    pub fn sc_count_general_face(&self, face: &[LatticeVertex]) -> Result<BigUint> {
        let (ordered, steps) = self.face_steps(face)?;
        for w in &ordered {
            if !self.is_interior(w)? {
                return Err(Error::domain(format!("{w} is not interior; the count needs interior vertices")));
            }
        }
        let mut x = vec![1u32];
        for s in &steps[..steps.len() - 1] {
            x.push(x[x.len() - 1] + s.len() as u32);
        }
        cyclic_ie(self.k(), &x)
    }
}
