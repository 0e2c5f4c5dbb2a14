//! Abstract simplicial complexes stored as their facet families.
//!
//! Vertex ids are opaque ordered tokens: lattice points, poset elements and
//! subset masks all serve directly as vertices. Internally every complex keeps
//! a sorted vertex table and facets as sorted index lists, which makes
//! equality, hashing of faces and the isomorphism search cheap.
//!
//! Two degenerate complexes matter for joins: the *empty* complex `{∅}`
//! (one facet with no vertices, the identity for [`SimplicialComplex::join`])
//! and the *void* complex with no faces at all.

mod iso;
mod shell;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use iso::{are_isomorphic, are_isomorphic_with_bound, DEFAULT_ISO_VERTEX_BOUND};
pub use shell::{verify_shelling, RidgeWitness, ShellingCertificate, ShellingFailure};

/// Anything usable as a vertex label.
pub trait Vertex: Ord + Clone + Hash + fmt::Debug {}

impl<T: Ord + Clone + Hash + fmt::Debug> Vertex for T {}

#[derive(Clone)]
pub struct SimplicialComplex<V> {
    vertices: Vec<V>,
    facets: Vec<Vec<u32>>,
    f_cache: OnceLock<Vec<u64>>,
}

impl<V: Vertex> SimplicialComplex<V> {
    /// Builds a complex from a family of vertex sets. Duplicate vertices inside
    /// a set, duplicate sets and sets contained in other sets are discarded.
    pub fn from_facets<I, F>(facets: I) -> Self
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = V>,
    {
        let raw: Vec<Vec<V>> = facets
            .into_iter()
            .map(|f| {
                let mut f: Vec<V> = f.into_iter().collect();
                f.sort();
                f.dedup();
                f
            })
            .collect();
        let mut vertices: Vec<V> = raw.iter().flatten().cloned().collect();
        vertices.sort();
        vertices.dedup();
        let index = |v: &V| vertices.binary_search(v).expect("vertex collected above") as u32;
        let mut facets: Vec<Vec<u32>> = raw.iter().map(|f| f.iter().map(index).collect()).collect();
        facets.sort();
        facets.dedup();
        let facets = maximal_only(facets);
        Self::from_parts(vertices, facets)
    }

    /// The complex `{∅}`.
    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), vec![Vec::new()])
    }

    /// The complex with no faces.
    pub fn void() -> Self {
        Self::from_parts(Vec::new(), Vec::new())
    }

    /// The full simplex on the given vertices.
    pub fn simplex<I: IntoIterator<Item = V>>(vertices: I) -> Self {
        Self::from_facets([vertices])
    }

    fn from_parts(vertices: Vec<V>, facets: Vec<Vec<u32>>) -> Self {
        SimplicialComplex {
            vertices,
            facets,
            f_cache: OnceLock::new(),
        }
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Facets as sorted vertex lists, in sorted order.
    pub fn facets(&self) -> impl Iterator<Item = Vec<V>> + '_ {
        self.facets.iter().map(move |f| self.labels(f))
    }

    pub fn facet_list(&self) -> Vec<Vec<V>> {
        self.facets().collect()
    }

    pub(crate) fn raw_facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    fn labels(&self, face: &[u32]) -> Vec<V> {
        face.iter().map(|&i| self.vertices[i as usize].clone()).collect()
    }

    pub fn index_of(&self, v: &V) -> Option<u32> {
        self.vertices.binary_search(v).ok().map(|i| i as u32)
    }

    /// Sorted index form of a vertex set, or `None` if some vertex is absent.
    pub(crate) fn indices_of(&self, face: &[V]) -> Option<Vec<u32>> {
        let mut out = face.iter().map(|v| self.index_of(v)).collect::<Option<Vec<u32>>>()?;
        out.sort_unstable();
        out.dedup();
        Some(out)
    }

    /// Dimension of the largest facet; `-1` for `{∅}`, `-2` for the void complex.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-2)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn contains_face(&self, face: &[V]) -> bool {
        match self.indices_of(face) {
            Some(idx) => self.facets.iter().any(|f| is_subset(&idx, f)),
            None => face.is_empty() && !self.is_void(),
        }
    }

    /// `(f_{-1}, f_0, .., f_d)`. Faces are enumerated from the facets and
    /// deduplicated; the result is cached.
    pub fn f_vector(&self) -> Vec<u64> {
        self.f_cache.get_or_init(|| compute_f_vector(&self.facets)).clone()
    }

    /// h-vector from the f-vector.
    pub fn h_vector(&self) -> Result<Vec<i64>> {
        h_from_f(&self.f_vector(), self.dimension())
    }

    /// `{τ : σ ∪ τ ∈ K, σ ∩ τ = ∅}`.
    pub fn link(&self, sigma: &[V]) -> Result<Self> {
        let containing = self.facets_containing(sigma)?;
        let sigma_idx = self.indices_of(sigma).unwrap_or_default();
        let facets = containing.into_iter().map(|f| {
            f.iter()
                .filter(|i| sigma_idx.binary_search(i).is_err())
                .map(|&i| self.vertices[i as usize].clone())
                .collect::<Vec<V>>()
        });
        Ok(Self::from_facets(facets))
    }

    /// Union of the faces containing `σ`, as a complex of its facets.
    pub fn star(&self, sigma: &[V]) -> Result<Self> {
        let containing = self.facets_containing(sigma)?;
        Ok(Self::from_facets(containing.into_iter().map(|f| self.labels(f))))
    }

    fn facets_containing(&self, sigma: &[V]) -> Result<Vec<&Vec<u32>>> {
        let idx = self
            .indices_of(sigma)
            .ok_or_else(|| Error::domain(format!("{sigma:?} is not a face of the complex")))?;
        let out: Vec<&Vec<u32>> = self.facets.iter().filter(|f| is_subset(&idx, f)).collect();
        if out.is_empty() {
            return Err(Error::domain(format!("{sigma:?} is not a face of the complex")));
        }
        Ok(out)
    }

    /// Join with a complex on a disjoint vertex set.
    pub fn join(&self, other: &Self) -> Result<Self> {
        if let Some(v) = self.vertices.iter().find(|v| other.index_of(v).is_some()) {
            return Err(Error::domain(format!("join: vertex {v:?} occurs in both factors")));
        }
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in self.facets() {
            for b in other.facets() {
                let mut f = a.clone();
                f.extend(b);
                facets.push(f);
            }
        }
        if facets.is_empty() {
            return Ok(Self::void());
        }
        Ok(Self::from_facets(facets))
    }

    /// Relabels vertices through an injective map.
    pub fn map_vertices<W: Vertex>(&self, mut f: impl FnMut(&V) -> W) -> SimplicialComplex<W> {
        let images: Vec<W> = self.vertices.iter().map(&mut f).collect();
        let mapped = SimplicialComplex::from_facets(
            self.facets.iter().map(|face| face.iter().map(|&i| images[i as usize].clone()).collect::<Vec<W>>()),
        );
        assert_eq!(mapped.num_vertices(), self.num_vertices(), "map_vertices: relabeling is not injective");
        mapped
    }

    /// Map from each vertex index to the facet indices that contain it.
    pub(crate) fn incidence(&self) -> Vec<Vec<u32>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (fi, f) in self.facets.iter().enumerate() {
            for &v in f {
                inc[v as usize].push(fi as u32);
            }
        }
        inc
    }

    pub fn to_json_shape(&self) -> ComplexJson<V> {
        ComplexJson {
            dimension: self.dimension(),
            f_vector: self.f_vector(),
            vertices: self.vertices.clone(),
            facets: self.facet_list(),
        }
    }
}

impl<V: Vertex> PartialEq for SimplicialComplex<V> {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.facets == other.facets
    }
}

impl<V: Vertex> Eq for SimplicialComplex<V> {}

impl<V: Vertex> fmt::Debug for SimplicialComplex<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("facets", &self.facet_list())
            .finish()
    }
}

/// Serialized form: sorted facet lists of sorted vertex labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson<V> {
    pub dimension: isize,
    pub f_vector: Vec<u64>,
    pub vertices: Vec<V>,
    pub facets: Vec<Vec<V>>,
}

impl<V: Vertex> From<ComplexJson<V>> for SimplicialComplex<V> {
    fn from(json: ComplexJson<V>) -> Self {
        SimplicialComplex::from_facets(json.facets)
    }
}

impl<V: Vertex + Serialize> Serialize for SimplicialComplex<V> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_shape().serialize(serializer)
    }
}

impl<'de, V: Vertex + Deserialize<'de>> Deserialize<'de> for SimplicialComplex<V> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        ComplexJson::<V>::deserialize(deserializer).map(Into::into)
    }
}

/// `h_s = sum_{i=0}^{s} (-1)^{s-i} C(d+1-i, d+1-s) f_{i-1}` for `s = 0..=d+1`,
/// where `f = (f_{-1}, .., f_d)`.
pub fn h_from_f(f: &[u64], d: isize) -> Result<Vec<i64>> {
    if d < -1 || f.len() as isize != d + 2 {
        return Err(Error::domain(format!(
            "h_from_f: expected {} entries for dimension {d}, got {}",
            d + 2,
            f.len()
        )));
    }
    if f[0] != 1 {
        return Err(Error::domain("h_from_f: f_{-1} must be 1"));
    }
    let top = (d + 1) as usize;
    let binom = |n: usize, k: usize| -> i128 {
        if k > n {
            return 0;
        }
        let k = k.min(n - k);
        (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
    };
    let h = (0..=top)
        .map(|s| {
            let total: i128 = (0..=s)
                .map(|i| {
                    let sign = if (s - i) % 2 == 0 { 1 } else { -1 };
                    sign * binom(top - i, top - s) * f[i] as i128
                })
                .sum();
            i64::try_from(total).expect("h-vector entry exceeds i64")
        })
        .collect();
    Ok(h)
}

fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

fn maximal_only(facets: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    if facets.iter().all(|f| f.len() == facets[0].len()) {
        return facets;
    }
    let mut by_size: Vec<&Vec<u32>> = facets.iter().collect();
    by_size.sort_by(|a, b| b.len().cmp(&a.len()));
    let mut kept: Vec<&Vec<u32>> = Vec::new();
    for f in by_size {
        if !kept.iter().any(|g| g.len() > f.len() && is_subset(f, g)) {
            kept.push(f);
        }
    }
    let mut out: Vec<Vec<u32>> = kept.into_iter().cloned().collect();
    out.sort();
    out
}

fn compute_f_vector(facets: &[Vec<u32>]) -> Vec<u64> {
    let Some(top) = facets.iter().map(Vec::len).max() else {
        return vec![0];
    };
    let mut seen: Vec<HashSet<Vec<u32>>> = vec![HashSet::new(); top + 1];
    for f in facets {
        assert!(f.len() < 32, "facet too large for subset enumeration");
        for mask in 1u32..(1u32 << f.len()) {
            let face: Vec<u32> = (0..f.len()).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect();
            seen[face.len()].insert(face);
        }
    }
    let mut out = vec![1u64];
    out.extend(seen.iter().skip(1).map(|s| s.len() as u64));
    out
}

/// Counts of facets by vertex count, used by quick isomorphism rejection.
pub(crate) fn facet_size_profile(facets: &[Vec<u32>]) -> HashMap<usize, usize> {
    let mut out = HashMap::new();
    for f in facets {
        *out.entry(f.len()).or_insert(0) += 1;
    }
    out
}
