use std::collections::HashMap;

use serde::Serialize;

use super::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// `F_j \ {vertex}` is contained in the earlier facet at position `earlier`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RidgeWitness<V> {
    pub vertex: V,
    pub earlier: usize,
}

/// First violation of the shelling condition: no ridge of facet `j` covers
/// its intersection with facet `i` (0-based positions, `i < j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShellingFailure {
    pub i: usize,
    pub j: usize,
}

/// Result of checking a facet order. Restrictions and types are filled in for
/// every facet whether or not the order is a shelling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShellingCertificate<V> {
    pub order: Vec<Vec<V>>,
    pub restrictions: Vec<Vec<V>>,
    pub witnesses: Vec<Vec<RidgeWitness<V>>>,
    pub types: Vec<usize>,
    pub valid: bool,
    pub failure: Option<ShellingFailure>,
}

impl<V> ShellingCertificate<V> {
    /// Number of facets of each type, indexed `0..=facet size`.
    pub fn type_histogram(&self) -> Vec<u64> {
        let width = self.order.first().map_or(1, |f| f.len() + 1);
        let mut hist = vec![0u64; width];
        for &t in &self.types {
            hist[t] += 1;
        }
        hist
    }
}

/// Checks that `order` is a shelling of the pure complex `complex`.
///
/// The restriction of `F_j` is the set of vertices `v` with `F_j \ {v}`
/// contained in an earlier facet. The order is a shelling exactly when no
/// earlier facet contains the whole restriction of a later one; the first
/// failure reported is the one with the smallest `j`, then the smallest `i`.
pub fn verify_shelling<V: Vertex>(
    complex: &SimplicialComplex<V>,
    order: &[Vec<V>],
) -> Result<ShellingCertificate<V>> {
    if !complex.is_pure() {
        return Err(Error::domain("verify_shelling: complex is not pure"));
    }
    let indexed: Vec<Vec<u32>> = order
        .iter()
        .map(|f| complex.indices_of(f).filter(|idx| idx.len() == f.len()))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::domain("verify_shelling: order mentions a vertex outside the complex"))?;
    let mut sorted = indexed.clone();
    sorted.sort();
    if sorted != complex.raw_facets() {
        return Err(Error::domain("verify_shelling: order is not a permutation of the facets"));
    }

    let mut ridge_owner: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); complex.num_vertices()];
    let mut restrictions = Vec::with_capacity(order.len());
    let mut witnesses = Vec::with_capacity(order.len());
    let mut types = Vec::with_capacity(order.len());
    let mut failure = None;

    for (j, facet) in indexed.iter().enumerate() {
        let mut restriction = Vec::new();
        let mut wit = Vec::new();
        for (pos, &v) in facet.iter().enumerate() {
            let mut ridge = facet.clone();
            ridge.remove(pos);
            if let Some(&l) = ridge_owner.get(&ridge) {
                restriction.push(v);
                wit.push(RidgeWitness {
                    vertex: complex.vertices[v as usize].clone(),
                    earlier: l,
                });
            }
        }
        if j > 0 && failure.is_none() {
            // smallest earlier facet containing the whole restriction
            let blocker = match restriction.first() {
                None => Some(0),
                Some(&first) => containing[first as usize].iter().copied().find(|&i| {
                    restriction.iter().all(|&v| indexed[i].binary_search(&v).is_ok())
                }),
            };
            if let Some(i) = blocker {
                failure = Some(ShellingFailure { i, j });
            }
        }
        for pos in 0..facet.len() {
            let mut ridge = facet.clone();
            ridge.remove(pos);
            ridge_owner.entry(ridge).or_insert(j);
        }
        for &v in facet {
            containing[v as usize].push(j);
        }
        types.push(restriction.len());
        restrictions.push(complex.labels(&restriction));
        witnesses.push(wit);
    }

    Ok(ShellingCertificate {
        order: order.iter().map(|f| {
            let mut f = f.clone();
            f.sort();
            f
        }).collect(),
        restrictions,
        witnesses,
        types,
        valid: failure.is_none(),
        failure,
    })
}
