//! Finite graded posets, products of chains and their order complexes.
//!
//! The chain `C_m` has the `m + 1` elements `0 < 1 < .. < m`. A product of
//! chains `P_{m_1,..,m_s}` has integer tuples as elements and covers that
//! raise one coordinate by one; its standard labelling gives such a cover the
//! 1-based index of the raised coordinate. With that labelling a maximal chain
//! reads as a word over `{1^{m_1}, .., s^{m_s}}`, position = rank step.
//!
//! `K_λ` is the reduced order complex of `P_λ`.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{binomial, multiset_permutations, Partition};
use crate::complex::{h_from_f, SimplicialComplex, Vertex, DEFAULT_ISO_VERTEX_BOUND};
use crate::error::{Error, Result};

/// A graded poset given by its cover relations, optionally with integer
/// cover labels.
#[derive(Debug, Clone)]
pub struct GradedPoset<E> {
    elements: Vec<E>,
    rank: Vec<u32>,
    covers: Vec<(u32, u32)>,
    labels: Option<Vec<u32>>,
    up: Vec<Vec<usize>>,
    index: HashMap<E, u32>,
}

impl<E: Vertex> PartialEq for GradedPoset<E> {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.covers == other.covers && self.labels == other.labels
    }
}

impl<E: Vertex> Eq for GradedPoset<E> {}

/// A maximal chain together with the labels of its covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledChain<E> {
    pub elements: Vec<E>,
    pub labels: Vec<u32>,
}

impl<E> LabeledChain<E> {
    /// 1-based positions `i` with `labels[i-1] > labels[i]`.
    pub fn descent_set(&self) -> Vec<usize> {
        (1..self.labels.len()).filter(|&i| self.labels[i - 1] > self.labels[i]).collect()
    }

    pub fn des(&self) -> usize {
        self.descent_set().len()
    }
}

impl<E: Vertex> GradedPoset<E> {
    /// Builds a poset from elements and cover pairs `(x, y)` with `x ⋖ y`.
    /// Minimal elements get rank 0; every cover must raise the rank by one.
    pub fn new(elements: Vec<E>, covers: Vec<(E, E)>) -> Result<Self> {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let pos: HashMap<E, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut edges = Vec::with_capacity(covers.len());
        for (x, y) in covers {
            let (Some(&a), Some(&b)) = (pos.get(&x), pos.get(&y)) else {
                return Err(Error::domain(format!("cover {x:?} < {y:?} uses an unknown element")));
            };
            if a == b {
                return Err(Error::domain(format!("cover {x:?} < {x:?} is a loop")));
            }
            edges.push((a, b));
        }
        edges.sort_unstable();
        edges.dedup();

        let n = elements.len();
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &edges {
            indeg[b] += 1;
            out[a].push(b);
        }
        let mut rank: Vec<Option<u32>> = vec![None; n];
        let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        for &i in &queue {
            rank[i] = Some(0);
        }
        let mut seen = 0;
        while let Some(a) = queue.pop() {
            seen += 1;
            let ra = rank[a].expect("ranked before queued");
            for &b in &out[a] {
                match rank[b] {
                    Some(rb) if rb != ra + 1 => {
                        return Err(Error::domain(format!(
                            "poset is not graded at the cover {:?} < {:?}",
                            elements[a], elements[b]
                        )))
                    }
                    _ => rank[b] = Some(ra + 1),
                }
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    queue.push(b);
                }
            }
        }
        if seen != n {
            return Err(Error::domain("cover relation has a cycle"));
        }
        let rank: Vec<u32> = rank.into_iter().map(|r| r.expect("all ranked")).collect();

        // canonical element order: by rank, then by value
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&i, &j| (rank[i], &elements[i]).cmp(&(rank[j], &elements[j])));
        let mut new_pos = vec![0u32; n];
        for (new, &old) in perm.iter().enumerate() {
            new_pos[old] = new as u32;
        }
        let sorted: Vec<E> = perm.iter().map(|&i| elements[i].clone()).collect();
        let sorted_rank: Vec<u32> = perm.iter().map(|&i| rank[i]).collect();
        let mut covers: Vec<(u32, u32)> = edges.iter().map(|&(a, b)| (new_pos[a], new_pos[b])).collect();
        covers.sort_unstable();
        Ok(Self::assemble(sorted, sorted_rank, covers, None))
    }

    fn assemble(elements: Vec<E>, rank: Vec<u32>, covers: Vec<(u32, u32)>, labels: Option<Vec<u32>>) -> Self {
        let mut up = vec![Vec::new(); elements.len()];
        for (ci, &(a, _)) in covers.iter().enumerate() {
            up[a as usize].push(ci);
        }
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i as u32)).collect();
        GradedPoset {
            elements,
            rank,
            covers,
            labels,
            up,
            index,
        }
    }

    /// Attaches a label to every cover.
    pub fn with_labels(mut self, mut label: impl FnMut(&E, &E) -> u32) -> Self {
        let labels = self
            .covers
            .iter()
            .map(|&(a, b)| label(&self.elements[a as usize], &self.elements[b as usize]))
            .collect();
        self.labels = Some(labels);
        self
    }

    /// Elements ordered by rank, then by value.
    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank_of(&self, e: &E) -> Option<u32> {
        self.index.get(e).map(|&i| self.rank[i as usize])
    }

    /// Length of the longest chain.
    pub fn height(&self) -> u32 {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    pub fn num_covers(&self) -> usize {
        self.covers.len()
    }

    /// Cover pairs with their labels, if any.
    pub fn covers(&self) -> impl Iterator<Item = (&E, &E, Option<u32>)> + '_ {
        self.covers.iter().enumerate().map(move |(ci, &(a, b))| {
            (
                &self.elements[a as usize],
                &self.elements[b as usize],
                self.labels.as_ref().map(|l| l[ci]),
            )
        })
    }

    pub fn is_labeled(&self) -> bool {
        self.labels.is_some()
    }

    pub fn label(&self, x: &E, y: &E) -> Option<u32> {
        let (a, b) = (*self.index.get(x)?, *self.index.get(y)?);
        let ci = self.up[a as usize].iter().copied().find(|&ci| self.covers[ci].1 == b)?;
        self.labels.as_ref().map(|l| l[ci])
    }

    fn minimal(&self) -> Vec<usize> {
        let mut has_down = vec![false; self.len()];
        for &(_, b) in &self.covers {
            has_down[b as usize] = true;
        }
        (0..self.len()).filter(|&i| !has_down[i]).collect()
    }

    fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    /// The unique minimum, if there is one.
    pub fn bottom(&self) -> Option<&E> {
        match self.minimal().as_slice() {
            [i] => Some(&self.elements[*i]),
            _ => None,
        }
    }

    /// The unique maximum, if there is one.
    pub fn top(&self) -> Option<&E> {
        match self.maximal().as_slice() {
            [i] => Some(&self.elements[*i]),
            _ => None,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.bottom().is_some() && self.top().is_some()
    }

    fn walk(&self, at: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if self.up[at].is_empty() {
            out.push(path.clone());
            return;
        }
        for &ci in &self.up[at] {
            path.push(ci);
            self.walk(self.covers[ci].1 as usize, path, out);
            path.pop();
        }
    }

    fn chain_elements(&self, start: usize, covers: &[usize]) -> Vec<usize> {
        let mut elems = vec![start];
        elems.extend(covers.iter().map(|&ci| self.covers[ci].1 as usize));
        elems
    }

    /// Maximal chains as element lists.
    pub fn maximal_chains(&self) -> Vec<Vec<E>> {
        let mut out = Vec::new();
        for start in self.minimal() {
            let mut chains = Vec::new();
            self.walk(start, &mut Vec::new(), &mut chains);
            for c in chains {
                out.push(self.chain_elements(start, &c).into_iter().map(|i| self.elements[i].clone()).collect());
            }
        }
        out
    }

    /// Maximal chains with their label words; requires a labelled poset.
    pub fn labeled_chains(&self) -> Result<Vec<LabeledChain<E>>> {
        let labels = self
            .labels
            .as_ref()
            .ok_or_else(|| Error::domain("labeled_chains: poset carries no labels"))?;
        let mut out = Vec::new();
        for start in self.minimal() {
            let mut chains = Vec::new();
            self.walk(start, &mut Vec::new(), &mut chains);
            for c in chains {
                out.push(LabeledChain {
                    elements: self.chain_elements(start, &c).into_iter().map(|i| self.elements[i].clone()).collect(),
                    labels: c.iter().map(|&ci| labels[ci]).collect(),
                });
            }
        }
        Ok(out)
    }

    pub fn to_json_shape(&self) -> PosetJson<E> {
        PosetJson {
            elements: self.elements.clone(),
            ranks: self.rank.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(a, b)| (self.elements[a as usize].clone(), self.elements[b as usize].clone()))
                .collect(),
            labels: self.labels.clone(),
        }
    }
}

/// Serialized form of a poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetJson<E> {
    pub elements: Vec<E>,
    pub ranks: Vec<u32>,
    pub covers: Vec<(E, E)>,
    pub labels: Option<Vec<u32>>,
}

impl<E: Vertex + Serialize> Serialize for GradedPoset<E> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_shape().serialize(serializer)
    }
}

/// `C_{m_1} x .. x C_{m_s}` on integer tuples, unlabelled.
pub fn chain_product(lengths: &[u32]) -> Result<GradedPoset<Vec<u32>>> {
    if lengths.is_empty() {
        return Err(Error::domain("chain_product: no chain lengths given"));
    }
    if lengths.contains(&0) {
        return Err(Error::domain("chain_product: chain lengths must be positive"));
    }
    let elements = box_points(lengths);
    let mut covers = Vec::new();
    for x in &elements {
        for (i, &m) in lengths.iter().enumerate() {
            if x[i] < m {
                let mut y = x.clone();
                y[i] += 1;
                covers.push((x.clone(), y));
            }
        }
    }
    GradedPoset::new(elements, covers)
}

fn box_points(lengths: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &m in lengths {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=m).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// Labels every cover of a chain product by the 1-based index of the raised
/// coordinate.
pub fn r_label_product(p: &GradedPoset<Vec<u32>>) -> Result<GradedPoset<Vec<u32>>> {
    let not_product = || Error::domain("r_label_product: poset is not a product of chains");
    let top = p.top().ok_or_else(not_product)?.clone();
    let rebuilt = chain_product(&top).map_err(|_| not_product())?;
    if rebuilt.elements != p.elements || rebuilt.covers != p.covers {
        return Err(not_product());
    }
    Ok(rebuilt.with_labels(|x, y| {
        let i = x.iter().zip(y).position(|(a, b)| a != b).expect("cover changes a coordinate");
        i as u32 + 1
    }))
}

/// Outcome of an exhaustive R-labelling check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RLabelCheck<E> {
    /// Number of intervals `[x, y]` with `x < y` examined.
    pub intervals: usize,
    /// First interval whose number of weakly rising maximal chains is not one.
    pub violation: Option<(E, E, u64)>,
}

impl<E> RLabelCheck<E> {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Counts weakly rising maximal chains in every interval of a labelled poset.
pub fn verify_r_labeling<E: Vertex>(p: &GradedPoset<E>) -> Result<RLabelCheck<E>> {
    let labels = p
        .labels
        .as_ref()
        .ok_or_else(|| Error::domain("verify_r_labeling: poset carries no labels"))?;
    let n = p.len();
    let mut intervals = 0;
    for x in 0..n {
        // rising[z] maps a last label to the number of rising chains x -> z ending with it
        let mut rising: Vec<BTreeMap<u32, u64>> = vec![BTreeMap::new(); n];
        let mut reached = vec![false; n];
        reached[x] = true;
        // elements are sorted by rank, so a forward sweep sees every chain prefix
        for z in x..n {
            if !reached[z] {
                continue;
            }
            if z != x {
                intervals += 1;
                let count: u64 = rising[z].values().sum();
                if count != 1 {
                    return Ok(RLabelCheck {
                        intervals,
                        violation: Some((p.elements[x].clone(), p.elements[z].clone(), count)),
                    });
                }
            }
            for &ci in &p.up[z] {
                let w = p.covers[ci].1 as usize;
                reached[w] = true;
                let l = labels[ci];
                let add: u64 = if z == x {
                    1
                } else {
                    rising[z].range(..=l).map(|(_, c)| c).sum()
                };
                if add > 0 {
                    *rising[w].entry(l).or_insert(0) += add;
                }
            }
        }
    }
    Ok(RLabelCheck {
        intervals,
        violation: None,
    })
}

/// `Δ(P)`, or `Δ(P̄)` with `0̂` and `1̂` removed when `reduced` is set.
pub fn order_complex<E: Vertex>(p: &GradedPoset<E>, reduced: bool) -> Result<SimplicialComplex<E>> {
    if p.is_empty() {
        return Ok(SimplicialComplex::empty());
    }
    let chains = p.maximal_chains();
    if !reduced {
        return Ok(SimplicialComplex::from_facets(chains));
    }
    if !p.is_bounded() {
        return Err(Error::domain("order_complex: reduced complex needs a bounded poset"));
    }
    if p.len() == 1 {
        return Err(Error::domain("order_complex: 0̂ = 1̂, the reduced complex is undefined"));
    }
    Ok(SimplicialComplex::from_facets(chains.into_iter().map(|mut c| {
        c.pop();
        c.remove(0);
        c
    })))
}

/// `K_λ = Δ(P̄_λ)` for a partition `λ` of `k ≥ 2`.
pub fn k_lambda(lambda: &Partition) -> Result<SimplicialComplex<Vec<u32>>> {
    if lambda.size() < 2 {
        return Err(Error::domain(format!("k_lambda: {lambda} partitions k < 2")));
    }
    k_lambda_any(lambda)
}

/// As [`k_lambda`] but also accepts `k = 1`, where the result is `{∅}`.
pub(crate) fn k_lambda_any(lambda: &Partition) -> Result<SimplicialComplex<Vec<u32>>> {
    let p = chain_product(lambda.parts())?;
    order_complex(&p, true)
}

/// `Sd(∂Δ^{k-1}) = Δ(B̄_k)` with vertices the nonempty proper subsets of
/// `{1..k}` as bitmasks.
pub fn sd_boundary_simplex(k: u32) -> Result<SimplicialComplex<u32>> {
    if !(2..=12).contains(&k) {
        return Err(Error::domain(format!("sd_boundary_simplex: k = {k} outside 2..=12")));
    }
    let facets = crate::combinatorics::permutations(k as usize).into_iter().map(|w| {
        let mut mask = 0u32;
        w.0[..k as usize - 1]
            .iter()
            .map(|&i| {
                mask |= 1 << (i - 1);
                mask
            })
            .collect::<Vec<u32>>()
    });
    Ok(SimplicialComplex::from_facets(facets))
}

/// Ways of computing `h(K_λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HRoute {
    /// Descents of the words over `{1^{λ_1}, .., s^{λ_s}}`.
    Descents,
    /// Insertion recursion on the last part.
    Recursion,
    /// Transform of the f-vector of the constructed complex.
    FromF,
}

impl HRoute {
    pub const ALL: [HRoute; 3] = [HRoute::Descents, HRoute::Recursion, HRoute::FromF];
}

/// `(h_0, .., h_{k-1})` of `K_λ` by the chosen route.
pub fn h_k_lambda(lambda: &Partition, route: HRoute) -> Result<Vec<BigUint>> {
    let k = lambda.size() as usize;
    if k < 2 {
        return Err(Error::domain(format!("h_k_lambda: {lambda} partitions k < 2")));
    }
    match route {
        HRoute::Descents => {
            let mut h = vec![0u64; k];
            for w in multiset_permutations(lambda) {
                h[w.des()] += 1;
            }
            Ok(h.into_iter().map(BigUint::from).collect())
        }
        HRoute::Recursion => Ok(h_k_lambda_recursive(lambda.parts())),
        HRoute::FromF => {
            let kl = k_lambda(lambda)?;
            let h = h_from_f(&kl.f_vector(), kl.dimension())?;
            h.into_iter()
                .map(|x| {
                    u64::try_from(x)
                        .map(BigUint::from)
                        .map_err(|_| Error::domain(format!("h_k_lambda: negative entry {x} for {lambda}")))
                })
                .collect()
        }
    }
}

fn h_k_lambda_recursive(parts: &[u32]) -> Vec<BigUint> {
    let mut h = vec![BigUint::one()];
    let mut prev_k = 0i64;
    for &ls in parts {
        let ls = ls as i64;
        let k = prev_k + ls;
        let at = |h: &[BigUint], i: i64| -> BigUint {
            if i < 0 {
                BigUint::zero()
            } else {
                h.get(i as usize).cloned().unwrap_or_default()
            }
        };
        h = (0..k)
            .map(|i| {
                (0..=ls)
                    .map(|j| binomial(prev_k - i + j, j) * binomial(i + ls - j, ls - j) * at(&h, i - j))
                    .sum()
            })
            .collect();
        prev_k = k;
    }
    h
}

/// `h_i = C(λ_1, i) C(λ_2, i)` for a two-part partition.
pub fn h_two_part(lambda: &Partition) -> Result<Vec<BigUint>> {
    let [a, b] = lambda.parts() else {
        return Err(Error::domain(format!("h_two_part: {lambda} does not have two parts")));
    };
    let k = (a + b) as i64;
    Ok((0..k).map(|i| binomial(*a as i64, i) * binomial(*b as i64, i)).collect())
}

/// Index and value of the last nonzero entry of `h(K_λ)`:
/// `(k - λ_1, Π_{i≥2} C(λ_1, λ_i))`.
pub fn h_last_nonzero(lambda: &Partition) -> (usize, BigUint) {
    let parts = lambda.parts();
    let l1 = parts.first().copied().unwrap_or(0) as i64;
    let value = parts.iter().skip(1).map(|&li| binomial(l1, li as i64)).product();
    ((lambda.size() as i64 - l1) as usize, value)
}

/// Whether `K` admits no factorisation `M * N` with both factors having at
/// least one vertex.
///
/// Two vertices missing an edge must lie in the same factor, so factors are
/// unions of components of the complement of the 1-skeleton; each split of
/// those components is tested against the facet family.
pub fn is_join_irreducible<V: Vertex>(k: &SimplicialComplex<V>) -> Result<bool> {
    is_join_irreducible_with_bound(k, DEFAULT_ISO_VERTEX_BOUND)
}

pub fn is_join_irreducible_with_bound<V: Vertex>(k: &SimplicialComplex<V>, bound: usize) -> Result<bool> {
    let n = k.num_vertices();
    if n > bound {
        return Err(Error::Capacity {
            what: "join decomposition vertices",
            requested: n as u128,
            limit: bound as u128,
        });
    }
    if n < 2 {
        return Ok(true);
    }
    let facets = k.raw_facets();
    let mut adjacent = vec![vec![false; n]; n];
    for f in facets {
        for &x in f {
            for &y in f {
                adjacent[x as usize][y as usize] = true;
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut comps = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = comps;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if !adjacent[x][y] && comp[y] == usize::MAX {
                    comp[y] = comps;
                    stack.push(y);
                }
            }
        }
        comps += 1;
    }
    if comps == 1 {
        return Ok(true);
    }
    // component 0 stays on the left, so each unordered split is tried once
    for mask in 0u64..(1u64 << (comps - 1)) - 1 {
        let left = |v: u32| {
            let c = comp[v as usize];
            c == 0 || (mask >> (c - 1)) & 1 == 1
        };
        let mut m: HashSet<Vec<u32>> = HashSet::new();
        let mut r: HashSet<Vec<u32>> = HashSet::new();
        for f in facets {
            m.insert(f.iter().copied().filter(|&v| left(v)).collect());
            r.insert(f.iter().copied().filter(|&v| !left(v)).collect());
        }
        if m.len() * r.len() == facets.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Glues bounded posets end to end, identifying the maximum of each with the
/// minimum of the next. Elements are tagged with the index of the block they
/// come from; a glued element keeps the tag of the lower block.
pub fn stack_posets<E: Vertex>(blocks: &[GradedPoset<E>]) -> Result<GradedPoset<(usize, E)>> {
    if blocks.is_empty() {
        return Err(Error::domain("stack_posets: no blocks"));
    }
    let mut elements = Vec::new();
    let mut covers = Vec::new();
    let mut labels: BTreeMap<((usize, E), (usize, E)), u32> = BTreeMap::new();
    let mut prev_top: Option<(usize, E)> = None;
    for (b, p) in blocks.iter().enumerate() {
        let (Some(bottom), Some(top)) = (p.bottom(), p.top()) else {
            return Err(Error::domain(format!("stack_posets: block {b} is not bounded")));
        };
        let tag = |e: &E| -> (usize, E) {
            match &prev_top {
                Some(t) if e == bottom => t.clone(),
                _ => (b, e.clone()),
            }
        };
        for e in &p.elements {
            if e != bottom || prev_top.is_none() {
                elements.push(tag(e));
            }
        }
        for (x, y, l) in p.covers() {
            let pair = (tag(x), tag(y));
            if let Some(l) = l {
                labels.insert(pair.clone(), l);
            }
            covers.push(pair);
        }
        prev_top = Some(tag(top));
    }
    let stacked = GradedPoset::new(elements, covers)?;
    if blocks.iter().all(GradedPoset::is_labeled) {
        Ok(stacked.with_labels(|x, y| labels[&(x.clone(), y.clone())]))
    } else {
        Ok(stacked)
    }
}

/// Facet count of `K_λ`: `k! / Π λ_i!`.
pub fn k_lambda_facet_count(lambda: &Partition) -> BigUint {
    let f = |n: u32| crate::combinatorics::factorial(n as u64);
    lambda.parts().iter().fold(f(lambda.size()), |acc, &p| acc / f(p))
}

/// Vertex count of `K_λ`: `Π (λ_i + 1) - 2`.
pub fn k_lambda_vertex_count(lambda: &Partition) -> u64 {
    lambda.parts().iter().map(|&p| p as u64 + 1).product::<u64>() - 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions;
    use crate::complex::are_isomorphic;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn chain_products() {
        let c1 = chain_product(&[1]).unwrap();
        assert_eq!(c1.len(), 2);
        let p21 = chain_product(&[2, 1]).unwrap();
        assert_eq!((p21.len(), p21.num_covers()), (6, 7));
        assert_eq!(p21.bottom(), Some(&vec![0, 0]));
        assert_eq!(p21.top(), Some(&vec![2, 1]));
        assert_eq!(p21.height(), 3);
        let b3 = chain_product(&[1, 1, 1]).unwrap();
        assert_eq!((b3.len(), b3.num_covers()), (8, 12));
        assert!(chain_product(&[]).is_err());
        assert!(chain_product(&[2, 0]).is_err());
    }

    #[test]
    fn boolean_lattice_labels_are_permutations() {
        let b3 = r_label_product(&chain_product(&[1, 1, 1]).unwrap()).unwrap();
        let mut words: Vec<Vec<u32>> = b3.labeled_chains().unwrap().into_iter().map(|c| c.labels).collect();
        words.sort();
        let all: Vec<Vec<u32>> = crate::combinatorics::permutations(3).into_iter().map(|w| w.0).collect();
        assert_eq!(words, all);
        assert!(verify_r_labeling(&b3).unwrap().is_valid());
    }

    #[test]
    fn p21_words_and_intervals() {
        let p = r_label_product(&chain_product(&[2, 1]).unwrap()).unwrap();
        let mut words: Vec<Vec<u32>> = p.labeled_chains().unwrap().into_iter().map(|c| c.labels).collect();
        words.sort();
        assert_eq!(words, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
        let check = verify_r_labeling(&p).unwrap();
        assert!(check.is_valid());
        // comparable pairs x < y in a 3x2 grid
        assert_eq!(check.intervals, 12);
        assert_eq!(p.label(&vec![0, 0], &vec![0, 1]), Some(2));
    }

    #[test]
    fn reversed_labels_are_not_rising() {
        let p = chain_product(&[1, 1]).unwrap().with_labels(|x, _| if x.iter().sum::<u32>() == 0 { 2 } else { 1 });
        let check = verify_r_labeling(&p).unwrap();
        assert_eq!(check.violation, Some((vec![0, 0], vec![1, 1], 0)));
    }

    #[test]
    fn r_label_rejects_other_posets() {
        let v = GradedPoset::new(
            vec![vec![0u32], vec![1], vec![2]],
            vec![(vec![0], vec![1]), (vec![0], vec![2])],
        )
        .unwrap();
        assert!(r_label_product(&v).is_err());
    }

    #[test]
    fn grading_is_enforced() {
        let bad = GradedPoset::new(vec![0u32, 1, 2], vec![(0, 1), (1, 2), (0, 2)]);
        assert!(bad.is_err());
        let cyc = GradedPoset::new(vec![0u32, 1], vec![(0, 1), (1, 0)]);
        assert!(cyc.is_err());
    }

    #[test]
    fn order_complexes() {
        let c3 = chain_product(&[3]).unwrap();
        assert_eq!(order_complex(&c3, true).unwrap(), SimplicialComplex::simplex(vec![vec![1], vec![2]]));
        assert_eq!(order_complex(&c3, false).unwrap().f_vector(), vec![1, 4, 6, 4, 1]);
        let hex = order_complex(&chain_product(&[1, 1, 1]).unwrap(), true).unwrap();
        assert_eq!(hex.f_vector(), vec![1, 6, 6]);
        let path = order_complex(&chain_product(&[2, 1]).unwrap(), true).unwrap();
        assert_eq!(path.f_vector(), vec![1, 4, 3]);
        let v = GradedPoset::new(vec![0u32, 1, 2], vec![(0, 1), (0, 2)]).unwrap();
        assert!(order_complex(&v, true).is_err());
        assert_eq!(order_complex(&v, false).unwrap().num_facets(), 2);
    }

    #[test]
    fn k_lambda_special_cases() {
        let k3 = k_lambda(&part(&[3])).unwrap();
        assert_eq!(k3.f_vector(), vec![1, 2, 1]);
        let sd = sd_boundary_simplex(3).unwrap();
        let k111 = k_lambda(&part(&[1, 1, 1])).unwrap();
        assert!(are_isomorphic(&k111, &sd).unwrap().is_some());
        assert!(k_lambda(&part(&[1])).is_err());
        assert_eq!(k_lambda_any(&part(&[1])).unwrap(), SimplicialComplex::empty());
        for k in 2..=5 {
            for l in partitions(k, None).unwrap() {
                let kl = k_lambda(&l).unwrap();
                assert_eq!(kl.num_vertices() as u64, k_lambda_vertex_count(&l));
                assert_eq!(BigUint::from(kl.num_facets()), k_lambda_facet_count(&l));
                assert_eq!(kl.dimension(), k as isize - 2);
            }
        }
    }

    #[test]
    fn h_routes_for_21() {
        for route in HRoute::ALL {
            assert_eq!(h_k_lambda(&part(&[2, 1]), route).unwrap(), big(&[1, 2, 0]), "{route:?}");
        }
        assert_eq!(h_two_part(&part(&[2, 2])).unwrap(), big(&[1, 4, 1, 0]));
        assert!(h_two_part(&part(&[2, 1, 1])).is_err());
        assert_eq!(h_last_nonzero(&part(&[3, 2, 1])), (3, BigUint::from(9u32)));
    }

    #[test]
    fn h_routes_agree_small() {
        for k in 2..=5 {
            for l in partitions(k, None).unwrap() {
                let d = h_k_lambda(&l, HRoute::Descents).unwrap();
                assert_eq!(d, h_k_lambda(&l, HRoute::Recursion).unwrap(), "{l}");
                assert_eq!(d, h_k_lambda(&l, HRoute::FromF).unwrap(), "{l}");
                let (idx, val) = h_last_nonzero(&l);
                assert_eq!(d[idx], val);
                assert!(d[idx + 1..].iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn join_irreducibility() {
        assert!(is_join_irreducible(&k_lambda(&part(&[2, 1])).unwrap()).unwrap());
        let two_points = SimplicialComplex::from_facets(vec![vec![0u32], vec![1]]);
        assert!(is_join_irreducible(&two_points).unwrap());
        let hex = sd_boundary_simplex(3).unwrap();
        assert!(is_join_irreducible(&hex).unwrap());
        let cone = SimplicialComplex::simplex(vec![99u32]).join(&hex).unwrap();
        assert!(!is_join_irreducible(&cone).unwrap());
        let square = two_points.join(&SimplicialComplex::from_facets(vec![vec![5u32], vec![6]])).unwrap();
        assert!(!is_join_irreducible(&square).unwrap());
        assert!(!is_join_irreducible(&SimplicialComplex::simplex(vec![1u32, 2])).unwrap());
        assert!(is_join_irreducible(&SimplicialComplex::simplex(vec![1u32])).unwrap());
    }

    #[test]
    fn stacked_chain_products() {
        let a = r_label_product(&chain_product(&[1, 1]).unwrap()).unwrap();
        let b = r_label_product(&chain_product(&[2]).unwrap()).unwrap();
        let s = stack_posets(&[a, b]).unwrap();
        assert_eq!(s.len(), 4 + 3 - 1);
        assert_eq!(s.height(), 4);
        assert_eq!(s.maximal_chains().len(), 2);
        assert!(s.is_labeled());
        let delta = order_complex(&s, true).unwrap();
        // two interior rank-1 points, the glued point, then the chain's middle
        assert_eq!(delta.f_vector(), vec![1, 4, 5, 2]);
    }

    #[test]
    fn poset_json() {
        let p = r_label_product(&chain_product(&[1]).unwrap()).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"elements":[[0],[1]],"ranks":[0,1],"covers":[[[0],[1]]],"labels":[1]}"#);
    }
}
