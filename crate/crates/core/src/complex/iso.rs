use std::collections::{BTreeMap, HashSet};

use super::{facet_size_profile, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// Largest vertex count accepted by the backtracking search of [`are_isomorphic`].
pub const DEFAULT_ISO_VERTEX_BOUND: usize = 24;

/// Searches for a vertex bijection carrying the facets of `a` onto those of `b`.
///
/// Returns the matching as `(vertex of a, vertex of b)` pairs, or `None` when the
/// complexes are not isomorphic. Pairs that differ in a cheap invariant are
/// rejected at any size; otherwise a capacity error is raised above
/// [`DEFAULT_ISO_VERTEX_BOUND`] vertices.
pub fn are_isomorphic<V: Vertex, W: Vertex>(
    a: &SimplicialComplex<V>,
    b: &SimplicialComplex<W>,
) -> Result<Option<Vec<(V, W)>>> {
    are_isomorphic_with_bound(a, b, DEFAULT_ISO_VERTEX_BOUND)
}

pub fn are_isomorphic_with_bound<V: Vertex, W: Vertex>(
    a: &SimplicialComplex<V>,
    b: &SimplicialComplex<W>,
    bound: usize,
) -> Result<Option<Vec<(V, W)>>> {
    if a.num_vertices() != b.num_vertices()
        || a.num_facets() != b.num_facets()
        || facet_size_profile(a.raw_facets()) != facet_size_profile(b.raw_facets())
        || a.f_vector() != b.f_vector()
    {
        return Ok(None);
    }
    let n = a.num_vertices();
    if n > bound {
        return Err(Error::Capacity {
            what: "isomorphism search vertices",
            requested: n as u128,
            limit: bound as u128,
        });
    }

    let (ca, cb) = refine(a, b);
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return Ok(None);
    }

    let search = Search::new(a, b, ca, cb);
    Ok(search.run().map(|m| {
        m.into_iter()
            .enumerate()
            .map(|(i, j)| (a.vertices[i].clone(), b.vertices[j as usize].clone()))
            .collect()
    }))
}

/// Joint colour refinement on the vertex-facet incidence of both complexes.
/// Colours are shared between the two, so equal colours are comparable.
fn refine<V: Vertex, W: Vertex>(a: &SimplicialComplex<V>, b: &SimplicialComplex<W>) -> (Vec<u32>, Vec<u32>) {
    let sides = [
        (a.raw_facets(), a.incidence()),
        (b.raw_facets(), b.incidence()),
    ];
    let mut vcol: Vec<Vec<u32>> = sides.iter().map(|(_, inc)| inc.iter().map(|f| f.len() as u32).collect()).collect();
    let mut fcol: Vec<Vec<u32>> = sides.iter().map(|(fs, _)| fs.iter().map(|f| f.len() as u32).collect()).collect();
    let mut classes = 0usize;
    loop {
        let mut sigs: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
        let fsig: Vec<Vec<(u32, Vec<u32>)>> = sides
            .iter()
            .zip(&fcol)
            .zip(&vcol)
            .map(|(((fs, _), fc), vc)| {
                fs.iter()
                    .zip(fc)
                    .map(|(f, &c)| {
                        let mut around: Vec<u32> = f.iter().map(|&v| vc[v as usize]).collect();
                        around.sort_unstable();
                        (c, around)
                    })
                    .collect()
            })
            .collect();
        for s in fsig.iter().flatten() {
            let next = sigs.len() as u32;
            sigs.entry(s.clone()).or_insert(next);
        }
        fcol = fsig.iter().map(|side| side.iter().map(|s| sigs[s]).collect()).collect();

        let mut vsigs: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
        let vsig: Vec<Vec<(u32, Vec<u32>)>> = sides
            .iter()
            .zip(&vcol)
            .zip(&fcol)
            .map(|(((_, inc), vc), fc)| {
                inc.iter()
                    .zip(vc)
                    .map(|(fs, &c)| {
                        let mut around: Vec<u32> = fs.iter().map(|&f| fc[f as usize]).collect();
                        around.sort_unstable();
                        (c, around)
                    })
                    .collect()
            })
            .collect();
        for s in vsig.iter().flatten() {
            let next = vsigs.len() as u32;
            vsigs.entry(s.clone()).or_insert(next);
        }
        vcol = vsig.iter().map(|side| side.iter().map(|s| vsigs[s]).collect()).collect();

        let now = vsigs.len() + sigs.len();
        if now == classes {
            break;
        }
        classes = now;
    }
    let cb = vcol.pop().expect("two sides");
    let ca = vcol.pop().expect("two sides");
    (ca, cb)
}

struct Search {
    n: usize,
    order: Vec<usize>,
    colour_a: Vec<u32>,
    colour_b: Vec<u32>,
    adj_a: Vec<Vec<bool>>,
    adj_b: Vec<Vec<bool>>,
    /// Facets of `a` that become fully mapped at each step of `order`.
    closing: Vec<Vec<Vec<u32>>>,
    facets_b: HashSet<Vec<u32>>,
}

impl Search {
    fn new<V: Vertex, W: Vertex>(
        a: &SimplicialComplex<V>,
        b: &SimplicialComplex<W>,
        colour_a: Vec<u32>,
        colour_b: Vec<u32>,
    ) -> Self {
        let n = a.num_vertices();
        let adj_a = skeleton(n, a.raw_facets());
        let adj_b = skeleton(n, b.raw_facets());

        // rarest colours first, then prefer vertices adjacent to those placed
        let mut freq: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &colour_a {
            *freq.entry(c).or_default() += 1;
        }
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .min_by_key(|&v| {
                    let links = order.iter().filter(|&&u| adj_a[u][v]).count();
                    (usize::from(links == 0 && !order.is_empty()), freq[&colour_a[v]], usize::MAX - links, v)
                })
                .expect("unplaced vertex remains");
            placed[next] = true;
            order.push(next);
        }

        let mut step_of = vec![0usize; n];
        for (s, &v) in order.iter().enumerate() {
            step_of[v] = s;
        }
        let mut closing = vec![Vec::new(); n];
        for f in a.raw_facets() {
            if let Some(last) = f.iter().map(|&v| step_of[v as usize]).max() {
                closing[last].push(f.clone());
            }
        }
        Search {
            n,
            order,
            colour_a,
            colour_b,
            adj_a,
            adj_b,
            closing,
            facets_b: b.raw_facets().iter().cloned().collect(),
        }
    }

    fn run(&self) -> Option<Vec<u32>> {
        let mut map = vec![u32::MAX; self.n];
        let mut used = vec![false; self.n];
        if self.extend(0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn extend(&self, step: usize, map: &mut [u32], used: &mut [bool]) -> bool {
        if step == self.n {
            return true;
        }
        let v = self.order[step];
        for w in 0..self.n {
            if used[w] || self.colour_b[w] != self.colour_a[v] {
                continue;
            }
            let consistent = self.order[..step]
                .iter()
                .all(|&u| self.adj_a[u][v] == self.adj_b[map[u] as usize][w]);
            if !consistent {
                continue;
            }
            map[v] = w as u32;
            used[w] = true;
            let facets_ok = self.closing[step].iter().all(|f| {
                let mut image: Vec<u32> = f.iter().map(|&x| map[x as usize]).collect();
                image.sort_unstable();
                self.facets_b.contains(&image)
            });
            if facets_ok && self.extend(step + 1, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = u32::MAX;
        }
        false
    }
}

fn skeleton(n: usize, facets: &[Vec<u32>]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for f in facets {
        for &x in f {
            for &y in f {
                if x != y {
                    adj[x as usize][y as usize] = true;
                }
            }
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> SimplicialComplex<u32> {
        SimplicialComplex::from_facets((0..n).map(|i| vec![i, (i + 1) % n]))
    }

    fn check_witness<V: Vertex, W: Vertex>(a: &SimplicialComplex<V>, b: &SimplicialComplex<W>, m: &[(V, W)]) {
        let image = a.map_vertices(|v| m.iter().find(|(x, _)| x == v).unwrap().1.clone());
        assert_eq!(&image, b);
    }

    #[test]
    fn relabelled_cycles_match() {
        let a = cycle(6);
        let b = SimplicialComplex::from_facets((0..6u32).map(|i| vec![(i * 5) % 6 + 10, ((i + 1) * 5) % 6 + 10]));
        let m = are_isomorphic(&a, &b).unwrap().expect("isomorphic");
        check_witness(&a, &b, &m);
    }

    #[test]
    fn two_triangles_are_not_a_hexagon() {
        let two = SimplicialComplex::from_facets(vec![
            vec![0u32, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5],
        ]);
        assert_eq!(are_isomorphic(&two, &cycle(6)).unwrap(), None);
    }

    #[test]
    fn same_skeleton_different_facets() {
        let hollow = cycle(3);
        let filled = SimplicialComplex::simplex(vec![0u32, 1, 2]);
        assert_eq!(are_isomorphic(&hollow, &filled).unwrap(), None);
        let octa = SimplicialComplex::from_facets(
            (0..8u32).map(|m| vec![m & 1, 2 + (m >> 1 & 1), 4 + (m >> 2 & 1)]),
        );
        assert_eq!(octa.f_vector(), vec![1, 6, 12, 8]);
        let relabel = octa.map_vertices(|v| char::from(b'a' + *v as u8));
        let m = are_isomorphic(&octa, &relabel).unwrap().unwrap();
        check_witness(&octa, &relabel, &m);
    }

    #[test]
    fn degenerate_complexes() {
        let e = SimplicialComplex::<u32>::empty();
        assert_eq!(are_isomorphic(&e, &SimplicialComplex::<char>::empty()).unwrap(), Some(vec![]));
        assert_eq!(are_isomorphic(&e, &SimplicialComplex::<u32>::void()).unwrap(), None);
    }

    #[test]
    fn bound_applies_after_invariants() {
        let big = cycle(30);
        assert!(matches!(are_isomorphic(&big, &cycle(30)), Err(Error::Capacity { .. })));
        assert_eq!(are_isomorphic(&big, &cycle(31)).unwrap(), None);
        assert!(are_isomorphic_with_bound(&big, &cycle(30), 40).unwrap().is_some());
    }
}
