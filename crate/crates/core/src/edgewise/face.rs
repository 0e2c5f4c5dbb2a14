//! Links of arbitrary faces.
//!
//! Order the vertices of a face `F` by coordinate sum: `v^(1), .., v^(t)`.
//! Consecutive vertices differ by the steps in `S_1, .., S_{t-1}` and the
//! remaining steps `S_t` (always containing `k`) lead from `v^(t)` back to
//! `v^(1)`. Each `S_i` is an *arc*: the steps in it that are blocked until a
//! neighbouring step has been taken form chains, and the points reachable
//! inside the arc form a product of those chains. The link of `F` is the
//! join of the reduced order complexes of these products.
//!
//! In gap terms, with `g_0 = v_1`, `g_j = v_{j+1} - v_j` and
//! `g_{k-1} = q - v_{k-1}`, step `j` moves one unit from `g_{j mod k}` to
//! `g_{j-1}`; step `j` waits for step `j + 1` exactly when `g_{j mod k} = 0`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::{Edgewise, LatticeVertex};
use crate::combinatorics::Partition;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::poset::{chain_product, k_lambda_any, stack_posets, GradedPoset};

/// Steps taken inside one arc, grouped into chains.
#[derive(Debug, Clone)]
pub(crate) struct Arc {
    start: Vec<u32>,
    /// Each chain lists its steps in the order they are taken. Chains are
    /// sorted by decreasing length, then by first step.
    groups: Vec<Vec<u32>>,
}

impl Arc {
    pub(crate) fn new(t: &Edgewise, start: &LatticeVertex, steps: &[u32]) -> Result<Self> {
        let k = t.k;
        let v = &start.0;
        let gap = |j: u32| -> u32 {
            let j = j % k;
            match j {
                0 => v[0],
                _ if j == k - 1 => t.q - v[k as usize - 2],
                _ => v[j as usize] - v[j as usize - 1],
            }
        };
        let in_s: HashSet<u32> = steps.iter().copied().collect();
        let next = |j: u32| if j == k { 1 } else { j + 1 };
        let prev = |j: u32| if j == 1 { k } else { j - 1 };
        let mut groups = Vec::new();
        let mut covered = 0;
        for &head in steps {
            let p = prev(head);
            if in_s.contains(&p) && gap(p) == 0 {
                continue;
            }
            // head..tail: each step waits for the following one
            let mut chain = vec![head];
            let mut j = head;
            while gap(j) == 0 {
                let n = next(j);
                if !in_s.contains(&n) || n == head {
                    return Err(Error::domain(format!(
                        "step {j} from {start} is blocked within its arc"
                    )));
                }
                chain.push(n);
                j = n;
            }
            covered += chain.len();
            chain.reverse();
            groups.push(chain);
        }
        if covered != steps.len() {
            return Err(Error::domain(format!("steps {steps:?} from {start} form a closed cycle")));
        }
        groups.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        Ok(Arc {
            start: v.clone(),
            groups,
        })
    }

    pub(crate) fn lengths(&self) -> Vec<u32> {
        self.groups.iter().map(|g| g.len() as u32).collect()
    }

    pub(crate) fn sigma(&self) -> Partition {
        Partition::new(self.lengths()).expect("arcs are nonempty")
    }

    /// The point reached after the first `x[g]` steps of every chain `g`.
    pub(crate) fn point(&self, x: &[u32]) -> LatticeVertex {
        let n = self.start.len() as u32;
        let mut delta = vec![0i64; self.start.len()];
        let mut down = 0i64;
        for (g, &c) in self.groups.iter().zip(x) {
            for &j in &g[..c as usize] {
                if j == n + 1 {
                    down += 1;
                } else {
                    delta[j as usize - 1] += 1;
                }
            }
        }
        LatticeVertex(
            self.start
                .iter()
                .zip(&delta)
                .map(|(&s, &d)| u32::try_from(s as i64 + d - down).expect("arc stays in W_{k,q}"))
                .collect(),
        )
    }

    /// The arc's points as a poset, covers labelled by step.
    pub(crate) fn poset(&self) -> GradedPoset<ArcPoint> {
        let lengths = self.lengths();
        let product = chain_product(&lengths).expect("arcs are nonempty");
        let at = |x: &Vec<u32>| ArcPoint {
            coords: x.clone(),
            point: self.point(x),
        };
        let mut labels: HashMap<(Vec<u32>, Vec<u32>), u32> = HashMap::new();
        let mut covers = Vec::new();
        for (x, y, _) in product.covers() {
            let g = x.iter().zip(y).position(|(a, b)| a != b).expect("cover raises a coordinate");
            labels.insert((x.clone(), y.clone()), self.groups[g][x[g] as usize]);
            covers.push((at(x), at(y)));
        }
        let elements = product.elements().iter().map(at).collect();
        GradedPoset::new(elements, covers)
            .expect("chain products are graded")
            .with_labels(|a, b| labels[&(a.coords.clone(), b.coords.clone())])
    }

    /// Interior points of the arc keyed by their chain-product coordinates.
    pub(crate) fn interior(&self) -> Vec<(Vec<u32>, LatticeVertex)> {
        let lengths = self.lengths();
        let product = chain_product(&lengths).expect("arcs are nonempty");
        let n = product.len();
        product.elements()[1..n - 1]
            .iter()
            .map(|x| (x.clone(), self.point(x)))
            .collect()
    }
}

/// An element of an arc poset: its position in the chain product and the
/// lattice point it stands for. The bottom and top of a full turn are both
/// the starting vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ArcPoint {
    pub coords: Vec<u32>,
    pub point: LatticeVertex,
}

/// The combinatorial type `(λ, M)` of the link of a face: `λ` collects the
/// arc sizes and `M` the chain-length partitions `σ_i` of the arcs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LinkDescriptor {
    pub lambda: Partition,
    /// `σ_i` listed in the order of the parts of `λ` they refine.
    pub sigmas: Vec<Partition>,
}

impl LinkDescriptor {
    /// The isomorphism type: the link is `Δ^{p-1} * K_{σ_1} * .. ` over the
    /// `σ_i` with at least two parts, and arcs with a single chain only add
    /// cone points.
    pub fn class(&self) -> LinkClass {
        let mut simplex_vertices = 0;
        let mut factors = Vec::new();
        for s in &self.sigmas {
            if s.len() == 1 {
                simplex_vertices += s.size() - 1;
            } else {
                factors.push(s.clone());
            }
        }
        factors.sort();
        LinkClass {
            simplex_vertices,
            factors,
        }
    }
}

impl fmt::Display for LinkDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{", self.lambda)?;
        for (i, s) in self.sigmas.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// A link up to isomorphism: a simplex on `simplex_vertices` vertices joined
/// with `K_σ` for each listed `σ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LinkClass {
    pub simplex_vertices: u32,
    pub factors: Vec<Partition>,
}

impl fmt::Display for LinkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ^{}", self.simplex_vertices as i64 - 1)?;
        for s in &self.factors {
            write!(f, " * K{s}")?;
        }
        Ok(())
    }
}

/// The link of a face, computed directly and from its join model.
#[derive(Debug, Clone, Serialize)]
pub struct FaceLink {
    /// The face in step order `v^(1), .., v^(t)`.
    pub face: Vec<LatticeVertex>,
    /// `S_1, .., S_t`, each sorted.
    pub steps: Vec<Vec<u32>>,
    pub descriptor: LinkDescriptor,
    pub link: SimplicialComplex<LatticeVertex>,
    /// `K_{σ_1} * .. * K_{σ_t}` with vertices tagged by arc.
    pub model: SimplicialComplex<(usize, Vec<u32>)>,
    /// Model vertex to link vertex.
    pub witness: Vec<((usize, Vec<u32>), LatticeVertex)>,
    /// Whether the witness carries the model's facets exactly onto the link's.
    pub certified: bool,
    /// The arc posets glued end to end.
    #[serde(skip)]
    pub poset: GradedPoset<(usize, ArcPoint)>,
}

impl Edgewise {
    /// Orders a face along its steps and splits `[k]` into `S_1, .., S_t`.
    pub fn face_steps(&self, face: &[LatticeVertex]) -> Result<(Vec<LatticeVertex>, Vec<Vec<u32>>)> {
        if face.is_empty() {
            return Err(Error::domain("empty face"));
        }
        for v in face {
            self.check_vertex(v)?;
        }
        let mut ordered: Vec<LatticeVertex> = face.to_vec();
        ordered.sort_by_key(|v| (v.0.iter().map(|&x| x as u64).sum::<u64>(), v.clone()));
        ordered.dedup();
        let not_face = || Error::domain(format!("{} is not a face of T_{{{},{}}}", show(face), self.k, self.q));
        let mut steps = Vec::new();
        let mut used = vec![false; self.k as usize + 1];
        for w in ordered.windows(2) {
            let mut s = Vec::new();
            for (i, (&a, &b)) in w[0].0.iter().zip(&w[1].0).enumerate() {
                match b.checked_sub(a) {
                    Some(0) => {}
                    Some(1) if !used[i + 1] => {
                        used[i + 1] = true;
                        s.push(i as u32 + 1);
                    }
                    _ => return Err(not_face()),
                }
            }
            if s.is_empty() {
                return Err(not_face());
            }
            steps.push(s);
        }
        steps.push((1..=self.k).filter(|&j| !used[j as usize]).collect());
        for (v, s) in ordered.iter().zip(&steps) {
            Arc::new(self, v, s).map_err(|_| not_face())?;
        }
        Ok((ordered, steps))
    }

    fn face_arcs(&self, face: &[LatticeVertex]) -> Result<(Vec<LatticeVertex>, Vec<Vec<u32>>, Vec<Arc>)> {
        let (ordered, steps) = self.face_steps(face)?;
        let arcs = ordered
            .iter()
            .zip(&steps)
            .map(|(v, s)| Arc::new(self, v, s))
            .collect::<Result<Vec<_>>>()?;
        Ok((ordered, steps, arcs))
    }

    /// The type `(λ, M)` of the link of a face.
    pub fn classify_link_of_face(&self, face: &[LatticeVertex]) -> Result<LinkDescriptor> {
        let (_, _, arcs) = self.face_arcs(face)?;
        Ok(descriptor(&arcs))
    }

    /// The link of a face, read off the local star of its first vertex, with
    /// the join model and the glued poset.
    pub fn link_of_face(&self, face: &[LatticeVertex]) -> Result<FaceLink> {
        let (ordered, steps, arcs) = self.face_arcs(face)?;
        let star: Vec<Vec<LatticeVertex>> = self
            .star_facets(&ordered[0])?
            .into_iter()
            .filter(|f| ordered.iter().all(|v| f.contains(v)))
            .collect();
        let link = SimplicialComplex::from_facets(star).link(&ordered)?;

        let mut model = SimplicialComplex::empty();
        let mut witness = Vec::new();
        for (i, arc) in arcs.iter().enumerate() {
            let factor = k_lambda_any(&arc.sigma())?.map_vertices(|x| (i, x.clone()));
            model = model.join(&factor)?;
            witness.extend(arc.interior().into_iter().map(|(x, p)| ((i, x), p)));
        }
        let certified = certify(&model, &witness, &link);
        let poset = stack_posets(&arcs.iter().map(Arc::poset).collect::<Vec<_>>())?;
        Ok(FaceLink {
            face: ordered,
            steps,
            descriptor: descriptor(&arcs),
            link,
            model,
            witness,
            certified,
            poset,
        })
    }

    /// All faces with `t` vertices, in sorted order, as vertex lists.
    pub fn faces(&self, t: usize) -> Result<Vec<Vec<LatticeVertex>>> {
        self.faces_with_cap(t, super::DEFAULT_MAX_FACETS)
    }

    pub fn faces_with_cap(&self, t: usize, max_facets: u64) -> Result<Vec<Vec<LatticeVertex>>> {
        if t == 0 || t > self.k as usize {
            return Err(Error::domain(format!("faces need 1 <= t <= {}, got {t}", self.k)));
        }
        self.check_capacity(max_facets)?;
        let mut seen: HashSet<Vec<LatticeVertex>> = HashSet::new();
        for a in self.codes() {
            let mut f = super::decode_unchecked(&a.0);
            f.sort();
            for subset in subsets(f.len(), t) {
                seen.insert(subset.iter().map(|&i| f[i].clone()).collect());
            }
        }
        let mut out: Vec<Vec<LatticeVertex>> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Number of faces with `t` vertices in each link class, by exhaustive
    /// enumeration.
    pub fn classify_faces(&self, t: usize) -> Result<BTreeMap<LinkClass, u64>> {
        let mut out = BTreeMap::new();
        for f in self.faces(t)? {
            *out.entry(self.classify_link_of_face(&f)?.class()).or_insert(0) += 1;
        }
        Ok(out)
    }
}

fn descriptor(arcs: &[Arc]) -> LinkDescriptor {
    let mut pairs: Vec<(u32, Partition)> = arcs.iter().map(|a| (a.sigma().size(), a.sigma())).collect();
    pairs.sort_by(|a, b| b.cmp(a));
    LinkDescriptor {
        lambda: Partition::new(pairs.iter().map(|p| p.0).collect()).expect("arc sizes sum to k"),
        sigmas: pairs.into_iter().map(|p| p.1).collect(),
    }
}

/// Checks that `witness` maps the model's vertices bijectively onto the
/// link's and carries facets onto facets.
pub(crate) fn certify<M: crate::complex::Vertex>(
    model: &SimplicialComplex<M>,
    witness: &[(M, LatticeVertex)],
    link: &SimplicialComplex<LatticeVertex>,
) -> bool {
    let map: HashMap<&M, &LatticeVertex> = witness.iter().map(|(m, v)| (m, v)).collect();
    let images: HashSet<&LatticeVertex> = map.values().copied().collect();
    if map.len() != witness.len() || images.len() != witness.len() {
        return false;
    }
    if model.vertices().iter().any(|m| !map.contains_key(m)) || model.num_vertices() != witness.len() {
        return false;
    }
    let image = SimplicialComplex::from_facets(
        model.facets().map(|f| f.iter().map(|m| map[m].clone()).collect::<Vec<_>>()),
    );
    &image == link
}

fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn rec(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    rec(0, n, t, &mut cur, &mut out);
    out
}

fn show(face: &[LatticeVertex]) -> String {
    let parts: Vec<String> = face.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::are_isomorphic;

    fn lv(c: &[u32]) -> LatticeVertex {
        LatticeVertex(c.to_vec())
    }

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn figure_face() -> Vec<LatticeVertex> {
        vec![
            lv(&[2, 2, 3, 3, 4, 7, 8]),
            lv(&[1, 1, 3, 3, 3, 6, 7]),
            lv(&[2, 2, 3, 3, 3, 6, 8]),
        ]
    }

    #[test]
    fn figure_face_steps_and_type() {
        let t = Edgewise::new(8, 9).unwrap();
        let (ordered, steps) = t.face_steps(&figure_face()).unwrap();
        assert_eq!(ordered[0], lv(&[1, 1, 3, 3, 3, 6, 7]));
        assert_eq!(steps, vec![vec![1, 2, 7], vec![5, 6], vec![3, 4, 8]]);
        let d = t.classify_link_of_face(&figure_face()).unwrap();
        assert_eq!(d.lambda, part(&[3, 3, 2]));
        assert_eq!(d.sigmas, vec![part(&[2, 1]), part(&[2, 1]), part(&[1, 1])]);
        assert_eq!(d.to_string(), "(3,3,2) {(2,1), (2,1), (1,1)}");
        assert_eq!(d.class(), LinkClass { simplex_vertices: 0, factors: vec![part(&[1, 1]), part(&[2, 1]), part(&[2, 1])] });
    }

    #[test]
    fn figure_face_link_and_poset() {
        let t = Edgewise::new(8, 9).unwrap();
        let fl = t.link_of_face(&figure_face()).unwrap();
        assert!(fl.certified);
        // (3·2 - 2) + (2·2 - 2) + (3·2 - 2) link vertices
        assert_eq!(fl.link.num_vertices(), 10);
        assert_eq!(fl.link.num_facets(), 3 * 2 * 3);
        // poset: 6 + 4 + 6 elements, two glued points
        assert_eq!(fl.poset.len(), 14);
        assert_eq!(fl.poset.height(), 8);
        let labels: Vec<Vec<u32>> = fl.poset.labeled_chains().unwrap().into_iter().map(|c| c.labels).collect();
        assert!(labels.contains(&vec![2, 1, 7, 6, 5, 4, 3, 8]));
        assert!(are_isomorphic(&fl.link, &fl.model).unwrap().is_some());
    }

    #[test]
    fn poset_reproduces_the_star() {
        let t = Edgewise::new(4, 3).unwrap();
        let k = t.build_complex().unwrap();
        for face in [vec![lv(&[0, 1, 2])], vec![lv(&[0, 1, 1]), lv(&[1, 1, 2])], vec![lv(&[0, 0, 3]), lv(&[0, 1, 3])]] {
            let fl = t.link_of_face(&face).unwrap();
            assert!(fl.certified, "{face:?}");
            let chains = fl.poset.maximal_chains().into_iter().map(|mut c| {
                c.pop();
                c.into_iter().map(|(_, x)| x.point).collect::<Vec<_>>()
            });
            assert_eq!(SimplicialComplex::from_facets(chains), k.star(&face).unwrap());
            assert_eq!(fl.link, k.link(&face).unwrap());
        }
    }

    #[test]
    fn degenerate_faces() {
        let t = Edgewise::new(3, 2).unwrap();
        let facet = t.decode(&crate::edgewise::FacetCode(vec![1, 0])).unwrap();
        let fl = t.link_of_face(&facet).unwrap();
        assert_eq!(fl.link, SimplicialComplex::empty());
        assert!(fl.certified);
        assert_eq!(fl.descriptor.lambda, part(&[1, 1, 1]));
        assert!(t.link_of_face(&[lv(&[0, 0]), lv(&[1, 2])]).is_err());
        assert!(t.link_of_face(&[lv(&[0, 1]), lv(&[1, 0])]).is_err());
        assert!(t.link_of_face(&[]).is_err());
        // same step used twice
        assert!(t.link_of_face(&[lv(&[0, 0]), lv(&[0, 1]), lv(&[0, 2])]).is_err());
    }

    #[test]
    fn every_face_link_is_certified_small() {
        for (k, q) in [(3, 3), (4, 2), (4, 3)] {
            let t = Edgewise::new(k, q).unwrap();
            let cx = t.build_complex().unwrap();
            for size in 1..=k as usize {
                for f in t.faces(size).unwrap() {
                    let fl = t.link_of_face(&f).unwrap();
                    assert!(fl.certified, "{f:?}");
                    assert_eq!(fl.link, cx.link(&f).unwrap());
                }
            }
        }
    }

    #[test]
    fn face_counts_of_small_complexes() {
        let t = Edgewise::new(3, 2).unwrap();
        assert_eq!(t.faces(1).unwrap().len(), 6);
        assert_eq!(t.faces(2).unwrap().len(), 9);
        assert_eq!(t.faces(3).unwrap().len(), 4);
        assert!(t.faces(0).is_err());
    }
}
