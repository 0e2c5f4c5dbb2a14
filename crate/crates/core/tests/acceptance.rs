//! Acceptance checks, one line per criterion. Runs without the test harness
//! so every line is printed; the process fails if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use edgewise::combinatorics::{
    eulerian_row, factorial, h_matrix, h_rows_recursive, partitions, x_sequence,
};
use edgewise::complex::are_isomorphic;
use edgewise::edgewise::{count_distinct_links_dim, face_count_table, q_sequence};
use edgewise::poset::{h_k_lambda, h_last_nonzero, h_two_part, k_lambda, sd_boundary_simplex, HRoute};
use edgewise::starcluster::{sc_count_ie, sc_count_partition, x_k_plus_one};
use edgewise::{Edgewise, LatticeVertex, Word};
use num_bigint::BigUint;

const FACET_COUNT_LIMIT: Duration = Duration::from_secs(5);
const H_VECTOR_LIMIT: Duration = Duration::from_secs(30);
const SHELLING_LIMIT: Duration = Duration::from_secs(60);
const TABLES_LIMIT: Duration = Duration::from_secs(10);
const LINKS_LIMIT: Duration = Duration::from_secs(120);
const K_LAMBDA_LIMIT: Duration = Duration::from_secs(60);
const STAR_CLUSTER_LIMIT: Duration = Duration::from_secs(60);
const H_MATRIX_LIMIT: Duration = Duration::from_secs(30);
const ERRATUM_LIMIT: Duration = Duration::from_secs(5);
const PROPERTY_LIMIT: Duration = Duration::from_secs(120);

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn grid() -> impl Iterator<Item = Edgewise> {
    (2..=6).flat_map(|k| (1..=4).map(move |q| Edgewise::new(k, q).unwrap()))
}

fn facet_count() -> Check {
    let mut n = 0;
    for t in grid() {
        let cx = t.build_complex().map_err(|e| e.to_string())?;
        let expect = (t.q() as usize).pow(t.k() - 1);
        ensure(cx.num_facets() == expect, || {
            format!("T_{{{},{}}} has {} facets, expected {expect}", t.k(), t.q(), cx.num_facets())
        })?;
        n += 1;
    }
    Ok(format!("{n} instances, |facets| = q^(k-1)"))
}

fn h_vector_agreement() -> Check {
    let mut n = 0;
    for t in grid() {
        let rep = t.h_vector_report(u64::MAX).map_err(|e| e.to_string())?;
        ensure(rep.ascents.is_some() && rep.from_f.is_some(), || "exhaustive routes skipped".into())?;
        ensure(rep.agree, || format!("T_{{{},{}}}: routes disagree: {rep:?}", t.k(), t.q()))?;
        n += 1;
    }
    Ok(format!("{n} instances, ascents = closed form = polynomial = h_from_f"))
}

fn shelling_certificates() -> Check {
    let mut n = 0;
    for k in 2..=5 {
        for q in 1..=4 {
            let t = Edgewise::new(k, q).unwrap();
            let rep = t.shelling_order().map_err(|e| e.to_string())?;
            ensure(rep.certificate.valid, || format!("T_{{{k},{q}}}: not a shelling: {:?}", rep.certificate.failure))?;
            for (a, r) in rep.order.iter().zip(&rep.certificate.restrictions) {
                let rule: BTreeSet<LatticeVertex> = t.restriction_rule(a).unwrap().into_iter().collect();
                let got: BTreeSet<LatticeVertex> = r.iter().cloned().collect();
                ensure(rule == got, || format!("T_{{{k},{q}}}: restriction of {a} is {got:?}, rule gives {rule:?}"))?;
            }
            n += rep.order.len();
        }
    }
    Ok(format!("{n} facets, every restriction equals the ascent rule"))
}

fn reference_tables() -> Check {
    let table: Vec<BigUint> = face_count_table(6, 6).map_err(|e| e.to_string())?.into_iter().map(|(_, n)| n).collect();
    ensure(table == big(&[6, 6, 6, 3, 6, 12, 2, 6, 9, 6, 1]), || format!("k=6 table {table:?}"))?;
    let qs: Vec<BigUint> = (0..=9).map(q_sequence).collect();
    ensure(qs == big(&[1, 3, 7, 16, 34, 74, 151, 312, 625, 1245]), || format!("Q_s {qs:?}"))?;
    let links: Vec<BigUint> = (0..=9).map(count_distinct_links_dim).collect();
    ensure(links == big(&[2, 5, 12, 28, 62, 136, 287, 599, 1224, 2469]), || format!("links {links:?}"))?;
    Ok("k=6 face counts, Q_0..Q_9, distinct links m=0..9".into())
}

fn link_theorems() -> Check {
    let mut checked = 0;
    let mut interior = 0;
    for k in 2..=5 {
        let sd = sd_boundary_simplex(k).map_err(|e| e.to_string())?;
        for q in 1..=4 {
            let t = Edgewise::new(k, q).unwrap();
            let cx = t.build_complex().map_err(|e| e.to_string())?;
            for v in t.vertex_set() {
                let link = cx.link(std::slice::from_ref(&v)).map_err(|e| e.to_string())?;
                let lambda = t.vertex_partition(&v).unwrap();
                let model = k_lambda(&lambda).map_err(|e| e.to_string())?;
                let iso = are_isomorphic(&link, &model).map_err(|e| format!("{v}: {e}"))?;
                ensure(iso.is_some(), || format!("T_{{{k},{q}}}: link of {v} is not K{lambda}"))?;
                if t.is_interior(&v).unwrap() {
                    let iso = are_isomorphic(&link, &sd).map_err(|e| format!("{v}: {e}"))?;
                    ensure(iso.is_some(), || format!("T_{{{k},{q}}}: link of {v} is not Sd(∂Δ)"))?;
                    interior += 1;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} vertex links ≅ K_λ(v), {interior} interior links ≅ Sd(∂Δ^(k-1))"))
}

fn k_lambda_identities() -> Check {
    let mut complexes = Vec::new();
    for k in 2..=6u32 {
        for lambda in partitions(k, None).map_err(|e| e.to_string())? {
            let d = h_k_lambda(&lambda, HRoute::Descents).map_err(|e| e.to_string())?;
            let r = h_k_lambda(&lambda, HRoute::Recursion).map_err(|e| e.to_string())?;
            let f = h_k_lambda(&lambda, HRoute::FromF).map_err(|e| e.to_string())?;
            let (body, top) = f.split_at(k as usize);
            ensure(top.iter().all(|x| *x == BigUint::from(0u32)), || format!("{lambda}: h_from_f top {top:?}"))?;
            ensure(d == r && d == body, || format!("{lambda}: descents {d:?}, recursion {r:?}, from f {f:?}"))?;
            let (idx, val) = h_last_nonzero(&lambda);
            let last = d.iter().rposition(|x| *x != BigUint::from(0u32)).unwrap();
            ensure(last == idx && d[idx] == val, || format!("{lambda}: last nonzero at {last}, formula ({idx}, {val})"))?;
            if lambda.len() == 2 {
                ensure(h_two_part(&lambda).unwrap() == d, || format!("{lambda}: two-part formula"))?;
            }
            complexes.push((k, lambda.clone(), k_lambda(&lambda).map_err(|e| e.to_string())?));
        }
    }
    let mut pairs = 0;
    for (i, (ka, la, a)) in complexes.iter().enumerate() {
        for (kb, lb, b) in &complexes[i + 1..] {
            if ka != kb {
                continue;
            }
            let iso = are_isomorphic(a, b).map_err(|e| format!("{la} vs {lb}: {e}"))?;
            ensure(iso.is_none(), || format!("K{la} ≅ K{lb}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{} partitions, {pairs} pairs pairwise non-isomorphic", complexes.len()))
}

fn star_clusters() -> Check {
    let mut lines = Vec::new();
    for k in 2..=4 {
        let t = Edgewise::new(k, k + 3).unwrap();
        let base = t.default_star_cluster_base().map_err(|e| e.to_string())?;
        let r = t.star_cluster_report(&base).map_err(|e| e.to_string())?;
        let x = x_k_plus_one(k);
        ensure(BigUint::from(r.count_enumeration) == x, || format!("k={k}: {} facets, X = {x}", r.count_enumeration))?;
        ensure(sc_count_ie(k).unwrap() == x && sc_count_partition(k).unwrap() == x, || format!("k={k}: count formulas"))?;
        ensure(r.certificate.valid, || format!("k={k}: structured order is not a shelling"))?;
        ensure(r.h_shelling == r.h_formula, || format!("k={k}: h {:?} vs (1..k)H_k {:?}", r.h_shelling, r.h_formula))?;
        ensure(r.h_shelling.iter().sum::<u64>() == r.count_enumeration as u64, || format!("k={k}: h sum"))?;
        ensure(r.is_consistent(), || format!("k={k}: report inconsistent"))?;
        if k == 3 {
            ensure(r.count_enumeration == 13 && r.h_shelling == vec![1, 9, 3], || format!("k=3: {:?}", r.h_shelling))?;
        }
        lines.push(format!("k={k}: {} facets h={:?}", r.count_enumeration, r.h_shelling));
    }
    Ok(lines.join("; "))
}

fn h_matrices() -> Check {
    for k in 1..=7usize {
        let table = h_matrix(k).map_err(|e| e.to_string())?;
        let cols: Vec<BigUint> = table.column_sums().into_iter().map(BigUint::from).collect();
        ensure(cols == eulerian_row(k), || format!("k={k}: column sums {cols:?}"))?;
        let xs = x_sequence(k);
        for (t, s) in table.row_sums().into_iter().enumerate() {
            let expect = &xs[t] * factorial((k - t - 1) as u64);
            ensure(BigUint::from(s) == expect, || format!("k={k}, t={}: row sum {s} vs {expect}", t + 1))?;
        }
        let rec = h_rows_recursive(k).map_err(|e| e.to_string())?;
        let brute: Vec<Vec<BigUint>> = table.rows().iter().map(|r| r.iter().map(|&x| BigUint::from(x)).collect()).collect();
        ensure(rec == brute, || format!("k={k}: recursion {rec:?} vs brute force {brute:?}"))?;
    }
    Ok("k=1..7: column sums Eulerian, row sums X_t (k-t)!, recursion = enumeration".into())
}

fn h1_discrepancy_flag() -> Check {
    let t = Edgewise::new(3, 2).unwrap();
    let rep = t.h_vector_report(u64::MAX).map_err(|e| e.to_string())?;
    ensure(rep.agree, || "routes disagree".into())?;
    let h1 = rep.closed_form[1].clone();
    ensure(h1 == BigUint::from(3u32), || format!("h_1 = {h1}, expected 3"))?;
    ensure(rep.h1_binomial == BigUint::from(5u32), || format!("binomial value {}", rep.h1_binomial))?;
    ensure(rep.h1_discrepancy, || "discrepancy not flagged".into())?;
    Ok(format!("h_1 = {h1} by all routes; C(k+q-1,k-1)-1 = {} flagged as a discrepancy", rep.h1_binomial))
}

fn property_suite() -> Check {
    let mut codes = 0;
    let mut ridges = 0;
    for k in 2..=6 {
        for q in 1..=4 {
            let t = Edgewise::new(k, q).unwrap();
            let mut ridge_pairs: HashSet<(Vec<LatticeVertex>, Vec<LatticeVertex>)> = HashSet::new();
            for a in t.codes() {
                let f = t.decode(&a).unwrap();
                let back = t.encode(&f[0], &step_order(&f)).map_err(|e| e.to_string())?;
                ensure(back == a, || format!("T_{{{k},{q}}}: {a} round-trips to {back}"))?;
                for w in f.windows(2) {
                    ensure(w[0].0.iter().zip(&w[1].0).all(|(x, y)| y - x <= 1), || format!("{a}: step not 0/1"))?;
                }
                let mut fs = f.clone();
                fs.sort();
                for (&dropped, b) in &t.ridge_neighbors(&a).unwrap() {
                    let mut g = t.decode(b).unwrap();
                    g.sort();
                    let common = fs.iter().filter(|v| g.contains(v)).count();
                    ensure(common == k as usize - 1 && !g.contains(&f[dropped - 1]), || {
                        format!("T_{{{k},{q}}}: {a} and {b} do not share the ridge without vertex {dropped}")
                    })?;
                    ridge_pairs.insert((fs.clone(), g));
                }
                codes += 1;
            }
            // every interior ridge of the complex is listed
            let cx = t.build_complex().unwrap();
            let facets: Vec<Vec<LatticeVertex>> = cx
                .facet_list()
                .into_iter()
                .map(|mut f| {
                    f.sort();
                    f
                })
                .collect();
            let mut expected = 0;
            for (i, f) in facets.iter().enumerate() {
                for g in &facets[i + 1..] {
                    if f.iter().filter(|v| g.contains(v)).count() == k as usize - 1 {
                        expected += 2;
                        ensure(ridge_pairs.contains(&(f.clone(), g.clone())), || format!("missing ridge {f:?} {g:?}"))?;
                    }
                }
            }
            ensure(expected == ridge_pairs.len(), || format!("T_{{{k},{q}}}: extra ridge pairs"))?;
            ridges += expected / 2;
            if k <= 5 {
                for v in t.vertex_set() {
                    let star = cx.star(std::slice::from_ref(&v)).unwrap();
                    let cone = edgewise::SimplicialComplex::simplex(vec![v.clone()])
                        .join(&cx.link(std::slice::from_ref(&v)).unwrap())
                        .unwrap();
                    ensure(star == cone && star == t.star_of_vertex(&v).unwrap(), || format!("star of {v}"))?;
                }
            }
        }
    }
    Ok(format!("{codes} codes round-trip, {ridges} interior ridges matched, stars = cones over links"))
}

/// The encode permutation of a decoded facet: the raised coordinates, last step first.
fn step_order(f: &[LatticeVertex]) -> Word {
    let mut pi: Vec<u32> = f
        .windows(2)
        .map(|w| w[0].0.iter().zip(&w[1].0).position(|(x, y)| x != y).unwrap() as u32 + 1)
        .collect();
    pi.reverse();
    Word(pi)
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 10] = [
        ("facet count q^(k-1)", facet_count, FACET_COUNT_LIMIT),
        ("h-vector four-way agreement", h_vector_agreement, H_VECTOR_LIMIT),
        ("shelling certificate and restriction rule", shelling_certificates, SHELLING_LIMIT),
        ("tables reproduced", reference_tables, TABLES_LIMIT),
        ("vertex links", link_theorems, LINKS_LIMIT),
        ("K_lambda identities", k_lambda_identities, K_LAMBDA_LIMIT),
        ("star clusters", star_clusters, STAR_CLUSTER_LIMIT),
        ("H_k machinery", h_matrices, H_MATRIX_LIMIT),
        ("h_1 discrepancy", h1_discrepancy_flag, ERRATUM_LIMIT),
        ("property suite", property_suite, PROPERTY_LIMIT),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed <= *limit => format!("PASS  {detail}"),
            Ok(detail) => format!("FAIL  over time limit {limit:?}: {detail}"),
            Err(e) => format!("FAIL  {e}"),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("criterion {:>2} [{name}] {verdict} ({:.2?})", i + 1, elapsed);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
