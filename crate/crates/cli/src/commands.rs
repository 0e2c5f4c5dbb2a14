use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{Display, Write as _};
use std::path::Path;

use edgewise::combinatorics::{h_matrix, partitions};
use edgewise::edgewise::{
    count_distinct_links_dim, count_faces_with_link_type, count_link_types, count_link_types_of_faces,
    face_count_table, q_sequence,
};
use edgewise::poset::{
    h_k_lambda, h_last_nonzero, h_two_part, is_join_irreducible, k_lambda, k_lambda_facet_count,
    k_lambda_vertex_count, HRoute,
};
use edgewise::{Edgewise, FacetCode, LatticeVertex, Partition};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::render::{csv, json as to_json, spaced, tuple};
use crate::{Cli, Command, Format};

/// What a command prints, and the invariant it found broken, if any.
pub struct Report {
    pub body: Option<String>,
    pub breach: Option<String>,
}

impl Report {
    fn ok(body: String) -> Self {
        Report { body: Some(body), breach: None }
    }

    fn checked(body: String, ok: bool, breach: impl FnOnce() -> String) -> Self {
        Report {
            body: Some(body),
            breach: (!ok).then(breach),
        }
    }
}

/// A big count as a JSON number, or a decimal string past `u64`.
fn num(x: impl Display) -> Value {
    let s = x.to_string();
    s.parse::<u64>().map(Value::from).unwrap_or(Value::String(s))
}

fn nums<T: Display>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(num).collect())
}

fn instance(cli: &Cli) -> CliResult<Edgewise> {
    match (cli.k, cli.q) {
        (Some(k), Some(q)) => Ok(Edgewise::new(k, q)?),
        _ => Err(CliError::Usage("this command needs -k and -q".into())),
    }
}

fn unsupported(cli: &Cli, verb: &str) -> CliError {
    CliError::Usage(format!("{verb} does not support --format {:?}", cli.format).to_lowercase())
}

pub fn dispatch(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Build => build(cli, &instance(cli)?),
        Command::Hvector => hvector(cli, &instance(cli)?),
        Command::Shell => shell(cli, &instance(cli)?),
        Command::Link { vertex, face, partition } => match (vertex, face.is_empty(), partition) {
            (Some(v), true, None) => vertex_link(cli, &instance(cli)?, v),
            (None, false, None) => face_link(cli, &instance(cli)?, face),
            (None, true, Some(p)) => model(cli, p),
            _ => Err(CliError::Usage("link needs exactly one of --vertex, --face or --partition".into())),
        },
        Command::ClassifyLinks { table, max_dim } => {
            let t = instance(cli)?;
            if *table {
                link_tables(cli, &t, *max_dim)
            } else {
                classify_vertices(cli, &t)
            }
        }
        Command::StarCluster { vertex } => star_cluster(cli, &instance(cli)?, vertex.as_ref()),
        Command::Tables => tables(cli),
        Command::Export { .. } => export(cli, &instance(cli)?),
    }
}

#[derive(Serialize)]
struct FacetRow {
    code: FacetCode,
    vertices: Vec<LatticeVertex>,
}

fn build(cli: &Cli, t: &Edgewise) -> CliResult<Report> {
    if cli.format == Format::Off {
        return export(cli, t);
    }
    let cx = t.build_complex_with_cap(cli.max_facets)?;
    let facets: Vec<FacetRow> = t
        .codes()
        .map(|code| Ok(FacetRow { vertices: t.decode(&code)?, code }))
        .collect::<CliResult<_>>()?;
    let vertices = t.vertex_set();
    let ok = facets.len() as u128 == t.num_facets()
        && cx.num_facets() == facets.len()
        && t.num_vertices().to_string() == vertices.len().to_string();
    let body = match cli.format {
        Format::Json => to_json(
            "build",
            &json!({
                "k": t.k(),
                "q": t.q(),
                "num_vertices": vertices.len(),
                "num_facets": facets.len(),
                "f_vector": cx.f_vector(),
                "vertices": vertices,
                "facets": facets,
            }),
        )?,
        Format::Csv => {
            let mut header = vec!["code".to_string()];
            header.extend((1..=t.k()).map(|i| format!("v{i}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv(
                &header,
                facets.iter().map(|f| {
                    let mut row = vec![f.code.to_string()];
                    row.extend(f.vertices.iter().map(ToString::to_string));
                    row
                }),
            )?
        }
        Format::Text => {
            let mut s = format!(
                "T_{{{},{}}}: {} vertices, {} facets\nf-vector: {}\nvertices: {}\nfacets (code: vertices):\n",
                t.k(),
                t.q(),
                vertices.len(),
                facets.len(),
                tuple(&cx.f_vector()),
                spaced(&vertices)
            );
            for f in &facets {
                writeln!(s, "  {}: {}", f.code, spaced(&f.vertices)).unwrap();
            }
            s
        }
        Format::Off => unreachable!(),
    };
    Ok(Report::checked(body, ok, || "facet or vertex count differs from the closed form".into()))
}

fn hvector(cli: &Cli, t: &Edgewise) -> CliResult<Report> {
    let rep = t.h_vector_report(cli.max_facets)?;
    let four = 2 + usize::from(rep.ascents.is_some()) + usize::from(rep.from_f.is_some());
    let verdict = if rep.agree {
        format!("{four} routes agree ({} with recursion and shelling)", rep.routes())
    } else {
        format!("routes disagree ({} computed)", rep.routes())
    };
    let mut routes: Vec<(&str, Vec<String>)> = vec![
        ("closed_form", rep.closed_form.iter().map(ToString::to_string).collect()),
        ("polynomial", rep.polynomial.iter().map(ToString::to_string).collect()),
        ("recursion", rep.recursion.iter().map(ToString::to_string).collect()),
    ];
    if let Some(h) = &rep.ascents {
        routes.push(("ascents", h.iter().map(ToString::to_string).collect()));
    }
    if let Some(h) = &rep.from_f {
        routes.push(("from_f", h.iter().map(ToString::to_string).collect()));
    }
    if let Some(h) = &rep.shelling {
        routes.push(("shelling", h.iter().map(ToString::to_string).collect()));
    }
    let h1 = rep.closed_form.get(1).map_or("0".to_string(), ToString::to_string);
    let body = match cli.format {
        Format::Json => {
            let mut v = serde_json::to_value(&rep)?;
            v["verdict"] = Value::from(verdict.clone());
            to_json("hvector", &v)?
        }
        Format::Csv => {
            let mut header = vec!["route".to_string()];
            header.extend((0..=t.k()).map(|i| format!("h{i}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv(
                &header,
                routes.iter().map(|(name, h)| {
                    let mut row = vec![name.to_string()];
                    row.extend(h.iter().cloned());
                    row.resize(t.k() as usize + 2, String::new());
                    row
                }),
            )?
        }
        Format::Text => {
            let mut s = format!("T_{{{},{}}} h-vector: {}\n", t.k(), t.q(), tuple(&rep.closed_form));
            for (name, h) in &routes {
                writeln!(s, "  {name:<12} {}", tuple(h)).unwrap();
            }
            writeln!(s, "{verdict}").unwrap();
            if rep.h1_discrepancy {
                writeln!(
                    s,
                    "h_1 = {h1}; C(k+q-1,k-1)-1 = {} does not match (known discrepancy)",
                    rep.h1_binomial
                )
                .unwrap();
            }
            s
        }
        Format::Off => return Err(unsupported(cli, "hvector")),
    };
    Ok(Report::checked(body, rep.agree, || verdict.clone()))
}

#[derive(Serialize)]
struct ShellRow {
    index: usize,
    code: FacetCode,
    vertices: Vec<LatticeVertex>,
    restriction: Vec<LatticeVertex>,
    r#type: usize,
}

fn shell(cli: &Cli, t: &Edgewise) -> CliResult<Report> {
    let rep = t.shelling_order_with_cap(cli.max_facets)?;
    let cert = &rep.certificate;
    let rows: Vec<ShellRow> = rep
        .order
        .iter()
        .enumerate()
        .map(|(i, code)| ShellRow {
            index: i + 1,
            code: code.clone(),
            vertices: cert.order[i].clone(),
            restriction: cert.restrictions[i].clone(),
            r#type: cert.types[i],
        })
        .collect();
    let h = rep.h_vector();
    let ok = cert.valid && rep.restrictions_match_rule;
    let body = match cli.format {
        Format::Json => to_json(
            "shell",
            &json!({
                "k": t.k(),
                "q": t.q(),
                "valid": cert.valid,
                "failure": cert.failure,
                "restrictions_match_rule": rep.restrictions_match_rule,
                "h_vector": h,
                "facets": rows,
            }),
        )?,
        Format::Csv => csv(
            &["index", "code", "type", "restriction"],
            rows.iter().map(|r| {
                [r.index.to_string(), r.code.to_string(), r.r#type.to_string(), spaced(&r.restriction)]
            }),
        )?,
        Format::Text => {
            let mut s = format!(
                "T_{{{},{}}}: {} facets, shelling {}, restrictions {} the ascent rule\nh-vector from types: {}\n",
                t.k(),
                t.q(),
                rows.len(),
                if cert.valid { "valid" } else { "INVALID" },
                if rep.restrictions_match_rule { "match" } else { "DO NOT match" },
                tuple(&h)
            );
            for r in &rows {
                writeln!(s, "  {:>4} {} type {} R = {{{}}}", r.index, r.code, r.r#type, spaced(&r.restriction)).unwrap();
            }
            s
        }
        Format::Off => return Err(unsupported(cli, "shell")),
    };
    Ok(Report::checked(body, ok, || match &cert.failure {
        Some(f) => format!("shelling certificate failed: {f:?}"),
        None => "restrictions differ from the ascent rule".into(),
    }))
}

fn witness_csv<M: std::fmt::Debug>(witness: &[(M, LatticeVertex)]) -> CliResult<String> {
    csv(
        &["model_vertex", "link_vertex"],
        witness.iter().map(|(m, v)| [format!("{m:?}").replace(' ', ""), v.to_string()]),
    )
}

fn vertex_link(cli: &Cli, t: &Edgewise, v: &LatticeVertex) -> CliResult<Report> {
    let vl = t.link_of_vertex(v)?;
    let body = match cli.format {
        Format::Json => to_json("link", &vl)?,
        Format::Csv => witness_csv(&vl.witness)?,
        Format::Text => {
            let mut s = format!(
                "vertex {} of T_{{{},{}}}\ntype {}, partition {}, {}\n",
                vl.vertex,
                t.k(),
                t.q(),
                vl.vertex_type,
                vl.partition,
                if t.is_interior(v)? { "interior" } else { "boundary" }
            );
            writeln!(
                s,
                "link: {} vertices, {} facets, f-vector {}",
                vl.link.num_vertices(),
                vl.link.num_facets(),
                tuple(&vl.link.f_vector())
            )
            .unwrap();
            writeln!(
                s,
                "model K{}: {} vertices, {} facets; {}",
                vl.partition,
                vl.model.num_vertices(),
                vl.model.num_facets(),
                if vl.certified { "certified by explicit bijection" } else { "NOT certified" }
            )
            .unwrap();
            for f in vl.link.facets() {
                writeln!(s, "  {}", spaced(&f)).unwrap();
            }
            s
        }
        Format::Off => return Err(unsupported(cli, "link")),
    };
    Ok(Report::checked(body, vl.certified, || format!("link of {v} does not match K{}", vl.partition)))
}

fn face_link(cli: &Cli, t: &Edgewise, face: &[LatticeVertex]) -> CliResult<Report> {
    let fl = t.link_of_face(face)?;
    let body = match cli.format {
        Format::Json => {
            let mut v = serde_json::to_value(&fl)?;
            v["class"] = Value::from(fl.descriptor.class().to_string());
            to_json("link", &v)?
        }
        Format::Csv => witness_csv(&fl.witness)?,
        Format::Text => {
            let steps: Vec<String> = fl.steps.iter().map(|s| format!("{{{}}}", spaced(s))).collect();
            let mut s = format!(
                "face {} of T_{{{},{}}}\nsteps {}\ndescriptor {}\nclass {}\n",
                spaced(&fl.face),
                t.k(),
                t.q(),
                steps.join(" "),
                fl.descriptor,
                fl.descriptor.class()
            );
            writeln!(
                s,
                "link: {} vertices, {} facets, f-vector {}; {}",
                fl.link.num_vertices(),
                fl.link.num_facets(),
                tuple(&fl.link.f_vector()),
                if fl.certified { "certified by explicit bijection" } else { "NOT certified" }
            )
            .unwrap();
            for f in fl.link.facets() {
                writeln!(s, "  {}", spaced(&f)).unwrap();
            }
            s
        }
        Format::Off => return Err(unsupported(cli, "link")),
    };
    Ok(Report::checked(body, fl.certified, || format!("link of the face does not match {}", fl.descriptor)))
}

fn model(cli: &Cli, lambda: &Partition) -> CliResult<Report> {
    let facets = k_lambda_facet_count(lambda);
    if facets.to_string().parse::<u64>().map_or(true, |n| n > cli.max_facets) {
        return Err(CliError::Capacity(format!("K{lambda} has {facets} facets, limit is {}", cli.max_facets)));
    }
    let cx = k_lambda(lambda)?;
    let descents = h_k_lambda(lambda, HRoute::Descents)?;
    let recursion = h_k_lambda(lambda, HRoute::Recursion)?;
    let from_f = h_k_lambda(lambda, HRoute::FromF)?;
    let (last_index, last_value) = h_last_nonzero(lambda);
    let two_part = (lambda.len() == 2).then(|| h_two_part(lambda)).transpose()?;
    let irreducible = is_join_irreducible(&cx).ok();
    let k = lambda.size() as usize;
    let ok = descents == recursion
        && from_f[..k] == descents[..]
        && from_f[k..].iter().all(|x| x.to_string() == "0")
        && descents.get(last_index).is_some_and(|x| *x == last_value)
        && descents[last_index + 1..].iter().all(|x| x.to_string() == "0")
        && two_part.as_ref().is_none_or(|h| *h == descents)
        && cx.num_vertices() as u64 == k_lambda_vertex_count(lambda)
        && cx.num_facets().to_string() == facets.to_string();
    let body = match cli.format {
        Format::Json => to_json(
            "link",
            &json!({
                "partition": lambda,
                "num_vertices": cx.num_vertices(),
                "num_facets": cx.num_facets(),
                "f_vector": cx.f_vector(),
                "h_descents": nums(&descents),
                "h_recursion": nums(&recursion),
                "h_from_f": nums(&from_f),
                "last_nonzero": {"index": last_index, "value": num(&last_value)},
                "h_two_part": two_part.as_deref().map(nums),
                "join_irreducible": irreducible,
                "complex": cx,
            }),
        )?,
        Format::Csv => {
            let mut rows = vec![("descents", &descents), ("recursion", &recursion), ("from_f", &from_f)];
            if let Some(h) = &two_part {
                rows.push(("two_part", h));
            }
            let mut header = vec!["route".to_string()];
            header.extend((0..=k).map(|i| format!("h{i}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv(
                &header,
                rows.into_iter().map(|(name, h)| {
                    let mut row = vec![name.to_string()];
                    row.extend(h.iter().map(ToString::to_string));
                    row.resize(k + 2, String::new());
                    row
                }),
            )?
        }
        Format::Text => {
            let mut s = format!(
                "K{lambda}: {} vertices, {} facets, f-vector {}\n",
                cx.num_vertices(),
                cx.num_facets(),
                tuple(&cx.f_vector())
            );
            writeln!(s, "  h by descents   {}", tuple(&descents)).unwrap();
            writeln!(s, "  h by recursion  {}", tuple(&recursion)).unwrap();
            writeln!(s, "  h from f        {}", tuple(&from_f)).unwrap();
            if let Some(h) = &two_part {
                writeln!(s, "  h two-part      {}", tuple(h)).unwrap();
            }
            writeln!(s, "last nonzero h_{last_index} = {last_value}").unwrap();
            match irreducible {
                Some(b) => writeln!(s, "join irreducible: {b}").unwrap(),
                None => writeln!(s, "join irreducible: not checked (too many vertices)").unwrap(),
            }
            s
        }
        Format::Off => return Err(unsupported(cli, "link")),
    };
    Ok(Report::checked(body, ok, || format!("h-vector routes for K{lambda} disagree")))
}

fn classify_vertices(cli: &Cli, t: &Edgewise) -> CliResult<Report> {
    let n = t.num_vertices();
    if n.to_string().parse::<u64>().map_or(true, |n| n > cli.max_facets) {
        return Err(CliError::Capacity(format!("T_{{{},{}}} has {n} vertices, limit is {}", t.k(), t.q(), cli.max_facets)));
    }
    let mut groups: BTreeMap<Partition, (u64, BTreeSet<Vec<u32>>)> = BTreeMap::new();
    for v in t.vertex_set() {
        let entry = groups.entry(t.vertex_partition(&v)?).or_default();
        entry.0 += 1;
        entry.1.insert(t.support_corners(&v)?);
    }
    let mut rows = Vec::new();
    let mut ok = true;
    for lambda in partitions(t.k(), None)? {
        let formula = count_faces_with_link_type(t.k(), t.q(), &lambda)?;
        let (vertices, supports) = groups.get(&lambda).map_or((0, 0), |(n, s)| (*n, s.len()));
        ok &= formula.to_string() == supports.to_string();
        if vertices > 0 || formula.to_string() != "0" {
            rows.push((lambda, vertices, supports, formula));
        }
    }
    let types = count_link_types(t.k(), t.q());
    ok &= types.to_string() == groups.len().to_string();
    let body = match cli.format {
        Format::Json => to_json(
            "classify-links",
            &json!({
                "k": t.k(),
                "q": t.q(),
                "link_types": num(&types),
                "classes": rows.iter().map(|(l, v, s, f)| json!({
                    "partition": l,
                    "vertices": v,
                    "supports": s,
                    "faces_formula": num(f),
                })).collect::<Vec<_>>(),
            }),
        )?,
        Format::Csv => csv(
            &["partition", "vertices", "supports", "faces_formula"],
            rows.iter().map(|(l, v, s, f)| [l.to_string(), v.to_string(), s.to_string(), f.to_string()]),
        )?,
        Format::Text => {
            let mut s = format!(
                "T_{{{},{}}}: {} vertex link types (partitions of {} into at most {} parts)\n",
                t.k(),
                t.q(),
                types,
                t.k(),
                t.q().min(t.k())
            );
            writeln!(s, "  {:<16} {:>10} {:>10} {:>10}", "link K_λ", "vertices", "supports", "formula").unwrap();
            for (l, v, sup, f) in &rows {
                writeln!(s, "  {:<16} {v:>10} {sup:>10} {f:>10}", format!("K{l}")).unwrap();
            }
            s
        }
        Format::Off => return Err(unsupported(cli, "classify-links")),
    };
    Ok(Report::checked(body, ok, || "vertex link classes differ from the closed-form counts".into()))
}

fn link_tables(cli: &Cli, t: &Edgewise, max_dim: u32) -> CliResult<Report> {
    let faces = face_count_table(t.k(), t.q())?;
    let face_types: Vec<_> = (1..=t.k())
        .map(|s| count_link_types_of_faces(t.k(), t.q(), s).map(|n| (s, n)))
        .collect::<Result<_, _>>()?;
    let qs: Vec<_> = (0..=max_dim).map(q_sequence).collect();
    let links: Vec<_> = (0..=max_dim).map(count_distinct_links_dim).collect();
    let body = match cli.format {
        Format::Json => to_json(
            "classify-links",
            &json!({
                "k": t.k(),
                "q": t.q(),
                "face_counts": faces.iter().map(|(l, n)| json!({"partition": l, "faces": num(n)})).collect::<Vec<_>>(),
                "face_link_types": face_types.iter().map(|(s, n)| json!({"face_size": s, "types": num(n)})).collect::<Vec<_>>(),
                "q_sequence": nums(&qs),
                "distinct_links": nums(&links),
            }),
        )?,
        Format::Csv => {
            let mut rows: Vec<[String; 3]> = Vec::new();
            rows.extend(faces.iter().map(|(l, n)| ["face_counts".into(), l.compact(), n.to_string()]));
            rows.extend(face_types.iter().map(|(s, n)| ["face_link_types".into(), s.to_string(), n.to_string()]));
            rows.extend(qs.iter().enumerate().map(|(s, n)| ["q_sequence".into(), s.to_string(), n.to_string()]));
            rows.extend(links.iter().enumerate().map(|(m, n)| ["distinct_links".into(), m.to_string(), n.to_string()]));
            csv(&["table", "key", "value"], rows)?
        }
        Format::Text => {
            let mut s = format!("faces of R_{{{},{}}} by link type of interior vertices:\n", t.k(), t.q());
            let width = faces.iter().map(|(l, _)| l.compact().len()).max().unwrap_or(1).max(2);
            let mut top = format!("  {:<10}", "λ");
            let mut bottom = format!("  {:<10}", "# faces");
            for (l, n) in &faces {
                write!(top, " {:>width$}", l.compact()).unwrap();
                write!(bottom, " {:>width$}", n.to_string()).unwrap();
            }
            writeln!(s, "{top}\n{bottom}").unwrap();
            writeln!(s, "link types of faces with t vertices:").unwrap();
            for (size, n) in &face_types {
                writeln!(s, "  t = {size}: {n}").unwrap();
            }
            let row = |label: &str, xs: &[_]| {
                let cells: Vec<String> = xs.iter().map(|x: &_| format!("{x:>5}")).collect();
                format!("  {label:<12}{}\n", cells.join(""))
            };
            let idx: Vec<u32> = (0..=max_dim).collect();
            s.push_str("joins of K_σ by dimension s:\n");
            s.push_str(&row("s", &idx.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
            s.push_str(&row("Q_s", &qs.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
            s.push_str("distinct m-dimensional links:\n");
            s.push_str(&row("m", &idx.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
            s.push_str(&row("# of links", &links.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
            s
        }
        Format::Off => return Err(unsupported(cli, "classify-links")),
    };
    Ok(Report::ok(body))
}

fn star_cluster(cli: &Cli, t: &Edgewise, vertex: Option<&LatticeVertex>) -> CliResult<Report> {
    let base = match vertex {
        Some(v) => v.clone(),
        None => t.default_star_cluster_base()?,
    };
    let rep = t.star_cluster_report(&base)?;
    let ok = rep.is_consistent();
    let body = match cli.format {
        Format::Json => to_json("star-cluster", &rep)?,
        Format::Csv => {
            let mut rows = Vec::new();
            let mut facets = rep.facets.iter();
            for (j, layer) in rep.layers.iter().enumerate() {
                for pi in layer {
                    let f = facets.next().expect("one facet per permutation");
                    rows.push([(rows.len() + 1).to_string(), (j + 1).to_string(), pi.to_string(), spaced(f)]);
                }
            }
            csv(&["index", "layer", "permutation", "facet"], rows)?
        }
        Format::Text => {
            let mut s = format!(
                "star cluster of F({}, Id) = {} in T_{{{},{}}}\n",
                base,
                spaced(&rep.base_vertices),
                t.k(),
                t.q()
            );
            writeln!(s, "layer sizes {}, {} facets", tuple(&rep.layer_sizes), rep.count_enumeration).unwrap();
            writeln!(
                s,
                "counts: enumeration {}, inclusion-exclusion {}, by partitions {}, X_{} = {}",
                rep.count_enumeration,
                rep.count_ie,
                rep.count_partition,
                t.k() + 1,
                rep.x_k_plus_one
            )
            .unwrap();
            writeln!(s, "shelling {}", if rep.certificate.valid { "valid" } else { "INVALID" }).unwrap();
            writeln!(s, "h from shelling      {}", tuple(&rep.h_shelling)).unwrap();
            writeln!(s, "h = (1,..,k) H_k     {}", tuple(&rep.h_formula)).unwrap();
            writeln!(s, "h by weighted init   {}", tuple(&rep.h_init_weighted)).unwrap();
            writeln!(s, "h from f             {}", tuple(&rep.h_from_f)).unwrap();
            writeln!(s, "{}", if ok { "all routes agree" } else { "routes DISAGREE" }).unwrap();
            s
        }
        Format::Off => return Err(unsupported(cli, "star-cluster")),
    };
    Ok(Report::checked(body, ok, || "star cluster counts, shelling or h-vectors disagree".into()))
}

/// Every table as `(file name, CSV contents)`.
pub fn table_files() -> CliResult<Vec<(String, String)>> {
    let mut files = Vec::new();
    let faces = face_count_table(6, 6)?;
    files.push((
        "face_counts_k6.csv".to_string(),
        csv(&["partition", "faces"], faces.iter().map(|(l, n)| [l.compact(), n.to_string()]))?,
    ));
    files.push((
        "q_sequence.csv".to_string(),
        csv(&["s", "Q_s"], (0..=9u32).map(|s| [s.to_string(), q_sequence(s).to_string()]))?,
    ));
    files.push((
        "distinct_links.csv".to_string(),
        csv(&["m", "links"], (0..=9u32).map(|m| [m.to_string(), count_distinct_links_dim(m).to_string()]))?,
    ));
    for k in 1..=7 {
        let h = h_matrix(k)?;
        let mut header = vec!["init".to_string()];
        header.extend((0..k).map(|d| format!("des{d}")));
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        let rows = h.rows().iter().enumerate().map(|(i, r)| {
            let mut row = vec![(i + 1).to_string()];
            row.extend(r.iter().map(ToString::to_string));
            row
        });
        files.push((format!("h_matrix_k{k}.csv"), csv(&header, rows)?));
    }
    Ok(files)
}

fn tables(cli: &Cli) -> CliResult<Report> {
    let dir = cli
        .out
        .as_deref()
        .ok_or_else(|| CliError::Usage("tables needs --out DIR".into()))?;
    if !matches!(cli.format, Format::Text | Format::Csv) {
        return Err(unsupported(cli, "tables"));
    }
    std::fs::create_dir_all(dir).map_err(|e| io_at(dir, e))?;
    let mut listing = String::new();
    for (name, contents) in table_files()? {
        let path = dir.join(&name);
        std::fs::write(&path, contents).map_err(|e| io_at(&path, e))?;
        writeln!(listing, "{}", path.display()).unwrap();
    }
    print!("{listing}");
    Ok(Report { body: None, breach: None })
}

fn io_at(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn export(cli: &Cli, t: &Edgewise) -> CliResult<Report> {
    if !matches!(cli.format, Format::Off | Format::Text) {
        return Err(unsupported(cli, "export"));
    }
    Ok(Report::ok(t.to_off_with_cap(cli.max_facets)?))
}
