//! OFF export of `T_{k,q}` with `W_{k,q}` coordinates.
//!
//! Up to three coordinates the file uses the plain `OFF` header, padding
//! with zeros; beyond that it uses `nOFF` followed by the dimension.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{decode_unchecked, Edgewise, LatticeVertex};
use crate::error::{Error, Result};

/// A parsed OFF file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffMesh {
    pub dimension: usize,
    pub coords: Vec<Vec<i64>>,
    pub faces: Vec<Vec<usize>>,
}

impl Edgewise {
    /// Vertices in [`Edgewise::vertex_set`] order, facets in code order with
    /// their vertices along the chain.
    pub fn to_off(&self) -> Result<String> {
        self.to_off_with_cap(super::DEFAULT_MAX_FACETS)
    }

    pub fn to_off_with_cap(&self, max_facets: u64) -> Result<String> {
        self.check_capacity(max_facets)?;
        let vertices = self.vertex_set();
        let index: HashMap<&LatticeVertex, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let dim = self.k as usize - 1;
        let mut out = String::new();
        if dim <= 3 {
            out.push_str("OFF\n");
        } else {
            let _ = writeln!(out, "nOFF\n{dim}");
        }
        let _ = writeln!(out, "{} {} 0", vertices.len(), self.num_facets());
        for v in &vertices {
            let mut c: Vec<String> = v.0.iter().map(ToString::to_string).collect();
            while dim <= 3 && c.len() < 3 {
                c.push("0".into());
            }
            let _ = writeln!(out, "{}", c.join(" "));
        }
        for a in self.codes() {
            let f = decode_unchecked(&a.0);
            let ids: Vec<String> = f.iter().map(|v| index[v].to_string()).collect();
            let _ = writeln!(out, "{} {}", f.len(), ids.join(" "));
        }
        Ok(out)
    }
}

/// Reads an `OFF` or `nOFF` file; `#` starts a comment.
pub fn parse_off(text: &str) -> Result<OffMesh> {
    let bad = |what: &str| Error::domain(format!("malformed OFF: {what}"));
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    let header = tokens.next().ok_or_else(|| bad("missing header"))?;
    let mut next = |what: &str| -> Result<i64> {
        tokens
            .next()
            .ok_or_else(|| bad(what))?
            .parse::<i64>()
            .map_err(|_| bad(what))
    };
    let dimension = match header {
        "OFF" => 3,
        "nOFF" => usize::try_from(next("dimension")?).map_err(|_| bad("dimension"))?,
        _ => return Err(bad("header")),
    };
    let nv = usize::try_from(next("vertex count")?).map_err(|_| bad("vertex count"))?;
    let nf = usize::try_from(next("face count")?).map_err(|_| bad("face count"))?;
    next("edge count")?;
    let mut coords = Vec::with_capacity(nv);
    for _ in 0..nv {
        coords.push((0..dimension).map(|_| next("coordinate")).collect::<Result<Vec<_>>>()?);
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let len = usize::try_from(next("face size")?).map_err(|_| bad("face size"))?;
        let face = (0..len)
            .map(|_| {
                let i = usize::try_from(next("face index")?).map_err(|_| bad("face index"))?;
                if i >= nv {
                    return Err(bad("face index out of range"));
                }
                Ok(i)
            })
            .collect::<Result<Vec<_>>>()?;
        faces.push(face);
    }
    Ok(OffMesh {
        dimension,
        coords,
        faces,
    })
}
