//! The shelling of `T_{k,q}` ordering codes by maximum, then sum, then
//! reversed lexicographic order, and the h-vector computed four ways.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{binomial, convolve, nonneg};
use crate::complex::{h_from_f, verify_shelling, ShellingCertificate};
use crate::edgewise::{Edgewise, FacetCode, LatticeVertex, DEFAULT_MAX_FACETS};
use crate::error::{Error, Result};

/// Sort key of a facet code: maximum entry, entry sum, then the code with
/// larger entries first at the first difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetKey {
    pub m: u32,
    pub s: u64,
    pub code: FacetCode,
}

impl FacetKey {
    pub fn new(code: &FacetCode) -> Self {
        FacetKey {
            m: code.0.iter().copied().max().unwrap_or(0),
            s: code.0.iter().map(|&x| x as u64).sum(),
            code: code.clone(),
        }
    }
}

impl Ord for FacetKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m
            .cmp(&other.m)
            .then(self.s.cmp(&other.s))
            .then_with(|| other.code.cmp(&self.code))
    }
}

impl PartialOrd for FacetKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares two codes of the same length in the shelling order.
pub fn compare_facets(a: &FacetCode, b: &FacetCode) -> Result<Ordering> {
    if a.0.len() != b.0.len() {
        return Err(Error::domain(format!("cannot compare codes {a} and {b} of different lengths")));
    }
    Ok(FacetKey::new(a).cmp(&FacetKey::new(b)))
}

/// Number of `i` with `a_{i-1} < a_i`, where `a_0 = 0`.
pub fn ascents(a: &FacetCode) -> usize {
    let mut prev = 0;
    let mut n = 0;
    for &x in &a.0 {
        if prev < x {
            n += 1;
        }
        prev = x;
    }
    n
}

/// The shelling order with its independently verified certificate.
#[derive(Debug, Clone, Serialize)]
pub struct ShellingReport {
    pub k: u32,
    pub q: u32,
    pub order: Vec<FacetCode>,
    pub certificate: ShellingCertificate<LatticeVertex>,
    /// Whether every restriction equals the ascent rule.
    pub restrictions_match_rule: bool,
}

impl ShellingReport {
    /// The h-vector read off the restriction sizes, length `k`.
    pub fn h_vector(&self) -> Vec<u64> {
        let mut h = self.certificate.type_histogram();
        h.truncate(self.k as usize);
        h
    }
}

impl Edgewise {
    /// All codes sorted by [`FacetKey`].
    pub fn shelling_codes(&self, max_facets: u64) -> Result<Vec<FacetCode>> {
        self.check_capacity(max_facets)?;
        let mut keys: Vec<FacetKey> = self.codes().map(|a| FacetKey::new(&a)).collect();
        keys.sort();
        Ok(keys.into_iter().map(|k| k.code).collect())
    }

    pub fn shelling_order(&self) -> Result<ShellingReport> {
        self.shelling_order_with_cap(DEFAULT_MAX_FACETS)
    }

    pub fn shelling_order_with_cap(&self, max_facets: u64) -> Result<ShellingReport> {
        let order = self.shelling_codes(max_facets)?;
        let complex = self.build_complex_with_cap(max_facets)?;
        let facets: Vec<Vec<LatticeVertex>> = order
            .iter()
            .map(|a| {
                let mut f = self.decode(a)?;
                f.sort();
                Ok(f)
            })
            .collect::<Result<_>>()?;
        let certificate = verify_shelling(&complex, &facets)?;
        let mut restrictions_match_rule = true;
        for (a, r) in order.iter().zip(&certificate.restrictions) {
            let mut rule = self.restriction_rule(a)?;
            rule.sort();
            let mut got = r.clone();
            got.sort();
            restrictions_match_rule &= rule == got;
        }
        Ok(ShellingReport {
            k: self.k(),
            q: self.q(),
            order,
            certificate,
            restrictions_match_rule,
        })
    }

    /// `{v^(k+1-i) : a_{i-1} < a_i}` with `a_0 = 0`.
    pub fn restriction_rule(&self, a: &FacetCode) -> Result<Vec<LatticeVertex>> {
        let f = self.decode(a)?;
        let k = self.k() as usize;
        let mut prev = 0;
        let mut out = Vec::new();
        for (i, &x) in a.0.iter().enumerate() {
            if prev < x {
                out.push(f[k - (i + 1)].clone());
            }
            prev = x;
        }
        Ok(out)
    }

    /// `h_i` = number of codes with exactly `i` ascents, by enumeration.
    pub fn h_by_ascents(&self, max_facets: u64) -> Result<Vec<BigUint>> {
        self.check_capacity(max_facets)?;
        let mut h = vec![0u64; self.k() as usize];
        for a in self.codes() {
            h[ascents(&a)] += 1;
        }
        Ok(h.into_iter().map(BigUint::from).collect())
    }

    /// Ascent counts through the table `a^(t)_{j,e}` of sequences
    /// `(0, a_1, .., a_{t-2}, j)` with `e` ascents.
    pub fn h_by_ascent_recursion(&self) -> Vec<BigUint> {
        let (k, q) = (self.k() as usize, self.q() as usize);
        // t = 1: the lone leading zero
        let mut a = vec![vec![BigUint::zero(); k]; q];
        a[0][0] = BigUint::one();
        for _ in 2..=k {
            let mut next = vec![vec![BigUint::zero(); k]; q];
            for (j, row) in next.iter_mut().enumerate() {
                for (e, cell) in row.iter_mut().enumerate() {
                    for (p, prev) in a.iter().enumerate() {
                        if p < j && e > 0 {
                            *cell += &prev[e - 1];
                        } else if p >= j {
                            *cell += &prev[e];
                        }
                    }
                }
            }
            a = next;
        }
        (0..k).map(|e| a.iter().map(|row| &row[e]).sum()).collect()
    }

    /// `h_i = Σ_j (-1)^j C(k, j) C((i-j) q + k - 1, k - 1)`.
    pub fn h_closed_form(&self) -> Vec<BigUint> {
        let (k, q) = (self.k() as i64, self.q() as i64);
        (0..k)
            .map(|i| {
                let total: BigInt = (0..=i)
                    .map(|j| {
                        let term = BigInt::from(binomial(k, j) * binomial((i - j) * q + k - 1, k - 1));
                        if j % 2 == 0 {
                            term
                        } else {
                            -term
                        }
                    })
                    .sum();
                nonneg(total)
            })
            .collect()
    }

    /// `h_i` = coefficient of `x^{iq}` in `(1 + x + .. + x^{q-1})^k`.
    pub fn h_by_polynomial(&self) -> Vec<BigUint> {
        let (k, q) = (self.k() as usize, self.q() as usize);
        let base = vec![BigUint::one(); q];
        let mut p = vec![BigUint::one()];
        for _ in 0..k {
            p = convolve(&p, &base);
        }
        (0..k).map(|i| p.get(i * q).cloned().unwrap_or_default()).collect()
    }

    /// h-vector of the built complex from its f-vector, `k + 1` entries.
    pub fn h_from_complex(&self, max_facets: u64) -> Result<Vec<i64>> {
        let f = self.build_complex_with_cap(max_facets)?.f_vector();
        h_from_f(&f, self.k() as isize - 1)
    }

    /// The value `C(k+q-1, k-1) - 1` sometimes quoted for `h_1`. It counts
    /// the nonzero vertices, not the facets with one ascent.
    pub fn h1_binomial(&self) -> BigUint {
        binomial((self.k() + self.q() - 1) as i64, (self.k() - 1) as i64) - 1u32
    }

    /// Every route side by side; exhaustive routes are skipped above
    /// `max_facets`.
    pub fn h_vector_report(&self, max_facets: u64) -> Result<HVectorReport> {
        let closed_form = self.h_closed_form();
        let polynomial = self.h_by_polynomial();
        let recursion = self.h_by_ascent_recursion();
        let exhaustive = self.num_facets() <= max_facets as u128;
        let ascents = if exhaustive { Some(self.h_by_ascents(max_facets)?) } else { None };
        let from_f = if exhaustive {
            let h = self.h_from_complex(max_facets)?;
            Some(h)
        } else {
            None
        };
        let shelling = if exhaustive {
            Some(self.shelling_order_with_cap(max_facets)?.h_vector())
        } else {
            None
        };
        let as_big = |v: &[i64]| -> Option<Vec<BigUint>> {
            v.iter().map(|&x| u64::try_from(x).ok().map(BigUint::from)).collect()
        };
        let mut routes = vec![recursion.clone(), polynomial.clone()];
        routes.extend(ascents.clone());
        let mut from_f_ok = true;
        if let Some(h) = &from_f {
            let (body, top) = h.split_at(self.k() as usize);
            from_f_ok = top.iter().all(|&x| x == 0);
            match as_big(body) {
                Some(b) => routes.push(b),
                None => from_f_ok = false,
            }
        }
        if let Some(h) = &shelling {
            routes.push(h.iter().map(|&x| BigUint::from(x)).collect());
        }
        let agree = from_f_ok && routes.iter().all(|r| *r == closed_form);
        let h1_binomial = self.h1_binomial();
        let h1 = closed_form.get(1).cloned().unwrap_or_default();
        Ok(HVectorReport {
            k: self.k(),
            q: self.q(),
            h1_discrepancy: h1 != h1_binomial,
            h1_binomial,
            closed_form,
            polynomial,
            recursion,
            ascents,
            from_f,
            shelling,
            agree,
        })
    }
}

/// The h-vector of `T_{k,q}` by every route.
#[derive(Debug, Clone, Serialize)]
pub struct HVectorReport {
    pub k: u32,
    pub q: u32,
    #[serde(serialize_with = "crate::bigserde::decimal_vec")]
    pub closed_form: Vec<BigUint>,
    #[serde(serialize_with = "crate::bigserde::decimal_vec")]
    pub polynomial: Vec<BigUint>,
    #[serde(serialize_with = "crate::bigserde::decimal_vec")]
    pub recursion: Vec<BigUint>,
    #[serde(serialize_with = "crate::bigserde::decimal_opt_vec")]
    pub ascents: Option<Vec<BigUint>>,
    /// Includes the top entry `h_k`, which is 0.
    pub from_f: Option<Vec<i64>>,
    pub shelling: Option<Vec<u64>>,
    pub agree: bool,
    #[serde(serialize_with = "crate::bigserde::decimal")]
    pub h1_binomial: BigUint,
    /// `h_1` differs from [`HVectorReport::h1_binomial`].
    pub h1_discrepancy: bool,
}

impl HVectorReport {
    /// Number of routes that were computed.
    pub fn routes(&self) -> usize {
        3 + [self.ascents.is_some(), self.from_f.is_some(), self.shelling.is_some()]
            .iter()
            .filter(|&&b| b)
            .count()
    }
}
