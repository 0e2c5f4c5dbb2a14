//! Serializers writing big integers as plain numbers, or as decimal strings
//! once they no longer fit in a `u64`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::ser::{SerializeSeq, Serializer};

pub fn decimal<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(n) => s.serialize_u64(n),
        None => s.serialize_str(&x.to_string()),
    }
}

struct Decimal<'a>(&'a BigUint);

impl serde::Serialize for Decimal<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        decimal(self.0, s)
    }
}

pub fn decimal_vec<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Decimal(x))?;
    }
    seq.end()
}

pub fn decimal_opt_vec<S: Serializer>(xs: &Option<Vec<BigUint>>, s: S) -> Result<S::Ok, S::Error> {
    match xs {
        Some(v) => decimal_vec(v, s),
        None => s.serialize_none(),
    }
}
