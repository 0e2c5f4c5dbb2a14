use std::fmt::Display;

use serde::Serialize;
use serde_json::Value;

use crate::error::CliResult;

pub const SCHEMA: &str = "v1";

/// `(a,b,c)`.
pub fn tuple<T: Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn spaced<T: Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Pretty JSON with `schema` and `command` keys merged into the top-level object.
pub fn json<T: Serialize>(command: &str, body: &T) -> CliResult<String> {
    let mut value = serde_json::to_value(body)?;
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), Value::from(SCHEMA));
        map.insert("command".into(), Value::from(command));
    }
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    Ok(text)
}

pub fn csv<R, I, S>(header: &[&str], rows: R) -> CliResult<String>
where
    R: IntoIterator<Item = I>,
    I: IntoIterator<Item = S>,
    S: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
