use anyhow::Result;
use logw_core::QZSeries;
use serde::Serialize;

use crate::Usage;

pub fn json<T: Serialize + ?Sized>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

pub fn csv<S: AsRef<str>>(header: &[&str], rows: &[Vec<S>]) -> Result<String> {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.iter().map(|c| c.as_ref()))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn no_csv(what: &str) -> anyhow::Error {
    Usage(format!("csv output is not available for `{what}`; use json or text")).into()
}

#[derive(Serialize)]
pub struct Term {
    pub q: String,
    pub z: logw_core::Weight,
    pub c: String,
}

pub fn terms(s: &QZSeries) -> Vec<Term> {
    s.sorted_terms()
        .into_iter()
        .map(|(q, z, c)| Term { q: q.to_string(), z, c: c.to_string() })
        .collect()
}

pub fn term_rows(s: &QZSeries) -> Vec<Vec<String>> {
    s.sorted_terms()
        .into_iter()
        .map(|(q, z, c)| vec![q.to_string(), z.to_string(), c.to_string()])
        .collect()
}
