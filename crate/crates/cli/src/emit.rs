//! Canonical text for definition files.
//!
//! The writer is deterministic: entries appear in column order, scalars in
//! lowest terms (residues in `0..p`), and one entry per line. Parsing the
//! output and writing it again reproduces the same bytes.

use std::fmt::Write;

use invtwist::{Algebra, Field, HopfAlgebra, LinMap};

use crate::defs::FORMAT_VERSION;

fn header(out: &mut String, kind: &str, field: Field) {
    writeln!(out, "format = {FORMAT_VERSION}").unwrap();
    writeln!(out, "kind = \"{kind}\"").unwrap();
    writeln!(out, "field = \"{field}\"").unwrap();
}

fn list(out: &mut String, key: &str, rows: impl IntoIterator<Item = String>) {
    let rows: Vec<String> = rows.into_iter().collect();
    if rows.is_empty() {
        writeln!(out, "{key} = []").unwrap();
        return;
    }
    writeln!(out, "{key} = [").unwrap();
    for r in rows {
        writeln!(out, "    [{r}],").unwrap();
    }
    writeln!(out, "]").unwrap();
}

fn labels(out: &mut String, labels: Option<&[String]>) {
    if let Some(ls) = labels {
        let quoted: Vec<String> = ls.iter().map(|l| toml::Value::String(l.clone()).to_string()).collect();
        writeln!(out, "labels = [{}]", quoted.join(", ")).unwrap();
    }
}

fn factors(fs: &[usize]) -> String {
    let parts: Vec<String> = fs.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn algebra_body(out: &mut String, a: &Algebra) {
    let n = a.dim();
    list(out, "mult", a.mult().triples().map(|(k, c, s)| format!("{}, {}, {k}, \"{s}\"", c / n, c % n)));
    list(out, "unit", a.unit().triples().map(|(k, _, s)| format!("{k}, \"{s}\"")));
}

pub fn algebra(a: &Algebra, names: Option<&[String]>) -> String {
    let mut out = String::new();
    header(&mut out, "algebra", a.field());
    writeln!(out, "dim = {}", a.dim()).unwrap();
    labels(&mut out, names);
    algebra_body(&mut out, a);
    out
}

pub fn hopf(h: &HopfAlgebra, names: Option<&[String]>) -> String {
    let n = h.dim();
    let mut out = String::new();
    header(&mut out, "hopf", h.field());
    writeln!(out, "dim = {n}").unwrap();
    labels(&mut out, names);
    algebra_body(&mut out, h.algebra());
    list(&mut out, "comult", h.comult().triples().map(|(r, i, s)| format!("{i}, {}, {}, \"{s}\"", r / n, r % n)));
    list(&mut out, "counit", h.counit().triples().map(|(_, i, s)| format!("{i}, \"{s}\"")));
    list(&mut out, "antipode", h.antipode().triples().map(|(j, i, s)| format!("{i}, {j}, \"{s}\"")));
    out
}

pub fn linmap(m: &LinMap) -> String {
    let mut out = String::new();
    header(&mut out, "linmap", m.field());
    writeln!(out, "dom = {}", factors(m.dom_factors())).unwrap();
    writeln!(out, "cod = {}", factors(m.cod_factors())).unwrap();
    list(&mut out, "entries", m.triples().map(|(r, c, s)| format!("{r}, {c}, \"{s}\"")));
    out
}
