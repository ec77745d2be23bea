//! Plain-text renderings for `--pretty`.

use std::fmt::Write;

use digisheff::identity::IdentityReport;
use digisheff::sierpinski::MultiplicativeReport;
use digisheff::{ShefferSystem, SierpinskiMatrix};

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn system(s: &ShefferSystem) -> String {
    let mut out = format!("family {} up to degree {}\n", s.family(), s.degree_bound());
    for (n, (sn, pn)) in s.s().iter().zip(s.p()).enumerate() {
        writeln!(out, "s_{n} = {sn}\np_{n} = {pn}").unwrap();
    }
    out
}

/// A dense grid; blank cells are structural zeros.
pub fn matrix(m: &SierpinskiMatrix) -> String {
    let dim = m.dim();
    let cells: Vec<Vec<String>> = (0..dim)
        .map(|j| (0..dim).map(|k| m.matrix().entries().get(&(j, k)).map_or(String::new(), |v| v.to_string())).collect())
        .collect();
    let widths: Vec<usize> = (0..dim).map(|k| cells.iter().map(|r| r[k].len()).max().unwrap_or(0).max(1)).collect();
    let mut out = format!("{} matrix, base {}, {} levels ({dim} x {dim})\n", m.kind().label(), m.base(), m.levels());
    for row in &cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(out, "[ {} ]", line.join(" | ")).unwrap();
    }
    out
}

fn report_into(out: &mut String, r: &IdentityReport, indent: &str) {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(out, "{indent}{} [{}]: {}", r.identity, r.mode.label(), verdict(r.pass)).unwrap();
    writeln!(out, "{indent}  params: {}", params.join(", ")).unwrap();
    writeln!(out, "{indent}  lhs = {}", r.lhs).unwrap();
    writeln!(out, "{indent}  rhs = {}", r.rhs).unwrap();
    if let Some(w) = &r.witness {
        writeln!(out, "{indent}  first differing monomial: {w}").unwrap();
    }
    let nested = format!("{indent}  ");
    for f in &r.forms {
        report_into(out, f, &nested);
    }
}

pub fn report(r: &IdentityReport) -> String {
    let mut out = String::new();
    report_into(&mut out, r, "");
    out
}

pub fn multiplicative(r: &MultiplicativeReport) -> String {
    let mut out = format!(
        "multiplicative [{}]: {} (family {}, base {}, {} levels)\n",
        r.mode.label(),
        verdict(r.pass()),
        r.family,
        r.base,
        r.levels
    );
    for c in &r.checks {
        writeln!(out, "  {}: {}", c.identity, verdict(c.pass())).unwrap();
        if let Some(f) = &c.failure {
            writeln!(out, "    entry ({}, {}): {} vs {}", f.row, f.col, f.lhs, f.rhs).unwrap();
        }
    }
    out
}
