//! Browser bindings for the static demo page in `www/`.
//!
//! Every export returns a JSON string, or an error message string that the
//! page shows as is. The functions are plain Rust on native targets, so
//! they are tested without a browser.

use std::collections::BTreeMap;

use digisheff::identity::{self, IdentityForm};
use digisheff::sierpinski::{self, MatrixKind};
use digisheff::{expand_system, json, Axis, FamilyId, Rational, ShefferSystem, VarId, VerifyOptions};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest matrix the page will render.
pub const MAX_ROWS: usize = 243;

const MAX_DEGREE: u32 = 24;

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn family(name: &str) -> Result<FamilyId, String> {
    name.trim().parse().map_err(err)
}

fn system(name: &str, degree: usize) -> Result<ShefferSystem, String> {
    expand_system(&family(name)?, degree).map_err(err)
}

fn digit_system(name: &str, base: u32) -> Result<ShefferSystem, String> {
    if base < 2 {
        return Err(format!("base must be at least 2, got {base}"));
    }
    system(name, base as usize - 1)
}

/// `{"family", "s": [text], "p": [text]}` for degrees `0..=degree`.
#[wasm_bindgen]
pub fn expand_table(family: &str, degree: u32) -> Result<String, String> {
    if degree > MAX_DEGREE {
        return Err(format!("degree is limited to {MAX_DEGREE} here"));
    }
    let sys = system(family, degree as usize)?;
    let text = |ps: &[digisheff::MultiPoly]| ps.iter().map(|p| p.display_with(|_| "x".into())).collect::<Vec<_>>();
    Ok(json!({"family": sys.family(), "s": text(sys.s()), "p": text(sys.p())}).to_string())
}

/// The stored entries of the `S` or `P` matrix. Each cell carries its
/// symbolic text; with `point` set, every digit variable is evaluated there
/// and the cell also gets `"value"` (exact) and `"approx"` (float).
#[wasm_bindgen]
pub fn sierpinski_matrix(
    kind: &str,
    family: &str,
    base: u32,
    levels: u32,
    point: Option<String>,
) -> Result<String, String> {
    let kind = match kind.trim() {
        "S" | "s" => MatrixKind::S,
        "P" | "p" => MatrixKind::P,
        other => return Err(format!("matrix kind must be S or P, got {other:?}")),
    };
    let sys = digit_system(family, base)?;
    let levels = levels as usize;
    let dim = sierpinski::dimension(u64::from(base), levels).map_err(err)?;
    if dim > MAX_ROWS {
        return Err(format!("{dim} rows is more than this page draws ({MAX_ROWS})"));
    }
    let vars = sierpinski::symbolic_vars(Axis::X, levels);
    let m = sierpinski::build_kronecker(kind, &sys, u64::from(base), levels, &vars).map_err(err)?;
    let at: Option<BTreeMap<VarId, Rational>> = match point.as_deref().map(str::trim) {
        None | Some("") => None,
        Some(s) => {
            let r: Rational = s.parse().map_err(err)?;
            Some((0..levels as u32).map(|i| (VarId::x(i), r.clone())).collect())
        }
    };
    let cells = m
        .matrix()
        .entries()
        .iter()
        .map(|(&(row, col), v)| {
            let mut cell = json!({"row": row, "col": col, "text": v.to_string()});
            if let Some(at) = &at {
                let value = v.evaluate(at).map_err(err)?;
                cell["approx"] = json!(value.to_f64());
                cell["value"] = json!(value.to_string());
            }
            Ok(cell)
        })
        .collect::<Result<Vec<Value>, String>>()?;
    Ok(json!({"dim": dim, "kind": kind.label(), "base": base, "levels": levels, "cells": cells}).to_string())
}

/// Runs one identity check and returns its canonical report.
/// `identity` is `digital`, `power`, `bernoulli-power` or `crosscheck`;
/// `n` is the index for `digital`/`crosscheck` and the level count otherwise.
#[wasm_bindgen]
pub fn verify_identity(
    identity: &str,
    family: &str,
    base: u32,
    n: u32,
    binomial: bool,
    tamper: bool,
) -> Result<String, String> {
    let form = if binomial { IdentityForm::BinomialType } else { IdentityForm::Sheffer };
    let mut opts = VerifyOptions::exact();
    opts.tamper = tamper;
    let b = u64::from(base);
    let width = || digisheff::digits::min_width(u64::from(n), b).map_err(err);
    let report = match identity {
        "digital" => {
            identity::verify_digital_binomial(&digit_system(family, base)?, b, n.into(), width()?, form, &opts)
        }
        "power" => identity::verify_digital_power(&digit_system(family, base)?, b, n as usize, form, &opts),
        "bernoulli-power" => identity::verify_bernoulli_power(b, n as usize, true, &opts),
        "crosscheck" => {
            let w = width()?;
            if sierpinski::dimension(b, w).map_err(err)? > MAX_ROWS {
                return Err(format!("n = {n} needs a matrix larger than {MAX_ROWS} rows"));
            }
            identity::crosscheck_matrix_extraction(&digit_system(family, base)?, b, n.into(), w, form, &opts)
        }
        other => return Err(format!("unknown identity {other:?}")),
    }
    .map_err(err)?;
    let mut out = json::report_to_json(&report);
    out["lhs_text"] = json!(report.lhs.to_string());
    out["rhs_text"] = json!(report.rhs.to_string());
    Ok(out.to_string())
}
