//! Exact two-sided verification of the digital binomial identities.
//!
//! Each verifier expands both sides into canonical [`MultiPoly`]s and
//! compares them; the report carries both sides and, on failure, the
//! leading monomial of their difference.

use std::collections::HashMap;

use serde_json::{json, Map, Value};

use crate::assign::{Mode, VerifyOptions};
use crate::digits::{checked_pow, dominated_range, to_digits, DigitVector};
use crate::error::{Error, Result};
use crate::poly::{Axis, Monomial, MultiPoly, VarId};
use crate::rational::Rational;
use crate::sheffer::{expand_system, FamilyId, SeqKind, ShefferSystem};
use crate::sierpinski::{build_kronecker, MatrixKind};

/// Which sequence a digital identity is stated for: the Sheffer sequence
/// (left factor `pbar`, right factor `sbar`) or the associated
/// binomial-type sequence (`pbar` throughout).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum IdentityForm {
    Sheffer,
    BinomialType,
}

impl IdentityForm {
    pub fn seq(self) -> SeqKind {
        match self {
            IdentityForm::Sheffer => SeqKind::Sheffer,
            IdentityForm::BinomialType => SeqKind::Associated,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            IdentityForm::Sheffer => "sheffer",
            IdentityForm::BinomialType => "binomial-type",
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct IdentityReport {
    pub identity: String,
    pub params: Map<String, Value>,
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
    pub pass: bool,
    pub witness: Option<Monomial>,
    pub mode: Mode,
    /// Companion statements reported alongside the main one.
    pub forms: Vec<IdentityReport>,
}

impl IdentityReport {
    pub(crate) fn new(
        identity: &str,
        params: Map<String, Value>,
        lhs: MultiPoly,
        rhs: MultiPoly,
        opts: &VerifyOptions,
    ) -> Self {
        let rhs = if opts.tamper { tamper(rhs) } else { rhs };
        let witness = (&lhs - &rhs).leading_term().map(|(m, _)| m.clone());
        IdentityReport {
            identity: identity.to_string(),
            params,
            pass: witness.is_none(),
            lhs,
            rhs,
            witness,
            mode: opts.mode,
            forms: Vec::new(),
        }
    }
}

/// Adds one to the leading coefficient.
fn tamper(p: MultiPoly) -> MultiPoly {
    let m = p.leading_term().map(|(m, _)| m.clone()).unwrap_or_else(Monomial::one);
    let mut out = p;
    out.add_term(m, Rational::one());
    out
}

fn check_degree(system: &ShefferSystem, base: u64) -> Result<()> {
    if base < 2 {
        return Err(Error::BadBase(base));
    }
    let needed = base as usize - 1;
    if system.degree_bound() < needed {
        return Err(Error::DegreeBoundTooSmall { needed, got: system.degree_bound() });
    }
    Ok(())
}

/// `tables[i][d] = bar_d(args[i])`.
fn tables(system: &ShefferSystem, kind: SeqKind, base: u64, args: &[MultiPoly]) -> Result<Vec<Vec<MultiPoly>>> {
    args.iter().map(|a| (0..base as usize).map(|d| system.bar_at(kind, d, a)).collect()).collect()
}

fn digit_product(table: &[Vec<MultiPoly>], digits: &DigitVector) -> MultiPoly {
    digits.digits().iter().enumerate().map(|(i, &d)| table[i][d as usize].clone()).product()
}

fn vars(mode: Mode, axis: Axis, width: usize) -> Vec<MultiPoly> {
    (0..width as u32).map(|i| mode.var(VarId::new(axis, i))).collect()
}

fn base_params(system: &ShefferSystem, base: u64) -> Map<String, Value> {
    let mut p = Map::new();
    p.insert("family".into(), json!(system.family()));
    p.insert("base".into(), json!(base));
    p
}

/// `prod_i bar_(n_i)(x_i + y_i) = sum_(m ⪯ n) prod_i pbar_(m_i)(x_i) prod_i bar_(n_i - m_i)(y_i)`
/// with `bar = sbar` or `pbar` according to `form`.
pub fn verify_digital_binomial(
    system: &ShefferSystem,
    base: u64,
    n: u64,
    width: usize,
    form: IdentityForm,
    opts: &VerifyOptions,
) -> Result<IdentityReport> {
    check_degree(system, base)?;
    let nd = to_digits(n, base, width)?;
    let xs = vars(opts.mode, Axis::X, width);
    let ys = vars(opts.mode, Axis::Y, width);
    let sums: Vec<MultiPoly> = xs.iter().zip(&ys).map(|(a, b)| a + b).collect();

    let lhs = digit_product(&tables(system, form.seq(), base, &sums)?, &nd);
    let px = tables(system, SeqKind::Associated, base, &xs)?;
    let by = tables(system, form.seq(), base, &ys)?;
    let rhs: MultiPoly = dominated_range(&nd)
        .iter()
        .map(|m| &digit_product(&px, m) * &digit_product(&by, &nd.sub_digits(m).unwrap()))
        .sum();

    let mut params = base_params(system, base);
    params.insert("n".into(), json!(n));
    params.insert("width".into(), json!(width));
    params.insert("form".into(), json!(form.label()));
    Ok(IdentityReport::new("digital-binomial", params, lhs, rhs, opts))
}

/// The collapsed case `n = b^N - 1` with one `x` and one `y`:
/// `bar_(b-1)(x + y)^N = sum_(m < b^N) prod_i pbar_(m_i)(x) prod_i bar_(b-1-m_i)(y)`.
pub fn verify_digital_power(
    system: &ShefferSystem,
    base: u64,
    levels: usize,
    form: IdentityForm,
    opts: &VerifyOptions,
) -> Result<IdentityReport> {
    let x = opts.mode.var(VarId::x(0));
    let y = opts.mode.var(VarId::y(0));
    let (lhs, rhs) = digital_power_sides(system, base, levels, form, &x, &y)?;
    let mut params = base_params(system, base);
    params.insert("levels".into(), json!(levels));
    params.insert("form".into(), json!(form.label()));
    Ok(IdentityReport::new("digital-power", params, lhs, rhs, opts))
}

fn digital_power_sides(
    system: &ShefferSystem,
    base: u64,
    levels: usize,
    form: IdentityForm,
    x: &MultiPoly,
    y: &MultiPoly,
) -> Result<(MultiPoly, MultiPoly)> {
    check_degree(system, base)?;
    let top = checked_pow(base, levels).ok_or(Error::InvalidSpec("b^N overflows".into()))?;
    let b1 = base as usize - 1;
    let lhs = system.bar_at(form.seq(), b1, &(x + y))?.pow(levels as u32);
    let px: Vec<MultiPoly> = (0..=b1).map(|d| system.bar_at(SeqKind::Associated, d, x)).collect::<Result<_>>()?;
    let by: Vec<MultiPoly> = (0..=b1).map(|d| system.bar_at(form.seq(), b1 - d, y)).collect::<Result<_>>()?;
    let mut rhs = MultiPoly::zero();
    for m in 0..top {
        let md = to_digits(m, base, levels)?;
        let term: MultiPoly = md.digits().iter().map(|&d| &px[d as usize] * &by[d as usize]).product();
        rhs += term;
    }
    Ok((lhs, rhs))
}

/// Bernoulli power formula
/// `B_(b-1)(x + y)^N = sum_m x^(s_b(m)) prod_i c(m_i) B_(b-1-m_i)(y)`.
///
/// The main report is the normalized statement (the digital power identity
/// for the Bernoulli system). Two companion forms are attached:
/// `rescaled`, the same identity multiplied by `((b-1)!)^N`, which carries
/// `c(m_i) = binom(b-1, m_i)`; and `literal`, with `c(m_i) = 1`, which only
/// holds for `b = 2` and is marked informational.
/// With `with_y = false`, `y` is set to 0 and the right side runs over
/// Bernoulli numbers.
pub fn verify_bernoulli_power(base: u64, levels: usize, with_y: bool, opts: &VerifyOptions) -> Result<IdentityReport> {
    if base < 2 {
        return Err(Error::BadBase(base));
    }
    let system = expand_system(&FamilyId::Bernoulli, base as usize - 1)?;
    let x = opts.mode.var(VarId::x(0));
    let y = if with_y { opts.mode.var(VarId::y(0)) } else { MultiPoly::zero() };
    let (lhs, rhs) = digital_power_sides(&system, base, levels, IdentityForm::Sheffer, &x, &y)?;

    let mut params = base_params(&system, base);
    params.insert("levels".into(), json!(levels));
    params.insert("with_y".into(), json!(with_y));
    let mut report = IdentityReport::new("bernoulli-power", params.clone(), lhs, rhs, opts);

    let b1 = base as usize - 1;
    let big_b: Vec<MultiPoly> = (0..=b1).map(|d| system.s()[d].clone()).collect::<Vec<_>>();
    let at_y = |q: &MultiPoly| {
        let mut bind = std::collections::BTreeMap::new();
        bind.insert(crate::sheffer::PLACEHOLDER, y.clone());
        q.substitute(&bind)
    };
    let b_y: Vec<MultiPoly> = big_b.iter().map(at_y).collect();
    let mut bxy = std::collections::BTreeMap::new();
    bxy.insert(crate::sheffer::PLACEHOLDER, &x + &y);
    let un_lhs = big_b[b1].substitute(&bxy).pow(levels as u32);
    let top = checked_pow(base, levels).ok_or(Error::InvalidSpec("b^N overflows".into()))?;

    for (label, weighted) in [("rescaled", true), ("literal", false)] {
        let mut rhs = MultiPoly::zero();
        for m in 0..top {
            let md = to_digits(m, base, levels)?;
            let mut term = x.pow(md.digit_sum() as u32);
            for &d in md.digits() {
                let d = d as usize;
                term = &term * &b_y[b1 - d];
                if weighted {
                    term = term.scale(&Rational::binomial(b1, d));
                }
            }
            rhs += term;
        }
        let mut p = params.clone();
        p.insert("normalization".into(), json!(label));
        p.insert("informational".into(), json!(!weighted));
        let form_opts = VerifyOptions { tamper: false, ..*opts };
        report.forms.push(IdentityReport::new(&format!("bernoulli-power/{label}"), p, un_lhs.clone(), rhs, &form_opts));
    }
    Ok(report)
}

/// Variable family for the `j`-th summand (1-based) of a `d`-fold identity:
/// `x, y, z` while `d <= 3`, auxiliary axes beyond that.
pub fn multinomial_axis(j: usize, d: usize) -> Axis {
    match (d, j) {
        (..=3, 1) => Axis::X,
        (..=3, 2) => Axis::Y,
        (..=3, 3) => Axis::Z,
        _ => Axis::Aux(j as u32),
    }
}

/// `d`-fold iterate:
/// `prod_i bar_(n_i)(x^(1)_i + ... + x^(d)_i)` equals the sum over chains
/// `m^(1) ⪯ ... ⪯ m^(d-1) ⪯ n` of
/// `prod pbar_(m^(1))(x^(1)) prod pbar_(m^(2) - m^(1))(x^(2)) ... prod bar_(n - m^(d-1))(x^(d))`.
pub fn verify_multinomial(
    system: &ShefferSystem,
    base: u64,
    n: u64,
    width: usize,
    d: usize,
    form: IdentityForm,
    opts: &VerifyOptions,
) -> Result<IdentityReport> {
    if d < 2 {
        return Err(Error::BadArity(d));
    }
    check_degree(system, base)?;
    let nd = to_digits(n, base, width)?;
    let families: Vec<Vec<MultiPoly>> = (1..=d).map(|j| vars(opts.mode, multinomial_axis(j, d), width)).collect();
    let sums: Vec<MultiPoly> = (0..width).map(|i| families.iter().map(|f| f[i].clone()).sum()).collect();
    let lhs = digit_product(&tables(system, form.seq(), base, &sums)?, &nd);

    let p_tables: Vec<Vec<Vec<MultiPoly>>> =
        families[..d - 1].iter().map(|f| tables(system, SeqKind::Associated, base, f)).collect::<Result<_>>()?;
    let last = tables(system, form.seq(), base, &families[d - 1])?;

    // chain(m, j): sum over m^(1) ⪯ ... ⪯ m^(j-1) ⪯ m^(j) = m of the first j factors.
    let mut memo: HashMap<(u64, usize), MultiPoly> = HashMap::new();
    fn chain(
        m: &DigitVector,
        j: usize,
        p_tables: &[Vec<Vec<MultiPoly>>],
        memo: &mut HashMap<(u64, usize), MultiPoly>,
    ) -> MultiPoly {
        if j == 1 {
            return digit_product(&p_tables[0], m);
        }
        if let Some(v) = memo.get(&(m.value(), j)) {
            return v.clone();
        }
        let mut acc = MultiPoly::zero();
        for l in dominated_range(m) {
            let outer = digit_product(&p_tables[j - 1], &m.sub_digits(&l).unwrap());
            acc += &outer * &chain(&l, j - 1, p_tables, memo);
        }
        memo.insert((m.value(), j), acc.clone());
        acc
    }
    let mut rhs = MultiPoly::zero();
    for m in dominated_range(&nd) {
        let outer = digit_product(&last, &nd.sub_digits(&m)?);
        rhs += &outer * &chain(&m, d - 1, &p_tables, &mut memo);
    }

    let mut params = base_params(system, base);
    params.insert("n".into(), json!(n));
    params.insert("width".into(), json!(width));
    params.insert("d".into(), json!(d));
    params.insert("form".into(), json!(form.label()));
    Ok(IdentityReport::new("multinomial", params, lhs, rhs, opts))
}

/// Reads entry `(n, 0)` off both sides of `P(x) S(y) = S(x + y)` (kind
/// `Sheffer`) or `P(x) P(y) = P(x + y)` and checks it against the two sides
/// of the digital binomial identity.
pub fn crosscheck_matrix_extraction(
    system: &ShefferSystem,
    base: u64,
    n: u64,
    width: usize,
    form: IdentityForm,
    opts: &VerifyOptions,
) -> Result<IdentityReport> {
    let direct = verify_digital_binomial(system, base, n, width, form, &VerifyOptions { tamper: false, ..*opts })?;
    let kind = match form {
        IdentityForm::Sheffer => MatrixKind::S,
        IdentityForm::BinomialType => MatrixKind::P,
    };
    let xs = vars(opts.mode, Axis::X, width);
    let ys = vars(opts.mode, Axis::Y, width);
    let sums: Vec<MultiPoly> = xs.iter().zip(&ys).map(|(a, b)| a + b).collect();
    let px = build_kronecker(MatrixKind::P, system, base, width, &xs)?;
    let right = build_kronecker(kind, system, base, width, &ys)?;
    let target = build_kronecker(kind, system, base, width, &sums)?;
    let row = n as usize;
    let lhs = target.get(row, 0);
    let rhs = px.product_entry(&right, row, 0)?;

    let mut params = base_params(system, base);
    params.insert("n".into(), json!(n));
    params.insert("width".into(), json!(width));
    params.insert("form".into(), json!(form.label()));
    let mut report = IdentityReport::new("matrix-extraction", params, lhs, rhs, opts);
    let consistent = report.lhs == direct.lhs && report.rhs == direct.rhs;
    if !consistent {
        report.pass = false;
        if report.witness.is_none() {
            report.witness = (&report.lhs - &direct.lhs)
                .leading_term()
                .or((&report.rhs - &direct.rhs).leading_term())
                .map(|(m, _)| m.clone());
        }
    }
    report.forms.push(direct);
    Ok(report)
}
