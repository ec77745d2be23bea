//! Sheffer sequences and their associated binomial-type sequences, expanded
//! exactly from generating-function data.
//!
//! A system is determined by an invertible series `h(t)` and a delta series
//! `fbar(t)` through
//!
//! ```text
//! h(t) exp(x fbar(t)) = sum s_n(x) t^n / n!      exp(x fbar(t)) = sum p_n(x) t^n / n!
//! ```
//!
//! Both tables are stored in the single placeholder variable [`PLACEHOLDER`]
//! and instantiated per digit position by substitution.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, VarId};
use crate::rational::Rational;
use crate::series::{standard, TruncatedSeries};

/// The abstract variable the tables are expanded in.
pub const PLACEHOLDER: VarId = VarId::x(0);

/// Generating-function data for a custom family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ShefferSpec {
    /// `(g, f)` with `g` invertible and `f` delta; `fbar` and
    /// `h = 1/g(fbar)` are derived.
    PairGF { g: TruncatedSeries, f: TruncatedSeries },
    /// `h` and `fbar` given directly.
    InverseGF { h: TruncatedSeries, fbar: TruncatedSeries },
}

impl ShefferSpec {
    fn min_order(&self) -> usize {
        match self {
            ShefferSpec::PairGF { g, f } => g.order().min(f.order()),
            ShefferSpec::InverseGF { h, fbar } => h.order().min(fbar.order()),
        }
    }

    /// Returns `(h, fbar)` truncated at `order`.
    pub fn resolve(&self, order: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
        let got = self.min_order();
        if got < order {
            return Err(Error::TruncationTooShort { needed: order, got });
        }
        match self {
            ShefferSpec::PairGF { g, f } => {
                let (g, f) = (g.with_order(order), f.with_order(order));
                g.reciprocal()?;
                let fbar = f.compositional_inverse()?;
                let h = g.compose(&fbar)?.reciprocal()?;
                Ok((h, fbar))
            }
            ShefferSpec::InverseGF { h, fbar } => {
                let (h, fbar) = (h.with_order(order), fbar.with_order(order));
                h.reciprocal()?;
                fbar.compositional_inverse()?;
                Ok((h, fbar))
            }
        }
    }
}

/// Built-in families plus the custom entry point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FamilyId {
    /// `h = 1`, `fbar = t`: `s_n = p_n = x^n`.
    Monomial,
    /// `h = t/(e^t - 1)`, `fbar = t`.
    Bernoulli,
    /// Probabilists' Hermite: `h = exp(-t^2/2)`, `fbar = t`.
    Hermite,
    /// `h = (1-t)^(-(alpha+1))`, `fbar = -t/(1-t)`.
    Laguerre(Rational),
    /// `h = 1`, `fbar = -log(1-t)`: `p_n(x) = x(x+1)...(x+n-1)`.
    RisingFactorial,
    Custom(Box<ShefferSpec>),
}

impl FamilyId {
    /// The five named families, with Laguerre at the given parameters.
    pub fn builtins(laguerre_alphas: &[Rational]) -> Vec<FamilyId> {
        let mut v = vec![FamilyId::Monomial, FamilyId::Bernoulli, FamilyId::Hermite];
        v.extend(laguerre_alphas.iter().cloned().map(FamilyId::Laguerre));
        v.push(FamilyId::RisingFactorial);
        v
    }

    fn generating_series(&self, order: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
        let t = TruncatedSeries::t(order);
        let one = TruncatedSeries::one(order);
        Ok(match self {
            FamilyId::Monomial => (one, t),
            FamilyId::Bernoulli => (standard::expm1_over_t(order).reciprocal()?, t),
            FamilyId::Hermite => (standard::gaussian(order), t),
            FamilyId::Laguerre(alpha) => {
                (standard::laguerre_weight(alpha, order), standard::neg_geometric_shift(order))
            }
            FamilyId::RisingFactorial => (one, standard::neg_log1m(order)),
            FamilyId::Custom(spec) => spec.resolve(order)?,
        })
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::Monomial => write!(f, "monomial"),
            FamilyId::Bernoulli => write!(f, "bernoulli"),
            FamilyId::Hermite => write!(f, "hermite"),
            FamilyId::Laguerre(a) => write!(f, "laguerre:{a}"),
            FamilyId::RisingFactorial => write!(f, "rising"),
            FamilyId::Custom(_) => write!(f, "custom"),
        }
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    /// Parses every family name except `custom:<file>`, which needs I/O.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monomial" => Ok(FamilyId::Monomial),
            "bernoulli" => Ok(FamilyId::Bernoulli),
            "hermite" => Ok(FamilyId::Hermite),
            "rising" => Ok(FamilyId::RisingFactorial),
            _ => match s.strip_prefix("laguerre:") {
                Some(a) => Ok(FamilyId::Laguerre(a.parse()?)),
                None => Err(Error::Parse(format!("unknown family {s:?}"))),
            },
        }
    }
}

/// Which of the two tables of a system.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SeqKind {
    /// The Sheffer sequence `s_n`.
    Sheffer,
    /// The associated binomial-type sequence `p_n`.
    Associated,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShefferSystem {
    family: String,
    degree_bound: usize,
    s: Vec<MultiPoly>,
    p: Vec<MultiPoly>,
    s_bar: Vec<MultiPoly>,
    p_bar: Vec<MultiPoly>,
}

impl ShefferSystem {
    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn s(&self) -> &[MultiPoly] {
        &self.s
    }

    pub fn p(&self) -> &[MultiPoly] {
        &self.p
    }

    /// `(s_n/n!, p_n/n!)`.
    pub fn normalized(&self, n: usize) -> Result<(MultiPoly, MultiPoly)> {
        if n > self.degree_bound {
            return Err(Error::IndexOutOfRange { index: n, bound: self.degree_bound });
        }
        Ok((self.s_bar[n].clone(), self.p_bar[n].clone()))
    }

    /// Normalized table entry in the placeholder variable.
    pub fn bar(&self, kind: SeqKind, n: usize) -> Result<&MultiPoly> {
        let table = match kind {
            SeqKind::Sheffer => &self.s_bar,
            SeqKind::Associated => &self.p_bar,
        };
        table.get(n).ok_or(Error::IndexOutOfRange { index: n, bound: self.degree_bound })
    }

    /// Normalized entry evaluated at an arbitrary polynomial argument.
    pub fn bar_at(&self, kind: SeqKind, n: usize, arg: &MultiPoly) -> Result<MultiPoly> {
        let q = self.bar(kind, n)?;
        if n == 0 || *arg == MultiPoly::var(PLACEHOLDER) {
            return Ok(q.clone());
        }
        let mut b = BTreeMap::new();
        b.insert(PLACEHOLDER, arg.clone());
        Ok(q.substitute(&b))
    }

    /// The system whose Sheffer table is this system's associated table
    /// (the same `fbar` with `h = 1`).
    pub fn associated_system(&self) -> ShefferSystem {
        ShefferSystem {
            family: format!("{}/associated", self.family),
            degree_bound: self.degree_bound,
            s: self.p.clone(),
            p: self.p.clone(),
            s_bar: self.p_bar.clone(),
            p_bar: self.p_bar.clone(),
        }
    }
}

/// Expands `s_n` and `p_n` for `n <= n_max`.
pub fn expand_system(family: &FamilyId, n_max: usize) -> Result<ShefferSystem> {
    // A delta series needs at least a linear coefficient to be checked.
    let order = n_max.max(1);
    let (h, fbar) = family.generating_series(order)?;
    let p_gf = TruncatedSeries::exp_xt(&fbar, PLACEHOLDER)?;
    let s_gf = h.mul(&p_gf)?;
    let mut sys = ShefferSystem {
        family: family.to_string(),
        degree_bound: n_max,
        s: Vec::with_capacity(n_max + 1),
        p: Vec::with_capacity(n_max + 1),
        s_bar: Vec::with_capacity(n_max + 1),
        p_bar: Vec::with_capacity(n_max + 1),
    };
    for n in 0..=n_max {
        let fact = Rational::factorial(n);
        sys.s_bar.push(s_gf.coeff(n).clone());
        sys.p_bar.push(p_gf.coeff(n).clone());
        sys.s.push(s_gf.coeff(n).scale(&fact));
        sys.p.push(p_gf.coeff(n).scale(&fact));
    }
    Ok(sys)
}

/// Outcome of checking the two binomial convolutions at one degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConvolutionReport {
    pub n: usize,
    pub sheffer_pass: bool,
    pub binomial_pass: bool,
    /// First differing monomial of the first failing identity.
    pub witness: Option<(SeqKind, Monomial)>,
}

impl ConvolutionReport {
    pub fn pass(&self) -> bool {
        self.sheffer_pass && self.binomial_pass
    }
}

/// Checks `s_n(x+y) = sum binom(n,k) p_k(x) s_(n-k)(y)` and the analogous
/// identity for `p_n`, as exact bivariate polynomials.
pub fn verify_convolution(system: &ShefferSystem, n: usize) -> Result<ConvolutionReport> {
    if n > system.degree_bound {
        return Err(Error::IndexOutOfRange { index: n, bound: system.degree_bound });
    }
    let x = MultiPoly::var(VarId::x(0));
    let y = MultiPoly::var(VarId::y(0));
    let xy = &x + &y;
    let at = |q: &MultiPoly, arg: &MultiPoly| {
        let mut b = BTreeMap::new();
        b.insert(PLACEHOLDER, arg.clone());
        q.substitute(&b)
    };
    let check = |table: &[MultiPoly]| {
        let lhs = at(&table[n], &xy);
        let rhs: MultiPoly =
            (0..=n).map(|k| (&at(&system.p[k], &x) * &at(&table[n - k], &y)).scale(&Rational::binomial(n, k))).sum();
        let diff = &lhs - &rhs;
        diff.leading_term().map(|(m, _)| m.clone())
    };
    let s_w = check(&system.s);
    let p_w = check(&system.p);
    let witness = s_w.clone().map(|m| (SeqKind::Sheffer, m)).or_else(|| p_w.clone().map(|m| (SeqKind::Associated, m)));
    Ok(ConvolutionReport { n, sheffer_pass: s_w.is_none(), binomial_pass: p_w.is_none(), witness })
}
