//! Linear functionals on polynomials, given by their moment tables, and the
//! umbral product `<LM | x^n> = sum binom(n,k) <L | x^k> <M | x^(n-k)>`.

use rand::{Rng, SeedableRng};
use serde_json::{json, Map};

use crate::assign::VerifyOptions;
use crate::digits::{dominated_range, to_digits, DigitVector};
use crate::error::{Error, Result};
use crate::identity::IdentityReport;
use crate::poly::MultiPoly;
use crate::rational::Rational;
use crate::sheffer::{SeqKind, ShefferSystem};

/// `moments[n] = <L | x^n>` for `n <= bound`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearFunctional {
    moments: Vec<Rational>,
}

impl LinearFunctional {
    pub fn from_moments(moments: Vec<Rational>) -> Result<Self> {
        if moments.is_empty() {
            return Err(Error::InvalidSpec("a functional needs at least one moment".into()));
        }
        Ok(LinearFunctional { moments })
    }

    /// Evaluation at `a`: moments `a^n`.
    pub fn eval_at(a: &Rational, bound: usize) -> Self {
        LinearFunctional { moments: (0..=bound as u32).map(|n| a.pow(n)).collect() }
    }

    /// Random rational moments with numerators in `[-20, 20]` and
    /// denominators in `[1, 12]`.
    pub fn random<R: Rng>(rng: &mut R, bound: usize) -> Self {
        let moments =
            (0..=bound).map(|_| Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=12)).unwrap()).collect();
        LinearFunctional { moments }
    }

    pub fn bound(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn moments(&self) -> &[Rational] {
        &self.moments
    }

    pub fn product(&self, other: &LinearFunctional) -> Result<LinearFunctional> {
        if self.bound() != other.bound() {
            return Err(Error::BoundMismatch(self.bound(), other.bound()));
        }
        let moments = (0..=self.bound())
            .map(|n| (0..=n).map(|k| &(&Rational::binomial(n, k) * &self.moments[k]) * &other.moments[n - k]).sum())
            .collect();
        Ok(LinearFunctional { moments })
    }

    /// Extends linearly from the moments; `q` must be univariate (or
    /// constant) of degree at most the bound.
    pub fn apply(&self, q: &MultiPoly) -> Result<Rational> {
        let vars = q.variables();
        if vars.len() > 1 {
            return Err(Error::NotUnivariate);
        }
        let degree = q.degree() as usize;
        if degree > self.bound() {
            return Err(Error::DegreeTooHigh { degree, bound: self.bound() });
        }
        Ok(q.terms().map(|(m, c)| c * &self.moments[m.degree() as usize]).sum())
    }
}

pub fn functional_product(l: &LinearFunctional, m: &LinearFunctional) -> Result<LinearFunctional> {
    l.product(m)
}

pub fn apply_functional(l: &LinearFunctional, q: &MultiPoly) -> Result<Rational> {
    l.apply(q)
}

/// `count` random functionals from a ChaCha stream keyed by `seed`.
pub fn seeded_functionals(seed: u64, count: usize, bound: usize) -> Vec<LinearFunctional> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| LinearFunctional::random(&mut rng, bound)).collect()
}

/// Product of several functionals, left to right.
pub fn product_all(fs: &[LinearFunctional]) -> Result<LinearFunctional> {
    let (first, rest) = fs.split_first().ok_or(Error::BadArity(0))?;
    rest.iter().try_fold(first.clone(), |acc, f| acc.product(f))
}

/// How the umbral identity is stated.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UmbralForm {
    /// `<L_1...L_d | p_n> = sum n!/(k_1!...k_d!) prod <L_j | p_(k_j)>` over
    /// compositions of `n`.
    Classical { n: usize },
    /// `prod_i <L_1...L_d | pbar_(n_i)>` against the sum over dominated
    /// chains `m^(1) ⪯ ... ⪯ m^(d-1) ⪯ n` of
    /// `prod_i <L_1 | pbar_(m^(1)_i)> ... prod_i <L_d | pbar_(n_i - m^(d-1)_i)>`.
    Digital { base: u64, n: u64, width: usize },
}

/// Checks the umbral product identity for the associated sequence of
/// `system` and the functionals `fs` (`d = fs.len() >= 2`).
pub fn verify_roman_rota(
    system: &ShefferSystem,
    fs: &[LinearFunctional],
    form: UmbralForm,
    opts: &VerifyOptions,
) -> Result<IdentityReport> {
    if fs.len() < 2 {
        return Err(Error::BadArity(fs.len()));
    }
    let prod = product_all(fs)?;
    let pbar = |k: usize| system.bar(SeqKind::Associated, k);

    let mut params = Map::new();
    params.insert("family".into(), json!(system.family()));
    params.insert("d".into(), json!(fs.len()));
    let (lhs, rhs) = match form {
        UmbralForm::Classical { n } => {
            params.insert("n".into(), json!(n));
            params.insert("digital".into(), json!(false));
            let lhs = prod.apply(
                &system.p().get(n).cloned().ok_or(Error::IndexOutOfRange { index: n, bound: system.degree_bound() })?,
            )?;
            // Work in the normalized sequence, where the multinomial
            // coefficients become a plain convolution, then rescale by n!.
            let tables: Vec<Vec<Rational>> = fs
                .iter()
                .map(|f| (0..=n).map(|k| f.apply(pbar(k)?)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            let mut conv = tables[0].clone();
            for t in &tables[1..] {
                conv = (0..=n).map(|j| (0..=j).map(|k| &conv[k] * &t[j - k]).sum()).collect();
            }
            (lhs, &conv[n] * &Rational::factorial(n))
        }
        UmbralForm::Digital { base, n, width } => {
            params.insert("n".into(), json!(n));
            params.insert("base".into(), json!(base));
            params.insert("width".into(), json!(width));
            params.insert("digital".into(), json!(true));
            if base < 2 {
                return Err(Error::BadBase(base));
            }
            let b = base as usize;
            let nd = to_digits(n, base, width)?;
            let lhs_vals: Vec<Rational> = (0..b).map(|k| prod.apply(pbar(k)?)).collect::<Result<_>>()?;
            let lhs: Rational = nd.digits().iter().map(|&d| lhs_vals[d as usize].clone()).product();
            // vals[j][k] = <L_j | pbar_k>
            let vals: Vec<Vec<Rational>> = fs
                .iter()
                .map(|f| (0..b).map(|k| f.apply(pbar(k)?)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            let digit_prod = |row: &[Rational], dv: &DigitVector| -> Rational {
                dv.digits().iter().map(|&d| row[d as usize].clone()).product()
            };
            fn chain(
                m: &DigitVector,
                j: usize,
                vals: &[Vec<Rational>],
                digit_prod: &dyn Fn(&[Rational], &DigitVector) -> Rational,
            ) -> Rational {
                if j == 0 {
                    return digit_prod(&vals[0], m);
                }
                dominated_range(m)
                    .iter()
                    .map(|l| &digit_prod(&vals[j], &m.sub_digits(l).unwrap()) * &chain(l, j - 1, vals, digit_prod))
                    .sum()
            }
            (lhs, chain(&nd, fs.len() - 1, &vals, &digit_prod))
        }
    };
    Ok(IdentityReport::new("umbral", params, MultiPoly::constant(lhs), MultiPoly::constant(rhs), opts))
}
