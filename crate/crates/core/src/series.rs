//! Truncated formal power series in `t` with [`MultiPoly`] coefficients.

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, VarId};
use crate::rational::Rational;

/// `coeffs[k]` is the coefficient of `t^k`; results are exact modulo
/// `t^(order+1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<MultiPoly>,
}

impl TruncatedSeries {
    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn new(mut coeffs: Vec<MultiPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, MultiPoly::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_rationals<I: IntoIterator<Item = Rational>>(coeffs: I, order: usize) -> Self {
        let v = coeffs.into_iter().map(MultiPoly::constant).collect();
        TruncatedSeries::new(v, order)
    }

    /// Coefficients generated by `f(k)` for `k = 0..=order`.
    pub fn from_fn<F: FnMut(usize) -> Rational>(order: usize, f: F) -> Self {
        TruncatedSeries::from_rationals((0..=order).map(f), order)
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::new(vec![MultiPoly::one()], order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        TruncatedSeries::new(vec![MultiPoly::zero(), MultiPoly::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    /// The same series re-truncated at a different order; extra
    /// coefficients are zero.
    pub fn with_order(&self, order: usize) -> Self {
        TruncatedSeries::new(self.coeffs.clone(), order)
    }

    fn check_order(&self, other: &TruncatedSeries) -> Result<()> {
        if self.order() != other.order() {
            Err(Error::OrderMismatch(self.order(), other.order()))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &TruncatedSeries) -> Self {
        let k = self.order();
        let mut coeffs = vec![MultiPoly::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=k - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0].constant_value().filter(|c| !c.is_zero()).ok_or(Error::NotInvertible)?;
        let inv0 = c0.inv()?;
        let k = self.order();
        let mut r: Vec<MultiPoly> = Vec::with_capacity(k + 1);
        r.push(MultiPoly::constant(inv0.clone()));
        for n in 1..=k {
            let mut acc = MultiPoly::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &r[n - i];
                }
            }
            r.push(acc.scale(&-&inv0));
        }
        Ok(TruncatedSeries { coeffs: r })
    }

    /// `self(f(t))`; `f` must have zero constant term.
    pub fn compose(&self, f: &TruncatedSeries) -> Result<Self> {
        self.check_order(f)?;
        if !f.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let k = self.order();
        let mut out = TruncatedSeries::zero(k);
        let mut power = TruncatedSeries::one(k);
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.mul_unchecked(f);
            }
            if !a.is_zero() {
                for (o, p) in out.coeffs.iter_mut().zip(&power.coeffs) {
                    if !p.is_zero() {
                        *o += a * p;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `exp(s(t))` for `s` with zero constant term, via `n e_n = sum k s_k e_(n-k)`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let k = self.order();
        let mut e: Vec<MultiPoly> = Vec::with_capacity(k + 1);
        e.push(MultiPoly::one());
        for n in 1..=k {
            let mut acc = MultiPoly::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    acc += (&self.coeffs[j] * &e[n - j]).scale(&Rational::from(j as i64));
                }
            }
            e.push(acc.scale(&Rational::new(1, n as i64)?));
        }
        Ok(TruncatedSeries { coeffs: e })
    }

    /// `exp(var * fbar(t))`.
    pub fn exp_xt(fbar: &TruncatedSeries, var: VarId) -> Result<Self> {
        fbar.scale(&MultiPoly::var(var)).exp()
    }

    /// Formal derivative, keeping the same truncation order (the top
    /// coefficient becomes zero).
    pub fn derivative(&self) -> Self {
        let k = self.order();
        let coeffs = (0..=k)
            .map(|n| if n < k { self.coeffs[n + 1].scale(&Rational::from(n as i64 + 1)) } else { MultiPoly::zero() })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Compositional inverse of a delta series, solved one coefficient at a
    /// time: `[t^n] f(g) = a_1 g_n + [t^n] f(g_(<n))`.
    pub fn compositional_inverse(&self) -> Result<Self> {
        let k = self.order();
        if !self.coeffs[0].is_zero() || k == 0 {
            return Err(Error::NotDeltaSeries);
        }
        let a1 = self.coeffs[1].constant_value().filter(|c| !c.is_zero()).ok_or(Error::NotDeltaSeries)?;
        let inv_a1 = a1.inv()?;
        let mut g = TruncatedSeries::zero(k);
        g.coeffs[1] = MultiPoly::constant(inv_a1.clone());
        for n in 2..=k {
            let fg = self.compose(&g)?;
            g.coeffs[n] = fg.coeffs[n].scale(&-&inv_a1);
        }
        Ok(g)
    }
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

pub fn series_reciprocal(g: &TruncatedSeries) -> Result<TruncatedSeries> {
    g.reciprocal()
}

pub fn series_compose(a: &TruncatedSeries, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.compose(f)
}

pub fn series_exp_xt(fbar: &TruncatedSeries, var: VarId) -> Result<TruncatedSeries> {
    TruncatedSeries::exp_xt(fbar, var)
}

pub fn compositional_inverse(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    f.compositional_inverse()
}

/// Closed-form generators for the series used by the built-in families.
pub mod standard {
    use super::TruncatedSeries;
    use crate::rational::Rational;

    /// `e^t`.
    pub fn exp_t(order: usize) -> TruncatedSeries {
        TruncatedSeries::from_fn(order, |k| Rational::factorial(k).inv().unwrap())
    }

    /// `e^t - 1`.
    pub fn expm1(order: usize) -> TruncatedSeries {
        TruncatedSeries::from_fn(
            order,
            |k| {
                if k == 0 {
                    Rational::zero()
                } else {
                    Rational::factorial(k).inv().unwrap()
                }
            },
        )
    }

    /// `(e^t - 1)/t = sum t^k/(k+1)!`.
    pub fn expm1_over_t(order: usize) -> TruncatedSeries {
        TruncatedSeries::from_fn(order, |k| Rational::factorial(k + 1).inv().unwrap())
    }

    /// `log(1 + t)`.
    pub fn log1p(order: usize) -> TruncatedSeries {
        TruncatedSeries::from_fn(order, |k| {
            if k == 0 {
                Rational::zero()
            } else {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                Rational::new(sign, k as i64).unwrap()
            }
        })
    }

    /// `-log(1 - t) = sum t^k/k`.
    pub fn neg_log1m(order: usize) -> TruncatedSeries {
        TruncatedSeries::from_fn(order, |k| if k == 0 { Rational::zero() } else { Rational::new(1, k as i64).unwrap() })
    }

    /// `exp(-t^2/2)`.
    pub fn gaussian(order: usize) -> TruncatedSeries {
        TruncatedSeries::from_fn(order, |k| {
            if k % 2 == 1 {
                return Rational::zero();
            }
            let j = k / 2;
            let half = Rational::new(-1, 2).unwrap();
            &half.pow(j as u32) * &Rational::factorial(j).inv().unwrap()
        })
    }

    /// `(1 - t)^(-(alpha+1)) = sum binom(alpha + k, k) t^k` for rational alpha.
    pub fn laguerre_weight(alpha: &Rational, order: usize) -> TruncatedSeries {
        let mut c = Rational::one();
        let mut coeffs = Vec::with_capacity(order + 1);
        for k in 0..=order {
            if k > 0 {
                // c_k = c_(k-1) * (alpha + k) / k
                let num = alpha + &Rational::from(k as i64);
                c = &(&c * &num) * &Rational::new(1, k as i64).unwrap();
            }
            coeffs.push(c.clone());
        }
        TruncatedSeries::from_rationals(coeffs, order)
    }

    /// `-t/(1 - t) = -(t + t^2 + ...)`.
    pub fn neg_geometric_shift(order: usize) -> TruncatedSeries {
        TruncatedSeries::from_fn(order, |k| if k == 0 { Rational::zero() } else { Rational::from(-1) })
    }

    /// `1/(1 - t)`.
    pub fn geometric(order: usize) -> TruncatedSeries {
        TruncatedSeries::from_fn(order, |_| Rational::one())
    }
}
