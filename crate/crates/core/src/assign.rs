//! How identity verifiers bind their variables: symbolically, or to seeded
//! random rationals for fast probabilistic checks at large parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{Axis, MultiPoly, VarId};
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Mode {
    #[default]
    Exact,
    /// Every variable is replaced by a random rational derived from the seed
    /// and the variable itself, so the same variable always gets the same
    /// value within one run.
    Probabilistic { seed: u64 },
}

impl Mode {
    pub fn label(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Probabilistic { .. } => "probabilistic",
        }
    }

    pub fn var(&self, v: VarId) -> MultiPoly {
        match *self {
            Mode::Exact => MultiPoly::var(v),
            Mode::Probabilistic { seed } => MultiPoly::constant(random_value(seed, v)),
        }
    }
}

fn var_code(v: VarId) -> u64 {
    let axis = match v.axis {
        Axis::X => 1,
        Axis::Y => 2,
        Axis::Z => 3,
        Axis::Aux(d) => 4 + u64::from(d),
    };
    (axis << 32) | u64::from(v.index)
}

fn random_value(seed: u64, v: VarId) -> Rational {
    let mixed = seed ^ var_code(v).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut rng = ChaCha8Rng::seed_from_u64(mixed);
    let num: i64 = rng.gen_range(-1000..=1000);
    let den: i64 = rng.gen_range(1..=97);
    Rational::new(num, den).unwrap()
}

/// Knobs shared by every verifier.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct VerifyOptions {
    pub mode: Mode,
    /// Perturbs one right-hand-side coefficient so the failure path can be
    /// exercised end to end.
    pub tamper: bool,
}

impl VerifyOptions {
    pub fn exact() -> Self {
        VerifyOptions::default()
    }

    pub fn probabilistic(seed: u64) -> Self {
        VerifyOptions { mode: Mode::Probabilistic { seed }, tamper: false }
    }

    pub fn tampered(mut self) -> Self {
        self.tamper = true;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_values_are_deterministic_per_variable() {
        let m = Mode::Probabilistic { seed: 7 };
        assert_eq!(m.var(VarId::x(0)), m.var(VarId::x(0)));
        assert_ne!(m.var(VarId::x(0)), m.var(VarId::y(0)));
        assert_ne!(m.var(VarId::x(0)), m.var(VarId::x(1)));
        assert_ne!(m.var(VarId::x(0)), Mode::Probabilistic { seed: 8 }.var(VarId::x(0)));
        assert!(m.var(VarId::z(3)).constant_value().is_some());
        assert_eq!(Mode::Exact.var(VarId::x(2)), MultiPoly::var(VarId::x(2)));
    }
}
