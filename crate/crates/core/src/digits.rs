//! Base-`b` digit expansions, digital dominance, carry-free pairs and the
//! sum-of-digits function.

use crate::error::{Error, Result};

/// Fixed-width base-`b` expansion, least significant digit first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DigitVector {
    base: u64,
    digits: Vec<u64>,
}

fn check_base(b: u64) -> Result<()> {
    if b < 2 {
        Err(Error::BadBase(b))
    } else {
        Ok(())
    }
}

/// `b^n`, or `None` on overflow.
pub fn checked_pow(b: u64, n: usize) -> Option<u64> {
    u32::try_from(n).ok().and_then(|n| b.checked_pow(n))
}

/// Smallest width that holds `n` in base `b` (0 for `n = 0`).
pub fn min_width(n: u64, b: u64) -> Result<usize> {
    check_base(b)?;
    let mut w = 0;
    let mut r = n;
    while r > 0 {
        r /= b;
        w += 1;
    }
    Ok(w)
}

impl DigitVector {
    pub fn from_digits(base: u64, digits: Vec<u64>) -> Result<Self> {
        check_base(base)?;
        if let Some(&d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::InvalidSpec(format!("digit {d} out of range for base {base}")));
        }
        Ok(DigitVector { base, digits })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn width(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn digit(&self, i: usize) -> u64 {
        self.digits[i]
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.base + d)
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }

    /// Digitwise difference `self - other`; requires `other ⪯ self`.
    pub fn sub_digits(&self, other: &DigitVector) -> Result<DigitVector> {
        if !dominates(other, self)? {
            return Err(Error::InvalidSpec("digit subtraction would borrow".into()));
        }
        let digits = self.digits.iter().zip(&other.digits).map(|(a, b)| a - b).collect();
        Ok(DigitVector { base: self.base, digits })
    }
}

pub fn to_digits(n: u64, b: u64, width: usize) -> Result<DigitVector> {
    check_base(b)?;
    let mut digits = Vec::with_capacity(width);
    let mut r = n;
    for _ in 0..width {
        digits.push(r % b);
        r /= b;
    }
    if r != 0 {
        return Err(Error::WidthTooSmall { value: n, base: b, width });
    }
    Ok(DigitVector { base: b, digits })
}

/// `m ⪯_b n`: every digit of `m` is at most the matching digit of `n`.
pub fn dominates(m: &DigitVector, n: &DigitVector) -> Result<bool> {
    if m.base != n.base || m.width() != n.width() {
        return Err(Error::ShapeMismatch);
    }
    Ok(m.digits.iter().zip(&n.digits).all(|(a, b)| a <= b))
}

/// All `m ⪯_b n` in increasing order, enumerated by an odometer over the
/// digit bounds of `n`.
pub fn dominated_range(n: &DigitVector) -> Vec<DigitVector> {
    let count: usize = n.digits.iter().map(|&d| d as usize + 1).product();
    let mut out = Vec::with_capacity(count);
    let mut cur = vec![0u64; n.width()];
    loop {
        out.push(DigitVector { base: n.base, digits: cur.clone() });
        // Least significant digit turns fastest, so values increase.
        let mut i = 0;
        loop {
            if i == cur.len() {
                return out;
            }
            if cur[i] < n.digits[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// True iff adding `m` and `k` in base `b` produces no carry.
pub fn is_carry_free(m: u64, k: u64, b: u64) -> Result<bool> {
    check_base(b)?;
    let (mut m, mut k) = (m, k);
    while m > 0 || k > 0 {
        if m % b + k % b >= b {
            return Ok(false);
        }
        m /= b;
        k /= b;
    }
    Ok(true)
}

pub fn sum_of_digits(n: u64, b: u64) -> Result<u64> {
    check_base(b)?;
    let mut s = 0;
    let mut r = n;
    while r > 0 {
        s += r % b;
        r /= b;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dv(n: u64, b: u64, w: usize) -> DigitVector {
        to_digits(n, b, w).unwrap()
    }

    #[test]
    fn to_digits_examples() {
        assert_eq!(dv(5, 2, 3).digits(), &[1, 0, 1]);
        assert_eq!(dv(0, 3, 4).digits(), &[0, 0, 0, 0]);
        assert_eq!(dv(26, 3, 3).digits(), &[2, 2, 2]);
        assert_eq!(dv(26, 3, 3).value(), 26);
        assert_eq!(to_digits(8, 2, 3), Err(Error::WidthTooSmall { value: 8, base: 2, width: 3 }));
        assert_eq!(to_digits(1, 1, 3), Err(Error::BadBase(1)));
        assert_eq!(to_digits(0, 5, 0).unwrap().width(), 0);
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&dv(4, 2, 3), &dv(5, 2, 3)).unwrap());
        assert!(!dominates(&dv(2, 2, 3), &dv(5, 2, 3)).unwrap());
        assert!(dominates(&dv(5, 2, 3), &dv(5, 2, 3)).unwrap());
        assert_eq!(dominates(&dv(1, 2, 3), &dv(1, 2, 4)), Err(Error::ShapeMismatch));
        assert_eq!(dominates(&dv(1, 2, 3), &dv(1, 3, 3)), Err(Error::ShapeMismatch));
    }

    #[test]
    fn dominated_range_examples() {
        let vals: Vec<u64> = dominated_range(&dv(5, 2, 3)).iter().map(DigitVector::value).collect();
        let brute: Vec<u64> = (0..=5).filter(|&m| dominates(&dv(m, 2, 3), &dv(5, 2, 3)).unwrap()).collect();
        assert_eq!(vals, brute);
        assert_eq!(vals, vec![0, 1, 4, 5]);
        let zero: Vec<u64> = dominated_range(&dv(0, 3, 2)).iter().map(DigitVector::value).collect();
        assert_eq!(zero, vec![0]);
        let full: Vec<u64> = dominated_range(&dv(63, 4, 3)).iter().map(DigitVector::value).collect();
        assert_eq!(full, (0..64).collect::<Vec<_>>());
        assert_eq!(dominated_range(&dv(0, 2, 0)).len(), 1);
    }

    #[test]
    fn carry_and_digit_sum_examples() {
        assert!(is_carry_free(1, 4, 2).unwrap());
        assert!(!is_carry_free(1, 1, 2).unwrap());
        assert!(is_carry_free(0, 77, 3).unwrap());
        assert_eq!(is_carry_free(0, 0, 0), Err(Error::BadBase(0)));
        assert_eq!(sum_of_digits(5, 2).unwrap(), 2);
        assert_eq!(sum_of_digits(0, 7).unwrap(), 0);
        assert_eq!(sum_of_digits(4u64.pow(3) - 1, 4).unwrap(), 9);
        assert_eq!(sum_of_digits(3, 1), Err(Error::BadBase(1)));
    }

    #[test]
    fn min_width_counts_digits() {
        assert_eq!(min_width(0, 2).unwrap(), 0);
        assert_eq!(min_width(1, 2).unwrap(), 1);
        assert_eq!(min_width(8, 2).unwrap(), 4);
        assert_eq!(min_width(26, 3).unwrap(), 3);
        assert_eq!(min_width(27, 3).unwrap(), 4);
    }

    #[test]
    fn carry_free_iff_dominated_exhaustive() {
        for b in 2..=4u64 {
            for w in 0..=5usize {
                let top = b.pow(w as u32);
                for n in 0..top {
                    let nd = dv(n, b, w);
                    let range = dominated_range(&nd);
                    let expect: usize = nd.digits().iter().map(|&d| d as usize + 1).product();
                    assert_eq!(range.len(), expect);
                    let mut it = range.iter().map(DigitVector::value).peekable();
                    for m in 0..=n {
                        let dom = dominates(&dv(m, b, w), &nd).unwrap();
                        assert_eq!(is_carry_free(m, n - m, b).unwrap(), dom, "b={b} m={m} n={n}");
                        if dom {
                            assert_eq!(it.next(), Some(m));
                            let s = sum_of_digits(m, b).unwrap() + sum_of_digits(n - m, b).unwrap();
                            assert_eq!(s, sum_of_digits(n, b).unwrap());
                        }
                    }
                    assert_eq!(it.peek(), None);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn dominance_is_a_partial_order(b in 2u64..6, a in 0u64..1000, c in 0u64..1000, e in 0u64..1000) {
            let w = 8;
            let (a, c, e) = (dv(a % b.pow(4), b, w), dv(c % b.pow(4), b, w), dv(e % b.pow(4), b, w));
            prop_assert!(dominates(&a, &a).unwrap());
            if dominates(&a, &c).unwrap() && dominates(&c, &a).unwrap() {
                prop_assert_eq!(&a, &c);
            }
            if dominates(&a, &c).unwrap() && dominates(&c, &e).unwrap() {
                prop_assert!(dominates(&a, &e).unwrap());
            }
        }

        #[test]
        fn digits_reconstruct_value(b in 2u64..17, n in 0u64..1_000_000) {
            let w = min_width(n, b).unwrap();
            let d = dv(n, b, w);
            prop_assert_eq!(d.value(), n);
            prop_assert!(d.digits().iter().all(|&x| x < b));
            prop_assert_eq!(d.digit_sum(), sum_of_digits(n, b).unwrap());
        }
    }
}
