//! Exact Gaussian integers for character sums and moments.
//!
//! All arithmetic is overflow-checked i128; the magnitudes reached by the
//! m ≤ 15 sweeps stay far below the i128 range, so a checked-op panic can
//! only mean an implementation bug.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussInt {
    pub re: i128,
    pub im: i128,
}

impl GaussInt {
    pub const ZERO: Self = GaussInt { re: 0, im: 0 };
    pub const ONE: Self = GaussInt { re: 1, im: 0 };

    pub fn new(re: i128, im: i128) -> GaussInt {
        GaussInt { re, im }
    }

    pub fn real(re: i128) -> GaussInt {
        GaussInt { re, im: 0 }
    }

    /// i^k; the cycle has period 4.
    pub fn i_pow(k: u32) -> GaussInt {
        match k & 3 {
            0 => GaussInt::new(1, 0),
            1 => GaussInt::new(0, 1),
            2 => GaussInt::new(-1, 0),
            _ => GaussInt::new(0, -1),
        }
    }

    pub fn conj(self) -> GaussInt {
        GaussInt::new(self.re, -self.im)
    }

    pub fn is_real(self) -> bool {
        self.im == 0
    }

    /// |z|² as an exact integer.
    pub fn norm(self) -> i128 {
        self.re
            .checked_mul(self.re)
            .and_then(|rr| self.im.checked_mul(self.im).and_then(|ii| rr.checked_add(ii)))
            .expect("gaussian norm overflow")
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re.checked_add(rhs.re).expect("gaussian add overflow"),
            im: self.im.checked_add(rhs.im).expect("gaussian add overflow"),
        }
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re.checked_sub(rhs.re).expect("gaussian sub overflow"),
            im: self.im.checked_sub(rhs.im).expect("gaussian sub overflow"),
        }
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: GaussInt) -> GaussInt {
        let ac = self.re.checked_mul(rhs.re).expect("gaussian mul overflow");
        let bd = self.im.checked_mul(rhs.im).expect("gaussian mul overflow");
        let ad = self.re.checked_mul(rhs.im).expect("gaussian mul overflow");
        let bc = self.im.checked_mul(rhs.re).expect("gaussian mul overflow");
        GaussInt {
            re: ac.checked_sub(bd).expect("gaussian mul overflow"),
            im: ad.checked_add(bc).expect("gaussian mul overflow"),
        }
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0 {
            write!(f, "{}", self.re)
        } else if self.re == 0 {
            write!(f, "{}i", self.im)
        } else if self.im < 0 {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_pow_cycles_with_period_4() {
        for k in 0..16 {
            assert_eq!(GaussInt::i_pow(k), GaussInt::i_pow(k + 4));
        }
        assert_eq!(
            GaussInt::i_pow(1) * GaussInt::i_pow(1),
            GaussInt::real(-1)
        );
    }

    #[test]
    fn ring_ops() {
        let z = GaussInt::new(2, -3);
        let w = GaussInt::new(-1, 5);
        assert_eq!(z + w, GaussInt::new(1, 2));
        assert_eq!(z - w, GaussInt::new(3, -8));
        assert_eq!(z * w, GaussInt::new(13, 13));
        assert_eq!(-z, GaussInt::new(-2, 3));
        assert_eq!(z.conj(), GaussInt::new(2, 3));
        assert_eq!(z.norm(), 13);
    }

    #[test]
    fn display_formats() {
        assert_eq!(GaussInt::new(-4, 0).to_string(), "-4");
        assert_eq!(GaussInt::new(0, 4).to_string(), "4i");
        assert_eq!(GaussInt::new(-2, 2).to_string(), "-2+2i");
        assert_eq!(GaussInt::new(3, -1).to_string(), "3-1i");
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_caught() {
        let big = GaussInt::real(i128::MAX);
        let _ = big + GaussInt::ONE;
    }
}
