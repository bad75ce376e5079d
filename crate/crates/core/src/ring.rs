//! GR(4,m) in the Teichmüller pair representation, and the Z4-valued trace.
//!
//! Every ring element is uniquely x + 2y with x, y Teichmüller; both ring
//! operations reduce to GF(2^m) XOR, multiply and √, which keeps the sweep
//! kernels branch-free. A coefficient-vector implementation over a Hensel
//! lift of the defining polynomial exists only in the test suite, as the
//! independent oracle for these pair laws.

use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{FieldCtx, FieldElem};

/// Integer mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Z4(pub u8);

impl Z4 {
    #[inline]
    pub fn new(v: u8) -> Z4 {
        Z4(v & 3)
    }

    /// True for 1 and 3, the invertible residues.
    #[inline]
    pub fn is_unit(self) -> bool {
        self.0 & 1 == 1
    }
}

impl Add for Z4 {
    type Output = Z4;
    #[inline]
    fn add(self, other: Z4) -> Z4 {
        Z4((self.0 + other.0) & 3)
    }
}

impl Sub for Z4 {
    type Output = Z4;
    #[inline]
    fn sub(self, other: Z4) -> Z4 {
        Z4((self.0 + 4 - other.0) & 3)
    }
}

impl Mul for Z4 {
    type Output = Z4;
    #[inline]
    fn mul(self, other: Z4) -> Z4 {
        Z4((self.0 * other.0) & 3)
    }
}

impl Neg for Z4 {
    type Output = Z4;
    #[inline]
    fn neg(self) -> Z4 {
        Z4((4 - self.0) & 3)
    }
}

/// Element of GR(4,m) as the Teichmüller pair (x, y) meaning x + 2y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GRElem {
    pub x: FieldElem,
    pub y: FieldElem,
}

impl GRElem {
    pub const ZERO: Self = GRElem {
        x: FieldElem(0),
        y: FieldElem(0),
    };

    pub fn new(x: FieldElem, y: FieldElem) -> GRElem {
        GRElem { x, y }
    }

    /// Embedding of Z4: 0, 1, 2, 3 = (0,0), (1,0), (0,1), (1,1).
    pub fn from_z4(v: Z4) -> GRElem {
        GRElem {
            x: FieldElem(v.0 as u16 & 1),
            y: FieldElem(v.0 as u16 >> 1),
        }
    }

    /// Teichmüller element x + 2·0.
    pub fn teich(x: FieldElem) -> GRElem {
        GRElem {
            x,
            y: FieldElem::ZERO,
        }
    }
}

/// (x1,y1) + (x2,y2) = (x1⊕x2, √(x1x2) ⊕ y1 ⊕ y2).
pub fn gr_add(ctx: &FieldCtx, u: GRElem, v: GRElem) -> GRElem {
    let x = ctx.oplus(u.x, v.x);
    let carry = ctx.teich_sqrt(ctx.mul(u.x, v.x));
    let y = ctx.oplus(ctx.oplus(carry, u.y), v.y);
    GRElem { x, y }
}

pub fn gr_neg(ctx: &FieldCtx, u: GRElem) -> GRElem {
    // -1 = 3 = 1 + 2, so -(x+2y) = x + 2(x ⊕ y).
    GRElem {
        x: u.x,
        y: ctx.oplus(u.x, u.y),
    }
}

pub fn gr_sub(ctx: &FieldCtx, u: GRElem, v: GRElem) -> GRElem {
    gr_add(ctx, u, gr_neg(ctx, v))
}

/// (x1,y1) · (x2,y2) = (x1x2, x1y2 ⊕ x2y1).
pub fn gr_mul(ctx: &FieldCtx, u: GRElem, v: GRElem) -> GRElem {
    GRElem {
        x: ctx.mul(u.x, v.x),
        y: ctx.oplus(ctx.mul(u.x, v.y), ctx.mul(v.x, u.y)),
    }
}

/// Frobenius x+2y -> x²+2y², the generator of the Galois group over Z4.
pub fn gr_frobenius(ctx: &FieldCtx, u: GRElem) -> GRElem {
    GRElem {
        x: ctx.sqr(u.x),
        y: ctx.sqr(u.y),
    }
}

/// Z4 trace of x + 2y via the 2-adic expansion table: Tr(x) + 2·tr(y).
#[inline]
pub fn trace_z4(ctx: &FieldCtx, u: GRElem) -> Z4 {
    Z4((ctx.tr4_raw(u.x.index()) + 2 * ctx.tr_bin(u.y)) & 3)
}

/// Z4 trace summed directly over the Frobenius orbit with ring additions.
/// Slow path; kept as the independent cross-check of `trace_z4`.
pub fn trace_z4_direct(ctx: &FieldCtx, u: GRElem) -> Z4 {
    let mut acc = GRElem::ZERO;
    let mut pow = u;
    for _ in 0..ctx.m() {
        acc = gr_add(ctx, acc, pow);
        pow = gr_frobenius(ctx, pow);
    }
    assert!(
        acc.x.0 <= 1 && acc.y.0 <= 1,
        "trace orbit sum must land in Z4"
    );
    Z4((acc.x.0 + 2 * acc.y.0) as u8)
}
