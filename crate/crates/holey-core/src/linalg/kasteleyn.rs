//! The closed product formula for domino tilings of a rectangle,
//!
//!   prod_{j=1..ceil(m/2)} prod_{l=1..ceil(n/2)}
//!       (4 cos^2(j pi/(m+1)) + 4 cos^2(l pi/(n+1))),
//!
//! evaluated in double-double arithmetic (roughly 32 significant digits) and
//! rounded to the nearest integer under an explicit ambiguity guard. This is
//! a cross-check route, deliberately independent of the profile DP.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::BigCount;

/// Unevaluated sum of two doubles; |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

// pi = PI_HI + PI_LO to double-double precision
#[allow(clippy::excessive_precision)]
const DD_PI: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.224646799147353207e-16,
};

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let hi = a + b;
    let lo = b - (hi - a);
    Dd { hi, lo }
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

fn two_diff(a: f64, b: f64) -> Dd {
    let s = a - b;
    let bb = s - a;
    let err = (a - (s - bb)) - (b + bb);
    Dd { hi: s, lo: err }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    let e = a.mul_add(b, -p);
    Dd { hi: p, lo: e }
}

impl Dd {
    const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        quick_two_sum(s.hi, s.lo + self.lo + o.lo)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = two_prod(self.hi, o.hi);
        quick_two_sum(p.hi, p.lo + self.hi * o.lo + self.lo * o.hi)
    }

    fn mul_f64(self, d: f64) -> Dd {
        let p = two_prod(self.hi, d);
        quick_two_sum(p.hi, p.lo + self.lo * d)
    }

    fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let t = two_prod(q1, d);
        let s = two_diff(self.hi, t.hi);
        let q2 = (s.hi + (s.lo + self.lo - t.lo)) / d;
        quick_two_sum(q1, q2)
    }
}

/// cos for |x| <= pi/2, by the Taylor series in double-double arithmetic.
fn dd_cos(x: Dd) -> Dd {
    let x2 = x.mul(x);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for t in 1u32..64 {
        term = term.mul(x2).div_f64(-(((2 * t - 1) * (2 * t)) as f64));
        sum = sum.add(term);
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    sum
}

/// 4 cos^2(j pi / denom)
fn four_cos_sq(j: usize, denom: usize) -> Dd {
    let theta = DD_PI.mul_f64(j as f64).div_f64(denom as f64);
    let c = dd_cos(theta);
    c.mul(c).mul_f64(4.0)
}

/// Exact product-formula count. Must agree with the profile DP wherever both
/// are defined; an ambiguous rounding (distance to the nearest integer above
/// one thousandth of the value's magnitude) is a structured error.
pub fn kasteleyn_count(m: usize, n: usize) -> Result<BigCount> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyGrid);
    }
    if (m * n) % 2 == 1 {
        return Ok(BigCount::zero());
    }
    let row_terms: Vec<Dd> = (1..=m.div_ceil(2)).map(|j| four_cos_sq(j, m + 1)).collect();
    let col_terms: Vec<Dd> = (1..=n.div_ceil(2)).map(|l| four_cos_sq(l, n + 1)).collect();
    let mut product = Dd::ONE;
    for &a in &row_terms {
        for &b in &col_terms {
            product = product.mul(a.add(b));
        }
    }
    // generous operation count for the accumulated-error budget: one add and
    // one mul per product term, ~70 ops per cosine evaluation
    let ops = 2 * row_terms.len() * col_terms.len() + 70 * (row_terms.len() + col_terms.len());
    round_to_count(product, ops)
}

/// Per-operation relative error bound of the sloppy double-double routines,
/// with slack (the true figure is near 2^-104).
const DD_EPS: f64 = 7.9e-31; // 2^-100

fn round_to_count(v: Dd, ops: usize) -> Result<BigCount> {
    let ambiguous = |distance: f64| Error::RoundingAmbiguous {
        value: v.hi,
        distance,
    };
    let hi = BigRational::from_float(v.hi).ok_or_else(|| ambiguous(f64::NAN))?;
    let lo = BigRational::from_float(v.lo).ok_or_else(|| ambiguous(f64::NAN))?;
    let exact = hi + lo;
    let nearest = exact.round();
    let distance = (&exact - &nearest).abs();
    let distance_f64 = distance.to_f64().unwrap_or(f64::NAN);
    if &distance * BigRational::from_integer(1000.into()) > exact.abs() {
        return Err(ambiguous(distance_f64));
    }
    // the true value is an integer; rounding is certain only while the
    // accumulated error cannot bridge half an integer. Negated form so a
    // NaN distance lands in the error branch.
    let budget = v.hi.abs() * ops as f64 * DD_EPS;
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(distance_f64 + budget < 0.49) {
        return Err(ambiguous(distance_f64));
    }
    nearest
        .to_integer()
        .to_biguint()
        .ok_or_else(|| ambiguous(distance_f64))
}
