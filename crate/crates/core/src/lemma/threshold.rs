//! Arithmetic of the large-`k` argument.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::scalar::rat_int;
use crate::Rational;

/// `2k^2 - k(r^3 + 8r^2 + 8r) + 4(r + r^2)^2 + 4r^2`, twice the gap of the
/// hypothesis inequality.
fn doubled_gap(k: &BigInt, r: &BigInt) -> BigInt {
    let r2 = r * r;
    let lin = &r2 * r + 8 * &r2 + 8 * r;
    let rr = r + &r2;
    2 * k * k - k * lin + 4 * &rr * &rr + 4 * r2
}

/// Least `k >= r(r+2)` with `k^2 + 2(r+r^2)^2 + 2r^2 > k(r^3/2 + 4r^2 + 4r)`.
pub fn threshold_k(r: u64) -> u64 {
    let r = BigInt::from(r);
    let k0 = &r * (&r + 2);
    if doubled_gap(&k0, &r).is_positive() {
        return k0.to_u64().expect("threshold fits in u64");
    }
    // k0 lies between the roots; start just below the larger one.
    let r2 = &r * &r;
    let b = &r2 * &r + 8 * &r2 + 8 * &r;
    let rr = &r + &r2;
    let c = 4 * &rr * &rr + 4 * &r2;
    let disc: BigInt = &b * &b - 8 * c;
    let root = (&b + disc.sqrt()) / 4;
    let mut k = std::cmp::max(k0, root - 1);
    while !doubled_gap(&k, &r).is_positive() {
        k += BigInt::one();
    }
    k.to_u64().expect("threshold fits in u64")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigkCheck {
    pub k: u64,
    pub r: u64,
    /// `E - beta` for the conclusion expression `E <= beta` after
    /// substitution.
    #[serde(serialize_with = "crate::scalar::ser_rational")]
    pub conclusion_gap: Rational,
    /// `k^2 + 2(r+r^2)^2 + 2r^2 - k(r^3/2 + 4r^2 + 4r)`.
    #[serde(serialize_with = "crate::scalar::ser_rational")]
    pub polynomial: Rational,
    /// `conclusion_gap * k^4 == polynomial`.
    pub identity_holds: bool,
    /// The polynomial is positive, so the conclusion fails.
    pub contradiction: bool,
}

/// Substitutes the large-`k` parameters into the conclusion and compares
/// with the simplified polynomial.
pub fn bigk_simplify_check(k: u64, r: u64) -> BigkCheck {
    assert!(k > r, "need k > r");
    let kk = rat_int(k as usize);
    let rr = rat_int(r as usize);
    let two = rat_int(2);
    let one = Rational::one();
    let lambda = (&kk - &rr - &one) / (&two * &kk);
    let beta = kk.recip();
    let gamma = &rr / (&two * &kk);
    let mu = (&kk - &rr) / (&kk * &kk);
    let x = &two * &rr / &kk;
    let y = Rational::new(1.into(), 2.into());
    let head = &mu - &x * &gamma;
    let tail = &beta - &mu;
    let e = &head * &head / &y + &tail * &tail / (&one - &y) + &two * &beta * (&lambda + &gamma)
        - &x * &gamma * &gamma;
    let conclusion_gap = e - &beta;
    let r_sq = &rr * &rr;
    let s = &rr + &r_sq;
    let polynomial = &kk * &kk + &two * &s * &s + &two * &r_sq
        - &kk * (&r_sq * &rr / &two + rat_int(4) * &r_sq + rat_int(4) * &rr);
    let k4 = &kk * &kk * &kk * &kk;
    BigkCheck {
        k,
        r,
        identity_holds: &conclusion_gap * k4 == polynomial,
        contradiction: polynomial > Rational::zero(),
        conclusion_gap,
        polynomial,
    }
}
