use num_bigint::BigInt;
use num_traits::{One, Signed};

/// Fractional bits used by the logarithmic bound checks.
pub const LOG_BITS: u32 = 48;

/// Floor and ceiling of 2^k log2(x), for x >= 1, up to one unit: lo <= 2^k log2 x <= hi.
///
/// Digits come from repeated squaring of the mantissa in fixed point; the lower
/// path rounds down throughout, the upper path rounds up and adds the discarded tail.
pub fn log2_bounds(x: &BigInt, k: u32) -> (BigInt, BigInt) {
    assert!(x.is_positive(), "log2 of a non-positive number");
    let e = x.bits() - 1;
    let guard = k as u64 + 16;
    let one = BigInt::one() << guard;
    let two = &one << 1;
    let shifted = x << guard;
    let lo_m = &shifted >> e;
    let hi_m = if (&lo_m << e) == shifted { lo_m.clone() } else { &lo_m + 1 };
    let digits = |mut m: BigInt, up: bool| -> BigInt {
        let mut acc = BigInt::from(0);
        for _ in 0..k {
            let sq = &m * &m;
            m = if up { (sq + &one - 1) >> guard } else { sq >> guard };
            acc <<= 1;
            if m >= two {
                acc += 1;
                m = if up { (m + 1) >> 1 } else { m >> 1 };
            }
        }
        acc
    };
    let base = BigInt::from(e) << k;
    let lo = &base + digits(lo_m, false);
    let hi = base + digits(hi_m, true) + 1;
    (lo, hi)
}

/// Bounds on 2^k log2(a / b) for a >= b > 0.
pub fn log2_ratio_bounds(a: &BigInt, b: &BigInt, k: u32) -> (BigInt, BigInt) {
    let (alo, ahi) = log2_bounds(a, k);
    let (blo, bhi) = log2_bounds(b, k);
    (alo - bhi, ahi - blo)
}

/// 2^b >= x, exactly.
pub fn pow2_ge(b: &BigInt, x: &BigInt) -> bool {
    if !x.is_positive() {
        return true;
    }
    if b.is_negative() {
        return false;
    }
    // 2^b >= x  iff  b >= ceil(log2 x)
    let bits = x.bits();
    let ceil = if x.trailing_zeros() == Some(bits - 1) { bits - 1 } else { bits };
    *b >= BigInt::from(ceil)
}
