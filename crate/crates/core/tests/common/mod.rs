#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use gp_core::{BigRat, QSqrt2};

/// Sign of `a + b√2` from rational brackets of `√2` by Pell convergents,
/// tightened until both ends agree. Independent of `QSqrt2::signum`.
pub fn sign_oracle(a: &BigRat, b: &BigRat) -> i8 {
    if b.is_zero() {
        return sgn(a);
    }
    // consecutive convergents of √2 bracket it from alternate sides
    let (mut p, mut q) = (BigInt::one(), BigInt::one());
    for _ in 0..10_000 {
        let (np, nq) = (&p + (&q << 1usize), &p + &q);
        let r1 = BigRat::new(p.clone(), q.clone());
        let r2 = BigRat::new(np.clone(), nq.clone());
        (p, q) = (np, nq);
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        let s1 = sgn(&(a + b * &lo));
        let s2 = sgn(&(a + b * &hi));
        if s1 == s2 && s1 != 0 {
            return s1;
        }
        if a.is_zero() {
            return sgn(b);
        }
    }
    panic!("sign oracle did not converge");
}

fn sgn(x: &BigRat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// `⌊√n⌋` by Newton iteration on plain integers.
pub fn isqrt_oracle(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut x = BigInt::one() << ((n.bits() as usize + 1) / 2 + 1);
    loop {
        let y = (&x + n / &x) >> 1usize;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `⌊α√2·2^k⌋` for `α ≥ 0`, `k ≥ 0`.
pub fn floor_alpha_sqrt2_pow2(alpha: &BigInt, k: u32) -> BigInt {
    isqrt_oracle(&((alpha * alpha) << (2 * k as usize + 1)))
}

/// `d_n = ⌊t·2^{n−1}⌋ − 2⌊t·2^{n−2}⌋` for `t = (α√2 − β)/2^l`, through integer
/// square roots only. `⌊(X − B)/2^l⌋ = ⌊(⌊X⌋ − B)/2^l⌋` for integer `B`.
pub fn target_digits_oracle(alpha: i64, beta: i64, l: u32, count: usize) -> Vec<BigInt> {
    let alpha = BigInt::from(alpha);
    let beta = BigInt::from(beta);
    let denom = BigInt::one() << l as usize;
    // ⌊t·2^j⌋ for j ≥ 0; j = −1 handled by the caller's n ≥ 1 offset.
    let fl = |j: u32| -> BigInt {
        let x = floor_alpha_sqrt2_pow2(&alpha, j) - (&beta << j as usize);
        x.div_floor(&denom)
    };
    let mut out = Vec::with_capacity(count);
    // n = 1: ⌊t⌋ − 2⌊t/2⌋
    let t0 = fl(0);
    out.push(&t0 - (t0.div_floor(&BigInt::from(2)) << 1usize));
    for n in 2..=count as u32 {
        out.push(fl(n - 1) - (fl(n - 2) << 1usize));
    }
    out
}

/// `(c/2)√2 − d`.
pub fn half_int(c: i64, d: i64) -> QSqrt2 {
    QSqrt2::half_int(c, d)
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(n.into(), d.into())
}

pub fn big_from_limbs(limbs: &[u32], negative: bool) -> BigInt {
    let n = BigInt::from(num_bigint::BigUint::new(limbs.to_vec()));
    if negative {
        -n
    } else {
        n
    }
}
