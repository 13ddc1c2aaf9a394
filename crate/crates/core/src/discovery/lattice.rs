//! Small exact lattice routines over rational vectors.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::BigRat;

pub(crate) type Vector = Vec<BigRat>;

pub(crate) fn dot(a: &[BigRat], b: &[BigRat]) -> BigRat {
    a.iter().zip(b).fold(BigRat::zero(), |acc, (x, y)| acc + x * y)
}

/// `a − k·b`.
fn sub_mul(a: &[BigRat], k: &BigInt, b: &[BigRat]) -> Vector {
    let k = BigRat::from_integer(k.clone());
    a.iter().zip(b).map(|(x, y)| x - &k * y).collect()
}

pub(crate) fn add_mul(a: &[BigRat], k: &BigInt, b: &[BigRat]) -> Vector {
    sub_mul(a, &-k, b)
}

fn round(x: &BigRat) -> BigInt {
    x.round().to_integer()
}

/// Lagrange–Gauss reduction of a rank-2 basis; the result starts with a shortest vector.
pub(crate) fn gauss_reduce(mut b1: Vector, mut b2: Vector) -> (Vector, Vector) {
    if dot(&b2, &b2) < dot(&b1, &b1) {
        std::mem::swap(&mut b1, &mut b2);
    }
    loop {
        let mu = round(&(dot(&b1, &b2) / dot(&b1, &b1)));
        b2 = sub_mul(&b2, &mu, &b1);
        if dot(&b2, &b2) >= dot(&b1, &b1) {
            return (b1, b2);
        }
        std::mem::swap(&mut b1, &mut b2);
    }
}

/// Coefficients `(r1, r2)` of Babai's nearest-plane vector for `t` in the lattice `⟨b1, b2⟩`.
pub(crate) fn babai_2d(b1: &[BigRat], b2: &[BigRat], t: &[BigRat]) -> (BigInt, BigInt) {
    let mu = dot(b1, b2) / dot(b1, b1);
    let b2s: Vector = b2.iter().zip(b1).map(|(x, y)| x - &mu * y).collect();
    let r2 = round(&(dot(t, &b2s) / dot(&b2s, &b2s)));
    let t1 = sub_mul(t, &r2, b2);
    let r1 = round(&(dot(&t1, b1) / dot(b1, b1)));
    (r1, r2)
}

fn gram_schmidt(b: &[Vector]) -> (Vec<Vector>, Vec<Vec<BigRat>>) {
    let n = b.len();
    let mut bs: Vec<Vector> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRat::zero(); n]; n];
    for i in 0..n {
        let mut v = b[i].clone();
        for j in 0..i {
            mu[i][j] = dot(&b[i], &bs[j]) / dot(&bs[j], &bs[j]);
            v = v.iter().zip(&bs[j]).map(|(x, y)| x - &mu[i][j] * y).collect();
        }
        bs.push(v);
    }
    (bs, mu)
}

/// LLL reduction with `δ = 3/4`. The basis must be linearly independent.
pub(crate) fn lll(mut b: Vec<Vector>) -> Vec<Vector> {
    let delta = BigRat::new(3.into(), 4.into());
    let n = b.len();
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (_, mu) = gram_schmidt(&b);
            let q = round(&mu[k][j]);
            if !q.is_zero() {
                b[k] = sub_mul(&b[k], &q, &b[j]);
            }
        }
        let (bs, mu) = gram_schmidt(&b);
        let lhs = dot(&bs[k], &bs[k]);
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * dot(&bs[k - 1], &bs[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}
