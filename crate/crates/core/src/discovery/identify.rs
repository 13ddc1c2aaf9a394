use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::lattice::{add_mul, babai_2d, gauss_reduce, lll, Vector};
use super::DiscoveryError;
use crate::exact::{isqrt, rat_pow2, BigRat, QSqrt2};
use crate::reals::{const_sqrt2, RealInterval};

/// `a₂x² + a₁x + a₀` with coprime integer coefficients and `a₂ > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadPoly {
    pub a2: BigInt,
    pub a1: BigInt,
    pub a0: BigInt,
}

impl QuadPoly {
    /// Divides out the content and fixes the sign; `None` if `a₂ = 0`.
    pub fn normalized(a2: BigInt, a1: BigInt, a0: BigInt) -> Option<Self> {
        if a2.is_zero() {
            return None;
        }
        let g = a2.gcd(&a1).gcd(&a0);
        let s = if a2.is_negative() { -g } else { g };
        Some(Self {
            a2: a2 / &s,
            a1: a1 / &s,
            a0: a0 / &s,
        })
    }

    /// The polynomial of `(c/2)√2 − d`: `2x² + 4dx + 2d² − c²`, content removed.
    pub fn from_half_int(c: &BigInt, d: &BigInt) -> Self {
        let a0 = (d * d << 1usize) - c * c;
        Self::normalized(BigInt::from(2), d << 2usize, a0).expect("a2 = 2")
    }

    pub fn eval_exact(&self, x: &QSqrt2) -> QSqrt2 {
        let c = |n: &BigInt| QSqrt2::from_integer(n.clone());
        &(&(&c(&self.a2) * x) + &c(&self.a1)) * x + c(&self.a0)
    }

    pub fn eval_interval(&self, x: &RealInterval) -> RealInterval {
        let c = |n: &BigInt| RealInterval::point(BigRat::from_integer(n.clone()), x.bits());
        c(&self.a2).mul(&x.powi(2)).add(&c(&self.a1).mul(x)).add(&c(&self.a0))
    }

    /// The root inside `x`, when the roots lie in ℚ(√2).
    pub fn root_in(&self, x: &RealInterval) -> Option<QSqrt2> {
        let disc = &self.a1 * &self.a1 - BigInt::from(4) * &self.a2 * &self.a0;
        if disc.is_negative() {
            return None;
        }
        let sqrt_disc = {
            let r = isqrt(&disc).ok()?;
            if &r * &r == disc {
                QSqrt2::from_integer(r)
            } else if disc.is_even() {
                let h = &disc >> 1usize;
                let r = isqrt(&h).ok()?;
                if &r * &r != h {
                    return None;
                }
                QSqrt2::new(BigRat::zero(), BigRat::from_integer(r))
            } else {
                return None;
            }
        };
        let den = BigRat::new(BigInt::one(), &self.a2 << 1usize);
        let base = QSqrt2::from_integer(-self.a1.clone());
        [&base + &sqrt_disc, &base - &sqrt_disc]
            .into_iter()
            .map(|r| r.scale(&den))
            .find(|r| x.contains_exact(r))
    }

    pub fn height(&self) -> BigInt {
        self.a2.abs().max(self.a1.abs()).max(self.a0.abs())
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*x^2", self.a2)?;
        for (c, x) in [(&self.a1, "*x"), (&self.a0, "")] {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, " {sign} {}{x}", c.abs())?;
        }
        Ok(())
    }
}

fn ri(x: BigInt) -> BigRat {
    BigRat::from_integer(x)
}

/// The unique `(c, d)`, `|c|, |d| ≤ bound`, with `(c/2)√2 − d ∈ x`.
///
/// Needs `width(x) ≤ 1/(128·bound)`. Distinct candidates are at least
/// `1/(4√2·bound + 2)` apart, so at most one fits; it is found as the lattice
/// point of `⟨(1, 0, M√2/2), (0, 1, −M)⟩` closest to `(0, 0, M·mid(x))` with
/// `M ≈ 128·bound²`, and then checked exactly.
pub fn identify_halfint_sqrt2(x: &RealInterval, bound: &BigInt) -> Result<(BigInt, BigInt), DiscoveryError> {
    if !bound.is_positive() {
        return Err(DiscoveryError::Invalid("bound must be positive".into()));
    }
    if x.width() * ri(bound << 7usize) > BigRat::one() {
        return Err(DiscoveryError::TooWide { bound: bound.clone() });
    }
    let k = ((bound * bound) << 7usize).bits() as i64;
    let m = rat_pow2(k);
    let prec = (k as u32) + 2 * bound.bits() as u32 + 32;
    let s = const_sqrt2(prec).midpoint() / ri(2.into());
    let zero = BigRat::zero;
    let b1: Vector = vec![BigRat::one(), zero(), &m * &s];
    let b2: Vector = vec![zero(), BigRat::one(), -m.clone()];
    let t: Vector = vec![zero(), zero(), &m * x.midpoint()];
    let (a, b) = gauss_reduce(b1, b2);
    let (r1, r2) = babai_2d(&a, &b, &t);
    let mut found: Vec<(BigInt, BigInt)> = Vec::new();
    for i in -2i32..=2 {
        for j in -2i32..=2 {
            let w = add_mul(&add_mul(&[zero(), zero(), zero()], &(&r1 + i), &a), &(&r2 + j), &b);
            let (c, d) = (w[0].to_integer(), w[1].to_integer());
            if c.abs() > *bound || d.abs() > *bound {
                continue;
            }
            if x.contains_exact(&QSqrt2::half_int(c.clone(), d.clone())) && !found.contains(&(c.clone(), d.clone())) {
                found.push((c, d));
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one candidate")),
        0 => Err(DiscoveryError::Identification(format!(
            "no (c/2)*sqrt2-d with |c|,|d| <= {bound} in the enclosure"
        ))),
        n => Err(DiscoveryError::Identification(format!("{n} candidates; tighten the enclosure"))),
    }
}

/// Integer quadratic with coefficients bounded by `bound` vanishing on `x`,
/// by LLL on `(x², x, 1)`.
///
/// Heuristic precondition: `width(x)` well below `bound^-3`; concretely
/// `width·2^k·4(1 + |x|)² ≤ 1` with `2^k ≈ 256·bound³`.
pub fn min_poly_deg2(x: &RealInterval, bound: &BigInt) -> Result<QuadPoly, DiscoveryError> {
    if !bound.is_positive() {
        return Err(DiscoveryError::Invalid("bound must be positive".into()));
    }
    let k = 3 * bound.bits() as i64 + 8;
    let m = rat_pow2(k);
    let one_plus = BigRat::one() + x.magnitude();
    if x.width() * &m * ri(4.into()) * &one_plus * &one_plus > BigRat::one() {
        return Err(DiscoveryError::TooWide { bound: bound.clone() });
    }
    let mid = x.midpoint();
    let zero = BigRat::zero;
    let basis = vec![
        vec![BigRat::one(), zero(), zero(), &m * &mid * &mid],
        vec![zero(), BigRat::one(), zero(), &m * &mid],
        vec![zero(), zero(), BigRat::one(), m.clone()],
    ];
    let reduced = lll(basis);
    reduced
        .iter()
        .filter_map(|v| QuadPoly::normalized(v[0].to_integer(), v[1].to_integer(), v[2].to_integer()))
        .filter(|p| p.height() <= *bound && p.eval_interval(x).contains_zero())
        .min_by(|p, q| p.height().cmp(&q.height()))
        .ok_or_else(|| {
            DiscoveryError::Identification(format!("no quadratic with height <= {bound} vanishes on the enclosure"))
        })
}

/// An exact value recovered from an enclosure, with its polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identified {
    pub value: QSqrt2,
    pub poly: QuadPoly,
}

pub trait Identifier: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    fn identify(&self, x: &RealInterval, bound: &BigInt) -> Result<Identified, DiscoveryError>;
}

/// Structured search for `(c/2)√2 − d`.
#[derive(Debug, Default, Clone, Copy)]
pub struct HalfIntIdentifier;

impl Identifier for HalfIntIdentifier {
    fn name(&self) -> &'static str {
        "halfint"
    }

    fn summary(&self) -> &'static str {
        "nearest (c/2)*sqrt2-d via 2D lattice"
    }

    fn identify(&self, x: &RealInterval, bound: &BigInt) -> Result<Identified, DiscoveryError> {
        let (c, d) = identify_halfint_sqrt2(x, bound)?;
        Ok(Identified {
            poly: QuadPoly::from_half_int(&c, &d),
            value: QSqrt2::half_int(c, d),
        })
    }
}

/// Generic degree-2 recovery, then the root inside the enclosure.
#[derive(Debug, Default, Clone, Copy)]
pub struct MinPolyIdentifier;

impl Identifier for MinPolyIdentifier {
    fn name(&self) -> &'static str {
        "minpoly"
    }

    fn summary(&self) -> &'static str {
        "integer quadratic via LLL, root taken in Q(sqrt2)"
    }

    fn identify(&self, x: &RealInterval, bound: &BigInt) -> Result<Identified, DiscoveryError> {
        let poly = min_poly_deg2(x, bound)?;
        let value = poly
            .root_in(x)
            .ok_or_else(|| DiscoveryError::Identification(format!("{poly} has no root in Q(sqrt2) inside the enclosure")))?;
        Ok(Identified { value, poly })
    }
}

#[derive(Clone)]
pub struct IdentifierRegistry {
    entries: BTreeMap<&'static str, Arc<dyn Identifier>>,
}

impl IdentifierRegistry {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, id: Arc<dyn Identifier>) {
        self.entries.insert(id.name(), id);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn Identifier>> {
        self.entries.get(name).cloned()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

impl Default for IdentifierRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(HalfIntIdentifier));
        r.register(Arc::new(MinPolyIdentifier));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enclose(x: &QSqrt2, bits: u32) -> RealInterval {
        RealInterval::from_exact(x, bits)
    }

    fn dec(s: &str, ulp_places: u32) -> RealInterval {
        let q: QSqrt2 = s.parse().unwrap();
        let u = BigRat::new(1.into(), BigInt::from(10).pow(ulp_places));
        let r = q.rational_part().clone();
        RealInterval::new(&r - &u, &r + &u, 32)
    }

    #[test]
    fn small_endpoints() {
        let b = BigInt::from(1000);
        assert_eq!(identify_halfint_sqrt2(&dec("0.41421356", 8), &b).unwrap(), (2.into(), 1.into()));
        assert_eq!(identify_halfint_sqrt2(&dec("0.70710678", 8), &b).unwrap(), (1.into(), 0.into()));
    }

    #[test]
    fn large_endpoint() {
        let x = QSqrt2::half_int(1_296_121_037i64, 916_495_974i64);
        let b = BigInt::from(1u64 << 32);
        let (c, d) = identify_halfint_sqrt2(&enclose(&x, 48), &b).unwrap();
        assert_eq!((c, d), (1_296_121_037i64.into(), 916_495_974i64.into()));
    }

    #[test]
    fn too_wide_is_reported() {
        let x = dec("0.5", 3);
        assert!(matches!(
            identify_halfint_sqrt2(&x, &BigInt::from(1000)),
            Err(DiscoveryError::TooWide { .. })
        ));
    }

    #[test]
    fn quad_poly_forms() {
        let p = QuadPoly::from_half_int(&2.into(), &1.into());
        assert_eq!((p.a2.clone(), p.a1.clone(), p.a0.clone()), (1.into(), 2.into(), (-1).into()));
        assert!(p.eval_exact(&QSqrt2::half_int(2, 1)).is_zero());
        assert_eq!(p.to_string(), "1*x^2 + 2*x - 1");
        let q = QuadPoly::from_half_int(&1.into(), &0.into());
        assert_eq!(q.to_string(), "2*x^2 - 1");
    }

    #[test]
    fn min_poly_examples() {
        let p = min_poly_deg2(&dec("0.7071067811865", 13), &BigInt::from(10)).unwrap();
        assert_eq!(p, QuadPoly::from_half_int(&1.into(), &0.into()));
        let p = min_poly_deg2(&dec("0.4142135623", 10), &BigInt::from(10)).unwrap();
        assert_eq!(p.to_string(), "1*x^2 + 2*x - 1");
        assert_eq!(p.root_in(&dec("0.4142135623", 10)), Some(QSqrt2::half_int(2, 1)));
    }

    #[test]
    fn min_poly_large_endpoint() {
        let (c, d) = (BigInt::from(1_296_121_037i64), BigInt::from(916_495_974i64));
        let x = QSqrt2::half_int(c.clone(), d.clone());
        let p = min_poly_deg2(&enclose(&x, 256), &(BigInt::one() << 62usize)).unwrap();
        assert_eq!(p, QuadPoly::from_half_int(&c, &d));
        assert!(p.eval_exact(&x).is_zero());
    }

    #[test]
    fn registry_names() {
        let r = IdentifierRegistry::default();
        assert_eq!(r.names(), vec!["halfint", "minpoly"]);
        let x = enclose(&QSqrt2::half_int(19, 13), 64);
        for name in r.names() {
            let got = r.get(name).unwrap().identify(&x, &BigInt::from(1000)).unwrap();
            assert_eq!(got.value, QSqrt2::half_int(19, 13), "{name}");
        }
    }
}
