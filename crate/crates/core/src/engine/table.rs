use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::exact::{floor_scaled_sqrt2, rat_pow2, BigRat, QSqrt2};

/// `t = (α√2 − β)/2^l` with `α` odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicTarget {
    pub alpha: BigInt,
    pub beta: BigInt,
    pub l: u32,
}

impl AlgebraicTarget {
    pub fn new(alpha: impl Into<BigInt>, beta: impl Into<BigInt>, l: u32) -> Self {
        Self {
            alpha: alpha.into(),
            beta: beta.into(),
            l,
        }
    }

    /// `γ = 2α + β`.
    pub fn gamma(&self) -> BigInt {
        (&self.alpha << 1usize) + &self.beta
    }

    pub fn value(&self) -> QSqrt2 {
        let den = BigInt::one() << self.l as usize;
        QSqrt2::new(
            BigRat::new(-self.beta.clone(), den.clone()),
            BigRat::new(self.alpha.clone(), den),
        )
    }

    pub fn alpha_is_odd(&self) -> bool {
        self.alpha.is_odd()
    }

    /// `α + β = 2^{l+1}`.
    pub fn satisfies_identity(&self) -> bool {
        &self.alpha + &self.beta == BigInt::one() << (self.l as usize + 1)
    }

    /// `v_{2(l+2)}` the recurrence must reach: `⌊α√2⌋ + 2α`.
    pub fn comp_value(&self) -> BigInt {
        floor_scaled_sqrt2(&self.alpha, 0) + (&self.alpha << 1usize)
    }

    /// Index `2(l+2)` at which [`AlgebraicTarget::comp_value`] is checked.
    pub fn comp_index(&self) -> usize {
        2 * (self.l as usize + 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairTarget {
    Algebraic(AlgebraicTarget),
    /// `t = √2`, handled by direct closed forms.
    Sqrt2,
}

impl PairTarget {
    pub fn value(&self) -> QSqrt2 {
        match self {
            PairTarget::Algebraic(a) => a.value(),
            PairTarget::Sqrt2 => QSqrt2::sqrt2(),
        }
    }

    pub fn algebraic(&self) -> Option<&AlgebraicTarget> {
        match self {
            PairTarget::Algebraic(a) => Some(a),
            PairTarget::Sqrt2 => None,
        }
    }
}

/// One row: `ε ∈ [xi1, xi2)` emits the digits of `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GPPairEntry {
    pub index: usize,
    pub xi1: QSqrt2,
    pub xi2: QSqrt2,
    pub target: PairTarget,
}

impl GPPairEntry {
    pub fn contains(&self, eps: &QSqrt2) -> bool {
        &self.xi1 <= eps && eps < &self.xi2
    }

    pub fn midpoint(&self) -> QSqrt2 {
        (&self.xi1 + &self.xi2).scale(&BigRat::new(1.into(), 2.into()))
    }

    /// `ξ₂ − δ`, the right-most probe inside the interval.
    pub fn right_inner(&self) -> QSqrt2 {
        &self.xi2 - &delta()
    }

    /// The sample points `{ξ₁, midpoint, ξ₂ − δ}`.
    pub fn samples(&self) -> [QSqrt2; 3] {
        [self.xi1.clone(), self.midpoint(), self.right_inner()]
    }

    pub fn is_direct(&self) -> bool {
        matches!(self.target, PairTarget::Sqrt2)
    }
}

/// Sharpness margin `δ = 2^-60`.
pub fn delta() -> QSqrt2 {
    QSqrt2::from_rat(rat_pow2(-60))
}

/// `1 − √2/2`.
pub fn domain_lo() -> QSqrt2 {
    QSqrt2::half_int(-1, -1)
}

/// `√2/2`.
pub fn domain_hi() -> QSqrt2 {
    QSqrt2::half_int(1, 0)
}

/// Endpoint `(c, d)` pairs of `(c/2)√2 − d`, in ε-order.
pub const ENDPOINTS: [(i64, i64); 9] = [
    (-1, -1),
    (2, 1),
    (19, 13),
    (77, 54),
    (309, 218),
    (1_296_121_037, 916_495_974),
    (79_109, 55_938),
    (5, 3),
    (1, 0),
];

/// `(α, β, l)` per row; `None` marks the direct row `t = √2`.
const TARGETS: [Option<(i64, i64, u32)>; 8] = [
    Some((1, 1, 0)),
    Some((11, 5, 3)),
    Some((45, 19, 5)),
    Some((181, 75, 7)),
    None,
    Some((759_250_125, 314_491_699, 29)),
    Some((46_341, 19_195, 15)),
    Some((3, 1, 1)),
];

/// The eight digit-emitting pairs, rows 1..8.
pub fn theorem_table() -> Vec<GPPairEntry> {
    (0..8)
        .map(|i| {
            let (c1, d1) = ENDPOINTS[i];
            let (c2, d2) = ENDPOINTS[i + 1];
            let target = match TARGETS[i] {
                Some((a, b, l)) => PairTarget::Algebraic(AlgebraicTarget::new(a, b, l)),
                None => PairTarget::Sqrt2,
            };
            GPPairEntry {
                index: i + 1,
                xi1: QSqrt2::half_int(c1, d1),
                xi2: QSqrt2::half_int(c2, d2),
                target,
            }
        })
        .collect()
}

/// Row `i` (1-based).
pub fn table_row(i: usize) -> Option<GPPairEntry> {
    (1..=8).contains(&i).then(|| theorem_table().swap_remove(i - 1))
}
