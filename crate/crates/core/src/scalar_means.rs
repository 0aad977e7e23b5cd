//! Scalar means of two positive numbers and the auxiliary weight functions.
//!
//! Every mean returns `a` exactly when `a == b`. The weighted geometric mean is
//! evaluated in the log domain; everything else follows its defining formula.
//! The `*_gap` functions evaluate differences of means in closed forms that are
//! sums of nonnegative terms, so they keep full relative accuracy when `a ≈ b`.

use crate::error::{Error, Result};

/// Ratios `b / a` outside `[MIN_RATIO, 1 / MIN_RATIO]` are rejected.
pub const MIN_RATIO: f64 = 1e-12;

/// A pair of positive, finite reals `(a, b)` with a bounded ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivePair {
    a: f64,
    b: f64,
}

impl PositivePair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::domain(format!("non-finite pair ({a}, {b})")));
        }
        if a <= 0.0 || b <= 0.0 {
            return Err(Error::domain(format!("pair ({a}, {b}) is not positive")));
        }
        let ratio = a / b;
        if !(MIN_RATIO..=1.0 / MIN_RATIO).contains(&ratio) {
            return Err(Error::domain(format!(
                "ratio a/b = {ratio:e} outside [{MIN_RATIO:e}, {:e}]",
                1.0 / MIN_RATIO
            )));
        }
        Ok(PositivePair { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn swapped(&self) -> Self {
        PositivePair { a: self.b, b: self.a }
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        PositivePair::new(lambda * self.a, lambda * self.b)
    }

    /// `c = b / a`; every scale-invariant quantity depends on the pair only through it.
    pub fn ratio(&self) -> f64 {
        self.b / self.a
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }
}

/// A weight `t` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Weight(f64);

impl Weight {
    pub const ZERO: Weight = Weight(0.0);
    pub const HALF: Weight = Weight(0.5);
    pub const ONE: Weight = Weight(1.0);

    pub fn new(t: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&t) {
            Ok(Weight(t))
        } else {
            Err(Error::domain(format!("weight {t} outside [0, 1]")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 - t`.
    pub fn complement(self) -> Weight {
        Weight(1.0 - self.0)
    }

    /// `t (1 - t)`.
    pub fn spread(self) -> f64 {
        self.0 * (1.0 - self.0)
    }

    pub fn is_interior(self) -> bool {
        self.0 > 0.0 && self.0 < 1.0
    }

    /// Reject the endpoints 0 and 1.
    pub fn interior(self, name: &str) -> Result<Self> {
        if self.is_interior() {
            Ok(self)
        } else {
            Err(Error::domain(format!("{name} = {} must lie in (0, 1)", self.0)))
        }
    }
}

impl TryFrom<f64> for Weight {
    type Error = Error;

    fn try_from(t: f64) -> Result<Self> {
        Weight::new(t)
    }
}

/// `a ∇_t b = (1 - t) a + t b`
pub fn weighted_arithmetic(p: PositivePair, t: Weight) -> f64 {
    if p.is_degenerate() {
        return p.a;
    }
    (1.0 - t.0) * p.a + t.0 * p.b
}

fn harmonic_weights(a: f64, b: f64, wa: f64, wb: f64) -> f64 {
    1.0 / (wa / a + wb / b)
}

/// `a !_t b = ((1 - t)/a + t/b)^{-1}`
pub fn weighted_harmonic(p: PositivePair, t: Weight) -> f64 {
    if p.is_degenerate() {
        return p.a;
    }
    harmonic_weights(p.a, p.b, 1.0 - t.0, t.0)
}

/// `a #_t b = a^{1-t} b^t`, evaluated as `exp((1-t) ln a + t ln b)`.
pub fn weighted_geometric(p: PositivePair, t: Weight) -> f64 {
    if p.is_degenerate() {
        return p.a;
    }
    ((1.0 - t.0) * p.a.ln() + t.0 * p.b.ln()).exp()
}

/// Heinz mean `H_t(a, b) = (a #_t b + a #_{1-t} b) / 2`.
pub fn heinz(p: PositivePair, t: Weight) -> f64 {
    if p.is_degenerate() {
        return p.a;
    }
    (weighted_geometric(p, t) + weighted_geometric(p, t.complement())) / 2.0
}

/// Harmonic-Heinz mean `!_t(a, b) = (a !_t b + a !_{1-t} b) / 2`.
///
/// Bitwise symmetric under `a <-> b`.
pub fn harmonic_heinz(p: PositivePair, t: Weight) -> f64 {
    if p.is_degenerate() {
        return p.a;
    }
    let s = 1.0 - t.0;
    (harmonic_weights(p.a, p.b, s, t.0) + harmonic_weights(p.a, p.b, t.0, s)) / 2.0
}

/// Heron mean `K_t(a, b) = (1 - t)(a # b) + t (a ∇ b)`.
pub fn heron(p: PositivePair, t: Weight) -> f64 {
    if p.is_degenerate() {
        return p.a;
    }
    (1.0 - t.0) * weighted_geometric(p, Weight::HALF) + t.0 * weighted_arithmetic(p, Weight::HALF)
}

/// Heron-harmonic mean `F_t(a, b) = (1 - t)(a ! b) + t (a ∇ b)`.
pub fn heron_harmonic(p: PositivePair, t: Weight) -> f64 {
    if p.is_degenerate() {
        return p.a;
    }
    (1.0 - t.0) * weighted_harmonic(p, Weight::HALF) + t.0 * weighted_arithmetic(p, Weight::HALF)
}

/// Kantorovich constant `K(a, b) = (a ∇ b) / (a ! b) >= 1`.
pub fn kantorovich(p: PositivePair) -> f64 {
    if p.is_degenerate() {
        return 1.0;
    }
    weighted_arithmetic(p, Weight::HALF) / weighted_harmonic(p, Weight::HALF)
}

/// `(r(t), R(t)) = (min{t, 1-t}, max{t, 1-t})`.
pub fn min_max_weight(t: Weight) -> (f64, f64) {
    let s = 1.0 - t.0;
    (t.0.min(s), t.0.max(s))
}

/// True when `t <= r(tau)` or `t >= R(tau)`: the refinement side of the
/// interpolation comparisons. Inside the band the inequalities reverse.
pub fn outside_band(t: Weight, tau: Weight) -> bool {
    let (r, big_r) = min_max_weight(tau);
    t.0 <= r || t.0 >= big_r
}

/// `alpha(t) = (1 - 2t)^2`.
pub fn alpha(t: Weight) -> f64 {
    let d = 1.0 - 2.0 * t.0;
    d * d
}

/// The quadratic in `t` interpolating `!_t(a, b)` at `t = 0, tau, 1`:
/// `Q_tau(t) = a∇b + t(1-t)/(tau(1-tau)) (!_tau(a,b) - a∇b)`.
pub fn quad_interpolant(p: PositivePair, tau: Weight, t: Weight) -> Result<f64> {
    let tau = tau.interior("tau")?;
    // !_tau - a∇b taken from the gap form rather than by subtraction
    let mid = weighted_arithmetic(p, Weight::HALF);
    Ok(mid - t.spread() / tau.spread() * heinz_harmonic_gap(p, tau))
}

/// `a ∇_t b - a !_t b = t(1-t)(b-a)^2 / ((1-t) b + t a)`.
pub fn arith_harmonic_gap(p: PositivePair, t: Weight) -> f64 {
    if p.is_degenerate() {
        return 0.0;
    }
    let d = p.b - p.a;
    t.spread() * d * (d / ((1.0 - t.0) * p.b + t.0 * p.a))
}

/// `a ∇ b - !_t(a, b)`; the linear parts of `a ∇_t b` and `a ∇_{1-t} b` cancel.
pub fn heinz_harmonic_gap(p: PositivePair, t: Weight) -> f64 {
    if p.is_degenerate() {
        return 0.0;
    }
    let d = p.b - p.a;
    let s = 1.0 - t.0;
    t.spread() * d / 2.0 * (d / (s * p.b + t.0 * p.a) + d / (t.0 * p.b + s * p.a))
}

/// `e^y - 1 - y`, accurate near zero.
fn expm1_minus_id(y: f64) -> f64 {
    if y.abs() < 0.5 {
        let mut term = y * y / 2.0;
        let mut sum = term;
        let mut k = 3.0;
        while term.abs() > f64::EPSILON * sum.abs() * 1e-2 {
            term *= y / k;
            sum += term;
            k += 1.0;
        }
        sum
    } else {
        y.exp_m1() - y
    }
}

/// `(a #_t b) / (a !_t b) - 1`, written as `(1-t) φ(t x) + t φ(-(1-t) x)` with
/// `x = ln(b/a)` and `φ(y) = e^y - 1 - y >= 0`.
pub fn geo_harmonic_excess(p: PositivePair, t: Weight) -> f64 {
    if p.is_degenerate() {
        return 0.0;
    }
    let x = (p.b / p.a).ln();
    let s = 1.0 - t.0;
    s * expm1_minus_id(t.0 * x) + t.0 * expm1_minus_id(-s * x)
}

/// `a #_t b - a !_t b`.
pub fn geo_harmonic_gap(p: PositivePair, t: Weight) -> f64 {
    weighted_harmonic(p, t) * geo_harmonic_excess(p, t)
}
