//! Scalar refinements and reverses of the harmonic-Heinz, arithmetic-harmonic
//! and geometric-harmonic mean inequalities, plus sampled monotonicity probes
//! for the one-variable functions behind them.
//!
//! Each `check_*` picks the direction the inequality is claimed to hold in for
//! the given parameters and returns the verdict. Where both sides are
//! themselves differences of nearby means the margin is computed from the
//! cancellation-free gap forms in [`crate::scalar_means`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar_means::{
    arith_harmonic_gap, geo_harmonic_excess, geo_harmonic_gap, harmonic_heinz, heinz_harmonic_gap,
    kantorovich, min_max_weight, outside_band, weighted_arithmetic, weighted_geometric,
    weighted_harmonic, PositivePair, Weight,
};
use crate::verdict::{Direction, InequalityVerdict};

pub const HH_QUAD: &str = "S-HH-QUAD";
pub const HH_MUL: &str = "S-HH-MUL";
pub const LOGQ: &str = "S-LOGQ";
pub const AH_QUAD: &str = "S-AH-QUAD";
pub const AH_KANTO: &str = "S-AH-KANTO";
pub const AH_SQ: &str = "S-AH-SQ";
pub const GH_QUAD: &str = "S-GH-QUAD";
pub const GH_MUL: &str = "S-GH-MUL";
pub const CHAIN: &str = "S-CHAIN";

/// Default grid size for [`probe_monotonicity`].
pub const DEFAULT_GRID: usize = 1001;

// Verdict whose margin in the LEQ orientation (`rhs - lhs`) is supplied by the caller.
fn with_leq_margin(
    id: &str,
    lhs: f64,
    rhs: f64,
    direction: Direction,
    leq_margin: f64,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let margin = match direction {
        Direction::Leq => leq_margin,
        Direction::Geq => -leq_margin,
    };
    InequalityVerdict::with_margin(id, lhs, rhs, direction, margin, tol_rel * (lhs.abs() + rhs.abs()))
}

// exp(log_x) neither overflows nor underflows
fn representable(log_x: f64) -> bool {
    log_x.abs() < 700.0
}

// Multiplicative sides that leave the f64 range are compared through their
// logarithms; the verdict is marked with `log_scale = 1`.
fn log_scale_verdict(
    id: &str,
    log_lhs: f64,
    log_rhs: f64,
    direction: Direction,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    Ok(InequalityVerdict::scalar(id, log_lhs, log_rhs, direction, tol_rel)?.param("log_scale", 1.0))
}

fn pair_params(v: InequalityVerdict, p: PositivePair) -> InequalityVerdict {
    v.param("a", p.a()).param("b", p.b())
}

/// `!_t(a,b) <= Q_tau(t; a,b)` outside `[r(tau), R(tau)]`, reversed inside.
pub fn check_hh_quadratic(
    p: PositivePair,
    t: Weight,
    tau: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let tau = tau.interior("tau")?;
    let mid = weighted_arithmetic(p, Weight::HALF);
    let ratio = t.spread() / tau.spread();
    let gap_tau = heinz_harmonic_gap(p, tau);
    let lhs = harmonic_heinz(p, t);
    let rhs = mid - ratio * gap_tau;
    // Q - !_t = (a∇b - !_t) - ratio (a∇b - !_tau)
    let leq_margin = heinz_harmonic_gap(p, t) - ratio * gap_tau;
    let dir = Direction::leq_if(outside_band(t, tau));
    let v = with_leq_margin(HH_QUAD, lhs, rhs, dir, leq_margin, tol_rel)?;
    Ok(pair_params(v, p).param("t", t.value()).param("tau", tau.value()))
}

/// `!_t(a,b) (a∇b / !_tau(a,b))^{t(1-t)/(tau(1-tau))} <= a∇b` outside the band,
/// reversed inside.
pub fn check_hh_multiplicative(
    p: PositivePair,
    t: Weight,
    tau: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let t = t.interior("t")?;
    let tau = tau.interior("tau")?;
    let mid = weighted_arithmetic(p, Weight::HALF);
    let exponent = t.spread() / tau.spread();
    let (hh_t, factor) = (harmonic_heinz(p, t), mid / harmonic_heinz(p, tau));
    let log_lhs = hh_t.ln() + exponent * factor.ln();
    let dir = Direction::leq_if(outside_band(t, tau));
    let v = if representable(log_lhs) {
        InequalityVerdict::scalar(HH_MUL, hh_t * factor.powf(exponent), mid, dir, tol_rel)?
    } else {
        log_scale_verdict(HH_MUL, log_lhs, mid.ln(), dir, tol_rel)?
    };
    Ok(pair_params(v, p).param("t", t.value()).param("tau", tau.value()))
}

/// Compares the quotient of gaps `(a∇b - !_tau)/(a∇b - !_t)` with the quotient
/// of their logarithmic counterparts: `<=` outside the band, `>=` inside.
pub fn check_quotient_log_comparison(
    p: PositivePair,
    t: Weight,
    tau: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    if p.is_degenerate() {
        return Err(Error::domain("quotients are 0/0 when a = b"));
    }
    if !t.is_interior() {
        return Err(Error::domain(format!(
            "t = {} makes !_t(a,b) = a∇b, the denominators vanish",
            t.value()
        )));
    }
    // both quotients are scale invariant; normalising avoids underflow of the gaps
    let q = PositivePair::new(1.0, p.ratio())?;
    let gap = |s: Weight| heinz_harmonic_gap(q, s);
    let log_gap = |s: Weight| (gap(s) / harmonic_heinz(q, s)).ln_1p();
    let (gap_t, log_t) = (gap(t), log_gap(t));
    if gap_t <= 0.0 || log_t <= 0.0 {
        return Err(Error::domain("a∇b - !_t(a,b) underflows to zero"));
    }
    let lhs = gap(tau) / gap_t;
    let rhs = log_gap(tau) / log_t;
    let dir = Direction::leq_if(outside_band(t, tau));
    let v = InequalityVerdict::scalar(LOGQ, lhs, rhs, dir, tol_rel)?;
    Ok(pair_params(v, p).param("t", t.value()).param("tau", tau.value()))
}

/// `tau(1-tau)(a∇_nu b - a!_nu b) <= nu(1-nu)(a∇_tau b - a!_tau b)` when
/// `(b-a)(tau-nu) >= 0`, reversed otherwise.
pub fn check_arith_har_quadratic(
    p: PositivePair,
    nu: Weight,
    tau: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let lhs = tau.spread() * arith_harmonic_gap(p, nu);
    let rhs = nu.spread() * arith_harmonic_gap(p, tau);
    let dir = Direction::leq_if((p.b() - p.a()) * (tau.value() - nu.value()) >= 0.0);
    let v = InequalityVerdict::scalar(AH_QUAD, lhs, rhs, dir, tol_rel)?;
    Ok(pair_params(v, p).param("nu", nu.value()).param("tau", tau.value()))
}

/// The chain `(a!_t b) K^{2r(t)} <= (a!_t b) K^{4t(1-t)} <= a∇_t b`, reported
/// through its tightest link.
pub fn check_arith_har_kantorovich(
    p: PositivePair,
    t: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let t = t.interior("t")?;
    let k = kantorovich(p);
    let h = weighted_harmonic(p, t);
    let (r, _) = min_max_weight(t);
    let refined = h * k.powf(4.0 * t.spread());
    let classical = h * k.powf(2.0 * r);
    let main = InequalityVerdict::scalar(AH_KANTO, refined, weighted_arithmetic(p, t), Direction::Leq, tol_rel)?;
    let link = InequalityVerdict::scalar(AH_KANTO, classical, refined, Direction::Leq, tol_rel)?;
    let v = InequalityVerdict::worst_of(AH_KANTO, vec![main, link]);
    Ok(pair_params(v, p).param("t", t.value()).param("kantorovich", k))
}

fn square_excess(p: PositivePair, s: Weight) -> f64 {
    // (∇² - !²)/(s(1-s)) = gap (∇ + !)/(s(1-s))
    arith_harmonic_gap(p, s) * (weighted_arithmetic(p, s) + weighted_harmonic(p, s)) / s.spread()
}

/// `((a∇_nu b)^2 - (a!_nu b)^2)/(nu(1-nu)) <= (same at tau)` when
/// `(tau-nu)(b-a) > 0`, reversed when negative. A zero product is reported in
/// the `<=` orientation, where both sides agree analytically.
pub fn check_arith_har_square(
    p: PositivePair,
    nu: Weight,
    tau: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let nu = nu.interior("nu")?;
    let tau = tau.interior("tau")?;
    let lhs = square_excess(p, nu);
    let rhs = square_excess(p, tau);
    let dir = Direction::leq_if((tau.value() - nu.value()) * (p.b() - p.a()) >= 0.0);
    let v = InequalityVerdict::scalar(AH_SQ, lhs, rhs, dir, tol_rel)?;
    Ok(pair_params(v, p).param("nu", nu.value()).param("tau", tau.value()))
}

/// `(a#_nu b - a!_nu b)/(nu(1-nu)) <= (a#_tau b - a!_tau b)/(tau(1-tau))`,
/// only for `(tau-nu)(b-a) > 0`.
pub fn check_geo_har_quadratic(
    p: PositivePair,
    nu: Weight,
    tau: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let nu = nu.interior("nu")?;
    let tau = tau.interior("tau")?;
    if (tau.value() - nu.value()) * (p.b() - p.a()) <= 0.0 {
        return Err(Error::precondition(
            "(tau - nu)(b - a) must be positive; no reverse form is available",
        ));
    }
    let lhs = geo_harmonic_gap(p, nu) / nu.spread();
    let rhs = geo_harmonic_gap(p, tau) / tau.spread();
    let v = InequalityVerdict::scalar(GH_QUAD, lhs, rhs, Direction::Leq, tol_rel)?;
    Ok(pair_params(v, p).param("nu", nu.value()).param("tau", tau.value()))
}

/// `a#_tau b >= (a!_tau b)(a#_nu b / a!_nu b)^{tau(1-tau)/(nu(1-nu))}` when
/// `(b-a)(tau-nu) >= 0`, reversed otherwise.
pub fn check_geo_har_multiplicative(
    p: PositivePair,
    nu: Weight,
    tau: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let nu = nu.interior("nu")?;
    let tau = tau.interior("tau")?;
    let exponent = tau.spread() / nu.spread();
    let (e_tau, e_nu) = (geo_harmonic_excess(p, tau), geo_harmonic_excess(p, nu));
    let lhs = weighted_geometric(p, tau);
    let hm = weighted_harmonic(p, tau);
    let log_rhs = hm.ln() + exponent * e_nu.ln_1p();
    // lhs / rhs = (1 + E_tau) / (1 + E_nu)^exponent
    let log_ratio = e_tau.ln_1p() - exponent * e_nu.ln_1p();
    let dir = if (p.b() - p.a()) * (tau.value() - nu.value()) >= 0.0 {
        Direction::Geq
    } else {
        Direction::Leq
    };
    let v = if representable(log_rhs) {
        let rhs = hm * (1.0 + e_nu).powf(exponent);
        with_leq_margin(GH_MUL, lhs, rhs, dir, -rhs * log_ratio.exp_m1(), tol_rel)?
    } else {
        log_scale_verdict(GH_MUL, lhs.ln(), log_rhs, dir, tol_rel)?
    };
    Ok(pair_params(v, p).param("nu", nu.value()).param("tau", tau.value()))
}

/// Linear versus quadratic refinement of `a!_t b <= a∇_t b`.
///
/// Checks `r(t) <= 2t(1-t) <= R(t)` and then, depending on the sign of
/// `(b-a)(2t-1)`, the refining chain built on `2r(t)` or the reversing chain
/// built on `2R(t)`. The tightest link is reported.
pub fn check_linear_quadratic_chain(
    p: PositivePair,
    t: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let (r, big_r) = min_max_weight(t);
    let quad = 2.0 * t.spread();
    let d = arith_harmonic_gap(p, Weight::HALF);
    let h = weighted_harmonic(p, t);
    let m = weighted_arithmetic(p, t);
    let mid = h + 2.0 * quad * d;
    let gap_t = arith_harmonic_gap(p, t);

    let mut links = vec![
        InequalityVerdict::scalar(CHAIN, r, quad, Direction::Leq, tol_rel)?,
        InequalityVerdict::scalar(CHAIN, big_r, quad, Direction::Geq, tol_rel)?,
    ];
    if (p.b() - p.a()) * (2.0 * t.value() - 1.0) >= 0.0 {
        let low = h + 2.0 * r * d;
        links.push(with_leq_margin(CHAIN, low, mid, Direction::Leq, 2.0 * (quad - r) * d, tol_rel)?);
        links.push(with_leq_margin(CHAIN, mid, m, Direction::Leq, gap_t - 2.0 * quad * d, tol_rel)?);
    } else {
        let high = h + 2.0 * big_r * d;
        links.push(with_leq_margin(CHAIN, high, mid, Direction::Geq, 2.0 * (quad - big_r) * d, tol_rel)?);
        links.push(with_leq_margin(CHAIN, mid, m, Direction::Geq, gap_t - 2.0 * quad * d, tol_rel)?);
    }
    let v = InequalityVerdict::worst_of(CHAIN, links);
    Ok(pair_params(v, p).param("t", t.value()))
}

/// The one-variable functions of `t` whose monotonicity drives the scalar
/// inequalities. All are evaluated at `(1, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MonotoneFunctionId {
    /// `(1 + c - (1!_t c + 1!_{1-t} c)) / (t(1-t))`
    AddHeinzHar,
    /// `((1 + c)/(1!_t c + 1!_{1-t} c))^{1/(t(1-t))}`
    MulHeinzHar,
    /// `(1∇_t c / 1!_t c)^{1/(t(1-t))}`
    MulArithHar,
    /// `((1∇_t c)^2 - (1!_t c)^2) / (t(1-t))`
    SqArithHar,
    /// `(1#_t c - 1!_t c) / (t(1-t))`, only for `c > 1`
    AddGeoHar,
    /// `(1#_t c / 1!_t c)^{1/(t(1-t))}`
    MulGeoHar,
    /// `t -> !_t(1, c)`
    HhProfile,
}

impl MonotoneFunctionId {
    pub const ALL: [MonotoneFunctionId; 7] = [
        MonotoneFunctionId::AddHeinzHar,
        MonotoneFunctionId::MulHeinzHar,
        MonotoneFunctionId::MulArithHar,
        MonotoneFunctionId::SqArithHar,
        MonotoneFunctionId::AddGeoHar,
        MonotoneFunctionId::MulGeoHar,
        MonotoneFunctionId::HhProfile,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MonotoneFunctionId::AddHeinzHar => "ADD_HEINZ_HAR",
            MonotoneFunctionId::MulHeinzHar => "MUL_HEINZ_HAR",
            MonotoneFunctionId::MulArithHar => "MUL_ARITH_HAR",
            MonotoneFunctionId::SqArithHar => "SQ_ARITH_HAR",
            MonotoneFunctionId::AddGeoHar => "ADD_GEO_HAR",
            MonotoneFunctionId::MulGeoHar => "MUL_GEO_HAR",
            MonotoneFunctionId::HhProfile => "HH_PROFILE",
        }
    }

    /// Check ID used in reports, e.g. `S-MONO-ADD_GEO_HAR`.
    pub fn check_id(self) -> String {
        format!("S-MONO-{}", self.as_str())
    }

    /// Whether `c` lies in the range the monotonicity claim is made for.
    pub fn accepts(self, c: f64) -> bool {
        match self {
            MonotoneFunctionId::AddGeoHar => c > 1.0,
            _ => c > 0.0,
        }
    }

    /// Multiplicative functions are probed through `ln f`, which has the same
    /// monotonicity and stays finite near the endpoints.
    pub fn is_logarithmic(self) -> bool {
        matches!(
            self,
            MonotoneFunctionId::MulHeinzHar | MonotoneFunctionId::MulArithHar | MonotoneFunctionId::MulGeoHar
        )
    }

    fn pattern(self, c: f64) -> Pattern {
        use MonotoneFunctionId::*;
        match self {
            AddHeinzHar | MulHeinzHar | MulArithHar | HhProfile => Pattern::VShape,
            AddGeoHar => Pattern::Increasing,
            SqArithHar | MulGeoHar if c < 1.0 => Pattern::Decreasing,
            SqArithHar | MulGeoHar => Pattern::Increasing,
        }
    }

    /// `f(t)`, or `ln f(t)` for the multiplicative functions.
    pub fn evaluate(self, p: PositivePair, t: Weight) -> Result<f64> {
        use MonotoneFunctionId::*;
        let t = match self {
            HhProfile => t,
            _ => t.interior("t")?,
        };
        let s = t.spread();
        Ok(match self {
            AddHeinzHar => 2.0 * heinz_harmonic_gap(p, t) / s,
            MulHeinzHar => (heinz_harmonic_gap(p, t) / harmonic_heinz(p, t)).ln_1p() / s,
            MulArithHar => (arith_harmonic_gap(p, t) / weighted_harmonic(p, t)).ln_1p() / s,
            SqArithHar => square_excess(p, t),
            AddGeoHar => geo_harmonic_gap(p, t) / s,
            MulGeoHar => geo_harmonic_excess(p, t).ln_1p() / s,
            HhProfile => harmonic_heinz(p, t),
        })
    }
}

impl fmt::Display for MonotoneFunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MonotoneFunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim_start_matches("S-MONO-");
        MonotoneFunctionId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(key))
            .ok_or_else(|| Error::domain(format!("unknown monotone function {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pattern {
    VShape,
    Increasing,
    Decreasing,
}

/// `n` equally spaced points strictly inside `(0, 1)`, kept `1/(2n)` away from
/// the endpoints.
pub fn probe_grid(n: usize) -> Vec<f64> {
    let m = 1.0 / (2.0 * n as f64);
    let h = (1.0 - 2.0 * m) / (n as f64 - 1.0);
    (0..n).map(|i| m + i as f64 * h).collect()
}

/// Samples the selected function on [`probe_grid`] and checks its claimed
/// monotonicity pattern pair by pair. The verdict is the consecutive pair with
/// the least slack, with `lhs`/`rhs` set to the two sampled values.
///
/// For V-shaped functions the pair straddling `t = 1/2` is skipped.
pub fn probe_monotonicity(
    id: MonotoneFunctionId,
    c: f64,
    grid_points: usize,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    if grid_points < 3 {
        return Err(Error::domain(format!("grid needs at least 3 points, got {grid_points}")));
    }
    if !c.is_finite() || !id.accepts(c) {
        return Err(Error::domain(format!("c = {c} outside the range of {id}")));
    }
    let p = PositivePair::new(1.0, c)?;
    let pattern = id.pattern(c);
    let grid = probe_grid(grid_points);
    let values = grid
        .iter()
        .map(|&t| id.evaluate(p, Weight::new(t)?))
        .collect::<Result<Vec<f64>>>()?;

    let check_id = id.check_id();
    let mut worst: Option<InequalityVerdict> = None;
    for i in 0..grid_points - 1 {
        let (ti, tj) = (grid[i], grid[i + 1]);
        let dir = match pattern {
            Pattern::Increasing => Direction::Leq,
            Pattern::Decreasing => Direction::Geq,
            Pattern::VShape if tj <= 0.5 => Direction::Geq,
            Pattern::VShape if ti >= 0.5 => Direction::Leq,
            Pattern::VShape => continue,
        };
        let v = InequalityVerdict::scalar(&check_id, values[i], values[i + 1], dir, tol_rel)?;
        if worst.as_ref().is_none_or(|w| v.slack() < w.slack()) {
            worst = Some(v.param("t_i", ti).param("t_j", tj));
        }
    }
    let v = worst.ok_or_else(|| Error::domain("no comparable grid pairs"))?;
    Ok(v.param("c", c).param("grid", grid_points as f64))
}
