//! Matrix refinements of the harmonic-Heinz, arithmetic-harmonic and
//! geometric-harmonic inequalities: Löwner order, determinant, trace and
//! Hilbert–Schmidt norm forms.
//!
//! Löwner checks report `||lhs||_HS` and `||rhs||_HS` as the two sides and the
//! smallest eigenvalue of the oriented difference as the margin, judged against
//! `tol_rel (1 + ||lhs||_HS + ||rhs||_HS)`. Determinant, trace and norm checks
//! are ordinary scalar verdicts.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::hermitian::{
    commutator_norm, det_nth_root, eigh, loewner_leq, psd_det_nth_root, ComplexMatrix, HermitianMatrix,
    PDMatrix,
};
use crate::matrix_means::{arithmetic_hermitian, m_geometric, m_harmonic, m_harmonic_heinz};
use crate::scalar_inequalities::check_hh_quadratic;
use crate::scalar_means::{min_max_weight, outside_band, PositivePair, Weight};
use crate::verdict::{Direction, InequalityVerdict};

pub const SAND: &str = "M-SAND";
pub const HH_QUAD: &str = "M-HH-QUAD";
pub const HH_DET: &str = "M-HH-DET";
pub const HH_TR: &str = "M-HH-TR";
pub const HH_MUL: &str = "M-HH-MUL";
pub const AH: &str = "M-AH";
pub const AH_DET: &str = "M-AH-DET";
pub const AH_KANTO: &str = "M-AH-KANTO";
pub const GH: &str = "M-GH";
pub const GH_DET: &str = "M-GH-DET";
pub const MINK: &str = "M-MINK";
pub const YH_HS: &str = "M-YH-HS";
pub const YH_ID: &str = "M-YH-ID";
pub const INVN: &str = "M-INVN";
pub const YH_GEO: &str = "M-YH-GEO";

/// Relative commutator bound `||AB - BA|| <= COMMUTE_TOL ||A|| ||B||`.
pub const COMMUTE_TOL: f64 = 1e-8;

/// Norms below this fraction of `||X||_HS` count as vanishing.
pub const VANISHING: f64 = 1e-14;

fn loewner(
    id: &str,
    lhs: &HermitianMatrix,
    rhs: &HermitianMatrix,
    direction: Direction,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let v = match direction {
        Direction::Leq => loewner_leq(lhs, rhs, tol_rel)?,
        Direction::Geq => {
            let v = loewner_leq(rhs, lhs, tol_rel)?;
            InequalityVerdict { lhs: v.rhs, rhs: v.lhs, direction: Direction::Geq, ..v }
        }
    };
    Ok(v.renamed(id))
}

fn dim_param(v: InequalityVerdict, a: &PDMatrix) -> InequalityVerdict {
    v.param("dim", a.dim() as f64)
}

fn ratio(t: Weight, tau: Weight) -> f64 {
    t.spread() / tau.spread()
}

fn diff_threshold(x: &HermitianMatrix, y: &HermitianMatrix, tol_rel: f64) -> f64 {
    tol_rel * (1.0 + x.hs_norm() + y.hs_norm())
}

/// Löwner comparability of `A` and `B`: `Greater` when `B >= A`, `Less` when
/// `A >= B`, `Equal` when both hold within tolerance.
pub fn loewner_sign(a: &PDMatrix, b: &PDMatrix, tol_rel: f64) -> Result<Ordering> {
    let up = loewner_leq(a.hermitian(), b.hermitian(), tol_rel)?.holds;
    let down = loewner_leq(b.hermitian(), a.hermitian(), tol_rel)?.holds;
    match (up, down) {
        (true, true) => Ok(Ordering::Equal),
        (true, false) => Ok(Ordering::Greater),
        (false, true) => Ok(Ordering::Less),
        (false, false) => Err(Error::precondition("A and B are not comparable in Löwner order")),
    }
}

// sign of (tau - nu)(B - A) in the ordered sense
fn ordered_sign(a: &PDMatrix, b: &PDMatrix, nu: Weight, tau: Weight, tol_rel: f64) -> Result<f64> {
    let s = match loewner_sign(a, b, tol_rel)? {
        Ordering::Greater => 1.0,
        Ordering::Less => -1.0,
        Ordering::Equal => 0.0,
    };
    Ok(s * (tau.value() - nu.value()))
}

fn require_commuting(a: &PDMatrix, b: &PDMatrix) -> Result<()> {
    let c = commutator_norm(a.matrix(), b.matrix())?;
    if c > COMMUTE_TOL * a.hs_norm() * b.hs_norm() {
        return Err(Error::NotCommuting { commutator_norm: c });
    }
    Ok(())
}

// ((A B^{-1} + B A^{-1} + 2I)/4)^{4t(1-t)}, for commuting A, B
fn kantorovich_power(a: &PDMatrix, b: &PDMatrix, t: Weight) -> Result<PDMatrix> {
    let n = a.dim();
    let ab = a.matrix().matmul(b.inverse().matrix())?;
    let ba = b.matrix().matmul(a.inverse().matrix())?;
    let two = ComplexMatrix::identity(n).scale(2.0);
    let base = ab.try_add(&ba)?.try_add(&two)?.scale(0.25);
    PDMatrix::new(HermitianMatrix::symmetrize(&base)?)?.power(4.0 * t.spread())
}

fn product(x: &PDMatrix, y: &PDMatrix) -> Result<HermitianMatrix> {
    HermitianMatrix::symmetrize(&x.matrix().matmul(y.matrix())?)
}

/// `A!B <= !_t(A,B) <= A∇B`.
pub fn check_matrix_sandwich(a: &PDMatrix, b: &PDMatrix, t: Weight, tol_rel: f64) -> Result<InequalityVerdict> {
    let hm = m_harmonic(a, b, Weight::HALF)?;
    let hh = m_harmonic_heinz(a, b, t)?;
    let am = arithmetic_hermitian(a, b, Weight::HALF)?;
    let low = loewner(SAND, hm.hermitian(), hh.hermitian(), Direction::Leq, tol_rel)?;
    let high = loewner(SAND, hh.hermitian(), &am, Direction::Leq, tol_rel)?;
    Ok(dim_param(InequalityVerdict::worst_of(SAND, vec![low, high]), a).param("t", t.value()))
}

/// `!_t(A,B) + t(1-t)/(tau(1-tau)) [A∇B - !_tau(A,B)] <= A∇B` outside
/// `[r(tau), R(tau)]`, reversed inside.
pub fn check_matrix_hh_quadratic(
    a: &PDMatrix,
    b: &PDMatrix,
    t: Weight,
    tau: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let tau = tau.interior("tau")?;
    let am = arithmetic_hermitian(a, b, Weight::HALF)?;
    let hh_t = m_harmonic_heinz(a, b, t)?;
    let hh_tau = m_harmonic_heinz(a, b, tau)?;
    let gap = am.try_sub(hh_tau.hermitian())?;
    let lhs = hh_t.hermitian().combine(1.0, &gap, ratio(t, tau))?;
    let dir = Direction::leq_if(outside_band(t, tau));
    let v = loewner(HH_QUAD, &lhs, &am, dir, tol_rel)?;
    Ok(dim_param(v, a).param("t", t.value()).param("tau", tau.value()))
}

/// `det(A∇B)^{1/n} >= det(!_t(A,B))^{1/n} + t(1-t)/(tau(1-tau)) det(A∇B - !_tau(A,B))^{1/n}`
/// for `t <= r(tau)` or `t >= R(tau)`.
pub fn check_det_hh(a: &PDMatrix, b: &PDMatrix, t: Weight, tau: Weight, tol_rel: f64) -> Result<InequalityVerdict> {
    let tau = tau.interior("tau")?;
    if !outside_band(t, tau) {
        let (r, big_r) = min_max_weight(tau);
        return Err(Error::precondition(format!(
            "t = {} lies strictly inside ({r}, {big_r}); only the refining direction is available",
            t.value()
        )));
    }
    let am = PDMatrix::new(arithmetic_hermitian(a, b, Weight::HALF)?)?;
    let hh_t = m_harmonic_heinz(a, b, t)?;
    let hh_tau = m_harmonic_heinz(a, b, tau)?;
    let gap = am.hermitian().try_sub(hh_tau.hermitian())?;
    let thr = diff_threshold(am.hermitian(), hh_tau.hermitian(), tol_rel);
    let lhs = det_nth_root(&am, 1.0)?;
    let rhs = det_nth_root(&hh_t, 1.0)? + ratio(t, tau) * psd_det_nth_root(&gap, 1.0, thr)?;
    let v = InequalityVerdict::scalar(HH_DET, lhs, rhs, Direction::Geq, tol_rel)?;
    Ok(dim_param(v, a).param("t", t.value()).param("tau", tau.value()))
}

/// The harmonic-Heinz interpolation comparison applied to `(tr A, tr B)`.
pub fn check_trace_hh(a: &PDMatrix, b: &PDMatrix, t: Weight, tau: Weight, tol_rel: f64) -> Result<InequalityVerdict> {
    let (ta, tb) = (a.hermitian().trace(), b.hermitian().trace());
    let p = PositivePair::new(ta, tb)?;
    let v = check_hh_quadratic(p, t, tau, tol_rel)?.renamed(HH_TR);
    Ok(dim_param(v, a))
}

/// `((AB^{-1} + BA^{-1} + 2I)/4)^{4t(1-t)} !_t(A,B) <= A∇B` for commuting `A`, `B`.
pub fn check_commuting_hh_multiplicative(
    a: &PDMatrix,
    b: &PDMatrix,
    t: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let t = t.interior("t")?;
    require_commuting(a, b)?;
    let k = kantorovich_power(a, b, t)?;
    let lhs = product(&k, &m_harmonic_heinz(a, b, t)?)?;
    let rhs = arithmetic_hermitian(a, b, Weight::HALF)?;
    let v = loewner(HH_MUL, &lhs, &rhs, Direction::Leq, tol_rel)?;
    Ok(dim_param(v, a).param("t", t.value()))
}

/// `tau(1-tau)(A∇_nu B - A!_nu B) <= nu(1-nu)(A∇_tau B - A!_tau B)` when
/// `(tau - nu)(B - A) >= 0` in Löwner order, reversed under the opposite order.
pub fn check_arith_har_matrix(
    a: &PDMatrix,
    b: &PDMatrix,
    nu: Weight,
    tau: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let sign = ordered_sign(a, b, nu, tau, tol_rel)?;
    let gap = |s: Weight| -> Result<HermitianMatrix> {
        arithmetic_hermitian(a, b, s)?.try_sub(m_harmonic(a, b, s)?.hermitian())
    };
    let lhs = gap(nu)?.scale(tau.spread());
    let rhs = gap(tau)?.scale(nu.spread());
    let v = loewner(AH, &lhs, &rhs, Direction::leq_if(sign >= 0.0), tol_rel)?;
    Ok(dim_param(v, a).param("nu", nu.value()).param("tau", tau.value()))
}

fn require_forward(a: &PDMatrix, b: &PDMatrix, nu: Weight, tau: Weight, tol_rel: f64) -> Result<()> {
    if ordered_sign(a, b, nu, tau, tol_rel)? < 0.0 {
        return Err(Error::precondition(
            "(tau - nu)(B - A) <= 0; only the (tau - nu)(B - A) >= 0 form is available",
        ));
    }
    Ok(())
}

// det(M_tau)^{p/n} >= det(A!_tau B)^{p/n} + ratio det(upper_nu - A!_nu B)^{p/n}
fn det_links(
    id: &str,
    a: &PDMatrix,
    b: &PDMatrix,
    nu: Weight,
    tau: Weight,
    upper: impl Fn(Weight) -> Result<PDMatrix>,
    exponents: &[f64],
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let nu = nu.interior("nu")?;
    let hm_tau = m_harmonic(a, b, tau)?;
    let up_tau = upper(tau)?;
    let up_nu = upper(nu)?;
    let hm_nu = m_harmonic(a, b, nu)?;
    let gap = up_nu.hermitian().try_sub(hm_nu.hermitian())?;
    let thr = diff_threshold(up_nu.hermitian(), hm_nu.hermitian(), tol_rel);
    let r = ratio(tau, nu);
    let mut links = Vec::new();
    for &p in exponents {
        let lhs = det_nth_root(&hm_tau, p)? + r * psd_det_nth_root(&gap, p, thr)?;
        let rhs = det_nth_root(&up_tau, p)?;
        links.push(InequalityVerdict::scalar(id, lhs, rhs, Direction::Leq, tol_rel)?.param("exponent_n", p));
    }
    let v = InequalityVerdict::worst_of(id, links);
    Ok(dim_param(v, a).param("nu", nu.value()).param("tau", tau.value()))
}

/// `det(A!_tau B)^{p/n} + tau(1-tau)/(nu(1-nu)) det(A∇_nu B - A!_nu B)^{p/n} <= det(A∇_tau B)^{p/n}`
/// for `p = 1, 2`, when `(tau - nu)(B - A) >= 0`.
pub fn check_arith_har_det(
    a: &PDMatrix,
    b: &PDMatrix,
    nu: Weight,
    tau: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    require_forward(a, b, nu, tau, tol_rel)?;
    let upper = |s: Weight| PDMatrix::new(arithmetic_hermitian(a, b, s)?);
    det_links(AH_DET, a, b, nu, tau, upper, &[1.0, 2.0], tol_rel)
}

/// `((BA^{-1} + AB^{-1} + 2I)/4)^{4t(1-t)} (A!_t B) <= A∇_t B` for commuting `A`, `B`.
pub fn check_arith_har_kanto_matrix(
    a: &PDMatrix,
    b: &PDMatrix,
    t: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let t = t.interior("t")?;
    require_commuting(a, b)?;
    let k = kantorovich_power(a, b, t)?;
    let lhs = product(&k, &m_harmonic(a, b, t)?)?;
    let rhs = arithmetic_hermitian(a, b, t)?;
    let v = loewner(AH_KANTO, &lhs, &rhs, Direction::Leq, tol_rel)?;
    Ok(dim_param(v, a).param("t", t.value()))
}

/// `tau(1-tau)(A#_nu B - A!_nu B) <= nu(1-nu)(A#_tau B - A!_tau B)` when
/// `(tau - nu)(B - A) >= 0`.
pub fn check_geo_har_matrix(
    a: &PDMatrix,
    b: &PDMatrix,
    nu: Weight,
    tau: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    require_forward(a, b, nu, tau, tol_rel)?;
    let gap = |s: Weight| -> Result<HermitianMatrix> {
        m_geometric(a, b, s)?.hermitian().try_sub(m_harmonic(a, b, s)?.hermitian())
    };
    let lhs = gap(nu)?.scale(tau.spread());
    let rhs = gap(tau)?.scale(nu.spread());
    let v = loewner(GH, &lhs, &rhs, Direction::Leq, tol_rel)?;
    Ok(dim_param(v, a).param("nu", nu.value()).param("tau", tau.value()))
}

/// `det(A!_tau B)^{1/n} + tau(1-tau)/(nu(1-nu)) det(A#_nu B - A!_nu B)^{1/n} <= det(A#_tau B)^{1/n}`
/// when `(tau - nu)(B - A) >= 0`.
pub fn check_geo_har_det(
    a: &PDMatrix,
    b: &PDMatrix,
    nu: Weight,
    tau: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    require_forward(a, b, nu, tau, tol_rel)?;
    let upper = |s: Weight| m_geometric(a, b, s);
    det_links(GH_DET, a, b, nu, tau, upper, &[1.0], tol_rel)
}

/// `(prod a_i)^{1/n} + (prod b_i)^{1/n} <= (prod (a_i + b_i))^{1/n}`.
pub fn check_minkowski(a: &[f64], b: &[f64], tol_rel: f64) -> Result<InequalityVerdict> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::DimensionMismatch { left: (a.len(), 1), right: (b.len(), 1) });
    }
    if a.iter().chain(b).any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(Error::domain("Minkowski entries must be positive and finite"));
    }
    let n = a.len() as f64;
    let geo = |xs: &mut dyn Iterator<Item = f64>| (xs.map(f64::ln).sum::<f64>() / n).exp();
    let lhs = geo(&mut a.iter().copied()) + geo(&mut b.iter().copied());
    let rhs = geo(&mut a.iter().zip(b).map(|(x, y)| x + y));
    let v = InequalityVerdict::scalar(MINK, lhs, rhs, Direction::Leq, tol_rel)?;
    Ok(v.param("dim", n))
}

// ||(1-t) A^{-1} X + t X B^{-1}||_HS
fn harmonic_young_norm(a: &PDMatrix, b: &PDMatrix, x: &ComplexMatrix, t: Weight) -> Result<f64> {
    let left = a.inverse().matrix().matmul(x)?;
    let right = x.matmul(b.inverse().matrix())?;
    Ok(left.combine(1.0 - t.value(), &right, t.value())?.hs_norm())
}

fn check_x(a: &PDMatrix, x: &ComplexMatrix) -> Result<()> {
    if x.shape() != (a.dim(), a.dim()) {
        return Err(Error::DimensionMismatch { left: (a.dim(), a.dim()), right: x.shape() });
    }
    Ok(())
}

fn young_verdict(
    id: &str,
    a: &PDMatrix,
    b: &PDMatrix,
    x: &ComplexMatrix,
    t: Weight,
    rhs_of: impl Fn() -> Result<f64>,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    check_x(a, x)?;
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: (a.dim(), a.dim()), right: (b.dim(), b.dim()) });
    }
    let nx = x.hs_norm();
    if nx == 0.0 {
        let v = InequalityVerdict::scalar(id, 0.0, 0.0, Direction::Leq, tol_rel)?;
        return Ok(dim_param(v, a).param("t", t.value()));
    }
    let den = harmonic_young_norm(a, b, x, t)?;
    let rhs = rhs_of()?;
    if den < VANISHING * nx || rhs < VANISHING * nx {
        return Err(Error::precondition("a norm in the Young-type inequality vanishes"));
    }
    // ||X||^2 / den, scaled to avoid overflow of ||X||^2
    let lhs = nx * (nx / den);
    let v = InequalityVerdict::scalar(id, lhs, rhs, Direction::Leq, tol_rel)?;
    Ok(dim_param(v, a).param("t", t.value()))
}

/// `||X||^2 ||(1-t)A^{-1}X + tXB^{-1}||^{-1} <= ||(1-t)AX + tXB||` (HS norms).
pub fn check_young_harmonic_hs(
    a: &PDMatrix,
    b: &PDMatrix,
    x: &ComplexMatrix,
    t: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let rhs = || -> Result<f64> {
        let left = a.matrix().matmul(x)?;
        let right = x.matmul(b.matrix())?;
        Ok(left.combine(1.0 - t.value(), &right, t.value())?.hs_norm())
    };
    young_verdict(YH_HS, a, b, x, t, rhs, tol_rel)
}

/// `||X||^2 ||(1-t)A^{-1}X + tXB^{-1}||^{-1} <= ||A^{1-t} X B^t||` (HS norms).
pub fn check_young_harmonic_geo(
    a: &PDMatrix,
    b: &PDMatrix,
    x: &ComplexMatrix,
    t: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    let rhs = || -> Result<f64> {
        let left = a.power(1.0 - t.value())?;
        let right = b.power(t.value())?;
        Ok(left.matrix().matmul(x)?.matmul(right.matrix())?.hs_norm())
    };
    young_verdict(YH_GEO, a, b, x, t, rhs, tol_rel)
}

/// `n ||C||^{-1} <= ||C^{-1}||` (HS norms).
pub fn check_inverse_norm(c: &PDMatrix, tol_rel: f64) -> Result<InequalityVerdict> {
    let n = c.dim() as f64;
    let lhs = n / c.hs_norm();
    let rhs = c.inverse().hs_norm();
    Ok(InequalityVerdict::scalar(INVN, lhs, rhs, Direction::Leq, tol_rel)?.param("dim", n))
}

/// `n ||(1-t)A^{-1} + tB^{-1}||^{-1} <= ||(1-t)A + tB||` (HS norms).
///
/// The inequality factors through `C = (1-t)A^{-1} + tB^{-1}` as
/// `n/||C|| <= ||C^{-1}|| <= ||(1-t)A + tB||`. Both links are evaluated; if
/// either fails it is returned (relabelled), otherwise the main verdict is,
/// with the link margins attached as params.
pub fn check_young_harmonic_identity(
    a: &PDMatrix,
    b: &PDMatrix,
    t: Weight,
    tol_rel: f64,
) -> Result<InequalityVerdict> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: (a.dim(), a.dim()), right: (b.dim(), b.dim()) });
    }
    let n = a.dim() as f64;
    let c = PDMatrix::new(a.inverse().hermitian().combine(1.0 - t.value(), b.inverse().hermitian(), t.value())?)?;
    let arith = arithmetic_hermitian(a, b, t)?.hs_norm();
    let main = InequalityVerdict::scalar(YH_ID, n / c.hs_norm(), arith, Direction::Leq, tol_rel)?;
    let lemma = check_inverse_norm(&c, tol_rel)?;
    let norm_link = InequalityVerdict::scalar(YH_ID, lemma.rhs, arith, Direction::Leq, tol_rel)?;
    let v = if !lemma.holds || !norm_link.holds {
        InequalityVerdict::worst_of(YH_ID, vec![lemma.renamed(YH_ID), norm_link])
    } else {
        main.param("lemma_margin", lemma.margin).param("norm_link_margin", norm_link.margin)
    };
    Ok(v.param("dim", n).param("t", t.value()))
}

pub const ALL: [&str; 15] = [
    SAND, HH_QUAD, HH_DET, HH_TR, HH_MUL, AH, AH_DET, AH_KANTO, GH, GH_DET, MINK, YH_HS, YH_ID, INVN, YH_GEO,
];

/// Operands for one matrix check. `a` doubles as `C` for [`INVN`]; [`MINK`]
/// reads the diagonals of `a` and `b`.
#[derive(Debug, Clone)]
pub struct MatrixCheckInput {
    pub a: PDMatrix,
    pub b: Option<PDMatrix>,
    pub x: Option<ComplexMatrix>,
    pub t: Option<Weight>,
    pub tau: Option<Weight>,
    pub nu: Option<Weight>,
}

fn required<T: Clone>(v: &Option<T>, name: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::Config(format!("missing {name}")))
}

fn real_diagonal(m: &PDMatrix) -> Vec<f64> {
    (0..m.dim()).map(|i| m.matrix().get(i, i).re).collect()
}

/// Dispatch `id` (one of [`ALL`]) on `input`.
pub fn run_matrix_check(id: &str, input: &MatrixCheckInput, tol_rel: f64) -> Result<InequalityVerdict> {
    let a = &input.a;
    if id == INVN {
        return check_inverse_norm(a, tol_rel);
    }
    let b = &required(&input.b, "B")?;
    let t = || required(&input.t, "t");
    let tau = || required(&input.tau, "tau");
    let nu = || required(&input.nu, "nu");
    let x = || required(&input.x, "X");
    match id {
        SAND => check_matrix_sandwich(a, b, t()?, tol_rel),
        HH_QUAD => check_matrix_hh_quadratic(a, b, t()?, tau()?, tol_rel),
        HH_DET => check_det_hh(a, b, t()?, tau()?, tol_rel),
        HH_TR => check_trace_hh(a, b, t()?, tau()?, tol_rel),
        HH_MUL => check_commuting_hh_multiplicative(a, b, t()?, tol_rel),
        AH => check_arith_har_matrix(a, b, nu()?, tau()?, tol_rel),
        AH_DET => check_arith_har_det(a, b, nu()?, tau()?, tol_rel),
        AH_KANTO => check_arith_har_kanto_matrix(a, b, t()?, tol_rel),
        GH => check_geo_har_matrix(a, b, nu()?, tau()?, tol_rel),
        GH_DET => check_geo_har_det(a, b, nu()?, tau()?, tol_rel),
        MINK => check_minkowski(&real_diagonal(a), &real_diagonal(b), tol_rel),
        YH_HS => check_young_harmonic_hs(a, b, &x()?, t()?, tol_rel),
        YH_ID => check_young_harmonic_identity(a, b, t()?, tol_rel),
        YH_GEO => check_young_harmonic_geo(a, b, &x()?, t()?, tol_rel),
        _ => Err(Error::Config(format!("unknown matrix check {id:?}"))),
    }
}

/// Smallest eigenvalue of a Hermitian matrix; exposed for callers that build
/// their own Löwner comparisons.
pub fn lambda_min(h: &HermitianMatrix) -> Result<f64> {
    Ok(eigh(h)?.min_eigenvalue())
}
