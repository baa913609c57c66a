//! The second approximate equation as a finite vector system.
//!
//! At height t the equation splits zeta into m = floor(sqrt(t/2pi)) term
//! vectors X_n, m middle vectors Y_n = chi(s) n^(s-1), and a remainder R.
//! The system is conformally symmetric about the axis at angle
//! Arg(chi)/2 + pi/2; on the critical line the symmetry sharpens to mirror
//! symmetry, which is what pins the non-trivial zeros to the L-projection.

use crate::chi;
use crate::error::{Error, Result};
use crate::phase;
use crate::spiral;
use crate::summation;
use crate::types::{PlaneVector, StripPoint};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// The finite system {X_1..X_m, Y_1..Y_m, R, m} at a point s.
#[derive(Debug, Clone)]
pub struct VectorSystem {
    pub s: StripPoint,
    pub m: u64,
    pub x: Vec<PlaneVector>,
    pub y: Vec<PlaneVector>,
    pub r_leading: PlaneVector,
    /// Angle of the normal to the symmetry axis, in (-pi, pi].
    pub phi_l: f64,
    /// Angle of the symmetry axis: phi_l + pi/2 (mod 2pi).
    pub phi_m: f64,
    /// The lambda factor used for the middle-vector phases.
    pub lambda: f64,
}

/// Order-independent sums of the two vector families.
#[derive(Debug, Clone, Copy)]
pub struct Invariants {
    pub l1: PlaneVector,
    pub l2: PlaneVector,
}

/// Projection split of an oracle zeta value against a vector system.
#[derive(Debug, Clone, Copy)]
pub struct Decomposition {
    pub zeta_l: f64,
    pub zeta_m: f64,
    pub l1: PlaneVector,
    pub l2: PlaneVector,
    /// Sum of all X and Y projections on the symmetry axis.
    pub delta_l: f64,
    /// |R| sin(delta_phi_r) for the empirical remainder.
    pub delta_r: f64,
    /// Deviation of the empirical remainder from the L direction, folded into
    /// (-pi/2, pi/2].
    pub delta_phi_r: f64,
}

/// Residuals of the three symmetry laws at a point.
#[derive(Debug, Clone, Copy)]
pub struct SymmetryReport {
    /// max_n |(ang Y_n - ang Y_1) + (ang X_n - ang X_1)| mod 2pi.
    pub conformal_residual: f64,
    /// max_n |(X_n)_M + (Y_n)_M|; vanishes on the critical line.
    pub mirror_residual: f64,
    /// |(Arg zeta(s) - Arg chi/2) + (Arg zeta(1-sigma+it) - Arg chi/2)|.
    pub arg_symmetry_residual: f64,
}

/// Coefficients of the empirical middle-vector laws |Y_n| = A n^B,
/// A = C e^(D sigma), C = E sqrt(t).
#[derive(Debug, Clone, Copy)]
pub struct MiddleVectorFit {
    /// Power-law amplitude at the first grid sigma.
    pub a: f64,
    /// Power-law exponent at the first grid sigma.
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// C^2 / t with the t-exponent pinned to 1/2.
    pub e2: f64,
    /// RMS residual of the log-log power fits, worst sigma.
    pub power_rms: f64,
    /// RMS residual of the exponential fit of A(sigma).
    pub exp_rms: f64,
}

/// m = floor(sqrt(t/2pi)), with the floor snapped against rounding at the
/// interval edges.
pub fn system_m(t: f64) -> u64 {
    let x = t / TWO_PI;
    let mut m = x.sqrt().floor() as u64;
    while ((m + 1) * (m + 1)) as f64 <= x {
        m += 1;
    }
    while m > 1 && (m * m) as f64 > x {
        m -= 1;
    }
    m
}

/// Middle vector Y_n with an explicit lambda factor: modulus
/// (t/2pi)^(1/2-sigma) n^(sigma-1), angle t ln n - alpha_1.
pub fn middle_vector_with_lambda(s: StripPoint, n: u64, lambda: f64) -> PlaneVector {
    assert!(n >= 1 && s.t > 0.0);
    let modulus = (s.t / TWO_PI).powf(0.5 - s.sigma) * (n as f64).powf(s.sigma - 1.0);
    let alpha1 = chi::alpha1_dd_with_lambda(s, lambda);
    let angle = phase::reduce_two_pi(phase::ln_dd(n).mul_f64(s.t).sub(alpha1));
    let (c, sn) = phase::sin_cos_dd(angle);
    PlaneVector::new(modulus * c, modulus * sn)
}

/// Middle vector with lambda resolved automatically (2 on the critical line,
/// measured elsewhere). Needs t >= 100.
pub fn middle_vector(s: StripPoint, n: u64) -> Result<PlaneVector> {
    if s.t < 100.0 {
        return Err(Error::Domain(format!("middle vectors need t >= 100, got {}", s.t)));
    }
    Ok(middle_vector_with_lambda(s, n, chi::lambda_for(s)?))
}

/// Leading term of the remainder:
/// (-1)^(m-1) (t/2pi)^(-sigma/2) F(delta) e^(-i theta(t)), with
/// delta = sqrt(t) - (m + 1/2) sqrt(2pi) and
/// F(u) = cos(u^2 + 3pi/8) / cos(sqrt(2pi) u).
pub fn remainder_leading(s: StripPoint) -> PlaneVector {
    assert!(s.t >= TWO_PI, "remainder needs t >= 2pi");
    let m = system_m(s.t);
    let delta = s.t.sqrt() - (m as f64 + 0.5) * TWO_PI.sqrt();
    let magnitude = (s.t / TWO_PI).powf(-s.sigma / 2.0) * remainder_factor(delta);
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let angle = phase::reduce_two_pi(chi::theta_dd(s.t).expect("t > 0").neg());
    let (c, sn) = phase::sin_cos_dd(angle);
    PlaneVector::new(sign * magnitude * c, sign * magnitude * sn)
}

/// F(u) = cos(u^2 + 3pi/8)/cos(sqrt(2pi) u), with the removable
/// singularities at sqrt(2pi) u = +-pi/2 evaluated by the ratio of
/// derivatives.
pub fn remainder_factor(u: f64) -> f64 {
    let root = TWO_PI.sqrt();
    let den = (root * u).cos();
    let arg = u * u + 3.0 * std::f64::consts::PI / 8.0;
    if den.abs() < 1e-6 {
        // both cosines vanish together inside the delta range
        (2.0 * u / root) * arg.sin() / (root * u).sin()
    } else {
        arg.cos() / den
    }
}

/// Empirical remainder: oracle zeta minus both vector-family sums.
pub fn remainder_empirical(s: StripPoint) -> Result<PlaneVector> {
    let sys = build_system(s)?;
    let inv = invariants(&sys);
    Ok(summation::zeta_oracle(s)? - inv.l1 - inv.l2)
}

/// Builds the vector system with lambda resolved automatically.
pub fn build_system(s: StripPoint) -> Result<VectorSystem> {
    build_system_with_lambda(s, chi::lambda_for(s)?)
}

/// Builds the vector system with a caller-supplied lambda (useful for sweeps
/// that calibrate lambda once).
pub fn build_system_with_lambda(s: StripPoint, lambda: f64) -> Result<VectorSystem> {
    if s.t < TWO_PI {
        return Err(Error::UnsupportedRegion(format!(
            "vector system needs t >= 2pi, got {}",
            s.t
        )));
    }
    if !(0.0..=1.0).contains(&s.sigma) {
        return Err(Error::UnsupportedRegion(format!(
            "vector system is defined in the critical strip, got sigma = {}",
            s.sigma
        )));
    }
    let m = system_m(s.t);
    let x: Vec<PlaneVector> = (1..=m).map(|n| spiral::term_vector(s, n)).collect();
    let y: Vec<PlaneVector> = (1..=m).map(|n| middle_vector_with_lambda(s, n, lambda)).collect();
    let r_leading = remainder_leading(s);
    let alpha1 = chi::alpha1_dd_with_lambda(s, lambda);
    let phi_l_raw = phase::reduce_two_pi(alpha1.mul_f64(-0.5)).value();
    let phi_l = phase::wrap_to_pi(phi_l_raw);
    let phi_m = phase::wrap_to_pi(phi_l + std::f64::consts::FRAC_PI_2);
    Ok(VectorSystem { s, m, x, y, r_leading, phi_l, phi_m, lambda })
}

/// L1 = sum X_n, L2 = sum Y_n.
pub fn invariants(system: &VectorSystem) -> Invariants {
    let mut l1 = PlaneVector::ZERO;
    for v in &system.x {
        l1 += *v;
    }
    let mut l2 = PlaneVector::ZERO;
    for v in &system.y {
        l2 += *v;
    }
    Invariants { l1, l2 }
}

/// Projects an oracle zeta value and the system invariants onto the moving
/// frame.
pub fn decompose(system: &VectorSystem, oracle_zeta: PlaneVector) -> Decomposition {
    let inv = invariants(system);
    let zeta_l = oracle_zeta.project(system.phi_l);
    let zeta_m = oracle_zeta.project(system.phi_m);
    let delta_l = inv.l1.project(system.phi_m) + inv.l2.project(system.phi_m);
    let r_emp = oracle_zeta - inv.l1 - inv.l2;
    let delta_phi_r = fold_half_pi(system.phi_l - r_emp.angle());
    let delta_r = r_emp.norm() * delta_phi_r.sin();
    Decomposition {
        zeta_l,
        zeta_m,
        l1: inv.l1,
        l2: inv.l2,
        delta_l,
        delta_r,
        delta_phi_r,
    }
}

/// Folds an angle into (-pi/2, pi/2], absorbing the k*pi ambiguity of the
/// remainder direction.
pub fn fold_half_pi(a: f64) -> f64 {
    let mut x = phase::wrap_to_pi(a);
    if x > std::f64::consts::FRAC_PI_2 {
        x -= std::f64::consts::PI;
    } else if x <= -std::f64::consts::FRAC_PI_2 {
        x += std::f64::consts::PI;
    }
    x
}

/// Residuals of the conformal, mirror and argument symmetries at s.
pub fn symmetry_report(s: StripPoint) -> Result<SymmetryReport> {
    if s.t < 100.0 {
        return Err(Error::Domain(format!("symmetry report needs t >= 100, got {}", s.t)));
    }
    let sys = build_system(s)?;
    let x1 = sys.x[0].angle();
    let y1 = sys.y[0].angle();
    let mut conformal = 0.0f64;
    let mut mirror = 0.0f64;
    for n in 0..sys.m as usize {
        let dy = phase::wrap_to_pi(sys.y[n].angle() - y1);
        let dx = phase::wrap_to_pi(sys.x[n].angle() - x1);
        conformal = conformal.max(phase::wrap_to_pi(dy + dx).abs());
        mirror = mirror.max((sys.x[n].project(sys.phi_m) + sys.y[n].project(sys.phi_m)).abs());
    }
    let z = summation::zeta_oracle(s)?;
    let z_refl = summation::zeta_oracle(s.reflected())?;
    let alpha1 = chi::alpha1_dd_with_lambda(s, sys.lambda);
    let arg_sym =
        phase::wrap_to_pi(z.angle() + z_refl.angle() + phase::reduce_two_pi(alpha1).value()).abs();
    Ok(SymmetryReport {
        conformal_residual: conformal,
        mirror_residual: mirror,
        arg_symmetry_residual: arg_sym,
    })
}

/// (L2)_M as a function of sigma with the axis, phases and lambda frozen at s.
fn l2_m_frozen(system: &VectorSystem, sigma: f64) -> f64 {
    let l = (system.s.t / TWO_PI).ln();
    let mut acc = 0.0;
    for (i, y) in system.y.iter().enumerate() {
        let n = (i + 1) as f64;
        let modulus = ((0.5 - sigma) * l + (sigma - 1.0) * n.ln()).exp();
        acc += modulus * (y.angle() - system.phi_m).cos();
    }
    acc
}

/// Central finite difference of (L2)_M in sigma, axis frozen.
pub fn gradient_l2_m(s: StripPoint, h: f64) -> Result<f64> {
    if !(1e-7..=1e-3).contains(&h) {
        return Err(Error::Domain(format!("gradient step must lie in [1e-7, 1e-3], got {h}")));
    }
    if s.t < 100.0 {
        return Err(Error::Domain(format!("gradient needs t >= 100, got {}", s.t)));
    }
    let sys = build_system(s)?;
    Ok((l2_m_frozen(&sys, s.sigma + h) - l2_m_frozen(&sys, s.sigma - h)) / (2.0 * h))
}

/// Closed-form gradient of (L2)_M for cross-checking the finite difference.
pub fn gradient_l2_m_analytic(s: StripPoint) -> Result<f64> {
    if s.t < 100.0 {
        return Err(Error::Domain(format!("gradient needs t >= 100, got {}", s.t)));
    }
    let sys = build_system(s)?;
    let l = (s.t / TWO_PI).ln();
    let mut acc = 0.0;
    for (i, y) in sys.y.iter().enumerate() {
        let n = (i + 1) as f64;
        acc += y.norm() * (n.ln() - l) * (y.angle() - sys.phi_m).cos();
    }
    Ok(acc)
}

/// Boundary function F(s) = A (sum |Y_n| / sum |X_n| - 1); zero on the
/// critical line, positive to its left, negative to its right.
pub fn boundary_function(s: StripPoint, a: f64) -> Result<f64> {
    if a <= 0.0 {
        return Err(Error::Domain(format!("boundary amplitude must be > 0, got {a}")));
    }
    if s.t < TWO_PI {
        return Err(Error::UnsupportedRegion(format!(
            "boundary function needs t >= 2pi, got {}",
            s.t
        )));
    }
    let m = system_m(s.t);
    let chi_mod = (s.t / TWO_PI).powf(0.5 - s.sigma);
    let mut sum_y = 0.0;
    let mut sum_x = 0.0;
    for n in 1..=m {
        let nf = n as f64;
        sum_y += chi_mod * nf.powf(s.sigma - 1.0);
        sum_x += nf.powf(-s.sigma);
    }
    Ok(a * (sum_y / sum_x - 1.0))
}

/// Centers of the partial-sum spiral, one per reverse point, via the binomial
/// average with windows of 30 / 20 / 5 vertices.
pub fn spiral_centers(s: StripPoint, count: usize) -> Result<Vec<PlaneVector>> {
    assert!(count >= 1);
    let pi = std::f64::consts::PI;
    let last_reverse = s.t / ((2 * count - 1) as f64 * pi);
    if last_reverse < 2.0 {
        return Err(Error::Domain(format!(
            "t = {} is too small to resolve {count} spiral centers",
            s.t
        )));
    }
    let width_for = |k: usize| -> u64 {
        match k {
            1 => 30,
            2 => 20,
            _ => 5,
        }
    };
    let first_start = (s.t / pi).ceil() as u64;
    let sums = spiral::partial_sums(s, first_start + width_for(1) - 1);
    let mut centers = Vec::with_capacity(count);
    for k in 1..=count {
        let start = (s.t / ((2 * k - 1) as f64 * pi)).ceil() as u64;
        let width = width_for(k);
        let lo = (start - 1) as usize;
        let hi = lo + width as usize;
        centers.push(summation::binomial_average(&sums[lo..hi]));
    }
    Ok(centers)
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut rss = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let r = y - (intercept + slope * x);
        rss += r * r;
    }
    (intercept, slope, (rss / n).sqrt())
}

/// Fits the empirical middle-vector laws from measured spiral centers.
pub fn fit_middle_vectors(t: f64, sigma_grid: &[f64], centers: usize) -> Result<MiddleVectorFit> {
    if t < 1000.0 {
        return Err(Error::Fit(format!("middle-vector fits need t >= 1000, got {t}")));
    }
    if !(3..=8).contains(&centers) {
        return Err(Error::Fit(format!("centers must lie in 3..=8, got {centers}")));
    }
    if sigma_grid.len() < 2 {
        return Err(Error::Fit("need at least two sigma values".into()));
    }
    let ln_n: Vec<f64> = (1..centers).map(|n| (n as f64).ln()).collect();
    let mut ln_a = Vec::with_capacity(sigma_grid.len());
    let mut b_first = 0.0;
    let mut worst_rms = 0.0f64;
    for (i, &sigma) in sigma_grid.iter().enumerate() {
        let pts = spiral_centers(StripPoint::new(sigma, t), centers)?;
        let moduli: Vec<f64> = pts.windows(2).map(|w| w[0].distance(&w[1])).collect();
        if moduli.iter().any(|&m| m <= 0.0) {
            return Err(Error::Fit("degenerate middle-vector modulus".into()));
        }
        let ln_m: Vec<f64> = moduli.iter().map(|m| m.ln()).collect();
        let (intercept, slope, rms) = linear_fit(&ln_n, &ln_m);
        if i == 0 {
            b_first = slope;
        }
        worst_rms = worst_rms.max(rms);
        ln_a.push(intercept);
    }
    let (ln_c, d, exp_rms) = linear_fit(sigma_grid, &ln_a);
    let c = ln_c.exp();
    Ok(MiddleVectorFit {
        a: ln_a[0].exp(),
        b: b_first,
        c,
        d,
        e2: c * c / t,
        power_rms: worst_rms,
        exp_rms,
    })
}
