//! The chi factor of the functional equation zeta(s) = chi(s) zeta(1-s).
//!
//! Asymptotically |chi| = (t/2pi)^(1/2-sigma) and the phase is governed by
//! theta(t); the residual phase is lambda(sigma) * mu(t) with mu the Gabcke
//! remainder of the gamma asymptotics. The exact route evaluates the ratio of
//! two oracle zeta values and unwraps its argument against the closed form.

use crate::error::{Error, Result};
use crate::phase::{self, Dd};
use crate::summation;
use crate::types::{PlaneVector, StripPoint};

/// Modulus plus principal and unwrapped argument of chi at one point.
#[derive(Debug, Clone, Copy)]
pub struct ChiEval {
    pub modulus: f64,
    /// Argument folded into (-pi, pi].
    pub arg_principal: f64,
    /// Continuous argument; decreases without bound as t grows.
    pub arg_unwrapped: f64,
}

/// Exact-vs-closed-form comparison at one point.
#[derive(Debug, Clone, Copy)]
pub struct ChiComparison {
    /// |chi_exact| / |chi_approx|.
    pub ratio_modulus: f64,
    /// Unwrapped argument difference exact - approx, in radians.
    pub delta_phi: f64,
    /// Phase-model factor: the exact argument is reproduced by
    /// base - lambda * mu(t), so lambda = -delta_phi / mu(t); equals 2 on the
    /// critical line.
    pub lambda: f64,
}

/// Gabcke remainder mu(t) = 1/(48t) + 1/(5760 t^3) + 1/(80640 t^5).
pub fn mu(t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::Domain(format!("mu needs t > 0, got {t}")));
    }
    let t2 = t * t;
    Ok((1.0 / 48.0 + (1.0 / 5760.0 + 1.0 / (80640.0 * t2)) / t2) / t)
}

/// theta(t) = (t/2)(ln(t/2pi) - 1) - pi/8 + mu(t), unwrapped.
///
/// Strictly increasing for t above ~2pi; Gram points solve
/// theta(t) = (n-1) pi.
pub fn theta(t: f64) -> Result<f64> {
    Ok(theta_dd(t)?.value())
}

/// theta assembled in double-double form, for reductions mod 2pi.
pub(crate) fn theta_dd(t: f64) -> Result<Dd> {
    if t <= 0.0 {
        return Err(Error::Domain(format!("theta needs t > 0, got {t}")));
    }
    let l = (t / (2.0 * std::f64::consts::PI)).ln() - 1.0;
    let main = Dd::from_f64(t / 2.0).mul_f64(l);
    let pi_8 = Dd { hi: phase::FRAC_PI_8_HI, lo: phase::FRAC_PI_8_LO };
    Ok(main.sub(pi_8).add_f64(mu(t)?))
}

/// Unwrapped |Arg chi(1/2 + it)| = 2 theta(t); base points solve
/// phi(t) = (2k+1) pi.
pub fn phi_unwrapped(t: f64) -> Result<f64> {
    Ok(2.0 * theta(t)?)
}

/// Closed-form chi: modulus (t/2pi)^(1/2-sigma), argument
/// -(t(ln(t/2pi) - 1) - pi/4).
pub fn chi_approx(s: StripPoint) -> ChiEval {
    assert!(s.t > 0.0, "chi_approx needs t > 0");
    let modulus = (s.t / (2.0 * std::f64::consts::PI)).powf(0.5 - s.sigma);
    let arg_unwrapped = -approx_arg_dd(s.t).value();
    let arg_principal = reduce_minus(approx_arg_dd(s.t));
    ChiEval { modulus, arg_principal, arg_unwrapped }
}

/// t(ln(t/2pi) - 1) - pi/4 as a double-double (the negated closed-form
/// argument).
fn approx_arg_dd(t: f64) -> Dd {
    let l = (t / (2.0 * std::f64::consts::PI)).ln() - 1.0;
    let pi_4 = Dd { hi: phase::FRAC_PI_4_HI, lo: phase::FRAC_PI_4_LO };
    Dd::from_f64(t).mul_f64(l).sub(pi_4)
}

/// Principal value of -x for a double-double x.
fn reduce_minus(x: Dd) -> f64 {
    let r = phase::reduce_two_pi(x.neg()).value();
    if r > std::f64::consts::PI {
        r - 2.0 * std::f64::consts::PI
    } else {
        r
    }
}

/// Exact chi as the oracle ratio zeta(s) / zeta(1-s), with zeta(1-s) taken
/// from the conjugation identity. The unwrapped argument is anchored to the
/// closed form: the principal correction between the two is folded into
/// (-pi, pi].
pub fn chi_exact(s: StripPoint) -> Result<ChiEval> {
    assert!(s.t > 0.0, "chi_exact needs t > 0");
    let num = summation::zeta_oracle(s)?;
    let refl = summation::zeta_oracle(s.reflected())?;
    // zeta(1 - s) = conj(zeta(1 - sigma + it))
    let den = PlaneVector::new(refl.x, -refl.y);
    let den_norm = den.norm();
    if den_norm < 1e-12 {
        return Err(Error::NearZeroDivision(den_norm));
    }
    // ratio = num / den
    let inv = 1.0 / (den_norm * den_norm);
    let re = (num.x * den.x + num.y * den.y) * inv;
    let im = (num.y * den.x - num.x * den.y) * inv;
    let modulus = re.hypot(im);
    let arg_principal = im.atan2(re);

    let approx = approx_arg_dd(s.t);
    // difference between the measured principal argument and the reduced
    // closed form, folded to (-pi, pi]
    let delta = phase::wrap_to_pi(arg_principal - reduce_minus(approx));
    let arg_unwrapped = -approx.value() + delta;
    Ok(ChiEval { modulus, arg_principal, arg_unwrapped })
}

/// Measured modulus ratio, phase gap and lambda factor at s.
pub fn chi_compare(s: StripPoint) -> Result<ChiComparison> {
    if s.t < 100.0 {
        return Err(Error::Domain(format!(
            "chi comparison needs t >= 100 (asymptotics degrade below), got {}",
            s.t
        )));
    }
    let exact = chi_exact(s)?;
    let approx = chi_approx(s);
    let delta_phi = phase::wrap_to_pi(exact.arg_principal - approx.arg_principal);
    let m = mu(s.t)?;
    Ok(ChiComparison {
        ratio_modulus: exact.modulus / approx.modulus,
        delta_phi,
        lambda: -delta_phi / m,
    })
}

/// Lambda used for the phase model at s: exactly 2 on the critical line,
/// measured through [`chi_compare`] elsewhere.
pub fn lambda_for(s: StripPoint) -> Result<f64> {
    if s.sigma == 0.5 || s.t < 100.0 {
        Ok(2.0)
    } else {
        Ok(chi_compare(s)?.lambda)
    }
}

/// Angle of the first middle vector:
/// alpha_1 = t(ln(t/2pi) - 1) - pi/4 + lambda(sigma) mu(t).
pub fn alpha1(s: StripPoint) -> Result<f64> {
    if s.t < 100.0 {
        return Err(Error::Domain(format!("alpha1 needs t >= 100, got {}", s.t)));
    }
    Ok(alpha1_with_lambda(s, lambda_for(s)?))
}

/// alpha_1 with the lambda factor supplied by the caller.
pub fn alpha1_with_lambda(s: StripPoint, lambda: f64) -> f64 {
    alpha1_dd_with_lambda(s, lambda).value()
}

pub(crate) fn alpha1_dd_with_lambda(s: StripPoint, lambda: f64) -> Dd {
    let m = mu(s.t).expect("alpha1 needs t > 0");
    approx_arg_dd(s.t).add_f64(lambda * m)
}
