//! Term vectors of the Dirichlet series and the polyline they trace.
//!
//! The n-th term 1/n^s is the plane vector
//! `(n^-sigma cos(t ln n), -n^-sigma sin(t ln n))`; drawn in index order the
//! partial sums wind around the zeta value, alternating twisting and
//! untwisting at reverse and inflection indices.

use crate::error::{Error, Result};
use crate::phase;
use crate::types::{PlaneVector, StripPoint};

/// Per-index geometry of the partial-sum polyline.
#[derive(Debug, Clone, Copy)]
pub struct SpiralProfile {
    pub n: u64,
    /// The term vector X_n.
    pub vector: PlaneVector,
    /// Partial sum through X_n.
    pub partial_sum: PlaneVector,
    /// Absolute angle (t ln n) mod 2pi, in [0, 2pi).
    pub phi: f64,
    /// Angle between directions of X_n and X_{n-1}, reduced to [0, 2pi); 0 at n = 1.
    pub dphi: f64,
    /// Signed curvature radius; +/- infinity where consecutive terms are
    /// exactly (anti)parallel, positive infinity at n = 1.
    pub curvature_radius: f64,
}

/// Reverse / inflection indices and the usable reverse-point count.
#[derive(Debug, Clone)]
pub struct SingularPoints {
    /// Real-valued indices t/((2k-1) pi), k = 1, 2, ... truncated to >= 1.
    pub reverse: Vec<f64>,
    /// Real-valued indices t/(2k pi), k = 1, 2, ... truncated to >= 1.
    pub inflection: Vec<f64>,
    /// sqrt(t/(2 pi) + 1/4): how many reverse points carry at least one vector.
    pub count: f64,
}

/// modulus n^-sigma of the n-th term.
#[inline]
pub fn term_modulus(sigma: f64, n: u64) -> f64 {
    if sigma == 0.0 {
        1.0
    } else if sigma == 0.5 {
        1.0 / (n as f64).sqrt()
    } else if sigma == 1.0 {
        1.0 / n as f64
    } else {
        (-sigma * phase::ln_dd(n).hi).exp()
    }
}

/// The term vector X_n(s) = (n^-sigma cos(t ln n), -n^-sigma sin(t ln n)).
pub fn term_vector(s: StripPoint, n: u64) -> PlaneVector {
    assert!(n >= 1, "term index starts at 1");
    let r = term_modulus(s.sigma, n);
    let (c, sn) = phase::sincos_t_ln_n(s.t, n);
    PlaneVector::new(r * c, -r * sn)
}

/// Componentwise sum of the first m term vectors, accumulated left to right.
///
/// The accumulation order is fixed, so `partial_sum(s, m)` is bitwise the
/// result of adding `term_vector(s, m)` to `partial_sum(s, m - 1)`.
pub fn partial_sum(s: StripPoint, m: u64) -> PlaneVector {
    assert!(m >= 1, "partial sums start at m = 1");
    let mut acc = PlaneVector::ZERO;
    for n in 1..=m {
        acc += term_vector(s, n);
    }
    acc
}

/// All partial sums up to m, sharing the accumulation path of [`partial_sum`].
pub fn partial_sums(s: StripPoint, m: u64) -> Vec<PlaneVector> {
    assert!(m >= 1);
    let mut out = Vec::with_capacity(m as usize);
    let mut acc = PlaneVector::ZERO;
    for n in 1..=m {
        acc += term_vector(s, n);
        out.push(acc);
    }
    out
}

/// Spiral geometry for n = 1..=n_max.
///
/// The curvature radius follows r_n = |X_n| cos(dphi) / sqrt(1 - cos^2(dphi))
/// with cos(dphi) taken from the dot product of consecutive terms; the sign is
/// negative around reverse indices and positive around inflection indices.
pub fn spiral_profile(s: StripPoint, n_max: u64) -> Result<Vec<SpiralProfile>> {
    if n_max < 2 {
        return Err(Error::Domain(format!("spiral profile needs n_max >= 2, got {n_max}")));
    }
    let mut out = Vec::with_capacity(n_max as usize);
    let mut acc = PlaneVector::ZERO;
    let mut prev = PlaneVector::ZERO;
    let mut prev_phi = 0.0f64;
    for n in 1..=n_max {
        let v = term_vector(s, n);
        acc += v;
        let phi = phase::angle_mod_2pi(s.t, n);
        let (dphi, radius) = if n == 1 {
            (0.0, f64::INFINITY)
        } else {
            let mut d = phi - prev_phi;
            if d < 0.0 {
                d += 2.0 * std::f64::consts::PI;
            }
            let cos_d = (v.dot(&prev) / (v.norm() * prev.norm())).clamp(-1.0, 1.0);
            let r = if cos_d.abs() == 1.0 {
                f64::INFINITY.copysign(cos_d)
            } else {
                v.norm() * cos_d / (1.0 - cos_d * cos_d).sqrt()
            };
            (d, r)
        };
        out.push(SpiralProfile {
            n,
            vector: v,
            partial_sum: acc,
            phi,
            dphi,
            curvature_radius: radius,
        });
        prev = v;
        prev_phi = phi;
    }
    Ok(out)
}

/// Reverse and inflection indices for ordinate t, plus the usable count.
pub fn singular_points(t: f64) -> SingularPoints {
    assert!(t > 0.0, "singular points need t > 0");
    let pi = std::f64::consts::PI;
    let mut reverse = Vec::new();
    let mut k = 1u64;
    loop {
        let idx = t / ((2 * k - 1) as f64 * pi);
        if idx < 1.0 {
            break;
        }
        reverse.push(idx);
        k += 1;
    }
    let mut inflection = Vec::new();
    let mut k = 1u64;
    loop {
        let idx = t / (2 * k) as f64 / pi;
        if idx < 1.0 {
            break;
        }
        inflection.push(idx);
        k += 1;
    }
    let count = (t / (2.0 * pi) + 0.25).sqrt();
    SingularPoints { reverse, inflection, count }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T_PAPER: f64 = 279.229250928;

    #[test]
    fn first_term_is_unit_x() {
        let s = StripPoint::new(0.75, T_PAPER);
        let v = term_vector(s, 1);
        assert_eq!(v, PlaneVector::new(1.0, 0.0));
    }

    #[test]
    fn sigma_zero_terms_are_unit_modulus() {
        let s = StripPoint::new(0.0, 123.456);
        for n in [1u64, 2, 17, 1000] {
            assert!((term_vector(s, n).norm() - 1.0).abs() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn term_vector_matches_high_precision_reference() {
        // components of 2^-s at s = 0.75 + 279.229250928i, computed with
        // 40-digit arithmetic
        let s = StripPoint::new(0.75, T_PAPER);
        let v = term_vector(s, 2);
        assert!((v.x - 0.19774305843091037282).abs() < 1e-14);
        assert!((v.y - 0.56075937213359468588).abs() < 1e-14);
    }

    #[test]
    fn partial_sum_m1_is_unit_x() {
        let s = StripPoint::new(1.25, T_PAPER);
        assert_eq!(partial_sum(s, 1), PlaneVector::new(1.0, 0.0));
    }

    #[test]
    fn partial_sum_recurrence_is_exact() {
        let s = StripPoint::new(0.75, T_PAPER);
        for m in [2u64, 3, 10, 97, 500] {
            let lhs = partial_sum(s, m);
            let rhs = partial_sum(s, m - 1) + term_vector(s, m);
            assert_eq!(lhs, rhs, "m={m}");
        }
    }

    #[test]
    fn convergent_partial_sums_approach_zeta() {
        // s = 1.25 + 279.229250928i lies in the convergence region; the
        // partial sums drift toward the zeta value
        let s = StripPoint::new(1.25, T_PAPER);
        let target = PlaneVector::new(0.69444570272324, 0.61658346971775);
        let p = partial_sum(s, 1_000_000);
        assert!(p.distance(&target) < 1e-2);
    }

    #[test]
    fn profile_n1_phi_zero() {
        let s = StripPoint::new(0.75, 959.459168807);
        let prof = spiral_profile(s, 10).unwrap();
        assert_eq!(prof[0].phi, 0.0);
        assert_eq!(prof[0].dphi, 0.0);
    }

    #[test]
    fn profile_rejects_short_range() {
        let s = StripPoint::new(0.75, 100.0);
        assert!(spiral_profile(s, 1).is_err());
    }

    #[test]
    fn dphi_sawtooth_between_inflection_resets() {
        // the relative angle sweeps the sawtooth: one monotone ramp per
        // stretch between inflection indices, where it jumps by ~2pi
        let t = 959.459168807;
        let s = StripPoint::new(0.75, t);
        let prof = spiral_profile(s, 310).unwrap();
        let sp = singular_points(t);
        let mut violations = 0u32;
        for w in prof.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            // below n ~ sqrt(t/2pi) the turn between consecutive vectors
            // exceeds a full revolution and the sawtooth aliases
            if (a.n as f64) < (t / std::f64::consts::PI).sqrt() {
                continue;
            }
            let crosses = sp
                .inflection
                .iter()
                .any(|&m| (a.n as f64) - 0.5 <= m && m <= (b.n as f64) - 0.5);
            if !crosses && b.dphi > a.dphi {
                violations += 1;
            }
        }
        assert_eq!(violations, 0);
        // and the ramp really spans toward 2pi: just after the last
        // inflection reset the angle is close to a full turn
        let after_reset = &prof[154];
        assert!(after_reset.dphi > 6.0, "dphi = {}", after_reset.dphi);
    }

    #[test]
    fn curvature_sign_flips_between_singular_indices() {
        let t = 959.459168807;
        let s = StripPoint::new(0.75, t);
        let prof = spiral_profile(s, 300).unwrap();
        let sp = singular_points(t);
        // near a reverse index the radius is negative, near an inflection
        // index positive; dphi_n measures the turn at index n - 1/2, and the
        // index floor keeps the half-step rounding below a quarter turn
        let floor = (2.0 * t / std::f64::consts::PI).sqrt();
        for &rev in sp.reverse.iter().filter(|&&r| r > floor && r < 295.0) {
            let n = (rev + 0.5).round() as usize;
            assert!(prof[n - 1].curvature_radius < 0.0, "reverse near n={n}");
        }
        for &inf in sp.inflection.iter().filter(|&&r| r > floor && r < 295.0) {
            let n = (inf + 0.5).round() as usize;
            assert!(prof[n - 1].curvature_radius > 0.0, "inflection near n={n}");
        }
    }

    #[test]
    fn singular_points_paper_anchor() {
        let sp = singular_points(T_PAPER);
        assert!((sp.reverse[0] - 88.881431082).abs() < 1e-8);
        assert!((sp.count - (T_PAPER / (2.0 * std::f64::consts::PI) + 0.25).sqrt()).abs() < 1e-15);
        assert!((sp.count - 6.685).abs() < 1e-3);
    }

    #[test]
    fn singular_points_at_two_pi() {
        let sp = singular_points(2.0 * std::f64::consts::PI);
        assert!((sp.count - 1.25f64.sqrt()).abs() < 1e-15);
        assert_eq!(sp.reverse.len(), 1);
        assert!((sp.reverse[0] - 2.0).abs() < 1e-15);
        assert_eq!(sp.inflection.len(), 1);
    }
}
