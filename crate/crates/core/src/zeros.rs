//! Base points, Gram points, and critical-line zeros of Z(t).
//!
//! The unwrapped phase Phi(t) = 2 theta(t) is strictly increasing above
//! ~2pi, so base points (Phi = (2k+1) pi, where the first middle vector
//! opposes the first term vector) and Gram points (theta = (n-1) pi) come out
//! of plain bisection. Zeros of Z are bracketed by a sign scan over an
//! oversampled grid and refined by bisection.
//!
//! At a base point zeta(1/2 + i t_k) is purely imaginary; the sign of its
//! imaginary part classifies the point (a1 above the real axis, a2 below),
//! and pairs of consecutive kinds fix how many zeros the gap carries:
//! matching kinds one, a2->a1 two, a1->a2 none.

use rayon::prelude::*;

use crate::afe;
use crate::chi;
use crate::error::{Error, Result};
use crate::summation;
use crate::types::StripPoint;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
/// Left end of the monotone branch of theta used for bisection brackets.
const MONOTONE_LO: f64 = 6.4;

/// Evaluation route for Z(t).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZMethod {
    /// Re(e^(i theta) zeta(1/2 + it)) with oracle zeta.
    Oracle,
    /// L-projection of the finite vector system plus the leading remainder.
    Afe,
}

/// Base-point class: first middle vector above (a1) or below (a2) the real
/// axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    A1,
    A2,
}

impl BaseKind {
    pub fn name(&self) -> &'static str {
        match self {
            BaseKind::A1 => "a1",
            BaseKind::A2 => "a2",
        }
    }
}

/// Interval class from a pair of consecutive base-point kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalKind {
    A1,
    A2,
    B,
    C,
}

impl IntervalKind {
    pub fn from_pair(first: BaseKind, second: BaseKind) -> IntervalKind {
        match (first, second) {
            (BaseKind::A1, BaseKind::A1) => IntervalKind::A1,
            (BaseKind::A2, BaseKind::A2) => IntervalKind::A2,
            (BaseKind::A2, BaseKind::A1) => IntervalKind::B,
            (BaseKind::A1, BaseKind::A2) => IntervalKind::C,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            IntervalKind::A1 => "A1",
            IntervalKind::A2 => "A2",
            IntervalKind::B => "B",
            IntervalKind::C => "C",
        }
    }

    /// Zero count the class carries.
    pub fn expected_zeros(&self) -> usize {
        match self {
            IntervalKind::A1 | IntervalKind::A2 => 1,
            IntervalKind::B => 2,
            IntervalKind::C => 0,
        }
    }
}

/// A solved base point.
#[derive(Debug, Clone, Copy)]
pub struct BasePoint {
    pub k: u64,
    pub t: f64,
    pub kind: BaseKind,
}

/// A refined critical-line zero.
#[derive(Debug, Clone, Copy)]
pub struct ZeroRecord {
    pub t: f64,
    pub bracket: (f64, f64),
    /// |Z| at the refined ordinate.
    pub residual: f64,
}

/// An interval between consecutive base points with its attached zeros.
#[derive(Debug, Clone)]
pub struct IntervalRecord {
    pub from_k: u64,
    pub kind: IntervalKind,
    pub zeros: Vec<ZeroRecord>,
}

/// Main term and S-bound of the strip-counting formula.
#[derive(Debug, Clone, Copy)]
pub struct RvmEstimate {
    /// T/2pi (ln(T/2pi) - 1) + 7/8.
    pub main: f64,
    /// 1.998 + 0.17 ln T.
    pub s_bound: f64,
}

/// The Riemann-Siegel function Z(t).
pub fn z_function(t: f64, method: ZMethod) -> Result<f64> {
    match method {
        ZMethod::Oracle => {
            if t <= 1.0 {
                return Err(Error::Domain(format!("oracle Z needs t > 1, got {t}")));
            }
            let z = summation::zeta_oracle(StripPoint::new(0.5, t))?;
            let angle = crate::phase::reduce_two_pi(chi::theta_dd(t)?);
            let (c, s) = crate::phase::sin_cos_dd(angle);
            // Re(e^(i theta) zeta) = cos(theta) Re - sin(theta) Im ... with
            // e^(i theta) = (c, s): Re = c*x - s*y
            Ok(c * z.x - s * z.y)
        }
        ZMethod::Afe => {
            let s = StripPoint::new(0.5, t);
            let sys = afe::build_system_with_lambda(s, 2.0)?;
            let inv = afe::invariants(&sys);
            let total = inv.l1 + inv.l2 + sys.r_leading;
            Ok(total.project(sys.phi_l))
        }
    }
}

/// Solves f(t) = target by bisection on the monotone branch.
fn solve_monotone<F: Fn(f64) -> f64>(f: F, target: f64) -> f64 {
    let mut lo = MONOTONE_LO;
    debug_assert!(f(lo) < target, "target below the monotone branch");
    let mut hi = lo * 2.0;
    let mut iter = 0;
    while f(hi) < target {
        lo = hi;
        hi *= 2.0;
        iter += 1;
        assert!(iter < 64, "bracket search diverged");
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-11 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// The k-th base point: Phi(t) = (2k+1) pi, classified by the sign of
/// Im zeta(1/2 + i t_k) (ties count as a1).
pub fn base_point(k: u64) -> BasePoint {
    assert!(k >= 1, "base points are indexed from 1");
    let target = (2 * k + 1) as f64 * std::f64::consts::PI;
    let t = solve_monotone(|t| chi::phi_unwrapped(t).expect("t > 0"), target);
    let z = summation::zeta_oracle(StripPoint::new(0.5, t)).expect("oracle in range");
    let kind = if z.y < -1e-12 { BaseKind::A2 } else { BaseKind::A1 };
    BasePoint { k, t, kind }
}

/// The n-th Gram point: theta(t) = (n-1) pi.
pub fn gram_point(n: u64) -> f64 {
    assert!(n >= 1, "gram points are indexed from 1");
    let target = (n - 1) as f64 * std::f64::consts::PI;
    solve_monotone(|t| chi::theta(t).expect("t > 0"), target)
}

fn refine_zero(mut lo: f64, mut hi: f64, z_lo: f64) -> ZeroRecord {
    let bracket = (lo, hi);
    let sign_lo = z_lo.signum();
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo < 1e-10 {
            break;
        }
        let zm = z_function(mid, ZMethod::Oracle).expect("in range");
        if zm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let residual = z_function(t, ZMethod::Oracle).expect("in range").abs();
    ZeroRecord { t, bracket, residual }
}

/// All sign changes of oracle Z on the step grid over [t_lo, t_hi], refined
/// by bisection to bracket width below 1e-10.
///
/// The scan relies on the grid oversampling the zero spacing; the default CLI
/// step of 0.05 oversamples by more than 20x for t <= 1e4. Chunks of the grid
/// are scanned in parallel and merged in ascending order, with a one-point
/// overlap so chunk boundaries cannot drop a sign change.
pub fn find_zeros(t_lo: f64, t_hi: f64, step: f64) -> Result<Vec<ZeroRecord>> {
    if !(t_lo > TWO_PI && t_hi > t_lo) {
        return Err(Error::Domain(format!(
            "zero scan needs 2pi < t_lo < t_hi, got [{t_lo}, {t_hi}]"
        )));
    }
    if !(step > 0.0 && step <= 0.25) {
        return Err(Error::Domain(format!("scan step must lie in (0, 0.25], got {step}")));
    }
    let n_steps = ((t_hi - t_lo) / step).ceil() as usize;
    let grid_at = |i: usize| -> f64 {
        let t = t_lo + i as f64 * step;
        t.min(t_hi)
    };
    const CHUNK: usize = 512;
    let n_chunks = n_steps.div_ceil(CHUNK);
    let mut zeros: Vec<ZeroRecord> = (0..n_chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let i0 = c * CHUNK;
            let i1 = ((c + 1) * CHUNK).min(n_steps);
            let mut found = Vec::new();
            let mut prev_t = grid_at(i0);
            let mut prev_z = z_function(prev_t, ZMethod::Oracle).expect("in range");
            for i in i0 + 1..=i1 {
                let t = grid_at(i);
                let z = z_function(t, ZMethod::Oracle).expect("in range");
                if prev_z * z < 0.0 {
                    found.push(refine_zero(prev_t, t, prev_z));
                }
                prev_t = t;
                prev_z = z;
            }
            found.into_iter()
        })
        .collect();
    zeros.sort_by(|a, b| a.t.partial_cmp(&b.t).unwrap());
    Ok(zeros)
}

/// Number of sign changes of oracle Z on the grid, without refinement.
pub fn count_sign_changes(t_lo: f64, t_hi: f64, step: f64) -> Result<u64> {
    if !(t_lo > TWO_PI && t_hi > t_lo) {
        return Err(Error::Domain(format!(
            "census needs 2pi < t_lo < t_hi, got [{t_lo}, {t_hi}]"
        )));
    }
    if !(step > 0.0 && step <= 0.25) {
        return Err(Error::Domain(format!("scan step must lie in (0, 0.25], got {step}")));
    }
    let n_steps = ((t_hi - t_lo) / step).ceil() as usize;
    let grid_at = |i: usize| -> f64 {
        let t = t_lo + i as f64 * step;
        t.min(t_hi)
    };
    const CHUNK: usize = 2048;
    let n_chunks = n_steps.div_ceil(CHUNK);
    let count = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let i0 = c * CHUNK;
            let i1 = ((c + 1) * CHUNK).min(n_steps);
            let mut prev = z_function(grid_at(i0), ZMethod::Oracle).expect("in range");
            let mut cnt = 0u64;
            for i in i0 + 1..=i1 {
                let z = z_function(grid_at(i), ZMethod::Oracle).expect("in range");
                if prev * z < 0.0 {
                    cnt += 1;
                }
                prev = z;
            }
            cnt
        })
        .sum();
    Ok(count)
}

/// Consecutive base points k_lo..=k_hi mapped to interval records with their
/// zeros attached.
pub fn classify_intervals(k_lo: u64, k_hi: u64) -> Result<Vec<IntervalRecord>> {
    if !(k_lo >= 1 && k_hi > k_lo) {
        return Err(Error::Domain(format!(
            "interval classification needs 1 <= k_lo < k_hi, got [{k_lo}, {k_hi}]"
        )));
    }
    let points: Vec<BasePoint> = (k_lo..=k_hi).map(base_point).collect();
    let mut out = Vec::with_capacity(points.len() - 1);
    for w in points.windows(2) {
        let kind = IntervalKind::from_pair(w[0].kind, w[1].kind);
        let zeros = find_zeros(w[0].t, w[1].t, 0.02)?;
        out.push(IntervalRecord { from_k: w[0].k, kind, zeros });
    }
    Ok(out)
}

/// Base points with ordinate <= t_cap, counted from k = 1.
pub fn count_base_points(t_cap: f64) -> Result<u64> {
    if t_cap <= base_point(1).t {
        return Ok(0);
    }
    // Phi(t_cap) = (2k+1) pi at the last base point below t_cap
    let phi = chi::phi_unwrapped(t_cap)?;
    let k = ((phi / std::f64::consts::PI - 1.0) / 2.0).floor();
    Ok(k.max(0.0) as u64)
}

/// Critical-line zero count below T from the rotation formula:
/// floor(|T/2pi (ln(T/2pi) - 1) - 1/8 + (2 mu(T) - alpha_2)/2pi|) + 2, with
/// alpha_2 read from the second base point.
pub fn count_zeros_line(t_cap: f64) -> Result<u64> {
    let b2 = base_point(2);
    if t_cap <= b2.t {
        return Err(Error::Domain(format!(
            "counting formula needs T above the second base point ({:.3}), got {t_cap}",
            b2.t
        )));
    }
    let alpha2 = chi::phi_unwrapped(b2.t)?;
    let x = t_cap / TWO_PI;
    let main = x * (x.ln() - 1.0) - 0.125 + (2.0 * chi::mu(t_cap)? - alpha2) / TWO_PI;
    Ok(main.abs().floor() as u64 + 2)
}

/// Riemann-von Mangoldt main term and the S(T) bound.
pub fn riemann_von_mangoldt(t_cap: f64) -> Result<RvmEstimate> {
    if t_cap <= std::f64::consts::E {
        return Err(Error::Domain(format!("counting needs T > e, got {t_cap}")));
    }
    let x = t_cap / TWO_PI;
    Ok(RvmEstimate {
        main: x * (x.ln() - 1.0) + 0.875,
        s_bound: 1.998 + 0.17 * t_cap.ln(),
    })
}

/// zeta projected onto the moving frame at sigma: (zeta_L, zeta_M) with the
/// frame angle from the phase model with a fixed lambda.
pub fn projections_with_lambda(s: StripPoint, lambda: f64) -> Result<(f64, f64)> {
    let z = summation::zeta_oracle(s)?;
    let alpha1 = chi::alpha1_dd_with_lambda(s, lambda);
    let phi_l = crate::phase::wrap_to_pi(crate::phase::reduce_two_pi(alpha1.mul_f64(-0.5)).value());
    Ok((z.project(phi_l), z.project(phi_l + std::f64::consts::FRAC_PI_2)))
}
