//! Randomized invariant suites.
//!
//! The reduction oracle here is deliberately independent of the library
//! path: ln(n) comes from 64 exact integer square roots at fixed-point scale
//! 10^45 (n^(1/2^64) - 1 expanded to first order), and the mod-2pi reduction
//! is exact rational arithmetic against a 45-digit 2pi.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use proptest::prelude::*;

use zeta_spiral::{afe, chi, phase, spiral, summation};
use zeta_spiral::{PlaneVector, StripPoint};

/// 2pi * 10^45, truncated.
const TWO_PI_SCALED: &str = "6283185307179586476925286766559005768394338798";
const SCALE_DIGITS: u32 = 45;

fn big_scale() -> BigInt {
    BigInt::from(10u32).pow(SCALE_DIGITS)
}

/// ln(n) * 10^45 by repeated integer square roots: with M = 2^64,
/// n^(1/M) = 1 + ln(n)/M + O((ln n / M)^2), so M (isqrt^64(n) - 1) recovers
/// ln(n) to ~1e-17 relative.
fn ln_fixed_point(n: u64) -> BigRational {
    let scale = BigUint::from(10u32).pow(SCALE_DIGITS);
    let mut x = BigUint::from(n) * &scale;
    for _ in 0..64 {
        x = (&x * &scale).sqrt();
    }
    let delta = BigInt::from(x) - BigInt::from(scale);
    let m = BigInt::from(2u32).pow(64);
    Ratio::new(delta * m, big_scale())
}

/// (t * ln n) mod 2pi in exact rational arithmetic, collapsed to f64.
fn oracle_angle_mod_2pi(t: f64, n: u64) -> f64 {
    let t_rat = BigRational::from_float(t).expect("finite t");
    let two_pi = Ratio::new(TWO_PI_SCALED.parse::<BigInt>().unwrap(), big_scale());
    let angle = t_rat * ln_fixed_point(n);
    let k = (&angle / &two_pi).floor();
    let reduced = angle - k * two_pi;
    let num = reduced.numer();
    let den = reduced.denom();
    // to f64 via a scaled integer division
    let scaled = (num * BigInt::from(10u64).pow(18)).div_floor(den);
    let digits: f64 = scaled.to_string().parse().unwrap();
    digits / 1e18
}

fn circle_distance(a: f64, b: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let d = (a - b).rem_euclid(two_pi);
    d.min(two_pi - d)
}

#[test]
fn phase_oracle_sanity() {
    // ln 2 = 0.693147180559945...
    let l2 = ln_fixed_point(2);
    let approx = l2.numer().to_string().parse::<f64>().unwrap()
        / l2.denom().to_string().parse::<f64>().unwrap();
    assert!((approx - std::f64::consts::LN_2).abs() < 1e-14);
    // small product needs no reduction
    assert!((oracle_angle_mod_2pi(1.5, 2) - 1.5 * std::f64::consts::LN_2).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn term_modulus_matches_power_law(
        sigma in -1.0f64..2.0,
        t in 0.0f64..1e4,
        n in 1u64..100_000,
    ) {
        let v = spiral::term_vector(StripPoint::new(sigma, t), n);
        let want = (n as f64).powf(-sigma);
        prop_assert!((v.norm() - want).abs() <= 1e-13 * want);
    }

    #[test]
    fn midpoint_equals_binomial(
        vs in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 2..64),
    ) {
        let pts: Vec<PlaneVector> = vs.iter().map(|&(x, y)| PlaneVector::new(x, y)).collect();
        let a = summation::midpoint_scheme(&pts).unwrap();
        let b = summation::binomial_average(&pts);
        let scale = a.norm().max(1.0);
        prop_assert!(a.distance(&b) <= 1e-12 * scale, "midpoint {a:?} vs binomial {b:?}");
    }

    #[test]
    fn reduced_phase_matches_bigint_oracle(
        t in 1e-3f64..1e4,
        n in 2u64..1_000_000,
    ) {
        let ours = phase::angle_mod_2pi(t, n);
        let oracle = oracle_angle_mod_2pi(t, n);
        prop_assert!(
            circle_distance(ours, oracle) < 1e-10,
            "t={t} n={n}: {ours} vs {oracle}"
        );
    }

    #[test]
    fn partial_sum_recurrence(
        sigma in 0.0f64..1.5,
        t in 1.0f64..2e3,
        m in 2u64..400,
    ) {
        let s = StripPoint::new(sigma, t);
        let prev = spiral::partial_sum(s, m - 1);
        let full = spiral::partial_sum(s, m);
        prop_assert_eq!(full, prev + spiral::term_vector(s, m));
    }

    #[test]
    fn system_interval_membership(t in 6.3f64..1e4) {
        let m = afe::system_m(t) as f64;
        let two_pi = 2.0 * std::f64::consts::PI;
        prop_assert!(two_pi * m * m <= t + 1e-9);
        prop_assert!(t < two_pi * (m + 1.0) * (m + 1.0) + 1e-9);
    }

    #[test]
    fn invariants_permutation_independent(
        t in 200.0f64..9e3,
        sigma in 0.0f64..1.0,
        seed in 0u64..u64::MAX,
    ) {
        let sys = afe::build_system_with_lambda(StripPoint::new(sigma, t), 2.0).unwrap();
        let inv = afe::invariants(&sys);
        // xorshift-shuffled resummation
        let mut order: Vec<usize> = (0..sys.m as usize).collect();
        let mut state = seed | 1;
        for i in (1..order.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            order.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let mut l1 = PlaneVector::ZERO;
        let mut l2 = PlaneVector::ZERO;
        for &i in &order {
            l1 += sys.x[i];
            l2 += sys.y[i];
        }
        let s1 = inv.l1.norm().max(1e-3);
        let s2 = inv.l2.norm().max(1e-3);
        prop_assert!(inv.l1.distance(&l1) <= 1e-12 * s1.max(sys.m as f64));
        prop_assert!(inv.l2.distance(&l2) <= 1e-12 * s2.max(sys.m as f64));
    }

    #[test]
    fn per_term_mirror_cancellation_on_critical_line(t in 150.0f64..9e3) {
        let sys = afe::build_system_with_lambda(StripPoint::new(0.5, t), 2.0).unwrap();
        for n in 0..sys.m as usize {
            let resid = sys.x[n].project(sys.phi_m) + sys.y[n].project(sys.phi_m);
            let bound = 1e-13 / ((n + 1) as f64).sqrt() + 1e-15;
            prop_assert!(resid.abs() < bound, "n={} resid={resid}", n + 1);
        }
    }

    #[test]
    fn conformal_angle_identity(
        t in 150.0f64..9e3,
        sigma in 0.0f64..1.0,
    ) {
        let sys = afe::build_system_with_lambda(StripPoint::new(sigma, t), 2.0).unwrap();
        let x1 = sys.x[0].angle();
        let y1 = sys.y[0].angle();
        for n in 0..sys.m as usize {
            let dy = phase::wrap_to_pi(sys.y[n].angle() - y1);
            let dx = phase::wrap_to_pi(sys.x[n].angle() - x1);
            prop_assert!(phase::wrap_to_pi(dy + dx).abs() < 1e-12, "n={}", n + 1);
        }
    }

    #[test]
    fn gradient_fd_matches_analytic(
        t in 200.0f64..9e3,
        sigma in 0.05f64..0.95,
    ) {
        let s = StripPoint::new(sigma, t);
        let fd = afe::gradient_l2_m(s, 1e-5).unwrap();
        let exact = afe::gradient_l2_m_analytic(s).unwrap();
        let scale = exact.abs().max(1e-6);
        prop_assert!((fd - exact).abs() <= 1e-6 * scale + 1e-9, "fd {fd} vs {exact}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn cesaro_regularity_in_convergence_region(
        sigma in 1.1f64..3.0,
        t in 100.0f64..300.0,
    ) {
        let s = StripPoint::new(sigma, t);
        let c = summation::cesaro_zeta(s, None).unwrap();
        let em = summation::euler_maclaurin_zeta(s).unwrap();
        prop_assert!(c.value.distance(&em.value) < 1e-8, "gap {}", c.value.distance(&em.value));
    }

    #[test]
    fn euler_maclaurin_cutoff_consistency(
        sigma in 0.0f64..1.5,
        t in 1.0f64..9e3,
    ) {
        let s = StripPoint::new(sigma, t);
        let n = (t.ceil() as u64).max(50);
        let a = summation::euler_maclaurin_zeta_with_cutoff(s, n).unwrap();
        let b = summation::euler_maclaurin_zeta_with_cutoff(s, 2 * n).unwrap();
        let scale = a.value.norm().max(1.0);
        prop_assert!(a.value.distance(&b.value) <= 1e-12 * scale);
    }

    #[test]
    fn chi_branch_gap_below_half_pi(
        sigma in 0.0f64..1.0,
        t in 100.0f64..9e3,
    ) {
        let e = chi::chi_exact(StripPoint::new(sigma, t)).unwrap();
        let a = chi::chi_approx(StripPoint::new(sigma, t));
        prop_assert!((e.arg_unwrapped - a.arg_unwrapped).abs() < std::f64::consts::FRAC_PI_2);
    }
}

#[test]
fn bernoulli_matches_akiyama_tanigawa() {
    // exact rational triangle; B_1 = +1/2 convention, irrelevant at even k
    let exact = |k: usize| -> BigRational {
        let mut row: Vec<BigRational> =
            (0..=k).map(|j| Ratio::new(BigInt::from(1), BigInt::from(j as i64 + 1))).collect();
        for i in 1..=k {
            for j in 0..=(k - i) {
                let d = (&row[j] - &row[j + 1]) * Ratio::new(BigInt::from(j as i64 + 1), BigInt::from(1));
                row[j] = d;
            }
        }
        row[0].clone()
    };
    for k in (2..=24u32).step_by(2) {
        let want = exact(k as usize);
        let want_f64 = want.numer().to_string().parse::<f64>().unwrap()
            / want.denom().to_string().parse::<f64>().unwrap();
        let got = summation::bernoulli(k).unwrap();
        assert!(
            (got - want_f64).abs() <= 1e-15 * want_f64.abs(),
            "B_{k}: table {got} vs triangle {want_f64}"
        );
    }
    // odd and out-of-range indices are rejected
    assert!(summation::bernoulli(5).is_err());
    assert!(summation::bernoulli(26).is_err());
}

#[test]
fn reality_of_z_on_random_ordinates() {
    // Im(e^(i theta) zeta(1/2 + it)) vanishes; 200 multiplicative-congruence
    // ordinates in [100, 1e4]
    let mut state = 0x9e3779b97f4a7c15u64;
    for _ in 0..200 {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let u = (state >> 11) as f64 / (1u64 << 53) as f64;
        let t = 100.0 + u * 9900.0;
        let z = summation::zeta_oracle(StripPoint::new(0.5, t)).unwrap();
        let theta = chi::theta(t).unwrap();
        let angle = phase::wrap_to_pi(theta);
        let im = angle.sin() * z.x + angle.cos() * z.y;
        assert!(im.abs() < 1e-8 * (1.0 + z.norm()), "t={t}: im={im}");
    }
}
