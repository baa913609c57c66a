//! Extended-precision phase arithmetic for angles of the form `t * ln(n)`.
//!
//! Plain binary64 loses absolute accuracy in `t * ln(n) mod 2pi` once the
//! product reaches ~1e5: the product rounds to ~1e-11 and an f64 reduction
//! against a rounded 2pi adds a comparable amount. The helpers here carry the
//! product as an unevaluated double-double pair (hi + lo) and reduce it
//! against a double-double 2pi, so the reduced angle stays accurate to a few
//! units in 1e-13 for t <= 1e4 and any index that fits in 52 bits.
//!
//! Natural logarithms of integer indices are computed once in double-double
//! precision (binary split plus an atanh series) and memoized, so the per-term
//! cost inside summation loops is a handful of multiply-adds.

use std::sync::RwLock;

/// 2pi as a double-double constant.
const TWO_PI_HI: f64 = 6.283185307179586;
const TWO_PI_LO: f64 = 2.4492935982947064e-16;
/// ln 2 as a double-double constant.
const LN2_HI: f64 = 0.6931471805599453;
const LN2_LO: f64 = 2.3190468138462996e-17;
/// pi/4 and pi/8 as double-double constants.
pub(crate) const FRAC_PI_4_HI: f64 = 0.7853981633974483;
pub(crate) const FRAC_PI_4_LO: f64 = 3.061616997868383e-17;
pub(crate) const FRAC_PI_8_HI: f64 = 0.39269908169872414;
pub(crate) const FRAC_PI_8_LO: f64 = 1.5308084989341915e-17;

/// An unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    Dd { hi: s, lo: err }
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    let err = a.mul_add(b, -p);
    Dd { hi: p, lo: err }
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        let lo = s.lo + self.lo + other.lo;
        quick_two_sum(s.hi, lo)
    }

    #[inline]
    pub fn add_f64(self, x: f64) -> Dd {
        let s = two_sum(self.hi, x);
        quick_two_sum(s.hi, s.lo + self.lo)
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd { hi: -other.hi, lo: -other.lo })
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        let lo = p.lo + self.hi * other.lo + self.lo * other.hi;
        quick_two_sum(p.hi, lo)
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let p = two_prod(self.hi, x);
        quick_two_sum(p.hi, p.lo + self.lo * x)
    }

    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        let q1 = self.hi / x;
        let r = self.sub(two_prod(q1, x));
        let q2 = (r.hi + r.lo) / x;
        quick_two_sum(q1, q2)
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mul_f64(q2));
        let q3 = r2.hi / other.hi;
        quick_two_sum(q1, q2).add_f64(q3)
    }
}

/// ln(n) in double-double precision for an integer index.
///
/// n is split as m * 2^e with m in [1, 2), folded into [1/sqrt2, sqrt2), and
/// ln(m) is summed as the atanh series in z = (m-1)/(m+1).
fn ln_dd_uncached(n: u64) -> Dd {
    debug_assert!(n >= 1);
    if n == 1 {
        return Dd::ZERO;
    }
    let mut e = 63 - n.leading_zeros() as i32;
    let mut m = n as f64 / f64::powi(2.0, e);
    if m > std::f64::consts::SQRT_2 {
        m *= 0.5;
        e += 1;
    }
    // z = (m - 1)/(m + 1); m - 1 is exact for m in [0.7, 1.5).
    let z = Dd::from_f64(m - 1.0).div(two_sum(m, 1.0));
    let zz = z.mul(z);
    let mut term = z;
    let mut sum = z;
    let mut k = 1u32;
    loop {
        term = term.mul(zz);
        let contrib = term.div_f64((2 * k + 1) as f64);
        sum = sum.add(contrib);
        k += 1;
        if contrib.hi.abs() < 1e-34 * sum.hi.abs() || k > 40 {
            break;
        }
    }
    // ln n = e*ln2 + 2*atanh(z)
    let ln2 = Dd { hi: LN2_HI, lo: LN2_LO };
    ln2.mul_f64(e as f64).add(sum.mul_f64(2.0))
}

const LN_CACHE_MAX: usize = 1 << 21;

static LN_CACHE: RwLock<Vec<Dd>> = RwLock::new(Vec::new());

/// Memoized double-double ln(n).
pub fn ln_dd(n: u64) -> Dd {
    if n as usize >= LN_CACHE_MAX {
        return ln_dd_uncached(n);
    }
    let idx = n as usize;
    {
        let cache = LN_CACHE.read().unwrap();
        if idx < cache.len() {
            return cache[idx];
        }
    }
    let mut cache = LN_CACHE.write().unwrap();
    if idx >= cache.len() {
        let new_len = (idx + 1).next_power_of_two().max(1024).min(LN_CACHE_MAX);
        let start = cache.len().max(1);
        if cache.is_empty() {
            cache.push(Dd::ZERO); // index 0 unused
        }
        for k in start..new_len {
            let v = ln_dd_uncached(k as u64);
            cache.push(v);
        }
    }
    cache[idx]
}

/// Reduces a double-double angle into [0, 2pi), returning the residue as a pair.
pub fn reduce_two_pi(x: Dd) -> Dd {
    let two_pi = Dd { hi: TWO_PI_HI, lo: TWO_PI_LO };
    let k = (x.hi / TWO_PI_HI).round();
    let mut r = x.sub(two_pi.mul_f64(k));
    while r.hi < 0.0 {
        r = r.add(two_pi);
    }
    while r.hi >= TWO_PI_HI {
        r = r.sub(two_pi);
    }
    r
}

/// (t * ln n) mod 2pi in [0, 2pi).
pub fn angle_mod_2pi(t: f64, n: u64) -> f64 {
    let angle = ln_dd(n).mul_f64(t);
    let r = reduce_two_pi(angle);
    let v = r.value();
    if v < 0.0 {
        v + TWO_PI_HI
    } else if v >= TWO_PI_HI + TWO_PI_LO {
        v - TWO_PI_HI
    } else {
        v
    }
}

/// (cos, sin) of a reduced double-double angle; the low word enters as a
/// first-order correction.
#[inline]
pub fn sin_cos_dd(r: Dd) -> (f64, f64) {
    let (s, c) = r.hi.sin_cos();
    (c - r.lo * s, s + r.lo * c)
}

/// (cos(t ln n), sin(t ln n)).
#[inline]
pub fn sincos_t_ln_n(t: f64, n: u64) -> (f64, f64) {
    let angle = ln_dd(n).mul_f64(t);
    sin_cos_dd(reduce_two_pi(angle))
}

/// Folds an angle into (-pi, pi].
pub fn wrap_to_pi(a: f64) -> f64 {
    let r = reduce_two_pi(Dd::from_f64(a)).value();
    if r > std::f64::consts::PI {
        r - TWO_PI_HI
    } else {
        r
    }
}
