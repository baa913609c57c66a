use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

/// A point s = sigma + it of the complex plane with t >= 0.
///
/// Negative imaginary parts are never stored; values in the lower half plane
/// follow from the conjugation identity zeta(conj s) = conj zeta(s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripPoint {
    pub sigma: f64,
    pub t: f64,
}

impl StripPoint {
    /// Builds a strip point. Panics on non-finite components or t < 0.
    pub fn new(sigma: f64, t: f64) -> Self {
        assert!(sigma.is_finite(), "sigma must be finite");
        assert!(t.is_finite() && t >= 0.0, "t must be finite and >= 0");
        StripPoint { sigma, t }
    }

    /// True when 0 <= sigma <= 1.
    pub fn in_critical_strip(&self) -> bool {
        (0.0..=1.0).contains(&self.sigma)
    }

    /// The reflected point 1 - sigma + it.
    pub fn reflected(&self) -> StripPoint {
        StripPoint::new(1.0 - self.sigma, self.t)
    }
}

impl fmt::Display for StripPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.sigma, self.t)
    }
}

/// A 2-D vector (x, y) standing for the complex number x + iy.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlaneVector {
    pub x: f64,
    pub y: f64,
}

impl PlaneVector {
    pub const ZERO: PlaneVector = PlaneVector { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        PlaneVector { x, y }
    }

    /// Vector of modulus `r` at angle `angle` (radians, counterclockwise from +x).
    pub fn from_polar(r: f64, angle: f64) -> Self {
        let (sin, cos) = angle.sin_cos();
        PlaneVector { x: r * cos, y: r * sin }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Principal angle in (-pi, pi].
    pub fn angle(&self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn dot(&self, other: &PlaneVector) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Scalar projection onto the unit direction at `axis_angle`.
    pub fn project(&self, axis_angle: f64) -> f64 {
        let (sin, cos) = axis_angle.sin_cos();
        self.x * cos + self.y * sin
    }

    /// Euclidean distance to another point.
    pub fn distance(&self, other: &PlaneVector) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl Add for PlaneVector {
    type Output = PlaneVector;
    fn add(self, rhs: PlaneVector) -> PlaneVector {
        PlaneVector::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for PlaneVector {
    fn add_assign(&mut self, rhs: PlaneVector) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for PlaneVector {
    type Output = PlaneVector;
    fn sub(self, rhs: PlaneVector) -> PlaneVector {
        PlaneVector::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for PlaneVector {
    type Output = PlaneVector;
    fn neg(self) -> PlaneVector {
        PlaneVector::new(-self.x, -self.y)
    }
}

impl Mul<f64> for PlaneVector {
    type Output = PlaneVector;
    fn mul(self, rhs: f64) -> PlaneVector {
        PlaneVector::new(self.x * rhs, self.y * rhs)
    }
}

impl From<Complex64> for PlaneVector {
    fn from(z: Complex64) -> Self {
        PlaneVector::new(z.re, z.im)
    }
}

impl From<PlaneVector> for Complex64 {
    fn from(v: PlaneVector) -> Self {
        Complex64::new(v.x, v.y)
    }
}

/// Which evaluation route produced a zeta value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    PartialSum,
    Cesaro,
    EulerMaclaurin,
    Afe,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::PartialSum => "partial_sum",
            Method::Cesaro => "cesaro",
            Method::EulerMaclaurin => "euler_maclaurin",
            Method::Afe => "afe",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "partial_sum" => Ok(Method::PartialSum),
            "cesaro" => Ok(Method::Cesaro),
            "euler_maclaurin" => Ok(Method::EulerMaclaurin),
            "afe" => Ok(Method::Afe),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

/// A zeta value together with the method that produced it and an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: PlaneVector,
    pub method: Method,
    /// Estimated absolute error; always finite and >= 0.
    pub est_error: f64,
}
