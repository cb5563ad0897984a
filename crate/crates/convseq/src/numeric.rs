//! The coefficient field: exact rationals with one-way promotion to
//! complex binary64.
//!
//! Arithmetic between two exact rationals stays exact; any operation that
//! touches a complex operand yields a complex result. No NaN is ever stored:
//! an operation that would produce one panics, and callers are expected to
//! validate (nonzero divisors etc.) before arithmetic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::Sign;
use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative tolerance for acceptance comparisons.
pub const DEFAULT_REL_TOL: f64 = 1e-9;
/// Default absolute tolerance for acceptance comparisons.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;

/// A scalar of the two-level number tower.
#[derive(Clone, Debug)]
pub enum Coefficient {
    /// Arbitrary-precision rational, always in lowest terms with a
    /// positive denominator (maintained by `BigRational`).
    Exact(BigRational),
    /// Complex pair of binary64.
    Complex(Complex64),
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Coefficient::Exact(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact rational `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Coefficient::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_f64(re: f64) -> Self {
        Coefficient::Complex(Complex64::new(re, 0.0))
    }

    pub fn from_complex(re: f64, im: f64) -> Self {
        Coefficient::Complex(Complex64::new(re, im))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coefficient::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Exact(r) => r.is_zero(),
            Coefficient::Complex(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Coefficient::Exact(r) => Some(r),
            Coefficient::Complex(_) => None,
        }
    }

    /// Complex view without range checking; huge rationals round to ±inf.
    pub fn to_complex_lossy(&self) -> Complex64 {
        match self {
            Coefficient::Exact(r) => Complex64::new(big_ratio_to_f64(r), 0.0),
            Coefficient::Complex(c) => *c,
        }
    }

    /// One-way promotion into the complex floating field.
    ///
    /// Exact rationals round to the nearest binary64; values outside the
    /// binary64 range signal `Error::Range`. Complex values pass through.
    pub fn promote_to_complex(&self) -> Result<Coefficient> {
        match self {
            Coefficient::Exact(r) => {
                let v = big_ratio_to_f64(r);
                if v.is_finite() {
                    Ok(Coefficient::Complex(Complex64::new(v, 0.0)))
                } else {
                    Err(Error::Range)
                }
            }
            Coefficient::Complex(c) => Ok(Coefficient::Complex(*c)),
        }
    }

    /// Modulus as binary64 (|p/q| rounded for exact values).
    pub fn modulus(&self) -> f64 {
        match self {
            Coefficient::Exact(r) => big_ratio_to_f64(r).abs(),
            Coefficient::Complex(c) => c.norm(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Coefficient {
        Coefficient::one() / self.clone()
    }

    fn check_no_nan(self) -> Coefficient {
        if let Coefficient::Complex(c) = &self {
            assert!(
                !c.re.is_nan() && !c.im.is_nan(),
                "arithmetic produced NaN; operands must be validated first"
            );
        }
        self
    }
}

/// Rounds a big rational to the nearest binary64 without intermediate
/// overflow (numerator and denominator are reduced to their top 64 bits
/// and the exponent is reapplied).
pub fn big_ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer();
    let den = r.denom();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let n_top = (num.abs() >> shift_n as u64).to_f64().unwrap_or(f64::INFINITY);
    let d_top = (den >> shift_d as u64).to_f64().unwrap_or(f64::INFINITY);
    let mut v = n_top / d_top;
    let e = shift_n - shift_d;
    if e != 0 {
        // split the scaling to avoid spurious overflow at the boundary
        let half = (e / 2) as i32;
        v = v * 2f64.powi(half) * 2f64.powi((e - half as i64) as i32);
    }
    if num.sign() == Sign::Minus {
        v = -v;
    }
    v
}

/// Tolerance-aware comparison: exact/exact compares by equality ignoring
/// tolerances; otherwise true iff `|x - y| <= max(abs_tol, rel_tol * max(|x|, |y|))`.
pub fn near_equal(x: &Coefficient, y: &Coefficient, rel_tol: f64, abs_tol: f64) -> bool {
    assert!(
        rel_tol >= 0.0 && abs_tol >= 0.0 && rel_tol.is_finite() && abs_tol.is_finite(),
        "tolerances must be finite and nonnegative"
    );
    match (x, y) {
        (Coefficient::Exact(a), Coefficient::Exact(b)) => a == b,
        _ => {
            let a = x.to_complex_lossy();
            let b = y.to_complex_lossy();
            let diff = (a - b).norm();
            diff <= abs_tol.max(rel_tol * a.norm().max(b.norm()))
        }
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Coefficient {
            type Output = Coefficient;
            fn $method(self, rhs: &Coefficient) -> Coefficient {
                match (self, rhs) {
                    (Coefficient::Exact(a), Coefficient::Exact(b)) => {
                        Coefficient::Exact(a $op b)
                    }
                    _ => {
                        let a = self.to_complex_lossy();
                        let b = rhs.to_complex_lossy();
                        Coefficient::Complex(a $op b).check_no_nan()
                    }
                }
            }
        }
        impl $trait for Coefficient {
            type Output = Coefficient;
            fn $method(self, rhs: Coefficient) -> Coefficient {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);
impl_binop!(Mul, mul, *);

impl Div for &Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: &Coefficient) -> Coefficient {
        assert!(!rhs.is_zero(), "division by zero coefficient");
        match (self, rhs) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => Coefficient::Exact(a / b),
            _ => {
                let a = self.to_complex_lossy();
                let b = rhs.to_complex_lossy();
                Coefficient::Complex(a / b).check_no_nan()
            }
        }
    }
}

impl Div for Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: Coefficient) -> Coefficient {
        (&self) / (&rhs)
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Exact(r) => Coefficient::Exact(-r),
            Coefficient::Complex(c) => Coefficient::Complex(-c),
        }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -(&self)
    }
}

impl PartialEq for Coefficient {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coefficient::Exact(a), Coefficient::Exact(b)) => a == b,
            _ => self.to_complex_lossy() == other.to_complex_lossy(),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coefficient::Complex(c) => {
                if c.im == 0.0 {
                    write!(f, "{}", c.re)
                } else if c.im < 0.0 {
                    write!(f, "{}{}i", c.re, c.im)
                } else {
                    write!(f, "{}+{}i", c.re, c.im)
                }
            }
        }
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Coefficient::Exact(r) => {
                let mut s = serializer.serialize_struct("Coefficient", 2)?;
                s.serialize_field("num", &r.numer().to_string())?;
                s.serialize_field("den", &r.denom().to_string())?;
                s.end()
            }
            Coefficient::Complex(c) => {
                let mut s = serializer.serialize_struct("Coefficient", 2)?;
                s.serialize_field("re", &c.re)?;
                s.serialize_field("im", &c.im)?;
                s.end()
            }
        }
    }
}

/// Accepted JSON forms: `{"num": "...", "den": "..."}` (exact),
/// `{"re": x, "im": y}` (complex), a bare integer (exact), a bare float
/// (complex with zero imaginary part), or a string `"p/q"`.
impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        coefficient_from_value(&v).map_err(de::Error::custom)
    }
}

pub fn coefficient_from_value(v: &serde_json::Value) -> Result<Coefficient> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Coefficient::from_int(i))
            } else if let Some(f) = n.as_f64() {
                Ok(Coefficient::from_f64(f))
            } else {
                Err(Error::Config(format!("unsupported number {n}")))
            }
        }
        serde_json::Value::String(s) => parse_ratio_str(s),
        serde_json::Value::Object(map) => {
            if map.contains_key("num") || map.contains_key("den") {
                let num = map
                    .get("num")
                    .and_then(|x| x.as_str())
                    .ok_or_else(|| Error::Config("exact coefficient needs string `num`".into()))?;
                let den = map
                    .get("den")
                    .and_then(|x| x.as_str())
                    .unwrap_or("1");
                let n: BigInt = num
                    .parse()
                    .map_err(|_| Error::Config(format!("bad numerator `{num}`")))?;
                let d: BigInt = den
                    .parse()
                    .map_err(|_| Error::Config(format!("bad denominator `{den}`")))?;
                if d.is_zero() {
                    return Err(Error::Config("zero denominator".into()));
                }
                Ok(Coefficient::Exact(BigRational::new(n, d)))
            } else if map.contains_key("re") || map.contains_key("im") {
                let re = map.get("re").and_then(|x| x.as_f64()).unwrap_or(0.0);
                let im = map.get("im").and_then(|x| x.as_f64()).unwrap_or(0.0);
                if re.is_nan() || im.is_nan() {
                    return Err(Error::Config("NaN coefficient rejected".into()));
                }
                Ok(Coefficient::from_complex(re, im))
            } else {
                Err(Error::Config("coefficient object needs num/den or re/im".into()))
            }
        }
        _ => Err(Error::Config(format!("cannot parse coefficient from {v}"))),
    }
}

fn parse_ratio_str(s: &str) -> Result<Coefficient> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = n
        .parse()
        .map_err(|_| Error::Config(format!("bad rational `{s}`")))?;
    let den: BigInt = d
        .parse()
        .map_err(|_| Error::Config(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Config("zero denominator".into()));
    }
    Ok(Coefficient::Exact(BigRational::new(num, den)))
}

/// Kahan-compensated complex accumulator for the float recurrence path.
#[derive(Clone, Copy, Default)]
pub struct KahanComplex {
    sum: Complex64,
    comp: Complex64,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: Complex64) {
        let y = term - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn total(&self) -> Complex64 {
        self.sum
    }
}
