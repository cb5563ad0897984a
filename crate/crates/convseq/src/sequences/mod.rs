//! Definitions and evaluation of the kernel sequence **b**: finite vectors
//! with zero tail, parametric catalog kernels, and self-recurrent
//! definitions where bₙ depends on b₀..bₙ₋₁.

mod tables;
pub use tables::*;

use std::sync::{Arc, Mutex};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{coefficient_from_value, Coefficient};

/// Möbius function by trial division (intended for n ≤ 10⁶).
pub fn mobius(n: u64) -> Result<i32> {
    if n < 1 {
        return Err(Error::Domain(format!("mobius requires n >= 1, got {n}")));
    }
    let mut n = n;
    let mut factors = 0;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            factors += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors += 1;
    }
    Ok(if factors % 2 == 0 { 1 } else { -1 })
}

/// Exponent parameter of the zeta kernels: exact integer exponents keep
/// the rational path, everything else falls to complex floats.
#[derive(Clone, Debug)]
enum Exponent {
    Int(i64),
    Cx(Complex64),
}

impl Exponent {
    fn from_coefficient(a: &Coefficient) -> Result<Exponent> {
        if let Some(r) = a.as_exact() {
            if r.denom().is_one() {
                if let Some(i) = r.numer().to_i64() {
                    return Ok(Exponent::Int(i));
                }
            }
        }
        match a.promote_to_complex()? {
            Coefficient::Complex(c) => Ok(Exponent::Cx(c)),
            Coefficient::Exact(_) => unreachable!(),
        }
    }

    /// j^(−a) in the matching field.
    fn pow_neg(&self, j: u64) -> Coefficient {
        match self {
            Exponent::Int(i) => {
                let jp = BigInt::from(j).pow(i.unsigned_abs() as u32);
                if *i >= 0 {
                    Coefficient::Exact(BigRational::new(BigInt::one(), jp))
                } else {
                    Coefficient::Exact(BigRational::from_integer(jp))
                }
            }
            Exponent::Cx(a) => {
                Coefficient::Complex((-a * (j as f64).ln()).exp())
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Kernel {
    ZetaDirect(Exponent),
    ZetaMobius(Exponent),
    ZetaHasse(Exponent),
    LeibnizPi,
    ExpE,
    EulerIdentity,
    ArcsinCentral,
    FibonacciGeometric,
    CatalanProb,
    FibonacciPhi,
    SinIntegers,
    /// b₀ = 1, b₁ given, bₙ = −Cₙ₋₁ for n ≥ 2 (Catalan / Fine entries).
    NegCatalanTail { b1: i64 },
}

#[derive(Debug)]
enum Kind {
    Finite(Vec<Coefficient>),
    /// bₙ = Σᵢ coeffs[i]·bₙ₋₁₋ᵢ for n ≥ seeds.len().
    LinearRec {
        seeds: Vec<Coefficient>,
        coeffs: Vec<Coefficient>,
    },
    Kernel(Kernel),
}

#[derive(Debug)]
struct Inner {
    kind: Kind,
    memo: Mutex<Vec<Coefficient>>,
    /// Hasse inner sums h(0..k), populated lazily by the ZetaHasse kernel.
    aux: Mutex<Vec<Coefficient>>,
}

/// An immutable, memoizing description of **b** (b₀ ≠ 0 guaranteed).
#[derive(Clone, Debug)]
pub struct SequenceSpec {
    inner: Arc<Inner>,
}

impl SequenceSpec {
    fn from_kind(kind: Kind) -> Result<SequenceSpec> {
        let spec = SequenceSpec {
            inner: Arc::new(Inner {
                kind,
                memo: Mutex::new(Vec::new()),
                aux: Mutex::new(Vec::new()),
            }),
        };
        if spec.eval_b(0).is_zero() {
            return Err(Error::Construction("b0 must be nonzero".into()));
        }
        Ok(spec)
    }

    /// Finite vector with zero tail.
    pub fn finite(values: Vec<Coefficient>) -> Result<SequenceSpec> {
        if values.is_empty() {
            return Err(Error::Construction("b0 must be nonzero".into()));
        }
        Self::from_kind(Kind::Finite(values))
    }

    pub fn finite_ints(values: &[i64]) -> Result<SequenceSpec> {
        Self::finite(values.iter().map(|&v| Coefficient::from_int(v)).collect())
    }

    /// Declarative self-recurrent definition: seed terms followed by a
    /// fixed linear recurrence on the previous `coeffs.len()` terms.
    pub fn linear_rec(seeds: Vec<Coefficient>, coeffs: Vec<Coefficient>) -> Result<SequenceSpec> {
        if seeds.is_empty() {
            return Err(Error::Construction("b0 must be nonzero".into()));
        }
        if seeds.len() < coeffs.len() {
            return Err(Error::Construction(
                "self-recurrent definition needs at least as many seeds as lag coefficients".into(),
            ));
        }
        Self::from_kind(Kind::LinearRec { seeds, coeffs })
    }

    /// True when every term is an exact rational.
    pub fn is_exact(&self) -> bool {
        match &self.inner.kind {
            Kind::Finite(v) => v.iter().all(Coefficient::is_exact),
            Kind::LinearRec { seeds, coeffs } => {
                seeds.iter().chain(coeffs.iter()).all(Coefficient::is_exact)
            }
            Kind::Kernel(k) => match k {
                Kernel::ZetaDirect(e) | Kernel::ZetaMobius(e) | Kernel::ZetaHasse(e) => {
                    matches!(e, Exponent::Int(_))
                }
                Kernel::LeibnizPi
                | Kernel::ExpE
                | Kernel::FibonacciGeometric
                | Kernel::CatalanProb
                | Kernel::NegCatalanTail { .. } => true,
                Kernel::EulerIdentity
                | Kernel::ArcsinCentral
                | Kernel::FibonacciPhi
                | Kernel::SinIntegers => false,
            },
        }
    }

    /// For finite kernels: the stored coefficients (support of **b**).
    pub fn finite_values(&self) -> Option<&[Coefficient]> {
        match &self.inner.kind {
            Kind::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// bₙ. Deterministic; self-recurrent kinds memoize b₀..bₙ in order.
    pub fn eval_b(&self, n: usize) -> Coefficient {
        match &self.inner.kind {
            Kind::Finite(v) => v.get(n).cloned().unwrap_or_else(Coefficient::zero),
            _ => {
                let mut memo = self.inner.memo.lock().unwrap();
                while memo.len() <= n {
                    let next = self.term(memo.len(), &memo);
                    memo.push(next);
                }
                memo[n].clone()
            }
        }
    }

    /// Σ_{n=0}^{N} bₙ.
    pub fn partial_b_sum(&self, n_max: usize) -> Coefficient {
        let mut acc = Coefficient::zero();
        for n in 0..=n_max {
            acc = acc + self.eval_b(n);
        }
        acc
    }

    fn term(&self, n: usize, prefix: &[Coefficient]) -> Coefficient {
        match &self.inner.kind {
            Kind::Finite(_) => unreachable!(),
            Kind::LinearRec { seeds, coeffs } => {
                if n < seeds.len() {
                    seeds[n].clone()
                } else {
                    let mut acc = Coefficient::zero();
                    for (i, c) in coeffs.iter().enumerate() {
                        acc = acc + c.clone() * prefix[n - 1 - i].clone();
                    }
                    acc
                }
            }
            Kind::Kernel(k) => self.kernel_term(k, n, prefix),
        }
    }

    fn kernel_term(&self, k: &Kernel, n: usize, prefix: &[Coefficient]) -> Coefficient {
        match k {
            Kernel::ZetaDirect(a) => match n {
                0 => Coefficient::one(),
                1 => -a.pow_neg(2),
                _ => {
                    let mut acc = a.pow_neg(n as u64);
                    for (j, bj) in prefix.iter().enumerate() {
                        acc = acc - bj.clone() * a.pow_neg((n + 1 - j) as u64);
                    }
                    acc
                }
            },
            Kernel::ZetaMobius(a) => match n {
                0 => Coefficient::one(),
                1 => a.pow_neg(2),
                _ => {
                    let mu_n = mobius(n as u64).unwrap();
                    let mut acc = Coefficient::from_int(mu_n as i64) * a.pow_neg(n as u64);
                    for (j, bj) in prefix.iter().enumerate() {
                        let k = (n + 1 - j) as u64;
                        let mu = mobius(k).unwrap();
                        acc = acc
                            - Coefficient::from_int(mu as i64) * bj.clone() * a.pow_neg(k);
                    }
                    acc
                }
            },
            Kernel::ZetaHasse(a) => match n {
                0 => Coefficient::one(),
                1 => {
                    // 2^{-a-1} - 1/2
                    a.pow_neg(2) / Coefficient::from_int(2) - Coefficient::from_ratio(1, 2)
                }
                _ => {
                    let mut acc = self.hasse_h(n - 1, a);
                    for (l, bl) in prefix.iter().enumerate() {
                        acc = acc - bl.clone() * self.hasse_h(n - l, a);
                    }
                    acc
                }
            },
            Kernel::LeibnizPi => match n {
                0 => Coefficient::one(),
                1 => Coefficient::from_ratio(1, 3),
                _ => {
                    let sgn = |p: usize| if p % 2 == 0 { -1i64 } else { 1 };
                    let mut acc = Coefficient::from_ratio(sgn(n), 2 * n as i64 - 1);
                    for j in 1..=n {
                        acc = acc
                            + Coefficient::from_ratio(sgn(j), 2 * j as i64 + 1)
                                * prefix[n - j].clone();
                    }
                    acc
                }
            },
            Kernel::ExpE => match n {
                0 => Coefficient::one(),
                1 => Coefficient::from_int(-1),
                _ => {
                    let mut acc = Coefficient::Exact(BigRational::new(
                        BigInt::one(),
                        factorial(n - 1),
                    ));
                    for j in 1..=n {
                        acc = acc
                            - prefix[n - j].clone()
                                * Coefficient::Exact(BigRational::new(
                                    BigInt::one(),
                                    factorial(j),
                                ));
                    }
                    acc
                }
            },
            Kernel::EulerIdentity => {
                // b_n = (-1)^{n+1} pi^{2n}/(2n)! (1 + i pi/(2n+1));
                // pi^{2n}/(2n)! built iteratively to avoid factorial overflow
                let pi = std::f64::consts::PI;
                let mut t = 1.0f64;
                for k in 1..=n {
                    t *= pi * pi / ((2 * k - 1) as f64 * (2 * k) as f64);
                }
                let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
                let factor = Complex64::new(1.0, pi / (2 * n + 1) as f64);
                Coefficient::Complex(sign * t * factor)
            }
            Kernel::ArcsinCentral => {
                // b_n = (3 sqrt 3 / 2 pi) * (n!)^2/(2n+1)!
                let pref = 3.0 * 3.0f64.sqrt() / (2.0 * std::f64::consts::PI);
                let mut r = 1.0f64;
                for k in 1..=n {
                    r *= k as f64 / (2.0 * (2 * k + 1) as f64);
                }
                Coefficient::from_f64(pref * r)
            }
            Kernel::FibonacciGeometric => {
                // F(n+1)/2^{n+2}
                let f = fibonacci(n as u64 + 1);
                Coefficient::Exact(BigRational::new(f, BigInt::from(2).pow(n as u32 + 2)))
            }
            Kernel::CatalanProb => {
                // C_n / 2^{2n+1}
                Coefficient::Exact(BigRational::new(
                    catalan_number(n),
                    BigInt::from(2).pow(2 * n as u32 + 1),
                ))
            }
            Kernel::FibonacciPhi => {
                let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
                let f = fibonacci(n as u64 + 1).to_f64().unwrap();
                Coefficient::from_f64(f * phi.powi(-(n as i32)))
            }
            Kernel::SinIntegers => Coefficient::from_f64(((n + 1) as f64).sin()),
            Kernel::NegCatalanTail { b1 } => match n {
                0 => Coefficient::one(),
                1 => Coefficient::from_int(*b1),
                _ => Coefficient::Exact(BigRational::from_integer(-catalan_number(n - 1))),
            },
        }
    }

    /// Hasse inner sum h(k) = 2^{-k} Σ_{j=0}^{k} C(k,j)(-1)^j (j+1)^{-a},
    /// memoized per spec instance.
    fn hasse_h(&self, k: usize, a: &Exponent) -> Coefficient {
        {
            let aux = self.inner.aux.lock().unwrap();
            if let Some(v) = aux.get(k) {
                return v.clone();
            }
        }
        let mut aux = self.inner.aux.lock().unwrap();
        while aux.len() <= k {
            let kk = aux.len();
            let mut sum = Coefficient::zero();
            for j in 0..=kk {
                let c = Coefficient::Exact(BigRational::from_integer(
                    num::integer::binomial(BigInt::from(kk), BigInt::from(j)),
                ));
                let s = if j % 2 == 0 {
                    Coefficient::one()
                } else {
                    Coefficient::from_int(-1)
                };
                sum = sum + c * s * a.pow_neg(j as u64 + 1);
            }
            let half_pow =
                Coefficient::Exact(BigRational::new(BigInt::one(), BigInt::from(2).pow(kk as u32)));
            aux.push(sum * half_pow);
        }
        aux[k].clone()
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn fibonacci(n: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

fn catalan_number(n: usize) -> BigInt {
    let mut c = BigInt::one();
    for k in 0..n {
        c = c * 2 * (2 * k as i64 + 1) / (k as i64 + 2);
    }
    c
}

/// Constructs a registered catalog kernel.
///
/// `params` carries the entry's parameters: `a` (coefficient) for the zeta
/// variants, `id` (1..=15) for `famous`, and `k` for the parametric famous
/// entries 14 and 15.
pub fn catalog_b(name: &str, params: &serde_json::Map<String, serde_json::Value>) -> Result<SequenceSpec> {
    let need_a = || -> Result<Exponent> {
        let v = params
            .get("a")
            .ok_or_else(|| Error::Param(format!("catalog entry `{name}` requires parameter `a`")))?;
        Exponent::from_coefficient(&coefficient_from_value(v)?)
    };
    let kernel = match name {
        "zeta_direct" => Kernel::ZetaDirect(need_a()?),
        "zeta_mobius" => Kernel::ZetaMobius(need_a()?),
        "zeta_hasse" => Kernel::ZetaHasse(need_a()?),
        "leibniz_pi" => Kernel::LeibnizPi,
        "exp_e" => Kernel::ExpE,
        "euler_identity" => Kernel::EulerIdentity,
        "arcsin_central" => Kernel::ArcsinCentral,
        "fibonacci_geometric" => Kernel::FibonacciGeometric,
        "catalan_prob" => Kernel::CatalanProb,
        "fibonacci_phi" => Kernel::FibonacciPhi,
        "sin_integers" => Kernel::SinIntegers,
        "famous" => {
            let id = params
                .get("id")
                .and_then(|v| v.as_u64())
                .ok_or_else(|| Error::Param("`famous` requires integer parameter `id`".into()))?;
            return famous(id, params);
        }
        _ => return Err(Error::UnknownCatalogEntry(name.to_string())),
    };
    SequenceSpec::from_kind(Kind::Kernel(kernel))
}

/// The fifteen named kernels of the famous-sequence list, by 1-based id.
pub fn famous(id: u64, params: &serde_json::Map<String, serde_json::Value>) -> Result<SequenceSpec> {
    let need_k = || -> Result<i64> {
        params
            .get("k")
            .and_then(|v| v.as_i64())
            .ok_or_else(|| Error::Param(format!("famous entry {id} requires integer parameter `k`")))
    };
    match id {
        // Lucas: b0=1, b1=1/2, b_n = -5/2^n
        1 => SequenceSpec::linear_rec(
            vec![
                Coefficient::one(),
                Coefficient::from_ratio(1, 2),
                Coefficient::from_ratio(-5, 4),
            ],
            vec![Coefficient::from_ratio(1, 2)],
        ),
        // Woodall: b_n = -2 b_{n-1} + 4 b_{n-2}, n >= 4
        2 => SequenceSpec::linear_rec(
            vec![
                Coefficient::one(),
                Coefficient::from_int(-6),
                Coefficient::from_int(26),
                Coefficient::from_int(-84),
            ],
            vec![Coefficient::from_int(-2), Coefficient::from_int(4)],
        ),
        // Lazy Caterer: b_n = -b_{n-3}, n >= 4
        3 => SequenceSpec::linear_rec(
            vec![
                Coefficient::one(),
                Coefficient::from_int(-1),
                Coefficient::zero(),
                Coefficient::one(),
            ],
            vec![
                Coefficient::zero(),
                Coefficient::zero(),
                Coefficient::from_int(-1),
            ],
        ),
        // shifted Pell
        4 => SequenceSpec::finite_ints(&[1, -1, -1]),
        // natural numbers
        5 => SequenceSpec::finite_ints(&[1, -1, 1]),
        // Bell
        6 => {
            let mut v = vec![1, 0];
            v.extend(BELL_B_TAIL.iter().map(|&x| -x));
            SequenceSpec::finite_ints(&v)
        }
        // Catalan
        7 => SequenceSpec::from_kind(Kind::Kernel(Kernel::NegCatalanTail { b1: 0 })),
        // shifted Fine
        8 => SequenceSpec::from_kind(Kind::Kernel(Kernel::NegCatalanTail { b1: 1 })),
        // Les Marvin: b_n = b_{n-2} - b_{n-3}, n >= 5
        9 => SequenceSpec::linear_rec(
            vec![
                Coefficient::one(),
                Coefficient::from_int(-1),
                Coefficient::zero(),
                Coefficient::from_int(-1),
                Coefficient::from_int(3),
            ],
            vec![
                Coefficient::zero(),
                Coefficient::one(),
                Coefficient::from_int(-1),
            ],
        ),
        // Gould
        10 => SequenceSpec::finite_ints(&GOULD_B),
        // Motzkin
        11 => {
            let mut v = vec![1, 0];
            v.extend(MOTZKIN.iter().take(22).map(|&x| -x));
            SequenceSpec::finite_ints(&v)
        }
        // Padovan: b_n = b_{n-2}, n >= 4
        12 => SequenceSpec::linear_rec(
            vec![
                Coefficient::one(),
                Coefficient::one(),
                Coefficient::zero(),
                Coefficient::from_int(-1),
            ],
            vec![Coefficient::zero(), Coefficient::one()],
        ),
        // Ramanujan tau
        13 => SequenceSpec::finite_ints(&TAU_B),
        // powers of k
        14 => SequenceSpec::finite_ints(&[1, 1 - need_k()?]),
        // k-generalized Fibonacci
        15 => {
            let k = need_k()?;
            if k < 1 {
                return Err(Error::Param("famous entry 15 requires k >= 1".into()));
            }
            let mut v = vec![1, 0];
            v.extend(std::iter::repeat(-1).take(k as usize));
            SequenceSpec::finite_ints(&v)
        }
        _ => Err(Error::UnknownCatalogEntry(format!("famous id {id}"))),
    }
}

/// Parses the JSON spec form:
/// `{"kind":"finite","values":[...]}`,
/// `{"kind":"catalog","name":"...","params":{...}}`, or
/// `{"kind":"self_recurrent","seeds":[...],"coeffs":[...]}`.
/// A bare JSON array is shorthand for a finite spec.
pub fn spec_from_json(v: &serde_json::Value) -> Result<SequenceSpec> {
    if let Some(arr) = v.as_array() {
        let values = arr
            .iter()
            .map(coefficient_from_value)
            .collect::<Result<Vec<_>>>()?;
        return SequenceSpec::finite(values);
    }
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Config("sequence spec must be an object or array".into()))?;
    let kind = obj
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| Error::Config("sequence spec needs string field `kind`".into()))?;
    let coeff_list = |field: &str| -> Result<Vec<Coefficient>> {
        obj.get(field)
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Config(format!("`{kind}` spec needs array field `{field}`")))?
            .iter()
            .map(coefficient_from_value)
            .collect()
    };
    match kind {
        "finite" => SequenceSpec::finite(coeff_list("values")?),
        "catalog" => {
            let name = obj
                .get("name")
                .and_then(|x| x.as_str())
                .ok_or_else(|| Error::Config("catalog spec needs string field `name`".into()))?;
            let empty = serde_json::Map::new();
            let params = obj.get("params").and_then(|p| p.as_object()).unwrap_or(&empty);
            catalog_b(name, params)
        }
        "self_recurrent" => SequenceSpec::linear_rec(coeff_list("seeds")?, coeff_list("coeffs")?),
        other => Err(Error::Config(format!("unknown sequence kind `{other}`"))),
    }
}

impl<'de> serde::Deserialize<'de> for SequenceSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        spec_from_json(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::near_equal;

    fn params(pairs: &[(&str, serde_json::Value)]) -> serde_json::Map<String, serde_json::Value> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn finite_eval_and_zero_tail() {
        let b = SequenceSpec::finite_ints(&[5, -4, -3, 3]).unwrap();
        assert_eq!(b.eval_b(2), Coefficient::from_int(-3));
        assert_eq!(b.eval_b(9), Coefficient::zero());
        assert_eq!(b.partial_b_sum(10), Coefficient::one());
    }

    #[test]
    fn b0_zero_rejected() {
        let r = SequenceSpec::finite_ints(&[0, 1]);
        assert!(matches!(r, Err(Error::Construction(msg)) if msg.contains("b0 must be nonzero")));
    }

    #[test]
    fn mobius_small_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn fibonacci_geometric_term() {
        let b = catalog_b("fibonacci_geometric", &params(&[])).unwrap();
        assert_eq!(b.eval_b(3), Coefficient::from_ratio(3, 32));
    }

    #[test]
    fn catalan_prob_prefix() {
        let b = catalog_b("catalan_prob", &params(&[])).unwrap();
        let expect = [(1, 2), (1, 8), (1, 16), (5, 128)];
        for (n, (p, q)) in expect.iter().enumerate() {
            assert_eq!(b.eval_b(n), Coefficient::from_ratio(*p, *q));
        }
    }

    #[test]
    fn leibniz_prefix() {
        let b = catalog_b("leibniz_pi", &params(&[])).unwrap();
        assert_eq!(b.eval_b(0), Coefficient::one());
        assert_eq!(b.eval_b(1), Coefficient::from_ratio(1, 3));
        assert_eq!(b.eval_b(2), Coefficient::from_ratio(-19, 45));
        assert_eq!(b.eval_b(3), Coefficient::from_ratio(128, 945));
        assert_eq!(b.eval_b(4), Coefficient::from_ratio(-1088, 14175));
    }

    #[test]
    fn exp_e_prefix() {
        let b = catalog_b("exp_e", &params(&[])).unwrap();
        assert_eq!(b.eval_b(1), Coefficient::from_int(-1));
        assert_eq!(b.eval_b(2), Coefficient::from_ratio(3, 2));
        assert_eq!(b.eval_b(3), Coefficient::from_ratio(-2, 3));
        assert_eq!(b.eval_b(4), Coefficient::from_ratio(5, 24));
    }

    #[test]
    fn zeta_direct_b1() {
        let b = catalog_b("zeta_direct", &params(&[("a", serde_json::json!(2))])).unwrap();
        assert_eq!(b.eval_b(1), Coefficient::from_ratio(-1, 4));
        // b2 = 1/4 - 1/9 + 1/16 (instantiating the weighted identity's
        // second coefficient)
        let b2 = Coefficient::from_ratio(1, 4) - Coefficient::from_ratio(1, 9)
            + Coefficient::from_ratio(1, 16);
        assert_eq!(b.eval_b(2), b2);
    }

    #[test]
    fn exp_e_sums_to_one() {
        let b = catalog_b("exp_e", &params(&[])).unwrap();
        let s = b.partial_b_sum(40).promote_to_complex().unwrap();
        assert!(near_equal(&s, &Coefficient::one(), 0.0, 1e-12));
    }

    #[test]
    fn euler_identity_sums_to_one() {
        let b = catalog_b("euler_identity", &params(&[])).unwrap();
        let s = b.partial_b_sum(40);
        assert!(near_equal(&s, &Coefficient::from_f64(1.0), 0.0, 1e-12));
    }

    #[test]
    fn arcsin_sums_to_one() {
        let b = catalog_b("arcsin_central", &params(&[])).unwrap();
        let s = b.partial_b_sum(60);
        assert!(near_equal(&s, &Coefficient::from_f64(1.0), 0.0, 1e-9));
    }

    #[test]
    fn famous_naturals_is_finite() {
        let b = famous(5, &params(&[])).unwrap();
        assert_eq!(b.eval_b(0), Coefficient::one());
        assert_eq!(b.eval_b(1), Coefficient::from_int(-1));
        assert_eq!(b.eval_b(2), Coefficient::one());
        assert_eq!(b.eval_b(3), Coefficient::zero());
    }

    #[test]
    fn famous_lucas_terms() {
        let b = famous(1, &params(&[])).unwrap();
        // b_n = -5/2^n for n >= 2
        assert_eq!(b.eval_b(2), Coefficient::from_ratio(-5, 4));
        assert_eq!(b.eval_b(5), Coefficient::from_ratio(-5, 32));
    }

    #[test]
    fn memo_order_independent() {
        let b = catalog_b("exp_e", &params(&[])).unwrap();
        let late = b.eval_b(10);
        let early = b.eval_b(3);
        let b2 = catalog_b("exp_e", &params(&[])).unwrap();
        for n in 0..=10 {
            b2.eval_b(n);
        }
        assert_eq!(early, b2.eval_b(3));
        assert_eq!(late, b2.eval_b(10));
    }

    #[test]
    fn unknown_entry_and_missing_param() {
        assert!(matches!(
            catalog_b("no_such_kernel", &params(&[])),
            Err(Error::UnknownCatalogEntry(_))
        ));
        assert!(matches!(
            catalog_b("zeta_direct", &params(&[])),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn spec_json_forms() {
        let v: serde_json::Value = serde_json::json!([5, -4, -3, 3]);
        let b = spec_from_json(&v).unwrap();
        assert_eq!(b.eval_b(3), Coefficient::from_int(3));

        let v = serde_json::json!({"kind":"catalog","name":"zeta_direct","params":{"a":{"re":2.0,"im":0.0}}});
        let b = spec_from_json(&v).unwrap();
        assert!(near_equal(
            &b.eval_b(1),
            &Coefficient::from_f64(-0.25),
            1e-12,
            0.0
        ));

        let v = serde_json::json!({"kind":"self_recurrent","seeds":[1,"1/2","-5/4"],"coeffs":["1/2"]});
        let b = spec_from_json(&v).unwrap();
        assert_eq!(b.eval_b(4), Coefficient::from_ratio(-5, 16));
    }
}
