//! Famous-constant pipelines: α₀ partial sums approximating ζ(a), 1/ζ(a),
//! the Hasse-accelerated ζ(a), π/4, and e, each cross-checked against a
//! direct-summation oracle, plus the weighted-index identities.

use num::complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::Coefficient;
use crate::recurrence::{compute_alpha, RecurrenceProblem};
use crate::sequences::{catalog_b, mobius, SequenceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConstantTarget {
    ZetaDirect,
    ZetaMobius,
    ZetaHasse,
    PiLeibniz,
    EulerE,
}

impl ConstantTarget {
    pub fn catalog_name(&self) -> &'static str {
        match self {
            ConstantTarget::ZetaDirect => "zeta_direct",
            ConstantTarget::ZetaMobius => "zeta_mobius",
            ConstantTarget::ZetaHasse => "zeta_hasse",
            ConstantTarget::PiLeibniz => "leibniz_pi",
            ConstantTarget::EulerE => "exp_e",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "zeta_direct" => ConstantTarget::ZetaDirect,
            "zeta_mobius" => ConstantTarget::ZetaMobius,
            "zeta_hasse" => ConstantTarget::ZetaHasse,
            "pi_leibniz" | "leibniz_pi" => ConstantTarget::PiLeibniz,
            "euler_e" | "exp_e" => ConstantTarget::EulerE,
            other => return Err(Error::UnknownCatalogEntry(other.to_string())),
        })
    }

    fn takes_a(&self) -> bool {
        matches!(
            self,
            ConstantTarget::ZetaDirect | ConstantTarget::ZetaMobius | ConstantTarget::ZetaHasse
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantRun {
    pub target: ConstantTarget,
    pub a: Option<Coefficient>,
    pub n_max: usize,
    /// α₀(0..N) from the recurrence.
    pub alpha_partial: Vec<Coefficient>,
    /// The same values from the closed partial-sum formula, summed directly.
    pub direct_partial: Vec<Coefficient>,
    /// max |alpha_partial − direct_partial|.
    pub max_alpha_deviation: f64,
    /// Partial sums Σ_{j=1}^{n} j·bⱼ for n = 1..N.
    pub b_weighted_tail: Vec<Coefficient>,
    pub final_estimate: Coefficient,
}

fn a_as_complex(a: &Coefficient) -> Result<Complex64> {
    match a.promote_to_complex()? {
        Coefficient::Complex(c) => Ok(c),
        Coefficient::Exact(_) => unreachable!(),
    }
}

fn validate_a(target: ConstantTarget, a: Option<&Coefficient>) -> Result<Option<Coefficient>> {
    if !target.takes_a() {
        return Ok(None);
    }
    let a = a.ok_or_else(|| {
        Error::Param(format!("target {:?} requires parameter a", target))
    })?;
    let ac = a_as_complex(a)?;
    match target {
        ConstantTarget::ZetaDirect | ConstantTarget::ZetaMobius => {
            if ac.re <= 1.0 {
                return Err(Error::Param(format!(
                    "target {:?} requires Re a > 1, got {}",
                    target, ac.re
                )));
            }
        }
        ConstantTarget::ZetaHasse => {
            // excluded: a = 1 + 2 pi i n / log 2 (pole of the prefactor)
            let ln2 = std::f64::consts::LN_2;
            let n = (ac.im * ln2 / (2.0 * std::f64::consts::PI)).round();
            let excluded = Complex64::new(1.0, 2.0 * std::f64::consts::PI * n / ln2);
            if (ac - excluded).norm() < 1e-9 {
                return Err(Error::Param(
                    "zeta_hasse excludes a = 1 + 2*pi*i*n/log 2".into(),
                ));
            }
        }
        _ => unreachable!(),
    }
    Ok(Some(a.clone()))
}

/// j^(−a) mirroring the kernel's field choice: exact for integer exponents.
fn pow_neg(j: u64, a: &Coefficient) -> Coefficient {
    use num::{BigInt, BigRational, One, ToPrimitive};
    if let Some(r) = a.as_exact() {
        if r.denom().is_one() {
            if let Some(i) = r.numer().to_i64() {
                let jp = BigInt::from(j).pow(i.unsigned_abs() as u32);
                return if i >= 0 {
                    Coefficient::Exact(BigRational::new(BigInt::one(), jp))
                } else {
                    Coefficient::Exact(BigRational::from_integer(jp))
                };
            }
        }
    }
    let ac = a.to_complex_lossy();
    Coefficient::Complex((-ac * (j as f64).ln()).exp())
}

/// Direct-summation oracle for α₀(n) of the given target.
fn direct_partials(
    target: ConstantTarget,
    a: Option<&Coefficient>,
    n_max: usize,
) -> Result<Vec<Coefficient>> {
    let mut out = Vec::with_capacity(n_max + 1);
    match target {
        ConstantTarget::ZetaDirect => {
            let a = a.unwrap();
            let mut acc = Coefficient::zero();
            for n in 0..=n_max {
                acc = acc + pow_neg(n as u64 + 1, a);
                out.push(acc.clone());
            }
        }
        ConstantTarget::ZetaMobius => {
            let a = a.unwrap();
            let mut acc = Coefficient::zero();
            for n in 0..=n_max {
                let mu = mobius(n as u64 + 1)?;
                acc = acc + Coefficient::from_int(mu as i64) * pow_neg(n as u64 + 1, a);
                out.push(acc.clone());
            }
        }
        ConstantTarget::ZetaHasse => {
            let a = a.unwrap();
            let mut acc = Coefficient::zero();
            for k in 0..=n_max {
                // h(k) = 2^{-k} sum_j C(k,j) (-1)^j (j+1)^{-a}
                let mut h = Coefficient::zero();
                for j in 0..=k {
                    let c = Coefficient::Exact(num::BigRational::from_integer(
                        num::integer::binomial(num::BigInt::from(k), num::BigInt::from(j)),
                    ));
                    let term = c * pow_neg(j as u64 + 1, a);
                    h = if j % 2 == 0 { h + term } else { h - term };
                }
                let half = Coefficient::Exact(num::BigRational::new(
                    num::BigInt::from(1),
                    num::BigInt::from(2).pow(k as u32),
                ));
                acc = acc + h * half;
                out.push(acc.clone());
            }
        }
        ConstantTarget::PiLeibniz => {
            let mut acc = Coefficient::zero();
            for n in 0..=n_max {
                let j = n as i64 + 1;
                let term = Coefficient::from_ratio(if j % 2 == 1 { 1 } else { -1 }, 2 * j - 1);
                acc = acc + term;
                out.push(acc.clone());
            }
        }
        ConstantTarget::EulerE => {
            use num::{BigInt, BigRational, One};
            let mut fact = BigInt::one();
            let mut acc = Coefficient::zero();
            for n in 0..=n_max {
                if n > 0 {
                    fact *= BigInt::from(n);
                }
                acc = acc + Coefficient::Exact(BigRational::new(BigInt::one(), fact.clone()));
                out.push(acc.clone());
            }
        }
    }
    Ok(out)
}

fn build_spec(target: ConstantTarget, a: Option<&Coefficient>) -> Result<SequenceSpec> {
    let mut params = serde_json::Map::new();
    if let Some(a) = a {
        params.insert("a".into(), serde_json::to_value(a)?);
    }
    catalog_b(target.catalog_name(), &params)
}

/// Runs the m = 1 recurrence for the target, verifies every α₀(n) against
/// the direct oracle, and derives the constant estimate.
pub fn run_constant(
    target: ConstantTarget,
    a: Option<&Coefficient>,
    n_max: usize,
) -> Result<ConstantRun> {
    if n_max < 2 {
        return Err(Error::Param("constant runs need N >= 2".into()));
    }
    let a = validate_a(target, a)?;
    let spec = build_spec(target, a.as_ref())?;
    let problem = RecurrenceProblem::new(spec.clone(), 1, n_max)?;
    let alpha = compute_alpha(&problem).rows.remove(0);
    let direct = direct_partials(target, a.as_ref(), n_max)?;
    let max_dev = alpha
        .iter()
        .zip(direct.iter())
        .map(|(x, y)| (x.clone() - y.clone()).modulus())
        .fold(0.0, f64::max);
    let mut weighted = Vec::with_capacity(n_max);
    let mut acc = Coefficient::zero();
    for j in 1..=n_max {
        acc = acc + Coefficient::from_int(j as i64) * spec.eval_b(j);
        weighted.push(acc.clone());
    }
    let last = alpha.last().unwrap().clone();
    let final_estimate = match target {
        ConstantTarget::ZetaDirect => last,
        ConstantTarget::ZetaMobius => last.recip(),
        ConstantTarget::ZetaHasse => {
            // zeta(a) = lim alpha / (2 - 2^{2-a})
            let ac = a_as_complex(a.as_ref().unwrap())?;
            let prefactor = Complex64::new(2.0, 0.0)
                - (Complex64::new(2.0 - ac.re, -ac.im) * std::f64::consts::LN_2).exp();
            Coefficient::Complex(last.to_complex_lossy() / prefactor)
        }
        ConstantTarget::PiLeibniz => Coefficient::from_int(4) * last,
        ConstantTarget::EulerE => last,
    };
    Ok(ConstantRun {
        target,
        a,
        n_max,
        alpha_partial: alpha,
        direct_partial: direct,
        max_alpha_deviation: max_dev,
        b_weighted_tail: weighted,
        final_estimate,
    })
}

/// ζ(a) for real a via the globally convergent double sum, used only as a
/// float reference for residual checks.
pub fn reference_zeta(a: f64) -> f64 {
    let mut outer = 0.0f64;
    for k in 0..70usize {
        let mut inner = 0.0f64;
        let mut binom = 1.0f64;
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            inner += sign * binom * (j as f64 + 1.0).powf(-a);
            binom *= (k - j) as f64 / (j as f64 + 1.0);
        }
        outer += inner / 2f64.powi(k as i32 + 1);
    }
    outer / (1.0 - 2f64.powf(1.0 - a))
}

/// |Σ_{j=1}^{N} j·bⱼ − closed form| where the closed forms are
/// 1 − 1/ζ(a), 1 − ζ(a), 1 − 1/((2−2^{2−a})ζ(a)), 1 − 4/π, and 1 − 1/e.
pub fn weighted_b_identity(
    target: ConstantTarget,
    a: Option<&Coefficient>,
    n_max: usize,
) -> Result<f64> {
    let run = run_constant(target, a, n_max)?;
    let sum = run.b_weighted_tail.last().unwrap().to_complex_lossy();
    let closed = match target {
        ConstantTarget::ZetaDirect => {
            let av = a_as_complex(run.a.as_ref().unwrap())?;
            if av.im != 0.0 {
                return Err(Error::Param(
                    "reference zeta residuals support real a only".into(),
                ));
            }
            Complex64::new(1.0 - 1.0 / reference_zeta(av.re), 0.0)
        }
        ConstantTarget::ZetaMobius => {
            let av = a_as_complex(run.a.as_ref().unwrap())?;
            if av.im != 0.0 {
                return Err(Error::Param(
                    "reference zeta residuals support real a only".into(),
                ));
            }
            Complex64::new(1.0 - reference_zeta(av.re), 0.0)
        }
        ConstantTarget::ZetaHasse => {
            let av = a_as_complex(run.a.as_ref().unwrap())?;
            if av.im != 0.0 {
                return Err(Error::Param(
                    "reference zeta residuals support real a only".into(),
                ));
            }
            let prefactor = 2.0 - 2f64.powf(2.0 - av.re);
            Complex64::new(1.0 - 1.0 / (prefactor * reference_zeta(av.re)), 0.0)
        }
        ConstantTarget::PiLeibniz => Complex64::new(1.0 - 4.0 / std::f64::consts::PI, 0.0),
        ConstantTarget::EulerE => Complex64::new(1.0 - 1.0 / std::f64::consts::E, 0.0),
    };
    Ok((sum - closed).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Coefficient as C;

    fn a_int(v: i64) -> C {
        C::from_int(v)
    }

    #[test]
    fn zeta_direct_prefix_exact() {
        let run = run_constant(ConstantTarget::ZetaDirect, Some(&a_int(2)), 3).unwrap();
        let expect = vec![
            C::one(),
            C::from_ratio(5, 4),
            C::from_ratio(49, 36),
            C::from_ratio(205, 144),
        ];
        assert_eq!(run.alpha_partial, expect);
        assert_eq!(run.direct_partial, expect);
        assert_eq!(run.max_alpha_deviation, 0.0);
    }

    #[test]
    fn pi_prefix_exact() {
        let run = run_constant(ConstantTarget::PiLeibniz, None, 3).unwrap();
        let expect = vec![
            C::one(),
            C::from_ratio(2, 3),
            C::from_ratio(13, 15),
            C::from_ratio(76, 105),
        ];
        assert_eq!(run.alpha_partial, expect);
        assert_eq!(run.max_alpha_deviation, 0.0);
    }

    #[test]
    fn e_prefix_exact() {
        let run = run_constant(ConstantTarget::EulerE, None, 3).unwrap();
        let expect = vec![
            C::one(),
            C::from_int(2),
            C::from_ratio(5, 2),
            C::from_ratio(8, 3),
        ];
        assert_eq!(run.alpha_partial, expect);
        assert_eq!(run.max_alpha_deviation, 0.0);
    }

    #[test]
    fn hasse_at_zero_all_ones() {
        let run = run_constant(ConstantTarget::ZetaHasse, Some(&a_int(0)), 20).unwrap();
        for v in &run.alpha_partial {
            assert_eq!(v, &C::one());
        }
        // final estimate is zeta(0) = -1/2
        assert!((run.final_estimate.to_complex_lossy().re + 0.5).abs() < 1e-12);
    }

    #[test]
    fn hasse_converges_geometrically() {
        let run = run_constant(ConstantTarget::ZetaHasse, Some(&a_int(2)), 60).unwrap();
        assert_eq!(run.max_alpha_deviation, 0.0);
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((run.final_estimate.to_complex_lossy().re - zeta2).abs() < 1e-6);
    }

    #[test]
    fn zeta_direct_monotone_bounded() {
        let run = run_constant(ConstantTarget::ZetaDirect, Some(&C::from_f64(2.0)), 200).unwrap();
        let zeta2 = reference_zeta(2.0);
        let mut prev = 0.0;
        for v in &run.alpha_partial {
            let x = v.to_complex_lossy().re;
            assert!(x > prev);
            assert!(x <= zeta2 + 1e-9);
            prev = x;
        }
    }

    #[test]
    fn mobius_run_estimates_zeta() {
        let run = run_constant(ConstantTarget::ZetaMobius, Some(&C::from_f64(2.0)), 400).unwrap();
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((run.final_estimate.to_complex_lossy().re - zeta2).abs() < 1e-2);
    }

    #[test]
    fn reference_zeta_accuracy() {
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        let z4 = std::f64::consts::PI.powi(4) / 90.0;
        assert!((reference_zeta(2.0) - z2).abs() < 1e-12);
        assert!((reference_zeta(4.0) - z4).abs() < 1e-12);
    }

    #[test]
    fn weighted_identity_prefixes() {
        // pi: 1/3 - 19/45*2 + 128/945*3 - ...
        let run = run_constant(ConstantTarget::PiLeibniz, None, 4).unwrap();
        assert_eq!(run.b_weighted_tail[0], C::from_ratio(1, 3));
        assert_eq!(
            run.b_weighted_tail[1],
            C::from_ratio(1, 3) - C::from_ratio(19 * 2, 45)
        );
        // e: -1 + 3/2*2 - 2/3*3 + 5/24*4 - ...
        let run = run_constant(ConstantTarget::EulerE, None, 4).unwrap();
        assert_eq!(run.b_weighted_tail[0], C::from_int(-1));
        assert_eq!(run.b_weighted_tail[1], C::from_int(-1) + C::from_int(3));
        assert_eq!(
            run.b_weighted_tail[3],
            C::from_int(-1) + C::from_int(3) - C::from_int(2) + C::from_ratio(5, 6)
        );
    }

    #[test]
    fn weighted_identity_residuals_shrink() {
        let r = weighted_b_identity(ConstantTarget::EulerE, None, 40).unwrap();
        assert!(r < 1e-12, "residual {r}");
        let r = weighted_b_identity(ConstantTarget::ZetaDirect, Some(&C::from_f64(3.0)), 400).unwrap();
        assert!(r < 1e-2, "residual {r}");
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(matches!(
            run_constant(ConstantTarget::ZetaDirect, Some(&a_int(1)), 10),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            run_constant(ConstantTarget::ZetaDirect, None, 10),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            run_constant(ConstantTarget::ZetaHasse, Some(&a_int(1)), 10),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            run_constant(ConstantTarget::PiLeibniz, None, 1),
            Err(Error::Param(_))
        ));
    }
}
