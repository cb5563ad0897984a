//! Limits and convergence diagnostics: closed-form α-limits, numeric
//! Abel-style limits of M_k, radius-of-convergence estimation, and
//! polynomial root finding for finite kernels.

use num::complex::Complex64;
use num::{BigRational, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{big_ratio_to_f64, Coefficient, DEFAULT_ABS_TOL, DEFAULT_REL_TOL};
use crate::sequences::SequenceSpec;
use crate::series::{galpha_series, m_series, TruncatedSeries};

/// Σ_{j=1}^{N} j·bⱼ (exact for finite kernels once N covers the support).
pub fn weighted_index_mean(b: &SequenceSpec, n_max: usize) -> Coefficient {
    let mut acc = Coefficient::zero();
    for j in 1..=n_max {
        let bj = b.eval_b(j);
        if !bj.is_zero() {
            acc = acc + Coefficient::from_int(j as i64) * bj;
        }
    }
    acc
}

/// Outcome of the closed-form limit: defined only under the required
/// hypotheses (coefficients summing to one, m ≠ Σ j bⱼ).
#[derive(Clone, Debug, Serialize)]
pub enum ClosedLimit {
    Defined(Coefficient),
    Undefined { reason: String },
}

impl ClosedLimit {
    pub fn value(&self) -> Option<&Coefficient> {
        match self {
            ClosedLimit::Defined(v) => Some(v),
            ClosedLimit::Undefined { .. } => None,
        }
    }
}

/// Checks the sums-to-one hypothesis: exact equality for finite kernels,
/// |Σ bₙ − 1| < 1e−9 at the truncation for infinite ones. Returns the
/// float residual alongside.
pub fn sums_to_one(b: &SequenceSpec, n_max: usize) -> (bool, f64) {
    let sum = b.partial_b_sum(n_max);
    match &sum {
        Coefficient::Exact(r) => {
            let residual = big_ratio_to_f64(&(r - BigRational::one())).abs();
            (r.is_one(), residual)
        }
        Coefficient::Complex(c) => {
            let residual = (c - Complex64::new(1.0, 0.0)).norm();
            (residual < 1e-9, residual)
        }
    }
}

/// lim α_k(n) = (Σ_{j=k}^{m−1} b_{j−k}) / (m − Σ j bⱼ) when the
/// hypotheses hold, Undefined with the reason otherwise.
pub fn limit_alpha_closed(b: &SequenceSpec, m: usize, k: usize, n_max: usize) -> ClosedLimit {
    let (ok, residual) = sums_to_one(b, n_max);
    if !ok {
        return ClosedLimit::Undefined {
            reason: format!("coefficients do not sum to one (residual {residual:.3e})"),
        };
    }
    let wm = weighted_index_mean(b, n_max);
    let denom = Coefficient::from_int(m as i64) - wm;
    if denom.modulus() <= 1e-9 {
        return ClosedLimit::Undefined {
            reason: "m equals the weighted index mean of b".into(),
        };
    }
    let mut num = Coefficient::zero();
    for j in k..m {
        num = num + b.eval_b(j - k);
    }
    ClosedLimit::Defined(num / denom)
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericLimit {
    pub estimate: Coefficient,
    pub converged: bool,
    /// Trailing partial sums inspected for the convergence verdict.
    pub tail: Vec<Coefficient>,
}

/// Abel-style limit: partial sums of the M_k coefficients are α_k(n); the
/// estimate converges iff the last `window` partial sums agree pairwise
/// within tolerance.
pub fn limit_alpha_numeric(
    m_coeffs: &TruncatedSeries,
    window: usize,
    rel_tol: f64,
    abs_tol: f64,
) -> NumericLimit {
    assert!(window >= 2, "convergence window must be at least 2");
    let mut partials = Vec::with_capacity(m_coeffs.coeffs.len());
    let mut acc = Coefficient::zero();
    for c in &m_coeffs.coeffs {
        acc = acc + c.clone();
        partials.push(acc.clone());
    }
    let start = partials.len().saturating_sub(window);
    let tail = &partials[start..];
    let mut converged = tail.len() >= window;
    'outer: for i in 0..tail.len() {
        for j in i + 1..tail.len() {
            let a = tail[i].to_complex_lossy();
            let b = tail[j].to_complex_lossy();
            if (a - b).norm() > abs_tol.max(rel_tol * a.norm().max(b.norm())) {
                converged = false;
                break 'outer;
            }
        }
    }
    NumericLimit {
        estimate: partials.last().cloned().unwrap_or_else(Coefficient::zero),
        converged,
        tail: tail.to_vec(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RadiusMode {
    RootTest,
    RatioTest,
}

#[derive(Clone, Debug, Serialize)]
pub struct RadiusEstimate {
    pub estimate: f64,
    pub mode: RadiusMode,
    /// (n, per-index estimate) over the tail window used for the median.
    pub per_n: Vec<(usize, f64)>,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Heuristic radius of convergence from the coefficient tail.
///
/// RootTest: 1/median(|cₙ|^{1/n}); RatioTest: median |cₙ₋₁/cₙ|; both taken
/// over the last half of the nonzero coefficient indices (the median copes
/// with even/odd-split coefficient patterns).
pub fn estimate_radius(series: &TruncatedSeries, mode: RadiusMode) -> Result<RadiusEstimate> {
    let nonzero: Vec<usize> = series
        .coeffs
        .iter()
        .enumerate()
        .filter(|(n, c)| *n > 0 && !c.is_zero())
        .map(|(n, _)| n)
        .collect();
    if nonzero.len() < 8 {
        return Err(Error::InsufficientData(format!(
            "radius estimation needs at least 8 nonzero coefficients, found {}",
            nonzero.len()
        )));
    }
    let window = &nonzero[nonzero.len() / 2..];
    let per_n: Vec<(usize, f64)> = match mode {
        RadiusMode::RootTest => window
            .iter()
            .map(|&n| {
                let v = series.coeffs[n].modulus().powf(1.0 / n as f64);
                (n, 1.0 / v)
            })
            .collect(),
        RadiusMode::RatioTest => window
            .iter()
            .zip(window.iter().skip(1))
            .map(|(&prev, &n)| {
                // consecutive nonzero indices; the gap-aware ratio is
                // |c_prev/c_n|^(1/(n-prev)) so zero-interleaved patterns
                // still estimate the radius
                let r = (series.coeffs[prev].modulus() / series.coeffs[n].modulus())
                    .powf(1.0 / (n - prev) as f64);
                (n, r)
            })
            .collect(),
    };
    if per_n.len() < 4 {
        return Err(Error::InsufficientData(
            "radius estimation window too short".into(),
        ));
    }
    let estimate = median(per_n.iter().map(|&(_, v)| v).collect());
    Ok(RadiusEstimate {
        estimate,
        mode,
        per_n,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RootsReport {
    /// Roots as (re, im) pairs.
    pub roots: Vec<(f64, f64)>,
    pub root_at_one: bool,
    pub repeated: bool,
    /// |p(z)| at each reported root.
    pub residuals: Vec<f64>,
}

impl RootsReport {
    pub fn roots_complex(&self) -> Vec<Complex64> {
        self.roots.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
    }
}

fn poly_eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn poly_derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

/// All roots of p via Aberth–Ehrlich iteration with a Newton polish.
fn aberth_roots(p: &[Complex64]) -> Vec<Complex64> {
    let deg = p.len() - 1;
    let dp = poly_derivative(p);
    let lead = p[deg].norm();
    // Cauchy bound for the initial circle
    let bound = 1.0 + p[..deg].iter().map(|c| c.norm() / lead).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / deg as f64 + 0.4;
            0.7 * bound * Complex64::new(theta.cos(), theta.sin())
        })
        .collect();
    for _ in 0..200 {
        let mut max_step = 0.0f64;
        let snapshot = z.clone();
        for i in 0..deg {
            let pi = poly_eval(p, snapshot[i]);
            let dpi = poly_eval(&dp, snapshot[i]);
            if dpi.norm() == 0.0 {
                continue;
            }
            let newton = pi / dpi;
            let mut s = Complex64::new(0.0, 0.0);
            for (j, &zj) in snapshot.iter().enumerate() {
                if j != i {
                    s += 1.0 / (snapshot[i] - zj);
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[i] = snapshot[i] - step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * bound {
            break;
        }
    }
    // Newton polish
    for zi in &mut z {
        for _ in 0..8 {
            let pv = poly_eval(p, *zi);
            let dv = poly_eval(&dp, *zi);
            if dv.norm() == 0.0 {
                break;
            }
            *zi -= pv / dv;
        }
    }
    z
}

fn rational_poly_trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn rational_poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    rational_poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let factor = &r[dr] / &lead;
        for i in 0..=db {
            let idx = dr - db + i;
            r[idx] = &r[idx] - &(&factor * &b[i]);
        }
        rational_poly_trim(&mut r);
    }
    r
}

/// Degree of gcd(p, p′) over the rationals; ≥ 1 exactly when p has a
/// repeated root.
fn repeated_root_exact(p: &[BigRational]) -> bool {
    let mut a = p.to_vec();
    rational_poly_trim(&mut a);
    if a.len() < 3 {
        return false;
    }
    let mut b: Vec<BigRational> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(i.into()))
        .collect();
    rational_poly_trim(&mut b);
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = rational_poly_rem(&a, &b);
        a = b;
        b = r;
        if b.iter().all(Zero::is_zero) {
            break;
        }
    }
    a.len() > 1
}

/// Roots of B(s) − s^m for finite b, with flags for a root at 1 and for
/// repeated roots (exact square-free check when b is rational, 1e−8
/// pairwise distance otherwise).
pub fn poly_roots(b: &SequenceSpec, m: usize) -> Result<RootsReport> {
    let values = b
        .finite_values()
        .ok_or_else(|| Error::Domain("root finding requires a finite kernel".into()))?;
    let len = values.len().max(m + 1);
    let mut p: Vec<Complex64> = (0..len)
        .map(|i| values.get(i).map(|c| c.to_complex_lossy()).unwrap_or_default())
        .collect();
    p[m] -= 1.0;
    while p.len() > 1 && p.last().unwrap().norm() == 0.0 {
        p.pop();
    }
    if p.len() < 2 {
        return Err(Error::Degenerate(
            "B(s) - s^m is constant; no roots to find".into(),
        ));
    }
    let roots = aberth_roots(&p);
    let residuals: Vec<f64> = roots.iter().map(|&z| poly_eval(&p, z).norm()).collect();
    let root_at_one = roots
        .iter()
        .any(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-8);
    let mut repeated = false;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i] - roots[j]).norm() < 1e-8 {
                repeated = true;
            }
        }
    }
    if !repeated && values.iter().all(Coefficient::is_exact) {
        let mut pq: Vec<BigRational> = (0..len)
            .map(|i| {
                values
                    .get(i)
                    .and_then(|c| c.as_exact().cloned())
                    .unwrap_or_else(BigRational::zero)
            })
            .collect();
        pq[m] = &pq[m] - BigRational::one();
        repeated = repeated_root_exact(&pq);
    }
    Ok(RootsReport {
        roots: roots.iter().map(|z| (z.re, z.im)).collect(),
        root_at_one,
        repeated,
        residuals,
    })
}

/// Aggregate diagnostics for one (b, m) problem at truncation N.
#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub m: usize,
    pub n_max: usize,
    pub sums_to_one: bool,
    pub sum_residual: f64,
    pub weighted_mean: Coefficient,
    pub closed_limits: Vec<ClosedLimit>,
    pub numeric_limits: Vec<NumericLimit>,
    pub radius_m: Vec<Option<RadiusEstimate>>,
    pub radius_g: Vec<Option<RadiusEstimate>>,
    pub denominator_roots: Option<RootsReport>,
}

pub fn limit_report(b: &SequenceSpec, m: usize, n_max: usize) -> Result<LimitReport> {
    let (ok, residual) = sums_to_one(b, n_max);
    let wm = weighted_index_mean(b, n_max);
    let mut closed = Vec::with_capacity(m);
    let mut numeric = Vec::with_capacity(m);
    let mut radius_m = Vec::with_capacity(m);
    let mut radius_g = Vec::with_capacity(m);
    for k in 0..m {
        closed.push(limit_alpha_closed(b, m, k, n_max));
        let mk = m_series(b, m, k, n_max)?;
        numeric.push(limit_alpha_numeric(&mk, 8, DEFAULT_REL_TOL, DEFAULT_ABS_TOL));
        radius_m.push(estimate_radius(&mk, RadiusMode::RatioTest).ok());
        let gk = galpha_series(b, m, k, n_max)?;
        radius_g.push(estimate_radius(&gk, RadiusMode::RatioTest).ok());
    }
    let denominator_roots = if b.finite_values().is_some() {
        Some(poly_roots(b, m)?)
    } else {
        None
    };
    Ok(LimitReport {
        m,
        n_max,
        sums_to_one: ok,
        sum_residual: residual,
        weighted_mean: wm,
        closed_limits: closed,
        numeric_limits: numeric,
        radius_m,
        radius_g,
        denominator_roots,
    })
}
