//! Truncated formal power-series arithmetic: B(s), the generating series
//! Gα_k(s) obtained by division, and M_k(s) = (1−s)·Gα_k(s) whose
//! coefficients are the first differences of α_k.

use crate::error::{Error, Result};
use crate::numeric::Coefficient;
use crate::sequences::SequenceSpec;

/// Coefficients c₀..c_N of a formal power series, truncation order N.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    pub coeffs: Vec<Coefficient>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Coefficient>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c0");
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| Coefficient::from_int(x)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Cauchy product, truncated at the smaller order.
pub fn series_mul(x: &TruncatedSeries, y: &TruncatedSeries) -> TruncatedSeries {
    let order = x.order().min(y.order());
    let coeffs = (0..=order)
        .map(|n| {
            let mut acc = Coefficient::zero();
            for j in 0..=n {
                if !x.coeffs[j].is_zero() && !y.coeffs[n - j].is_zero() {
                    acc = acc + x.coeffs[j].clone() * y.coeffs[n - j].clone();
                }
            }
            acc
        })
        .collect();
    TruncatedSeries::new(coeffs)
}

/// Termwise difference, truncated at the smaller order.
pub fn series_sub(x: &TruncatedSeries, y: &TruncatedSeries) -> TruncatedSeries {
    let order = x.order().min(y.order());
    TruncatedSeries::new(
        (0..=order)
            .map(|n| x.coeffs[n].clone() - y.coeffs[n].clone())
            .collect(),
    )
}

/// Multiplication by s^m at fixed truncation order (top m coefficients are
/// lost).
pub fn shift_pow(x: &TruncatedSeries, m: usize) -> TruncatedSeries {
    let n = x.coeffs.len();
    let mut coeffs = vec![Coefficient::zero(); n];
    for i in 0..n.saturating_sub(m) {
        coeffs[i + m] = x.coeffs[i].clone();
    }
    TruncatedSeries::new(coeffs)
}

/// Forward-substitution division: qₙ = (numₙ − Σ_{j<n} qⱼ·den_{n−j})/den₀,
/// truncated at the smaller order.
pub fn series_div(num: &TruncatedSeries, den: &TruncatedSeries) -> Result<TruncatedSeries> {
    if den.coeffs[0].is_zero() {
        return Err(Error::DivisionByZeroLeadingCoefficient);
    }
    let order = num.order().min(den.order());
    let mut q: Vec<Coefficient> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = num.coeffs[n].clone();
        for (j, qj) in q.iter().enumerate() {
            if !den.coeffs[n - j].is_zero() {
                acc = acc - qj.clone() * den.coeffs[n - j].clone();
            }
        }
        q.push(acc / den.coeffs[0].clone());
    }
    Ok(TruncatedSeries::new(q))
}

/// B(s) truncated at order N.
pub fn b_series(b: &SequenceSpec, n_max: usize) -> TruncatedSeries {
    TruncatedSeries::new((0..=n_max).map(|n| b.eval_b(n)).collect())
}

/// The polynomial numerator Σ_{n=k}^{m−1} b_{n−k} sⁿ padded to order N.
fn galpha_numerator(b: &SequenceSpec, m: usize, k: usize, n_max: usize) -> TruncatedSeries {
    let mut coeffs = vec![Coefficient::zero(); n_max + 1];
    for n in k..m {
        coeffs[n] = b.eval_b(n - k);
    }
    TruncatedSeries::new(coeffs)
}

/// B(s) − s^m truncated at order N.
pub fn denominator_series(b: &SequenceSpec, m: usize, n_max: usize) -> TruncatedSeries {
    let mut den = b_series(b, n_max);
    if m <= n_max {
        den.coeffs[m] = den.coeffs[m].clone() - Coefficient::one();
    }
    den
}

fn check_k(m: usize, k: usize) -> Result<()> {
    if k >= m {
        return Err(Error::Domain(format!("k={k} must satisfy 0 <= k < m={m}")));
    }
    Ok(())
}

/// Gα_k(s) truncated at N; its coefficients equal α_k(n).
pub fn galpha_series(b: &SequenceSpec, m: usize, k: usize, n_max: usize) -> Result<TruncatedSeries> {
    check_k(m, k)?;
    let num = galpha_numerator(b, m, k, n_max);
    let den = denominator_series(b, m, n_max);
    series_div(&num, &den)
}

/// M_k(s) = (1−s)·Gα_k(s), truncated at N; its coefficients are the first
/// differences of α_k.
///
/// Computed by dividing (1−s)·numerator directly by B−s^m rather than
/// differencing Gα_k: in the float field the differences of a convergent
/// α-row underflow to zero long before the division's own error does.
pub fn m_series(b: &SequenceSpec, m: usize, k: usize, n_max: usize) -> Result<TruncatedSeries> {
    check_k(m, k)?;
    let num = galpha_numerator(b, m, k, n_max);
    let mut scaled = num.coeffs.clone();
    for n in (1..scaled.len()).rev() {
        scaled[n] = scaled[n].clone() - num.coeffs[n - 1].clone();
    }
    let den = denominator_series(b, m, n_max);
    series_div(&TruncatedSeries::new(scaled), &den)
}
