//! Initial-value steering: build the m×m linear system from the roots of
//! B(s) − s^m, solve it for a₀..a_{m−1} given target limits, and evaluate
//! the closed-form solution for the homogeneous root conditions.

use serde::Serialize;

use crate::analysis::weighted_index_mean;
use crate::error::{Error, Result};
use crate::numeric::{near_equal, Coefficient};
use crate::sequences::SequenceSpec;

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub m: usize,
    pub matrix: Vec<Vec<Coefficient>>,
    /// (L₁, …, L_{m−1}, L) where L = (m − Σ j bⱼ)·lim aₙ.
    pub rhs: Vec<Coefficient>,
    pub roots_used: Vec<Coefficient>,
    pub determinant: Coefficient,
    pub determinant_closed_form: Coefficient,
    pub solution: Option<Vec<Coefficient>>,
    /// max |matrix·solution − rhs| once solved.
    pub residual: Option<f64>,
}

fn precondition(hypothesis: &str) -> Error {
    Error::Precondition {
        hypothesis: hypothesis.to_string(),
    }
}

fn check_preconditions(b: &SequenceSpec, m: usize, roots: &[Coefficient]) -> Result<()> {
    if m < 2 {
        return Err(precondition("m must be at least 2 for the steering system"));
    }
    if roots.len() != m - 1 {
        return Err(Error::Arity {
            expected: m - 1,
            got: roots.len(),
        });
    }
    let support = b
        .finite_values()
        .ok_or_else(|| Error::Domain("the steering system requires a finite kernel".into()))?
        .len();
    let sum = b.partial_b_sum(support);
    let sum_ok = match &sum {
        Coefficient::Exact(r) => r == &num::BigRational::from_integer(1.into()),
        Coefficient::Complex(c) => (c - num::complex::Complex64::new(1.0, 0.0)).norm() < 1e-9,
    };
    if !sum_ok {
        return Err(precondition("sum of b coefficients equals 1"));
    }
    let wm = weighted_index_mean(b, support);
    if (Coefficient::from_int(m as i64) - wm).modulus() <= 1e-9 {
        return Err(precondition("m differs from the weighted index mean of b"));
    }
    for (i, r) in roots.iter().enumerate() {
        if (r.clone() - Coefficient::one()).modulus() < 1e-8 {
            return Err(precondition("no supplied root equals 1"));
        }
        for s in roots.iter().skip(i + 1) {
            if (r.clone() - s.clone()).modulus() < 1e-8 {
                return Err(precondition("supplied roots are pairwise distinct"));
            }
        }
    }
    Ok(())
}

/// Row of the system for root value ρ: entry c is Σ_{n=c}^{m−1} b_{n−c}·ρⁿ.
fn system_row(b: &SequenceSpec, m: usize, rho: &Coefficient) -> Vec<Coefficient> {
    // powers rho^0..rho^{m-1}
    let mut pow = vec![Coefficient::one()];
    for _ in 1..m {
        pow.push(pow.last().unwrap().clone() * rho.clone());
    }
    (0..m)
        .map(|c| {
            let mut acc = Coefficient::zero();
            for n in c..m {
                acc = acc + b.eval_b(n - c) * pow[n].clone();
            }
            acc
        })
        .collect()
}

/// Gaussian elimination with partial pivoting on modulus; exact whenever
/// every entry is exact. Returns (determinant, solution).
fn gaussian_solve(
    matrix: &[Vec<Coefficient>],
    rhs: &[Coefficient],
) -> Result<(Coefficient, Vec<Coefficient>)> {
    let n = matrix.len();
    let mut a: Vec<Vec<Coefficient>> = matrix.to_vec();
    let mut y: Vec<Coefficient> = rhs.to_vec();
    let mut det = Coefficient::one();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .modulus()
                    .partial_cmp(&a[j][col].modulus())
                    .unwrap()
            })
            .unwrap();
        if a[pivot_row][col].is_zero() {
            return Err(Error::SingularMatrix {
                hypothesis: "system matrix is nonsingular (distinct roots, none equal to 1)"
                    .into(),
            });
        }
        if pivot_row != col {
            a.swap(pivot_row, col);
            y.swap(pivot_row, col);
            det = -det;
        }
        det = det * a[col][col].clone();
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone() / a[col][col].clone();
            for c in col..n {
                a[row][c] = a[row][c].clone() - factor.clone() * a[col][c].clone();
            }
            y[row] = y[row].clone() - factor * y[col].clone();
        }
    }
    let mut x = vec![Coefficient::zero(); n];
    for row in (0..n).rev() {
        let mut acc = y[row].clone();
        for c in row + 1..n {
            acc = acc - a[row][c].clone() * x[c].clone();
        }
        x[row] = acc / a[row][row].clone();
    }
    Ok((det, x))
}

/// Determinant closed form b₀^m/(−1)^{m+1} · Π_j (αⱼ−1) · Π_{i<j} (αⱼ−α_i).
fn determinant_closed_form(b: &SequenceSpec, m: usize, roots: &[Coefficient]) -> Coefficient {
    let mut det = Coefficient::one();
    let b0 = b.eval_b(0);
    for _ in 0..m {
        det = det * b0.clone();
    }
    if m % 2 == 0 {
        det = -det;
    }
    for r in roots {
        det = det * (r.clone() - Coefficient::one());
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            det = det * (roots[j].clone() - roots[i].clone());
        }
    }
    det
}

/// Assembles the m×m steering system for a finite kernel. `l_vec` carries
/// the imposed root conditions L₁..L_{m−1}; `l` is the last-row value
/// (m − Σ j bⱼ)·lim aₙ (see [`scaled_limit_target`]).
pub fn build_system(
    b: &SequenceSpec,
    m: usize,
    roots: &[Coefficient],
    l_vec: &[Coefficient],
    l: &Coefficient,
) -> Result<SolveReport> {
    check_preconditions(b, m, roots)?;
    if l_vec.len() != m - 1 {
        return Err(Error::Arity {
            expected: m - 1,
            got: l_vec.len(),
        });
    }
    let mut matrix: Vec<Vec<Coefficient>> = roots.iter().map(|r| system_row(b, m, r)).collect();
    matrix.push(system_row(b, m, &Coefficient::one()));
    let mut rhs = l_vec.to_vec();
    rhs.push(l.clone());
    let (det, _) = gaussian_solve(&matrix, &rhs)?;
    Ok(SolveReport {
        m,
        matrix,
        rhs,
        roots_used: roots.to_vec(),
        determinant: det,
        determinant_closed_form: determinant_closed_form(b, m, roots),
        solution: None,
        residual: None,
    })
}

/// Solves an assembled system; the determinant is cross-checked against
/// its closed form before elimination.
pub fn solve_system(report: &SolveReport) -> Result<SolveReport> {
    if !near_equal(
        &report.determinant.clone().promote_to_complex()?,
        &report.determinant_closed_form.clone().promote_to_complex()?,
        1e-9,
        1e-12,
    ) {
        return Err(Error::SingularMatrix {
            hypothesis: "determinant agrees with its closed-form product".into(),
        });
    }
    if report.determinant.is_zero() || report.determinant.modulus() == 0.0 {
        return Err(Error::SingularMatrix {
            hypothesis: "system matrix is nonsingular (distinct roots, none equal to 1)".into(),
        });
    }
    let (det, solution) = gaussian_solve(&report.matrix, &report.rhs)?;
    let residual = report
        .matrix
        .iter()
        .zip(report.rhs.iter())
        .map(|(row, want)| {
            let mut acc = Coefficient::zero();
            for (c, x) in row.iter().zip(solution.iter()) {
                acc = acc + c.clone() * x.clone();
            }
            (acc - want.clone()).modulus()
        })
        .fold(0.0, f64::max);
    let mut solved = report.clone();
    solved.determinant = det;
    solved.solution = Some(solution);
    solved.residual = Some(residual);
    Ok(solved)
}

/// The last-row right-hand side for a target limit:
/// (m − Σ_{j=1}^{N} j bⱼ)·lim.
pub fn scaled_limit_target(
    b: &SequenceSpec,
    m: usize,
    lim: &Coefficient,
    n_max: usize,
) -> Coefficient {
    (Coefficient::from_int(m as i64) - weighted_index_mean(b, n_max)) * lim.clone()
}

/// Elementary symmetric polynomials e₀..e_d of the given values.
fn elementary_symmetric(values: &[Coefficient]) -> Vec<Coefficient> {
    let mut e = vec![Coefficient::one()];
    for v in values {
        let mut next = Vec::with_capacity(e.len() + 1);
        next.push(e[0].clone());
        for t in 1..e.len() {
            next.push(e[t].clone() + e[t - 1].clone() * v.clone());
        }
        next.push(e.last().unwrap().clone() * v.clone());
        e = next;
    }
    e
}

/// Closed-form solution for the homogeneous root conditions
/// (L₁ = … = L_{m−1} = 0):
/// a_k = −(1/b₀)·Σ_{i<k} (Σ_{l=0}^{k−i} b_l)·a_i
///     + (L/b₀)·Π_j 1/(αⱼ−1) · Σ_{t=0}^{k} (−1)^t e_{m−1−t},
/// where e_t are the elementary symmetric polynomials of the m−1 roots.
pub fn closed_form_initials(
    b: &SequenceSpec,
    m: usize,
    roots: &[Coefficient],
    l: &Coefficient,
) -> Result<Vec<Coefficient>> {
    check_preconditions(b, m, roots)?;
    let b0 = b.eval_b(0);
    let e = elementary_symmetric(roots);
    let mut denom = Coefficient::one();
    for r in roots {
        denom = denom * (r.clone() - Coefficient::one());
    }
    let scale = l.clone() / (b0.clone() * denom);
    let mut a: Vec<Coefficient> = Vec::with_capacity(m);
    for k in 0..m {
        let mut acc = Coefficient::zero();
        for (i, ai) in a.iter().enumerate() {
            let mut bsum = Coefficient::zero();
            for l_idx in 0..=(k - i) {
                bsum = bsum + b.eval_b(l_idx);
            }
            acc = acc - bsum * ai.clone() / b0.clone();
        }
        let mut alt = Coefficient::zero();
        for t in 0..=k.min(m - 1) {
            let term = e[m - 1 - t].clone();
            alt = if t % 2 == 0 { alt + term } else { alt - term };
        }
        acc = acc + scale.clone() * alt;
        a.push(acc);
    }
    Ok(a)
}

/// Degenerate m = 1 steering: a₀ = lim / lim α₀(n).
pub fn solve_m1(b: &SequenceSpec, lim: &Coefficient, n_max: usize) -> Result<Coefficient> {
    match crate::analysis::limit_alpha_closed(b, 1, 0, n_max) {
        crate::analysis::ClosedLimit::Defined(alpha_lim) => Ok(lim.clone() / alpha_lim),
        crate::analysis::ClosedLimit::Undefined { reason } => {
            Err(Error::Precondition { hypothesis: reason })
        }
    }
}
