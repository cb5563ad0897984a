//! Direct iteration of the recurrences: the sequence **a** from initial
//! values, the m auxiliary α-sequences with their Kronecker-delta initial
//! block, and the reconstruction identity aₙ = Σ_k α_k(n)·a_k.

use crate::error::{Error, Result};
use crate::numeric::{Coefficient, KahanComplex};
use crate::sequences::SequenceSpec;

#[derive(Clone, Debug)]
pub struct RecurrenceProblem {
    pub b: SequenceSpec,
    pub m: usize,
    /// Indices 0..=n_max are computed.
    pub n_max: usize,
}

impl RecurrenceProblem {
    pub fn new(b: SequenceSpec, m: usize, n_max: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::Construction("m must be at least 1".into()));
        }
        if n_max < m {
            return Err(Error::Construction(format!(
                "truncation index N={n_max} must be at least m={m}"
            )));
        }
        Ok(RecurrenceProblem { b, m, n_max })
    }
}

/// How an α-table was produced: direct recurrence iteration or series
/// division. Both routes must agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Direct,
    Series,
}

#[derive(Clone, Debug)]
pub struct AlphaTable {
    pub m: usize,
    /// rows[k][n] = α_k(n), k = 0..m-1, n = 0..=N.
    pub rows: Vec<Vec<Coefficient>>,
    pub route: Route,
}

impl AlphaTable {
    pub fn n_max(&self) -> usize {
        self.rows[0].len() - 1
    }

    /// CSV with header `n,alpha_0,...,alpha_{m-1}`; exact rationals as
    /// "p/q", floats as 17-significant-digit decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n");
        for k in 0..self.m {
            out.push_str(&format!(",alpha_{k}"));
        }
        out.push('\n');
        for n in 0..=self.n_max() {
            out.push_str(&n.to_string());
            for k in 0..self.m {
                out.push(',');
                out.push_str(&csv_cell(&self.rows[k][n]));
            }
            out.push('\n');
        }
        out
    }
}

fn csv_cell(c: &Coefficient) -> String {
    match c {
        Coefficient::Exact(r) => format!("{}/{}", r.numer(), r.denom()),
        Coefficient::Complex(z) => {
            if z.im == 0.0 {
                format!("{:.16e}", z.re)
            } else if z.im < 0.0 {
                format!("{:.16e}{:.16e}i", z.re, z.im)
            } else {
                format!("{:.16e}+{:.16e}i", z.re, z.im)
            }
        }
    }
}

/// Runs the solved-form recurrence
/// xₙ = (1/b₀)(xₙ₋ₘ − Σ_{j=0}^{n−1} b_{n−j} xⱼ), n ≥ m,
/// from the given m starting values. Exact throughout when both b and the
/// starting values are exact; otherwise complex floats with compensated
/// inner sums.
fn iterate(b: &SequenceSpec, m: usize, n_max: usize, init: &[Coefficient]) -> Vec<Coefficient> {
    let exact = b.is_exact() && init.iter().all(Coefficient::is_exact);
    let b0 = b.eval_b(0);
    let mut x: Vec<Coefficient> = init.to_vec();
    if !exact {
        for v in &mut x {
            *v = Coefficient::Complex(v.to_complex_lossy());
        }
    }
    for n in m..=n_max {
        let conv = if exact {
            let mut acc = Coefficient::zero();
            for (j, xj) in x.iter().enumerate() {
                let bnj = b.eval_b(n - j);
                if !bnj.is_zero() {
                    acc = acc + bnj * xj.clone();
                }
            }
            acc
        } else {
            let mut acc = KahanComplex::new();
            for (j, xj) in x.iter().enumerate() {
                acc.add(b.eval_b(n - j).to_complex_lossy() * xj.to_complex_lossy());
            }
            Coefficient::Complex(acc.total())
        };
        let next = (x[n - m].clone() - conv) / b0.clone();
        x.push(next);
    }
    x
}

/// The m basis solutions α_0..α_{m−1} through index N.
pub fn compute_alpha(problem: &RecurrenceProblem) -> AlphaTable {
    let m = problem.m;
    let rows = (0..m)
        .map(|k| {
            let init: Vec<Coefficient> = (0..m)
                .map(|n| if n == k { Coefficient::one() } else { Coefficient::zero() })
                .collect();
            iterate(&problem.b, m, problem.n_max, &init)
        })
        .collect();
    AlphaTable {
        m,
        rows,
        route: Route::Direct,
    }
}

/// The sequence **a** from its first m values.
pub fn compute_a(problem: &RecurrenceProblem, initials: &[Coefficient]) -> Result<Vec<Coefficient>> {
    if initials.len() != problem.m {
        return Err(Error::Arity {
            expected: problem.m,
            got: initials.len(),
        });
    }
    Ok(iterate(&problem.b, problem.m, problem.n_max, initials))
}

/// aₙ = Σ_k α_k(n)·a_k for every tabulated n.
pub fn reconstruct_a(alpha: &AlphaTable, initials: &[Coefficient]) -> Result<Vec<Coefficient>> {
    if initials.len() != alpha.m {
        return Err(Error::Arity {
            expected: alpha.m,
            got: initials.len(),
        });
    }
    let n_max = alpha.n_max();
    Ok((0..=n_max)
        .map(|n| {
            let mut acc = Coefficient::zero();
            for (k, ak) in initials.iter().enumerate() {
                acc = acc + alpha.rows[k][n].clone() * ak.clone();
            }
            acc
        })
        .collect())
}
