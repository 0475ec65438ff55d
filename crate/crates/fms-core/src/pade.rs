//! Pade approximants from Taylor coefficients via the Hankel linear system.

use crate::linalg::C64;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Rational function P(x)/Q(x) with Q(0) = 1, stored as ascending
/// coefficient lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PadeApproximant {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
}

impl PadeApproximant {
    pub fn eval(&self, x: C64) -> C64 {
        horner(&self.numerator, x) / horner(&self.denominator, x)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        horner_real(&self.numerator, x) / horner_real(&self.denominator, x)
    }

    /// Denominator roots (poles), via Durand-Kerner iteration.
    pub fn poles(&self) -> Vec<C64> {
        poly_roots(&self.denominator)
    }

    /// Taylor re-expansion of P/Q around 0, `count` coefficients.
    pub fn taylor(&self, count: usize) -> Vec<f64> {
        // divide series: t_k = (p_k - sum_{j=1..k} q_j t_{k-j}) / q_0, q_0 = 1
        let mut t = vec![0.0; count];
        for k in 0..count {
            let p = self.numerator.get(k).copied().unwrap_or(0.0);
            let mut acc = p;
            for j in 1..=k.min(self.denominator.len() - 1) {
                acc -= self.denominator[j] * t[k - j];
            }
            t[k] = acc / self.denominator[0];
        }
        t
    }
}

/// [m/n] Pade approximant matching the first m+n+1 Taylor coefficients.
/// The denominator is normalized to constant term 1. A numerically singular
/// Hankel system is reported with a suggestion to retry at [m-1/n-1].
pub fn pade(coeffs: &[f64], m: usize, n: usize) -> Result<PadeApproximant> {
    if coeffs.len() < m + n + 1 {
        return Err(Error::TooFewPoints {
            got: coeffs.len(),
            need: m + n + 1,
        });
    }
    let c = |k: isize| -> f64 {
        if k < 0 {
            0.0
        } else {
            coeffs[k as usize]
        }
    };
    // solve for q_1..q_n: sum_j q_j c_{m+k-j} = -c_{m+k}, k = 1..n.
    // A rank-deficient but consistent system (e.g. a polynomial or constant
    // input) degenerates to a lower-order approximant: free unknowns are set
    // to zero. An inconsistent system is a genuine failure.
    let mut q = vec![1.0];
    if n > 0 {
        let mut a = vec![0.0; n * n];
        let mut b = vec![0.0; n];
        for k in 1..=n {
            for j in 1..=n {
                a[(k - 1) * n + (j - 1)] = c((m + k) as isize - j as isize);
            }
            b[k - 1] = -c((m + k) as isize);
        }
        let scale = a
            .iter()
            .chain(b.iter())
            .fold(0.0f64, |acc, v| acc.max(v.abs()))
            .max(1.0);
        let sol = gauss_solve_rank(&mut a, &mut b, n, 1e-12 * scale)
            .ok_or(Error::SingularHankel { m, n })?;
        q.extend(sol);
    }
    // p_k = sum_{j=0..min(k,n)} q_j c_{k-j}, k = 0..m
    let mut p = vec![0.0; m + 1];
    for k in 0..=m {
        for j in 0..=k.min(n) {
            p[k] += q[j] * c(k as isize - j as isize);
        }
    }
    Ok(PadeApproximant {
        numerator: p,
        denominator: q,
    })
}

/// Row-echelon solve with column pivot tracking. Returns None when the
/// system is inconsistent; free unknowns of a rank-deficient consistent
/// system are set to zero.
fn gauss_solve_rank(a: &mut [f64], b: &mut [f64], n: usize, tol: f64) -> Option<Vec<f64>> {
    let mut pivot_cols = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        let mut piv = row;
        let mut pmax = 0.0;
        for i in row..n {
            if a[i * n + col].abs() > pmax {
                pmax = a[i * n + col].abs();
                piv = i;
            }
        }
        if pmax <= tol {
            continue; // free column
        }
        if piv != row {
            for j in 0..n {
                a.swap(row * n + j, piv * n + j);
            }
            b.swap(row, piv);
        }
        for i in row + 1..n {
            let f = a[i * n + col] / a[row * n + col];
            for j in col..n {
                a[i * n + j] -= f * a[row * n + j];
            }
            b[i] -= f * b[row];
        }
        pivot_cols.push((row, col));
        row += 1;
        if row == n {
            break;
        }
    }
    // consistency of the zeroed-out rows
    for i in row..n {
        if b[i].abs() > tol {
            return None;
        }
    }
    let mut x = vec![0.0; n];
    for &(r, col) in pivot_cols.iter().rev() {
        let mut s = b[r];
        for j in col + 1..n {
            s -= a[r * n + j] * x[j];
        }
        x[col] = s / a[r * n + col];
    }
    Some(x)
}

fn horner(c: &[f64], x: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for &k in c.iter().rev() {
        acc = acc * x + k;
    }
    acc
}

fn horner_real(c: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &k in c.iter().rev() {
        acc = acc * x + k;
    }
    acc
}

/// Roots of a real-coefficient polynomial (ascending coefficients) by
/// Durand-Kerner iteration. Degenerate leading zeros are trimmed.
pub fn poly_roots(coeffs: &[f64]) -> Vec<C64> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.last().is_some_and(|v| *v == 0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = *c.last().unwrap();
    let monic: Vec<f64> = c.iter().map(|v| v / lead).collect();
    let radius = 1.0
        + monic[..deg]
            .iter()
            .fold(0.0f64, |acc, v| acc.max(v.abs()));
    let mut roots: Vec<C64> = (0..deg)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            C64::from_polar(radius.min(2.0) * 0.7, ang)
        })
        .collect();
    let eval = |x: C64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &k in monic.iter().rev() {
            acc = acc * x + k;
        }
        acc
    };
    for _ in 0..200 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 {
            break;
        }
    }
    roots
}
