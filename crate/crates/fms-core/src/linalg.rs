//! Dense complex linear algebra sized for the n <= 8 matrices used everywhere
//! in this crate: effective two-level Hamiltonians, monodromy matrices and the
//! small Hermitian-form solves of the isometry checks.

use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Complex scalar used throughout.
pub type C64 = Complex64;

pub const MAX_DIM: usize = 8;

/// Square complex matrix, row-major, dimension 1..=8.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1 && dim <= MAX_DIM, "dim {dim} out of range");
        CMatrix {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Build from row-major entries. Errors on non-square data, out-of-range
    /// dimension or non-finite entries.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim < 1 || dim > MAX_DIM {
            return Err(Error::UnsupportedDim { dim });
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                context: "matrix entries",
            });
        }
        Ok(CMatrix { dim, data })
    }

    /// 2x2 convenience constructor.
    pub fn from_2x2(a: C64, b: C64, c: C64, d: C64) -> Self {
        CMatrix {
            dim: 2,
            data: vec![a, b, c, d],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn transpose(&self) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)];
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.dim, v.len());
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            for j in 0..n {
                out[i] += self[(i, j)] * v[j];
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm_1(&self) -> f64 {
        let n = self.dim;
        (0..n)
            .map(|j| (0..n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Determinant via LU with partial pivoting.
    pub fn det(&self) -> C64 {
        let n = self.dim;
        let mut lu = self.data.clone();
        let mut det = C64::new(1.0, 0.0);
        for k in 0..n {
            let mut p = k;
            let mut pmax = lu[k * n + k].norm();
            for i in k + 1..n {
                let v = lu[i * n + k].norm();
                if v > pmax {
                    pmax = v;
                    p = i;
                }
            }
            if pmax == 0.0 {
                return C64::new(0.0, 0.0);
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = lu[k * n + k];
            det *= pivot;
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                for j in k + 1..n {
                    let delta = factor * lu[k * n + j];
                    lu[i * n + j] -= delta;
                }
            }
        }
        det
    }

    /// Solve A x = b via LU with partial pivoting.
    pub fn solve(&self, b: &[C64]) -> Result<Vec<C64>> {
        assert_eq!(self.dim, b.len());
        let n = self.dim;
        let mut lu = self.data.clone();
        let mut x: Vec<C64> = b.to_vec();
        for k in 0..n {
            let mut p = k;
            let mut pmax = lu[k * n + k].norm();
            for i in k + 1..n {
                let v = lu[i * n + k].norm();
                if v > pmax {
                    pmax = v;
                    p = i;
                }
            }
            if pmax < 1e-300 {
                return Err(Error::Singular {
                    context: "linear solve",
                });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                x.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                for j in k + 1..n {
                    let delta = factor * lu[k * n + j];
                    lu[i * n + j] -= delta;
                }
                let dx = factor * x[k];
                x[i] -= dx;
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= lu[i * n + j] * x[j];
            }
            x[i] = s / lu[i * n + i];
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<CMatrix> {
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for col in 0..n {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[col] = C64::new(1.0, 0.0);
            let x = self.solve(&e)?;
            for row in 0..n {
                out[(row, col)] = x[row];
            }
        }
        Ok(out)
    }

    /// Matrix exponential by scaling-and-squaring with a Taylor kernel.
    /// Relative accuracy ~1e-12 for norms up to ~10.
    pub fn expm(&self) -> Result<CMatrix> {
        if !self.is_finite() {
            return Err(Error::NonFinite {
                context: "expm input",
            });
        }
        let norm = self.norm_1();
        if !norm.is_finite() || norm > 1e12 {
            return Err(Error::ExpmOverflow { norm });
        }
        let s = if norm > 0.25 {
            (norm / 0.25).log2().ceil() as u32
        } else {
            0
        };
        let scaled = self.scale(C64::new(1.0 / 2f64.powi(s as i32), 0.0));
        let mut term = CMatrix::identity(self.dim);
        let mut sum = CMatrix::identity(self.dim);
        for k in 1..=60 {
            term = term.mul(&scaled).scale(C64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
            if term.frobenius_norm() < 1e-18 * sum.frobenius_norm().max(1.0) {
                break;
            }
        }
        let mut result = sum;
        for _ in 0..s {
            result = result.mul(&result);
        }
        if !result.is_finite() {
            return Err(Error::ExpmOverflow { norm });
        }
        Ok(result)
    }

    /// Eigenvalues and unit right eigenvectors, sorted by (re, im).
    ///
    /// 2x2 inputs use the closed-form quadratic; larger matrices go through a
    /// Hessenberg-QR sweep followed by inverse iteration. Residuals
    /// ||Mv - lambda v|| are driven below 1e-12 (absolute, for norm-order-one
    /// matrices) and checked.
    pub fn eig_small(&self) -> Result<Vec<(C64, Vec<C64>)>> {
        if !self.is_finite() {
            return Err(Error::NonFinite {
                context: "eig input",
            });
        }
        let mut pairs = if self.dim == 1 {
            vec![(self[(0, 0)], vec![C64::new(1.0, 0.0)])]
        } else if self.dim == 2 {
            self.eig_2x2()
        } else {
            self.eig_qr()?
        };
        pairs.sort_by(|a, b| {
            (a.0.re, a.0.im)
                .partial_cmp(&(b.0.re, b.0.im))
                .expect("finite eigenvalues")
        });
        Ok(pairs)
    }

    fn eig_2x2(&self) -> Vec<(C64, Vec<C64>)> {
        let (a, b) = (self[(0, 0)], self[(0, 1)]);
        let (c, d) = (self[(1, 0)], self[(1, 1)]);
        let mean = (a + d) * 0.5;
        let disc = (a - d) * (a - d) * 0.25 + b * c;
        let s = disc.sqrt();
        let l1 = mean + s;
        let l2 = mean - s;
        vec![
            (l1, eigvec_2x2(a, b, c, d, l1)),
            (l2, eigvec_2x2(a, b, c, d, l2)),
        ]
    }

    fn eig_qr(&self) -> Result<Vec<(C64, Vec<C64>)>> {
        let values = self.eigenvalues_qr()?;
        let mut pairs = Vec::with_capacity(values.len());
        let scale = self.frobenius_norm().max(1.0);
        for (idx, &lambda) in values.iter().enumerate() {
            let v = self.inverse_iteration(lambda, idx, scale)?;
            pairs.push((lambda, v));
        }
        Ok(pairs)
    }

    /// Shifted QR on the Hessenberg form; returns eigenvalues only.
    fn eigenvalues_qr(&self) -> Result<Vec<C64>> {
        let n = self.dim;
        let mut h = self.hessenberg();
        let mut values = Vec::with_capacity(n);
        let mut active = n;
        let mut iters = 0usize;
        let max_iters = 200 * n;
        while active > 0 {
            if active == 1 {
                values.push(h[(0, 0)]);
                break;
            }
            // deflate tiny subdiagonals
            let mut deflated = false;
            for i in (1..active).rev() {
                let tol = 1e-15 * (h[(i - 1, i - 1)].norm() + h[(i, i)].norm()).max(1e-300);
                if h[(i, i - 1)].norm() <= tol {
                    if i == active - 1 {
                        values.push(h[(active - 1, active - 1)]);
                        active -= 1;
                        deflated = true;
                    }
                    break;
                }
            }
            if deflated {
                continue;
            }
            if active == 2 {
                let sub = CMatrix::from_2x2(h[(0, 0)], h[(0, 1)], h[(1, 0)], h[(1, 1)]);
                for (l, _) in sub.eig_2x2() {
                    values.push(l);
                }
                break;
            }
            iters += 1;
            if iters > max_iters {
                return Err(Error::EigNoConverge {
                    iterations: iters,
                    residual: h[(active - 1, active - 2)].norm(),
                });
            }
            let mu = wilkinson_shift(
                h[(active - 2, active - 2)],
                h[(active - 2, active - 1)],
                h[(active - 1, active - 2)],
                h[(active - 1, active - 1)],
            );
            qr_step(&mut h, active, mu);
        }
        Ok(values)
    }

    fn hessenberg(&self) -> CMatrix {
        let n = self.dim;
        let mut h = self.clone();
        for k in 0..n.saturating_sub(2) {
            // Householder on column k below the subdiagonal
            let mut x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
            let norm_x = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm_x < 1e-300 {
                continue;
            }
            let phase = if x[0].norm() > 0.0 {
                x[0] / x[0].norm()
            } else {
                C64::new(1.0, 0.0)
            };
            let alpha = -phase * norm_x;
            x[0] -= alpha;
            let vnorm_sq = x.iter().map(|z| z.norm_sqr()).sum::<f64>();
            if vnorm_sq < 1e-300 {
                continue;
            }
            let beta = 2.0 / vnorm_sq;
            // left: H -= beta v (v^H H)
            for j in 0..n {
                let mut dot = C64::new(0.0, 0.0);
                for i in 0..x.len() {
                    dot += x[i].conj() * h[(k + 1 + i, j)];
                }
                dot *= beta;
                for i in 0..x.len() {
                    let delta = x[i] * dot;
                    h[(k + 1 + i, j)] -= delta;
                }
            }
            // right: H -= beta (H v) v^H
            for i in 0..n {
                let mut dot = C64::new(0.0, 0.0);
                for j in 0..x.len() {
                    dot += h[(i, k + 1 + j)] * x[j];
                }
                dot *= beta;
                for j in 0..x.len() {
                    let delta = dot * x[j].conj();
                    h[(i, k + 1 + j)] -= delta;
                }
            }
        }
        h
    }

    fn inverse_iteration(&self, lambda: C64, salt: usize, scale: f64) -> Result<Vec<C64>> {
        let n = self.dim;
        // deterministic start, varied per eigenvalue index
        let mut v: Vec<C64> = (0..n)
            .map(|i| {
                let t = (i + 1) as f64 + 0.37 * (salt as f64 + 1.0);
                C64::new(t.cos(), (1.7 * t).sin())
            })
            .collect();
        normalize(&mut v);
        let mut best: Option<(f64, Vec<C64>)> = None;
        // progressively larger shift jitter if (A - lambda) is exactly singular
        for attempt in 0..6 {
            let jitter = if attempt == 0 {
                0.0
            } else {
                1e-14 * scale * 10f64.powi(attempt - 1)
            };
            let mut shifted = self.clone();
            for i in 0..n {
                shifted[(i, i)] -= lambda + C64::new(jitter, jitter);
            }
            for _ in 0..8 {
                match shifted.solve(&v) {
                    Ok(mut w) => {
                        normalize(&mut w);
                        v = w;
                    }
                    Err(_) => break,
                }
                let r = self.residual(lambda, &v);
                if best.as_ref().map_or(true, |(rb, _)| r < *rb) {
                    best = Some((r, v.clone()));
                }
                if r < 1e-13 * scale.max(1.0) {
                    return Ok(v);
                }
            }
        }
        match best {
            Some((r, v)) if r < 1e-12 * scale.max(1.0) => Ok(v),
            Some((r, _)) => Err(Error::EigNoConverge {
                iterations: 48,
                residual: r,
            }),
            None => Err(Error::EigNoConverge {
                iterations: 0,
                residual: f64::INFINITY,
            }),
        }
    }

    fn residual(&self, lambda: C64, v: &[C64]) -> f64 {
        let av = self.mul_vec(v);
        av.iter()
            .zip(v)
            .map(|(a, x)| (a - lambda * x).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

fn normalize(v: &mut [C64]) {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
}

fn eigvec_2x2(a: C64, b: C64, c: C64, d: C64, lambda: C64) -> Vec<C64> {
    // rows of (A - lambda) are proportional; pick the better-conditioned one
    let r1 = (b, lambda - a); // from row 1: (a-l) x + b y = 0 -> (b, l-a)
    let r2 = (lambda - d, c); // from row 2: c x + (d-l) y = 0 -> (l-d, c)
    let n1 = r1.0.norm_sqr() + r1.1.norm_sqr();
    let n2 = r2.0.norm_sqr() + r2.1.norm_sqr();
    let mut v = if n1 >= n2 {
        vec![r1.0, r1.1]
    } else {
        vec![r2.0, r2.1]
    };
    if n1.max(n2) < 1e-300 {
        // diagonal matrix: eigenvector along the matching axis
        v = if (lambda - a).norm() <= (lambda - d).norm() {
            vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
        } else {
            vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
        };
    }
    normalize(&mut v);
    v
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let mean = (a + d) * 0.5;
    let disc = ((a - d) * (a - d) * 0.25 + b * c).sqrt();
    let l1 = mean + disc;
    let l2 = mean - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit QR step on the leading active block: H <- RQ + mu I.
fn qr_step(h: &mut CMatrix, active: usize, mu: C64) {
    let n = active;
    let mut r = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            r[(i, j)] = h[(i, j)];
        }
        r[(i, i)] -= mu;
    }
    // Householder QR of r, accumulating Q
    let mut q = CMatrix::identity(n);
    for k in 0..n - 1 {
        let mut x: Vec<C64> = (k..n).map(|i| r[(i, k)]).collect();
        let norm_x = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm_x < 1e-300 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 {
            x[0] / x[0].norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let alpha = -phase * norm_x;
        x[0] -= alpha;
        let vnorm_sq = x.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if vnorm_sq < 1e-300 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;
        for j in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for i in 0..x.len() {
                dot += x[i].conj() * r[(k + i, j)];
            }
            dot *= beta;
            for i in 0..x.len() {
                let delta = x[i] * dot;
                r[(k + i, j)] -= delta;
            }
        }
        // Q <- Q (I - beta v v^H)
        for i in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for j in 0..x.len() {
                dot += q[(i, k + j)] * x[j];
            }
            dot *= beta;
            for j in 0..x.len() {
                let delta = dot * x[j].conj();
                q[(i, k + j)] -= delta;
            }
        }
    }
    // H_active <- R Q + mu I
    let rq = r.mul(&q);
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] = rq[(i, j)];
        }
        h[(i, i)] += mu;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eig_sigma_x() {
        let m = CMatrix::from_2x2(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let eig = m.eig_small().unwrap();
        assert_abs_diff_eq!(eig[0].0.re, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig[1].0.re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig[0].0.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn eig_transmon_at_ep_is_defective() {
        // kappa = 1, J = 0.25, Delta = 0: double eigenvalue -0.25i
        let m = CMatrix::from_2x2(c(0.0, 0.0), c(0.25, 0.0), c(0.25, 0.0), c(0.0, -0.5));
        let eig = m.eig_small().unwrap();
        for (l, _) in &eig {
            assert_abs_diff_eq!(l.re, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(l.im, -0.25, epsilon = 1e-12);
        }
    }

    #[test]
    fn eig_offdiag_complex() {
        let m = CMatrix::from_2x2(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.1), c(0.0, 0.0));
        let eig = m.eig_small().unwrap();
        let s = c(1.0, 0.1).sqrt();
        // sorted by (re, im): -s first
        assert_abs_diff_eq!(eig[0].0.re, -s.re, epsilon = 1e-13);
        assert_abs_diff_eq!(eig[0].0.im, -s.im, epsilon = 1e-13);
        assert_abs_diff_eq!(eig[1].0.re, s.re, epsilon = 1e-13);
        assert_abs_diff_eq!(eig[1].0.im, s.im, epsilon = 1e-13);
    }

    #[test]
    fn eig_residuals_random() {
        // splitmix-style deterministic entries
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z = z ^ (z >> 31);
            (z as f64 / u64::MAX as f64) * 2.0 - 1.0
        };
        for trial in 0..1000 {
            let n = if trial % 2 == 0 { 2 } else { 4 };
            let data: Vec<C64> = (0..n * n).map(|_| c(next(), next())).collect();
            let m = CMatrix::from_vec(n, data).unwrap();
            let eig = m.eig_small().unwrap();
            for (l, v) in &eig {
                let r = m.residual(*l, v);
                assert!(r < 1e-10, "residual {r} for n={n} trial={trial}");
            }
        }
    }

    #[test]
    fn eig_8x8_residuals() {
        let mut state = 42u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let data: Vec<C64> = (0..64).map(|_| c(next(), next())).collect();
        let m = CMatrix::from_vec(8, data).unwrap();
        let eig = m.eig_small().unwrap();
        assert_eq!(eig.len(), 8);
        for (l, v) in &eig {
            assert!(m.residual(*l, v) < 1e-10);
        }
    }

    #[test]
    fn expm_zero_is_identity() {
        let m = CMatrix::zeros(3);
        let e = m.expm().unwrap();
        assert!(e.sub(&CMatrix::identity(3)).frobenius_norm() < 1e-15);
    }

    #[test]
    fn expm_diagonal() {
        let mut m = CMatrix::zeros(2);
        m[(0, 0)] = c(0.3, -0.2);
        m[(1, 1)] = c(-1.1, 0.7);
        let e = m.expm().unwrap();
        assert!((e[(0, 0)] - c(0.3, -0.2).exp()).norm() < 1e-14);
        assert!((e[(1, 1)] - c(-1.1, 0.7).exp()).norm() < 1e-14);
        assert!(e[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn expm_pauli_rotation() {
        // exp(-i pi/2 sigma_x) = [[0, -i], [-i, 0]]
        let m = CMatrix::from_2x2(c(0.0, 0.0), c(0.0, -std::f64::consts::FRAC_PI_2), c(0.0, -std::f64::consts::FRAC_PI_2), c(0.0, 0.0));
        let e = m.expm().unwrap();
        assert!((e[(0, 0)]).norm() < 1e-13);
        assert!((e[(0, 1)] - c(0.0, -1.0)).norm() < 1e-13);
        assert!((e[(1, 0)] - c(0.0, -1.0)).norm() < 1e-13);
    }

    #[test]
    fn expm_det_equals_exp_trace() {
        let mut state = 7u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        for _ in 0..50 {
            let data: Vec<C64> = (0..9).map(|_| c(next(), next())).collect();
            let m = CMatrix::from_vec(3, data).unwrap();
            let e = m.expm().unwrap();
            let lhs = e.det();
            let rhs = m.trace().exp();
            assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn trace_cyclicity() {
        let a = CMatrix::from_2x2(c(1.0, 0.5), c(-0.3, 0.2), c(0.7, -1.1), c(0.0, 0.9));
        let b = CMatrix::from_2x2(c(-0.4, 0.1), c(1.2, -0.6), c(0.5, 0.5), c(-0.9, 0.3));
        let t1 = a.mul(&b).trace();
        let t2 = b.mul(&a).trace();
        assert!((t1 - t2).norm() < 1e-12);
    }

    #[test]
    fn solve_and_inverse() {
        let a = CMatrix::from_2x2(c(2.0, 1.0), c(0.5, -0.3), c(-1.0, 0.2), c(1.5, 0.0));
        let inv = a.inverse().unwrap();
        let prod = a.mul(&inv);
        assert!(prod.sub(&CMatrix::identity(2)).frobenius_norm() < 1e-13);
    }

    #[test]
    fn from_vec_rejects_nan() {
        let r = CMatrix::from_vec(2, vec![c(f64::NAN, 0.0); 4]);
        assert!(r.is_err());
    }
}
