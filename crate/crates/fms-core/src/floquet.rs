//! Time-ordered propagation over drive periods and extraction of the
//! monodromy observables: quasienergies, the det-normalized propagator, its
//! unipotent part and the Stokes invariant Im Tr.

use crate::linalg::{C64, CMatrix};
use crate::models::{ModelSpec, TrajectorySpec};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

const CONVERGENCE_TOL: f64 = 1e-8;
const MAX_STEPS: usize = 1 << 16;

/// One-period propagator plus derived quantities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonodromyResult {
    pub monodromy: CMatrix,
    pub normalized: CMatrix,
    pub quasienergies: Vec<C64>,
    pub unipotent: CMatrix,
    pub stokes_invariant: f64,
    pub converged: bool,
    pub step_count_used: usize,
}

/// Midpoint-exponential product over [t0, t1] with `steps` slices:
/// U = prod_j exp(-i H(t_j + dt/2) dt). Preserves the det-trace identity
/// exactly per step.
pub fn time_ordered_product(
    model: &ModelSpec,
    traj: &TrajectorySpec,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<CMatrix> {
    let dt = (t1 - t0) / steps as f64;
    let dim = model.hamiltonian(traj.point(t0)).dim();
    let mut u = CMatrix::identity(dim);
    for j in 0..steps {
        let tm = t0 + (j as f64 + 0.5) * dt;
        let h = model.hamiltonian(traj.point(tm));
        let step = step_exponential(&h, dt)?;
        u = step.mul(&u);
    }
    Ok(u)
}

/// exp(-i H dt) for a 2x2 slice via the Cayley-Hamilton closed form;
/// falls back to the generic kernel for other dimensions.
fn step_exponential(h: &CMatrix, dt: f64) -> Result<CMatrix> {
    let a = h.scale(C64::new(0.0, -dt));
    if h.dim() != 2 {
        return a.expm();
    }
    let half_tr = a.trace() * 0.5;
    let b00 = a[(0, 0)] - half_tr;
    let b11 = a[(1, 1)] - half_tr;
    let (b01, b10) = (a[(0, 1)], a[(1, 0)]);
    let q = (b00 * b00 + b01 * b10).sqrt(); // B^2 = q^2 I for traceless B
    let (ch, sh) = (q.cosh(), sinch(q));
    let scale = half_tr.exp();
    Ok(CMatrix::from_2x2(
        scale * (ch + sh * b00),
        scale * sh * b01,
        scale * sh * b10,
        scale * (ch + sh * b11),
    ))
}

fn sinch(q: C64) -> C64 {
    if q.norm() < 1e-4 {
        let q2 = q * q;
        C64::new(1.0, 0.0) + q2 / 6.0 + q2 * q2 / 120.0
    } else {
        q.sinh() / q
    }
}

/// Propagate one drive period with step-doubling convergence control.
///
/// The product is computed at N and 2N slices; convergence means
/// ||U_N - U_2N|| < 1e-8 in Frobenius norm, and the 2N result is kept.
/// Doubling continues up to 2^16 slices before giving up.
pub fn propagate(model: &ModelSpec, traj: &TrajectorySpec) -> Result<MonodromyResult> {
    model.validate()?;
    traj.validate()?;
    let t_period = traj.period();
    let mut n = traj.steps();
    let mut u_n = time_ordered_product(model, traj, 0.0, t_period, n)?;
    let mut prev_delta = f64::INFINITY;
    loop {
        let u_2n = time_ordered_product(model, traj, 0.0, t_period, 2 * n)?;
        let delta = u_n.sub(&u_2n).frobenius_norm();
        if delta < CONVERGENCE_TOL {
            return assemble(model, traj, u_2n, 2 * n, true);
        }
        if 2 * n >= MAX_STEPS {
            return Err(Error::PropagatorNoConverge {
                steps: 2 * n,
                delta,
                prev_delta,
            });
        }
        prev_delta = delta;
        n *= 2;
        u_n = u_2n;
    }
}

fn assemble(
    _model: &ModelSpec,
    traj: &TrajectorySpec,
    u: CMatrix,
    steps: usize,
    converged: bool,
) -> Result<MonodromyResult> {
    let normalized = normalize(&u)?;
    let quasi = quasienergies(&u, traj.period())?;
    let unipotent = unipotent_part(&normalized);
    let stokes = normalized.trace().im;
    Ok(MonodromyResult {
        monodromy: u,
        normalized,
        quasienergies: quasi,
        unipotent,
        stokes_invariant: stokes,
        converged,
        step_count_used: steps,
    })
}

/// Floquet quasienergies eps_n = (i/T) Log mu_n, with the real part folded
/// to the first zone [-omega/2, omega/2).
pub fn quasienergies(m: &CMatrix, t_period: f64) -> Result<Vec<C64>> {
    let omega = 2.0 * std::f64::consts::PI / t_period;
    let eig = m.eig_small()?;
    let mut out = Vec::with_capacity(eig.len());
    for (mu, _) in eig {
        if mu.norm() < 1e-300 {
            return Err(Error::Singular {
                context: "quasienergies of singular monodromy",
            });
        }
        let log = C64::new(mu.norm().ln(), mu.arg());
        let eps = C64::new(0.0, 1.0) * log / t_period;
        let mut re = eps.re;
        re -= omega * (re / omega).round();
        if re >= omega / 2.0 {
            re -= omega;
        }
        if re < -omega / 2.0 {
            re += omega;
        }
        out.push(C64::new(re, eps.im));
    }
    Ok(out)
}

/// Distance between the two leading quasienergies modulo the drive frequency.
pub fn quasienergy_splitting(eps: &[C64], omega: f64) -> f64 {
    if eps.len() < 2 {
        return 0.0;
    }
    let d = (eps[0].re - eps[1].re).abs() % omega;
    d.min(omega - d)
}

/// Remove the Abelian dynamical phase: M / det(M)^(1/2), branch fixed so the
/// trace has nonnegative real part (imaginary part breaks exact ties).
pub fn normalize(m: &CMatrix) -> Result<CMatrix> {
    let det = m.det();
    if det.norm() < 1e-300 {
        return Err(Error::Singular {
            context: "normalize: det = 0",
        });
    }
    let root = det.powf(1.0 / m.dim() as f64);
    let mut out = m.scale(root.inv());
    let tr = out.trace();
    if tr.re < 0.0 || (tr.re == 0.0 && tr.im < 0.0) {
        out = out.scale(C64::new(-1.0, 0.0));
    }
    Ok(out)
}

/// Multiplicative Jordan-Chevalley unipotent factor of a det-1 matrix.
/// For 2x2: eigenvalues degenerate within 1e-6 force lambda = +-1, and the
/// unipotent part is M/lambda; otherwise the matrix is semisimple and the
/// unipotent part is the identity.
pub fn unipotent_part(m_norm: &CMatrix) -> CMatrix {
    let eig = match m_norm.eig_small() {
        Ok(e) => e,
        Err(_) => return CMatrix::identity(m_norm.dim()),
    };
    if m_norm.dim() == 2 {
        let (l1, l2) = (eig[0].0, eig[1].0);
        if (l1 - l2).norm() <= 1e-6 {
            let lambda = m_norm.trace() * 0.5;
            return m_norm.scale(lambda.inv());
        }
    }
    CMatrix::identity(m_norm.dim())
}

/// Trace overlap of two normalized monodromies: |Tr(a^H b)| / (||a|| ||b||).
/// Equals |Tr(a^H b)| / n on the unitary stratum and stays within [0, 1]
/// by Cauchy-Schwarz for general det-1 matrices.
pub fn monodromy_fidelity(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let overlap = a.adjoint().mul(b).trace().norm();
    Ok(overlap / (a.frobenius_norm() * b.frobenius_norm()))
}

/// Closed-form 2x2 eigensystem as (value, unit vector) pairs in the order
/// (mean + s, mean - s).
pub fn eig2(h: &CMatrix) -> [(C64, [C64; 2]); 2] {
    debug_assert_eq!(h.dim(), 2);
    let (a, b) = (h[(0, 0)], h[(0, 1)]);
    let (c, d) = (h[(1, 0)], h[(1, 1)]);
    let mean = (a + d) * 0.5;
    let s = ((a - d) * (a - d) * 0.25 + b * c).sqrt();
    let vec_for = |l: C64| -> [C64; 2] {
        let r1 = [b, l - a];
        let r2 = [l - d, c];
        let n1 = r1[0].norm_sqr() + r1[1].norm_sqr();
        let n2 = r2[0].norm_sqr() + r2[1].norm_sqr();
        let v = if n1 >= n2 { r1 } else { r2 };
        let n = n1.max(n2);
        if n < 1e-300 {
            if (l - a).norm() <= (l - d).norm() {
                return [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
            }
            return [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        }
        let inv = 1.0 / n.sqrt();
        [v[0] * inv, v[1] * inv]
    };
    [(mean + s, vec_for(mean + s)), (mean - s, vec_for(mean - s))]
}

pub fn dot2(a: &[C64; 2], b: &[C64; 2]) -> C64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

/// Eigenvalue-branch continuation by maximal eigenvector overlap between
/// adjacent samples.
#[derive(Debug, Clone)]
pub struct BranchTracker {
    pub value: C64,
    pub vector: [C64; 2],
}

impl BranchTracker {
    /// Start on the branch selected from the eigensystem of `h`.
    pub fn start(h: &CMatrix, select: impl Fn(&[(C64, [C64; 2]); 2]) -> usize) -> Self {
        let eig = eig2(h);
        let idx = select(&eig);
        BranchTracker {
            value: eig[idx].0,
            vector: eig[idx].1,
        }
    }

    /// Continue onto the eigensystem of the next sample.
    pub fn advance(&mut self, h: &CMatrix) -> Result<()> {
        let eig = eig2(h);
        let o0 = dot2(&self.vector, &eig[0].1).norm();
        let o1 = dot2(&self.vector, &eig[1].1).norm();
        let idx = if o0 >= o1 { 0 } else { 1 };
        let best = o0.max(o1);
        if best < 0.5 {
            return Err(Error::BranchTrackingLost { overlap: best });
        }
        // keep the vector phase continuous as well
        let phase = dot2(&self.vector, &eig[idx].1);
        let align = if phase.norm() > 0.0 {
            phase.conj() / phase.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        self.value = eig[idx].0;
        self.vector = [eig[idx].1[0] * align, eig[idx].1[1] * align];
        Ok(())
    }
}

/// Start index of the dark branch: the least-decaying eigenvalue
/// (largest imaginary part).
pub fn dark_branch(eig: &[(C64, [C64; 2]); 2]) -> usize {
    if eig[0].0.im >= eig[1].0.im {
        0
    } else {
        1
    }
}

/// Geometric phase of the adiabatically followed dark state after
/// `n_periods` loops, with the dynamical phase of the tracked eigenvalue
/// branch projected out. Step count is doubled until the phase settles.
pub fn dark_state_phase(
    model: &ModelSpec,
    traj: &TrajectorySpec,
    n_periods: usize,
) -> Result<f64> {
    model.validate()?;
    traj.validate()?;
    let mut n = traj.steps();
    let mut prev: Option<f64> = None;
    loop {
        let phase = dark_state_phase_once(model, traj, n_periods, n)?;
        if let Some(p) = prev {
            if wrap_phase(phase - p).abs() < 1e-3 {
                return Ok(phase);
            }
        }
        if 2 * n > MAX_STEPS {
            return Err(Error::PropagatorNoConverge {
                steps: n,
                delta: prev.map_or(f64::NAN, |p| wrap_phase(phase - p).abs()),
                prev_delta: f64::NAN,
            });
        }
        prev = Some(phase);
        n *= 2;
    }
}

fn dark_state_phase_once(
    model: &ModelSpec,
    traj: &TrajectorySpec,
    n_periods: usize,
    steps_per_period: usize,
) -> Result<f64> {
    let t_period = traj.period();
    let dt = t_period / steps_per_period as f64;
    let total = steps_per_period * n_periods;

    let h0 = model.hamiltonian(traj.point(0.0));
    let eig0 = eig2(&h0);
    let start = dark_branch(&eig0);
    let psi0 = eig0[start].1;
    let mut psi = psi0;
    let mut tracker = BranchTracker {
        value: eig0[start].0,
        vector: eig0[start].1,
    };
    let mut dynamical = C64::new(0.0, 0.0); // integral of the tracked branch

    for j in 0..total {
        let tm = (j as f64 + 0.5) * dt;
        let h = model.hamiltonian(traj.point(tm));
        let u = step_exponential(&h, dt)?;
        let new = [
            u[(0, 0)] * psi[0] + u[(0, 1)] * psi[1],
            u[(1, 0)] * psi[0] + u[(1, 1)] * psi[1],
        ];
        // rescale by the norm only: a positive real factor never moves phases
        let norm = (new[0].norm_sqr() + new[1].norm_sqr()).sqrt();
        if norm < 1e-300 {
            return Err(Error::NonFinite {
                context: "state vector collapsed to zero",
            });
        }
        psi = [new[0] / norm, new[1] / norm];
        tracker.advance(&h)?;
        dynamical += tracker.value * dt;
    }

    let overlap = dot2(&psi0, &psi);
    // divide out exp(-i * integral(lambda dt)): in phase terms, add Re(integral)
    Ok(wrap_phase(overlap.arg() + dynamical.re))
}

pub fn wrap_phase(p: f64) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    let mut x = p % tau;
    if x > std::f64::consts::PI {
        x -= tau;
    }
    if x <= -std::f64::consts::PI {
        x += tau;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn constant_hamiltonian_diagonal() {
        // autonomous diag(E1, E2) over T: U = diag(exp(-i E1 T), exp(-i E2 T))
        let model = ModelSpec::PhotonicDimer {
            beta: 0.0,
            kappa_coupling: 0.0,
            gamma_a: 0.3,
            gamma_b: 0.7,
        };
        let traj = TrajectorySpec::loop_around(c(0.0, 0.0), 0.0, 1.0, 64);
        let t_period = traj.period();
        let r = propagate(&model, &traj).unwrap();
        let h = model.hamiltonian(c(0.0, 0.0));
        let expect0 = (h[(0, 0)] * c(0.0, -t_period)).exp();
        let expect1 = (h[(1, 1)] * c(0.0, -t_period)).exp();
        assert!((r.monodromy[(0, 0)] - expect0).norm() < 1e-9);
        assert!((r.monodromy[(1, 1)] - expect1).norm() < 1e-9);
        assert!(r.monodromy[(0, 1)].norm() < 1e-12);
        assert!(r.converged);
    }

    #[test]
    fn zero_radius_loop_matches_expm() {
        let model = ModelSpec::transmon(1.0);
        let traj = TrajectorySpec::loop_around(c(0.2, 0.1), 0.0, 0.5, 64);
        let t_period = traj.period();
        let r = propagate(&model, &traj).unwrap();
        let h = model.hamiltonian(c(0.2, 0.1));
        let direct = h.scale(c(0.0, -t_period)).expm().unwrap();
        assert!(r.monodromy.sub(&direct).frobenius_norm() < 1e-8);
    }

    #[test]
    fn det_trace_identity_along_drive() {
        // det U(T) = exp(-i integral tr H dt) validates the time ordering
        let model = ModelSpec::transmon(1.0);
        let traj = TrajectorySpec::loop_around(c(0.0, 0.0), 0.15, 0.3, 512);
        let t_period = traj.period();
        let r = propagate(&model, &traj).unwrap();
        let n = 20000;
        let dt = t_period / n as f64;
        let mut tr_int = c(0.0, 0.0);
        for j in 0..n {
            let tm = (j as f64 + 0.5) * dt;
            tr_int += model.hamiltonian(traj.point(tm)).trace() * dt;
        }
        let expect = (tr_int * c(0.0, -1.0)).exp();
        assert!(
            (r.monodromy.det() - expect).norm() < 1e-8,
            "det {} vs {}",
            r.monodromy.det(),
            expect
        );
    }

    #[test]
    fn composition_over_half_periods() {
        let model = ModelSpec::transmon(1.0);
        let traj = TrajectorySpec::loop_around(c(0.0, 0.0), 0.15, 0.3, 512);
        let t_period = traj.period();
        let full = time_ordered_product(&model, &traj, 0.0, t_period, 4096).unwrap();
        let first = time_ordered_product(&model, &traj, 0.0, t_period / 2.0, 2048).unwrap();
        let second = time_ordered_product(&model, &traj, t_period / 2.0, t_period, 2048).unwrap();
        let composed = second.mul(&first);
        assert!(full.sub(&composed).frobenius_norm() < 1e-8);
    }

    #[test]
    fn hermitian_limit_is_unitary() {
        // kappa -> 0 transmon is Hermitian; U(T) must be unitary
        let model = ModelSpec::TransmonEp2 {
            kappa: 1e-12,
            j0: 0.25,
            delta0: 0.0,
        };
        let traj = TrajectorySpec::loop_around(c(0.0, 0.0), 0.1, 0.5, 512);
        let r = propagate(&model, &traj).unwrap();
        let uu = r.monodromy.adjoint().mul(&r.monodromy);
        assert!(uu.sub(&CMatrix::identity(2)).frobenius_norm() < 1e-9);
    }

    #[test]
    fn step_doubling_second_order() {
        let model = ModelSpec::transmon(1.0);
        let traj = TrajectorySpec::loop_around(c(0.0, 0.0), 0.15, 0.5, 64);
        let t_period = traj.period();
        let exact = time_ordered_product(&model, &traj, 0.0, t_period, 1 << 14).unwrap();
        let e1 = time_ordered_product(&model, &traj, 0.0, t_period, 128)
            .unwrap()
            .sub(&exact)
            .frobenius_norm();
        let e2 = time_ordered_product(&model, &traj, 0.0, t_period, 256)
            .unwrap()
            .sub(&exact)
            .frobenius_norm();
        let order = (e1 / e2).log2();
        assert!(
            (order - 2.0).abs() < 0.3,
            "observed order {order} (e1 = {e1:.3e}, e2 = {e2:.3e})"
        );
    }

    #[test]
    fn quasienergies_identity_and_diag() {
        let eps = quasienergies(&CMatrix::identity(2), 10.0).unwrap();
        for e in eps {
            assert!(e.norm() < 1e-14);
        }
        // diag(exp(-iET), exp(iET)) -> +-E mod omega
        let t_period = 10.0;
        let omega = 2.0 * std::f64::consts::PI / t_period;
        let e0 = 0.13;
        let m = CMatrix::from_2x2(
            (c(0.0, -1.0) * e0 * t_period).exp(),
            c(0.0, 0.0),
            c(0.0, 0.0),
            (c(0.0, 1.0) * e0 * t_period).exp(),
        );
        let eps = quasienergies(&m, t_period).unwrap();
        let split = quasienergy_splitting(&eps, omega);
        let expect = (2.0 * e0) % omega;
        let expect = expect.min(omega - expect);
        assert!((split - expect).abs() < 1e-12);
    }

    #[test]
    fn normalize_scalar_and_det_one() {
        let m = CMatrix::identity(2).scale(c(0.0, 3.0));
        let norm = normalize(&m).unwrap();
        assert!(norm.sub(&CMatrix::identity(2)).frobenius_norm() < 1e-14);
        assert!((norm.det() - c(1.0, 0.0)).norm() < 1e-14);

        let any = CMatrix::from_2x2(c(1.2, 0.4), c(0.3, -0.7), c(-0.2, 0.1), c(0.8, 0.9));
        let n2 = normalize(&any).unwrap();
        assert!((n2.det() - c(1.0, 0.0)).norm() < 1e-12);
        assert!(n2.trace().re >= 0.0);
    }

    #[test]
    fn unipotent_cases() {
        // semisimple: diag(q, 1/q)
        let q = c(1.3, 0.4);
        let m = CMatrix::from_2x2(q, c(0.0, 0.0), c(0.0, 0.0), q.inv());
        assert!(unipotent_part(&m)
            .sub(&CMatrix::identity(2))
            .frobenius_norm()
            < 1e-12);
        // already unipotent
        let u = CMatrix::from_2x2(c(1.0, 0.0), c(0.7, -0.2), c(0.0, 0.0), c(1.0, 0.0));
        assert!(unipotent_part(&u).sub(&u).frobenius_norm() < 1e-9);
        // sign stripped
        let neg = u.scale(c(-1.0, 0.0));
        assert!(unipotent_part(&neg).sub(&u).frobenius_norm() < 1e-9);
    }

    #[test]
    fn fidelity_examples() {
        let i2 = CMatrix::identity(2);
        assert!((monodromy_fidelity(&i2, &i2).unwrap() - 1.0).abs() < 1e-14);
        let anti = CMatrix::from_2x2(c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 0.0));
        assert!(monodromy_fidelity(&i2, &anti).unwrap() < 1e-14);
        let m = CMatrix::from_2x2(c(1.1, 0.2), c(0.3, 0.0), c(0.0, -0.4), c(0.9, 0.1));
        let m = normalize(&m).unwrap();
        assert!((monodromy_fidelity(&m, &m).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn branch_tracker_follows_crossing() {
        // rotate sigma_z into sigma_x smoothly: tracked branch stays smooth
        let mut tracker: Option<BranchTracker> = None;
        let mut last = c(0.0, 0.0);
        for i in 0..=100 {
            let th = std::f64::consts::PI * i as f64 / 100.0;
            let h = CMatrix::from_2x2(
                c(th.cos(), 0.0),
                c(th.sin(), 0.0),
                c(th.sin(), 0.0),
                c(-th.cos(), 0.0),
            );
            match tracker.as_mut() {
                None => {
                    tracker = Some(BranchTracker::start(&h, |eig| {
                        if eig[0].0.re > eig[1].0.re {
                            0
                        } else {
                            1
                        }
                    }))
                }
                Some(t) => t.advance(&h).unwrap(),
            }
            let v = tracker.as_ref().unwrap().value;
            if i > 0 {
                assert!((v - last).norm() < 0.1, "branch jumped at step {i}");
            }
            last = v;
        }
        // eigenvalues are +-1 on the circle; the tracked one stays near +1
        assert!((last - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn dark_phase_trivial_for_non_encircling_loop() {
        let model = ModelSpec::transmon(1.0);
        // loop far from the EP, small radius
        let traj = TrajectorySpec::loop_around(c(0.2, 0.0), 0.05, 0.5, 256);
        let phase = dark_state_phase(&model, &traj, 1).unwrap();
        assert!(phase.abs() < 0.05, "phase = {phase}");
    }
}
