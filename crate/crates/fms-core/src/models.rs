//! Parametric non-Hermitian Hamiltonian families, their exceptional-point
//! locations, and the drive trajectories that feed the propagator.
//!
//! Every family is an effective two-level model. The complex control
//! parameter lambda unfolds the exceptional point: its real part shifts the
//! coupling-strength direction and its imaginary part the real detuning,
//! so lambda = 0 sits exactly on the EP for the default constructors.

use crate::linalg::{C64, CMatrix};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Hamiltonian family plus its parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModelSpec {
    /// Dissipative transmon qudit: [[0, J], [J, Delta - i kappa/2]] with
    /// (J, Delta) = (j0 + re lambda, delta0 + im lambda).
    TransmonEp2 { kappa: f64, j0: f64, delta0: f64 },
    /// Higher-order family [[0, 1], [lambda^(k+1) + offset, 0]] where the
    /// offset defaults to i*delta; `offset_phase` rotates it in the complex
    /// plane (the knob of the phantom-transition experiment).
    RankK {
        k: u32,
        delta: f64,
        offset_phase: f64,
    },
    /// Rydberg pair in the blockade regime: [[0, Omega], [Omega, Delta - i gamma]].
    Rydberg {
        gamma_loss: f64,
        omega0: f64,
        delta0: f64,
    },
    /// Coupled waveguides with differential loss:
    /// [[beta - i gamma_a, kappa_c], [kappa_c, beta + im lambda - i gamma_b]]
    /// with kappa_c shifted by re lambda.
    PhotonicDimer {
        beta: f64,
        kappa_coupling: f64,
        gamma_a: f64,
        gamma_b: f64,
    },
}

/// Location of the exceptional point in the lambda control plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpLocation {
    pub position: C64,
    pub order: u32,
}

impl ModelSpec {
    /// Transmon with the affine offsets parked on the EP (J0 = kappa/4).
    pub fn transmon(kappa: f64) -> Self {
        ModelSpec::TransmonEp2 {
            kappa,
            j0: kappa / 4.0,
            delta0: 0.0,
        }
    }

    pub fn rank_k(k: u32, delta: f64) -> Self {
        ModelSpec::RankK {
            k,
            delta,
            offset_phase: 0.0,
        }
    }

    /// Rydberg pair parked on the EP (Omega0 = gamma/2).
    pub fn rydberg(gamma_loss: f64) -> Self {
        ModelSpec::Rydberg {
            gamma_loss,
            omega0: gamma_loss / 2.0,
            delta0: 0.0,
        }
    }

    /// Photonic dimer parked on the EP (kappa_c = |gamma_a - gamma_b| / 2).
    pub fn photonic_dimer(gamma_a: f64, gamma_b: f64) -> Self {
        ModelSpec::PhotonicDimer {
            beta: 0.0,
            kappa_coupling: (gamma_a - gamma_b).abs() / 2.0,
            gamma_a,
            gamma_b,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ModelSpec::TransmonEp2 { kappa, .. } if *kappa <= 0.0 => {
                Err(Error::Invalid(format!("kappa must be positive, got {kappa}")))
            }
            ModelSpec::RankK { k, .. } if *k < 1 => {
                Err(Error::Invalid("rank k must be >= 1".into()))
            }
            ModelSpec::Rydberg { gamma_loss, .. } if *gamma_loss <= 0.0 => Err(Error::Invalid(
                format!("gamma_loss must be positive, got {gamma_loss}"),
            )),
            _ => Ok(()),
        }
    }

    /// Family member at the control point lambda.
    pub fn hamiltonian(&self, lambda: C64) -> CMatrix {
        match *self {
            ModelSpec::TransmonEp2 { kappa, j0, delta0 } => {
                let j = j0 + lambda.re;
                let delta = delta0 + lambda.im;
                CMatrix::from_2x2(
                    C64::new(0.0, 0.0),
                    C64::new(j, 0.0),
                    C64::new(j, 0.0),
                    C64::new(delta, -kappa / 2.0),
                )
            }
            ModelSpec::RankK {
                k,
                delta,
                offset_phase,
            } => {
                let offset = C64::from_polar(delta, std::f64::consts::FRAC_PI_2 + offset_phase);
                CMatrix::from_2x2(
                    C64::new(0.0, 0.0),
                    C64::new(1.0, 0.0),
                    lambda.powu(k + 1) + offset,
                    C64::new(0.0, 0.0),
                )
            }
            ModelSpec::Rydberg {
                gamma_loss,
                omega0,
                delta0,
            } => {
                let omega = omega0 + lambda.re;
                let delta = delta0 + lambda.im;
                CMatrix::from_2x2(
                    C64::new(0.0, 0.0),
                    C64::new(omega, 0.0),
                    C64::new(omega, 0.0),
                    C64::new(delta, -gamma_loss),
                )
            }
            ModelSpec::PhotonicDimer {
                beta,
                kappa_coupling,
                gamma_a,
                gamma_b,
            } => {
                let kc = kappa_coupling + lambda.re;
                CMatrix::from_2x2(
                    C64::new(beta, -gamma_a),
                    C64::new(kc, 0.0),
                    C64::new(kc, 0.0),
                    C64::new(beta + lambda.im, -gamma_b),
                )
            }
        }
    }

    /// Discriminant of the characteristic polynomial: the eigenvalues are
    /// trace/2 +- sqrt(disc), so the splitting is 2 sqrt(disc).
    pub fn discriminant(&self, lambda: C64) -> C64 {
        let h = self.hamiltonian(lambda);
        let half_diff = (h[(0, 0)] - h[(1, 1)]) * 0.5;
        half_diff * half_diff + h[(0, 1)] * h[(1, 0)]
    }

    /// Instantaneous eigenvalue splitting |E1 - E2| at lambda.
    pub fn splitting(&self, lambda: C64) -> f64 {
        2.0 * self.discriminant(lambda).sqrt().norm()
    }

    /// Closed-form exceptional point of the family, order 2.
    pub fn ep_location(&self) -> EpLocation {
        let position = match *self {
            ModelSpec::TransmonEp2 { kappa, j0, delta0 } => {
                C64::new(kappa / 4.0 - j0, -delta0)
            }
            ModelSpec::RankK { k, delta, offset_phase } => {
                if delta == 0.0 {
                    C64::new(0.0, 0.0)
                } else {
                    // lambda^(k+1) = -offset: root nearest the positive real axis
                    let target = -C64::from_polar(
                        delta,
                        std::f64::consts::FRAC_PI_2 + offset_phase,
                    );
                    let r = delta.powf(1.0 / (k + 1) as f64);
                    let mut best_angle = f64::INFINITY;
                    for m in 0..=k {
                        let ang = wrap_angle(
                            (target.arg() + 2.0 * std::f64::consts::PI * m as f64)
                                / (k + 1) as f64,
                        );
                        if ang.abs() < best_angle.abs() {
                            best_angle = ang;
                        }
                    }
                    C64::from_polar(r, best_angle)
                }
            }
            ModelSpec::Rydberg {
                gamma_loss,
                omega0,
                delta0,
            } => C64::new(gamma_loss / 2.0 - omega0, -delta0),
            ModelSpec::PhotonicDimer {
                kappa_coupling,
                gamma_a,
                gamma_b,
                ..
            } => C64::new((gamma_a - gamma_b).abs() / 2.0 - kappa_coupling, 0.0),
        };
        EpLocation { position, order: 2 }
    }

    /// Singularity rank used by the scaling laws: the RankK family carries
    /// its k; the EP2 platforms are the rank-1 kernel.
    pub fn rank(&self) -> u32 {
        match self {
            ModelSpec::RankK { k, .. } => *k,
            _ => 1,
        }
    }
}

fn wrap_angle(a: f64) -> f64 {
    let mut x = a;
    let tau = 2.0 * std::f64::consts::PI;
    while x > std::f64::consts::PI {
        x -= tau;
    }
    while x <= -std::f64::consts::PI {
        x += tau;
    }
    x
}

/// Closed loop or linear sweep through the complex control plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TrajectorySpec {
    /// k(t) = center + R exp(i(theta0 + orientation * omega * t)).
    /// The default orientation -1 traverses clockwise, matching the
    /// exp(-i omega t) drive convention.
    Loop {
        center: C64,
        radius: f64,
        omega: f64,
        theta0: f64,
        orientation: i8,
        steps: usize,
    },
    /// k(t) = velocity * (t - T/2) + offset with T = 2 pi / omega.
    LinearSweep {
        velocity: f64,
        offset: C64,
        omega: f64,
        steps: usize,
    },
}

impl TrajectorySpec {
    pub fn loop_around(center: C64, radius: f64, omega: f64, steps: usize) -> Self {
        TrajectorySpec::Loop {
            center,
            radius,
            omega,
            theta0: 0.0,
            orientation: -1,
            steps,
        }
    }

    pub fn omega(&self) -> f64 {
        match self {
            TrajectorySpec::Loop { omega, .. } | TrajectorySpec::LinearSweep { omega, .. } => {
                *omega
            }
        }
    }

    pub fn steps(&self) -> usize {
        match self {
            TrajectorySpec::Loop { steps, .. } | TrajectorySpec::LinearSweep { steps, .. } => {
                *steps
            }
        }
    }

    /// Drive period T = 2 pi / omega.
    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega()
    }

    pub fn validate(&self) -> Result<()> {
        let (omega, steps) = (self.omega(), self.steps());
        if omega <= 0.0 {
            return Err(Error::Invalid(format!("omega must be positive, got {omega}")));
        }
        if steps < 64 || !steps.is_power_of_two() {
            return Err(Error::Invalid(format!(
                "steps must be a power of two >= 64, got {steps}"
            )));
        }
        if let TrajectorySpec::Loop { radius, .. } = self {
            if *radius < 0.0 {
                return Err(Error::Invalid("loop radius must be >= 0".into()));
            }
        }
        Ok(())
    }

    /// Control point at time t in [0, T].
    pub fn point(&self, t: f64) -> C64 {
        match *self {
            TrajectorySpec::Loop {
                center,
                radius,
                omega,
                theta0,
                orientation,
                ..
            } => center + C64::from_polar(radius, theta0 + orientation as f64 * omega * t),
            TrajectorySpec::LinearSweep {
                velocity, offset, ..
            } => {
                let half = self.period() / 2.0;
                offset + C64::new(velocity * (t - half), 0.0)
            }
        }
    }
}
