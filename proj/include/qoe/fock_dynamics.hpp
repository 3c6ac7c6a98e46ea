#pragma once

#include <Eigen/Dense>

#include "qoe/reservoir.hpp"

namespace qoe {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class StrokeDirection { Compression, Expansion };

// Frequency ramp with 1/omega linear in time:
//   omega(t) = omega_start*omega_end*tau / [(omega_start - omega_end) t + omega_end*tau]
// The family is closed under time reversal (reversing swaps the endpoints).
struct DrivingProtocol {
    double omega_start;
    double omega_end;
    double tau;
    StrokeDirection direction;

    double omega_at(double t) const;
};

DrivingProtocol compression_protocol(double omega_c, double omega_h, double tau);
DrivingProtocol expansion_protocol(double omega_c, double omega_h, double tau);

struct PropagationOptions {
    int pad_factor = 2;       // internal space = pad_factor * dim
    int guard = 16;           // trusted rows: n <= dim - guard
    double phi_tol = 1e-8;    // step-halving convergence threshold on phi
    int initial_steps = 0;    // 0 -> chosen from tau and the frequencies
    int fixed_steps = 0;      // nonzero: exactly this interval count, no halving
    int max_steps = 1 << 21;
    double row_loss_tol = 1e-6;   // trusted-band unitarity-loss threshold
    double probe_beta_omega = 1.2;  // thermal probe ensemble: beta*omega_start
    enum class Scheme { GaussCF4, Midpoint } scheme = Scheme::GaussCF4;
};

// Two-point-measurement transition probabilities of one unitary stroke.
// p(n, m) = |<m_end| U |n_start>|^2 between instantaneous eigenstates.
// The propagation runs in a padded internal space; row_leak is the mass
// falling outside the returned dim x dim block (physically real transitions
// past the cutoff plus truncation), row_loss is the mass parked in the top
// guard band of the internal space, i.e. probability the cutoff is actively
// distorting (checked against row_loss_tol for rows n <= dim - guard).
struct TransitionMatrix {
    MatrixXd p;
    VectorXd row_leak;
    VectorXd row_loss;
    int dim = 0;
    int guard = 0;
    int internal_dim = 0;
    int steps = 0;
    double phi_probe = 0.0;  // energy-amplification factor seen by the probe ensemble
};

TransitionMatrix unitary_transition_matrix(const DrivingProtocol& protocol, int dim,
                                           const PropagationOptions& opts = {});

// Nonadiabatic factor extracted from the propagated compression stroke as the
// energy amplification of a thermal probe ensemble,
//   phi = <H(omega_h)>_final / [omega_h (<H(omega_c)>_init / omega_c)].
double nonadiabatic_factor_numeric(double tau_dri, double omega_c, double omega_h,
                                   int dim = 64, const PropagationOptions& opts = {});

// Closed form: phi = 1 + [1 - cos(sqrt(zeta-1) ln(omega_h/omega_c))]/(zeta-1),
// zeta = [2 tau omega_c omega_h/(omega_h - omega_c)]^2, analytically continued
// through zeta = 1.
double nonadiabatic_factor_analytic(double tau_dri, double omega_c, double omega_h);

// ---- cavity relaxation under the micromaser master equation ----

struct LindbladOptions {
    double residual_tol = 1e-10;  // on ||L1(rho)||_F with unit prefactor
    // loose path control: the flow is contracting and the residual threshold
    // alone sets the final accuracy
    double rel_tol = 1e-6;
    double abs_tol = 1e-10;
    long max_steps = 500000;
    int eig_check_stride = 25;    // positivity tracking cadence (0 = off)
    MatrixXcd initial_state;      // empty: a generic full-coherence pure state
};

struct SteadyStateResult {
    MatrixXcd rho;
    double residual;
    long steps;
    double max_trace_drift;
    double max_hermiticity_violation;
    double min_eigenvalue;
};

// Integrate d rho/dt = (gamma_tau)^2 [ r1 D[a^dag] + r2 D[a] ](rho) from a
// generic pure state until the unit-prefactor residual drops below
// residual_tol. Requires the thermal tail e^{-beta_eff*omega*dim} < 1e-12,
// i.e. dim >= required_fock_dim(ln(r2/r1)); throws naming the required dim
// otherwise.
SteadyStateResult lindblad_steady_state(double r1, double r2, double gamma_tau, int dim,
                                        const LindbladOptions& opts = {});
SteadyStateResult lindblad_steady_state(const EffectiveReservoir& res, double gamma_tau,
                                        int dim, const LindbladOptions& opts = {});

// Steady state as the kernel of the vectorized generator (dense SVD; intended
// for small dim as a cross-check of the integrated route).
MatrixXcd lindblad_steady_state_nullspace(double r1, double r2, int dim);

// Truncated thermal state (1 - e^{-x}) e^{-x a^dag a}, renormalized on the cutoff.
MatrixXcd thermal_fock_state(double beta_omega, int dim);

// Smallest dim with e^{-beta_eff_omega * dim} < 1e-12.
int required_fock_dim(double beta_eff_omega);

double trace_distance(const MatrixXcd& a, const MatrixXcd& b);

// Oscillator Hamiltonian p^2/2 + omega^2 x^2 / 2 in the number basis of
// omega_ref (pentadiagonal, real symmetric).
MatrixXd oscillator_hamiltonian(double omega, double omega_ref, int dim);

}  // namespace qoe
