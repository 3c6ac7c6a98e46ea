#pragma once

#include <utility>

namespace qoe {

// Gibbs state of two resonant two-level atoms coupled by an XY exchange
// interaction of strength xi, reduced to the five numbers that determine
// every observable used downstream. In the product basis the state is
//
//   diag(rho_g, [rho_d rho_nd; rho_nd rho_d], rho_e)
//
// with rho_g + rho_e + 2 rho_d = 1.
struct TwoQubitThermalState {
    double beta;    // inverse temperature
    double omega;   // atomic frequency (hbar = 1)
    double xi;      // exchange coupling
    double Z;       // partition function, 2[cosh(beta*omega) + cosh(beta*xi)]
    double rho_g;   // <gg|rho|gg>
    double rho_e;   // <ee|rho|ee>
    double rho_d;   // <eg|rho|eg> = <ge|rho|ge>
    double rho_nd;  // <eg|rho|ge>, always <= 0 for xi >= 0
};

TwoQubitThermalState thermal_state(double beta, double omega, double xi);

// Closed-form concurrence of the thermal state:
//   max{0, [sinh(beta*xi) - 1] / [cosh(beta*omega) + sinh(beta*xi)]}.
// Vanishes for beta*xi <= arcsinh(1).
double concurrence(const TwoQubitThermalState& s);

struct DiscordResult {
    double discord;                 // bits, minimum over the measurement family
    double classical_correlations;  // bits, sup over the measurement family
    double mutual_information;      // bits
    double optimal_theta;           // radians, argmin of the discord
    double phi_plus;                // conditional eigen-probabilities at theta = pi/4
    double phi_minus;
};

// Quantum discord in bits. Evaluates the closed form and independently
// minimizes over the one-parameter projective measurement basis
//   {cos(t)|g> - sin(t)|e>, -sin(t)|g> - cos(t)|e>},  t in [0, pi/2],
// by a coarse grid of theta_grid_size points followed by golden-section
// refinement. Throws if the two routes disagree by more than consistency_tol.
DiscordResult discord(const TwoQubitThermalState& s, int theta_grid_size = 65,
                      double consistency_tol = 1e-8);

// Closed-form discord alone (no basis sweep).
double discord_closed_form(const TwoQubitThermalState& s);

// Classical correlations for a fixed measurement angle (exposed for tests).
double classical_correlations_at(const TwoQubitThermalState& s, double theta);

// Invert discord -> xi at fixed (beta, omega) by bisection on [0, 10/beta],
// where the discord is monotone increasing (asserted on a grid before the
// inversion). Throws std::domain_error when q_target exceeds the attainable
// maximum, naming that maximum.
double xi_for_discord(double q_target, double beta, double omega,
                      double tolerance = 1e-10);

}  // namespace qoe
