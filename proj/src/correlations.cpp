#include "qoe/correlations.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qoe/numerics.hpp"

namespace qoe {

TwoQubitThermalState thermal_state(double beta, double omega, double xi) {
    require_finite(beta, "beta");
    require_finite(omega, "omega");
    require_finite(xi, "xi");
    if (beta <= 0.0) throw std::invalid_argument("thermal_state: beta must be > 0");
    if (omega <= 0.0) throw std::invalid_argument("thermal_state: omega must be > 0");
    if (xi < 0.0) throw std::invalid_argument("thermal_state: xi must be >= 0");
    if (beta * omega > 600.0 || beta * xi > 600.0)
        throw std::invalid_argument("thermal_state: beta*omega or beta*xi too large (overflow)");

    TwoQubitThermalState s;
    s.beta = beta;
    s.omega = omega;
    s.xi = xi;
    s.Z = 2.0 * (std::cosh(beta * omega) + std::cosh(beta * xi));
    s.rho_g = std::exp(beta * omega) / s.Z;
    s.rho_e = std::exp(-beta * omega) / s.Z;
    s.rho_d = std::cosh(beta * xi) / s.Z;
    s.rho_nd = -std::sinh(beta * xi) / s.Z;
    return s;
}

double concurrence(const TwoQubitThermalState& s) {
    double num = std::sinh(s.beta * s.xi) - 1.0;
    if (num <= 0.0) return 0.0;
    return num / (std::cosh(s.beta * s.omega) + std::sinh(s.beta * s.xi));
}

namespace {

// Spectrum of the full two-atom thermal state: {e^{-bw}, e^{-bx}, e^{bx}, e^{bw}}/Z.
double joint_entropy_bits(const TwoQubitThermalState& s) {
    double p[4] = {std::exp(-s.beta * s.omega) / s.Z, std::exp(-s.beta * s.xi) / s.Z,
                   std::exp(s.beta * s.xi) / s.Z, std::exp(s.beta * s.omega) / s.Z};
    double h = 0.0;
    for (double v : p) h -= xlogx(v);
    return h / kLn2;
}

}  // namespace

double classical_correlations_at(const TwoQubitThermalState& s, double theta) {
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = 1.0 - c2;
    const double cs = std::cos(theta) * std::sin(theta);
    const double S1 = binary_entropy_bits(s.rho_g + s.rho_d);

    // entropy of an unnormalized conditional block [[a, off], [off, d]] on atom 1,
    // weighted by its probability p = a + d
    auto weighted_cond_entropy = [](double a, double d, double off) {
        double p = a + d;
        double delta = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
        double ep = 0.5 * p + delta, em = 0.5 * p - delta;
        return -(xlogx(ep / p) + xlogx(em / p)) * p / kLn2;
    };
    double ph1 = weighted_cond_entropy(c2 * s.rho_g + s2 * s.rho_d,
                                       c2 * s.rho_d + s2 * s.rho_e, -cs * s.rho_nd);
    double ph2 = weighted_cond_entropy(s2 * s.rho_g + c2 * s.rho_d,
                                       s2 * s.rho_d + c2 * s.rho_e, cs * s.rho_nd);
    return S1 - ph1 - ph2;
}

double discord_closed_form(const TwoQubitThermalState& s) {
    const double bx = s.beta * s.xi;
    const double root = std::sqrt((s.rho_e - s.rho_g) * (s.rho_e - s.rho_g) + 4.0 * s.rho_nd * s.rho_nd);
    const double phi_p = 0.5 * (1.0 + root);
    const double phi_m = 0.5 * (1.0 - root);
    double t = 2.0 * bx * s.rho_nd;
    t += s.rho_d * std::log(s.Z * s.Z * (s.rho_g + s.rho_d) * (s.rho_e + s.rho_d));
    t += s.rho_g * std::log((s.rho_g + s.rho_d) / s.rho_g);
    t += s.rho_e * std::log((s.rho_e + s.rho_d) / s.rho_e);
    t += xlogx(phi_p) + xlogx(phi_m);
    return -t / kLn2;
}

DiscordResult discord(const TwoQubitThermalState& s, int theta_grid_size,
                      double consistency_tol) {
    if (theta_grid_size < 3)
        throw std::invalid_argument("discord: theta_grid_size must be >= 3");

    const double S1 = binary_entropy_bits(s.rho_g + s.rho_d);
    const double mutual = 2.0 * S1 - joint_entropy_bits(s);

    // coarse grid, then golden-section refinement of sup_theta J(theta)
    const double hi = 1.5707963267948966;
    double best_j = -1.0, best_t = 0.0;
    int best_i = 0;
    for (int i = 0; i < theta_grid_size; ++i) {
        double t = hi * i / (theta_grid_size - 1);
        double j = classical_correlations_at(s, t);
        if (j > best_j) {
            best_j = j;
            best_t = t;
            best_i = i;
        }
    }
    double lo_b = hi * std::max(best_i - 1, 0) / (theta_grid_size - 1);
    double hi_b = hi * std::min(best_i + 1, theta_grid_size - 1) / (theta_grid_size - 1);
    auto [t_star, j_star] = golden_section_max(
        [&](double t) { return classical_correlations_at(s, t); }, lo_b, hi_b, 1e-10);
    if (j_star < best_j) {
        j_star = best_j;
        t_star = best_t;
    }

    double q_swept = mutual - j_star;
    double q_closed = discord_closed_form(s);
    if (std::abs(q_swept - q_closed) > consistency_tol)
        throw std::runtime_error(
            "discord: closed form and basis sweep disagree by " +
            std::to_string(std::abs(q_swept - q_closed)) + " bits");
    if (q_swept < 0.0) {
        if (q_swept < -1e-12)
            throw std::runtime_error("discord: negative value beyond rounding");
        q_swept = 0.0;
    }

    const double root = std::sqrt((s.rho_e - s.rho_g) * (s.rho_e - s.rho_g) + 4.0 * s.rho_nd * s.rho_nd);
    DiscordResult r;
    r.discord = q_swept;
    r.classical_correlations = j_star;
    r.mutual_information = mutual;
    r.optimal_theta = t_star;
    r.phi_plus = 0.5 * (1.0 + root);
    r.phi_minus = 0.5 * (1.0 - root);
    return r;
}

double xi_for_discord(double q_target, double beta, double omega, double tolerance) {
    require_finite(q_target, "q_target");
    if (q_target < 0.0) throw std::invalid_argument("xi_for_discord: q_target must be >= 0");
    if (tolerance <= 0.0) throw std::invalid_argument("xi_for_discord: tolerance must be > 0");
    if (q_target == 0.0) return 0.0;

    const double xi_max = 10.0 / beta;
    auto q_of = [&](double xi) { return discord_closed_form(thermal_state(beta, omega, xi)); };

    // monotonicity sanity on a coarse grid before inverting
    double prev = 0.0;
    for (int i = 1; i <= 32; ++i) {
        double q = q_of(xi_max * i / 32.0);
        if (q <= prev)
            throw std::runtime_error("xi_for_discord: discord not strictly increasing in xi");
        prev = q;
    }
    if (q_target > prev)
        throw std::domain_error("xi_for_discord: target " + std::to_string(q_target) +
                                " exceeds attainable maximum " + std::to_string(prev) +
                                " at xi_max = " + std::to_string(xi_max));
    return bisect_increasing(q_of, 0.0, xi_max, q_target, tolerance);
}

}  // namespace qoe
