#pragma once

#include <complex>

namespace qoe {

// Which isochore is driven by the correlated-pair beam. HotNonthermal: the
// pair beam heats the cavity at omega_h (one atom crosses), the cold bath is
// bosonic. ColdNonthermal: bosonic hot bath, pair beam cools at omega_c with
// both atoms crossing.
enum class CycleVariant { HotNonthermal, ColdNonthermal };

struct CycleConfig {
    double omega_c;   // cold-stroke frequency
    double omega_h;   // hot-stroke frequency, omega_h > omega_c
    double beta_c;    // cold bath inverse temperature
    double beta_h;    // hot bath inverse temperature, beta_c > beta_h
    double xi = 0.0;  // pair coupling
    double tau_dri = 0.8;
    CycleVariant variant = CycleVariant::HotNonthermal;

    double tau_cycle() const { return 2.0 * tau_dri; }
    void validate() const;
};

enum class OperationMode { Engine, Refrigerator, Heater, Boundary };
const char* to_string(OperationMode m);

// The two inverse temperatures that actually govern the cycle statistics
// (bare on the thermal side, effective on the pair side), the matching
// occupations coth(beta*omega/2)/2, and the nonadiabatic factor.
struct GoverningBaths {
    double beta_cold, beta_hot;
    double n_cold, n_hot;
    double phi, r_phi;
};
GoverningBaths governing_baths(const CycleConfig& cfg);

// Joint characteristic function G(u, v) = <e^{-i u w - i v q_h}> of total
// work and hot-isochore heat over one cycle. Throws std::domain_error outside
// the branch-safe evaluation region.
std::complex<double> characteristic_function(double u, double v, const CycleConfig& cfg);

struct CycleMoments {
    double mean_w;    // work done on the system per cycle
    double mean_qh;   // heat absorbed from the hot contact
    double mean_qc;   // = -mean_w - mean_qh (first law)
    double w_adi;     // adiabatic part of the output work
    double w_fric;    // frictional part, -mean_w = w_adi - w_fric
    double var_w;             // -d2 lnG/du2 at 0 by step-halved central differences
    double var_w_closed_form; // printed closed-form candidate, reported alongside
    double var_w_fd_spread;   // |FD(h) - FD(h/2)|, the FD uncertainty estimate
    double eta_th;    // -mean_w/mean_qh; NaN unless Engine
    double cop;       // mean_qc/mean_w;  NaN unless Refrigerator
    double power;     // -mean_w / tau_cycle
    double sigma_mean;  // entropy production per cycle, nats
    double cv_power;    // sqrt(var_w)/|mean_w|
    double tur_bound;   // csch(f(sigma_mean)); NaN if sigma_mean <= 0
    OperationMode mode;
};

CycleMoments cycle_moments(const CycleConfig& cfg);

// Thermodynamic efficiency -<w>/<q_h>. Throws std::domain_error outside
// engine mode, pointing at the coefficient of performance instead.
double efficiency(const CycleConfig& cfg);

// Closed-form efficiency 1 - wc/wh - (wc/wh)(phi-1)(n_h+n_c)/(n_h - phi n_c).
double efficiency_closed_form(const CycleConfig& cfg);

// Generalized Carnot ceiling 1 - beta_hot/beta_cold with the governing betas.
double generalized_carnot_efficiency(const CycleConfig& cfg);

// Lower bound csch[f(sigma)] on the coefficient of variation of power, where
// f inverts x*tanh(x). Throws std::domain_error for sigma_mean <= 0.
double tur_bound(double sigma_mean);
// f itself, exposed for tests of the inversion.
double inverse_x_tanh_x(double value);

// First moments and work variance extracted from central finite differences
// of ln G (the numeric route of the oracle triangle).
struct NumericMoments {
    double mean_w, mean_qh, var_w;
};
NumericMoments moments_from_characteristic_function(const CycleConfig& cfg);

}  // namespace qoe
