#include "qoe/cycle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qoe/fock_dynamics.hpp"
#include "qoe/numerics.hpp"
#include "qoe/reservoir.hpp"

namespace qoe {

namespace {
using std::complex;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kModeEps = 1e-12;
}  // namespace

void CycleConfig::validate() const {
    require_finite(omega_c, "omega_c");
    require_finite(omega_h, "omega_h");
    require_finite(beta_c, "beta_c");
    require_finite(beta_h, "beta_h");
    require_finite(xi, "xi");
    require_finite(tau_dri, "tau_dri");
    if (!(omega_h > omega_c) || omega_c <= 0.0)
        throw std::invalid_argument("cycle config: need omega_h > omega_c > 0");
    if (!(beta_c > beta_h) || beta_h <= 0.0)
        throw std::invalid_argument("cycle config: need beta_c > beta_h > 0");
    if (tau_dri <= 0.0) throw std::invalid_argument("cycle config: need tau_dri > 0");
    if (xi < 0.0) throw std::invalid_argument("cycle config: need xi >= 0");
}

const char* to_string(OperationMode m) {
    switch (m) {
        case OperationMode::Engine: return "engine";
        case OperationMode::Refrigerator: return "refrigerator";
        case OperationMode::Heater: return "heater";
        case OperationMode::Boundary: return "boundary";
    }
    return "?";
}

GoverningBaths governing_baths(const CycleConfig& cfg) {
    cfg.validate();
    GoverningBaths g;
    if (cfg.variant == CycleVariant::HotNonthermal) {
        auto hot = effective_reservoir(
            {ReservoirKind::CorrelatedPairOneAtom, cfg.beta_h, cfg.omega_h, cfg.xi});
        g.beta_hot = hot.beta_eff;
        g.beta_cold = cfg.beta_c;
        g.n_hot = hot.n_occ;
        g.n_cold = 0.5 / std::tanh(0.5 * cfg.beta_c * cfg.omega_c);
    } else {
        auto cold = effective_reservoir(
            {ReservoirKind::CorrelatedPairTwoAtoms, cfg.beta_c, cfg.omega_c, cfg.xi});
        g.beta_cold = cold.beta_eff;
        g.beta_hot = cfg.beta_h;
        g.n_cold = cold.n_occ;
        g.n_hot = 0.5 / std::tanh(0.5 * cfg.beta_h * cfg.omega_h);
    }
    g.phi = nonadiabatic_factor_analytic(cfg.tau_dri, cfg.omega_c, cfg.omega_h);
    g.r_phi = (1.0 - g.phi) / (1.0 + g.phi);
    return g;
}

namespace {

complex<double> stroke_factor(double x, complex<double> arg_u, complex<double> arg_v,
                              double phi) {
    // 2 sinh(x/2) / sqrt[(1+phi)cosh(arg_u) - (phi-1)cosh(arg_v) - 2]
    complex<double> radicand =
        (1.0 + phi) * std::cosh(arg_u) - (phi - 1.0) * std::cosh(arg_v) - 2.0;
    if (radicand.real() <= 0.0)
        throw std::domain_error("characteristic_function: branch cut crossed, "
                                "(u, v) outside the evaluation region");
    return 2.0 * std::sinh(0.5 * x) / std::sqrt(radicand);
}

complex<double> cf_impl(double u, double v, const CycleConfig& cfg, const GoverningBaths& g) {
    const complex<double> I(0.0, 1.0);
    const double xc = g.beta_cold * cfg.omega_c;
    const double xh = g.beta_hot * cfg.omega_h;
    const double u0 = u * (cfg.omega_c - cfg.omega_h) + v * cfg.omega_h;
    const double v0 = u * (cfg.omega_c + cfg.omega_h) - v * cfg.omega_h;
    complex<double> gc = stroke_factor(xc, xc - I * u0, xc - I * v0, g.phi);
    complex<double> gh = stroke_factor(xh, xh + I * u0, xh - I * v0, g.phi);
    return gc * gh;
}

double mean_work(const CycleConfig& c, const GoverningBaths& g) {
    return c.omega_h * (g.phi * g.n_cold - g.n_hot) + c.omega_c * (g.phi * g.n_hot - g.n_cold);
}

double mean_heat_hot(const CycleConfig& c, const GoverningBaths& g) {
    return c.omega_h * (g.n_hot - g.phi * g.n_cold);
}

double var_work_closed_form(const CycleConfig& c, const GoverningBaths& g) {
    const double nc2 = g.n_cold * g.n_cold, nh2 = g.n_hot * g.n_hot;
    const double p2 = 2.0 * g.phi * g.phi - 1.0;
    return c.omega_h * c.omega_h * (-0.5 + p2 * nc2 + nh2) +
           c.omega_c * c.omega_c * (-0.5 + nc2 + p2 * nh2) +
           c.omega_h * c.omega_c * g.phi * (1.0 - 2.0 * nc2 - 2.0 * nh2);
}

// -d2 Re ln G/du2 at (0,0), 4th-order stencil
double var_fd_once(const CycleConfig& cfg, const GoverningBaths& g, double h) {
    auto f = [&](double u) { return std::log(cf_impl(u, 0.0, cfg, g)).real(); };
    return -(-f(2 * h) + 16 * f(h) - 30 * f(0) + 16 * f(-h) - f(-2 * h)) / (12 * h * h);
}

}  // namespace

std::complex<double> characteristic_function(double u, double v, const CycleConfig& cfg) {
    require_finite(u, "u");
    require_finite(v, "v");
    return cf_impl(u, v, cfg, governing_baths(cfg));
}

double inverse_x_tanh_x(double value) {
    if (value <= 0.0) throw std::domain_error("inverse_x_tanh_x: value must be > 0");
    double lo = 0.0, hi = std::max(value, 1.0) + 2.0;
    // Newton from a safe start, bisection fallback
    double y = std::max(std::sqrt(value), value);
    for (int it = 0; it < 100; ++it) {
        double t = std::tanh(y);
        double fy = y * t - value;
        if (std::abs(fy) < 1e-14 * (1.0 + value)) return y;
        (fy < 0.0 ? lo : hi) = y;
        double dy = fy / (t + y * (1.0 - t * t));
        y -= dy;
        if (!(y > lo && y < hi)) y = 0.5 * (lo + hi);
    }
    return y;
}

double tur_bound(double sigma_mean) {
    if (!(sigma_mean > 0.0))
        throw std::domain_error("tur_bound: sigma_mean must be > 0");
    return 1.0 / std::sinh(inverse_x_tanh_x(sigma_mean));
}

CycleMoments cycle_moments(const CycleConfig& cfg) {
    const GoverningBaths g = governing_baths(cfg);
    CycleMoments m;
    m.mean_w = mean_work(cfg, g);
    m.mean_qh = mean_heat_hot(cfg, g);
    m.mean_qc = -m.mean_w - m.mean_qh;
    m.w_adi = (cfg.omega_h - cfg.omega_c) * (g.n_hot - g.n_cold);
    m.w_fric = (g.phi - 1.0) * (cfg.omega_h * g.n_cold + cfg.omega_c * g.n_hot);

    // step chosen against the double-precision rounding floor of the second
    // difference; truncation stays negligible for the cumulant sizes here
    const double h = 1e-3 / std::max(cfg.omega_h, 1.0);
    const double v_h = var_fd_once(cfg, g, h);
    const double v_h2 = var_fd_once(cfg, g, 0.5 * h);
    m.var_w = v_h2;
    m.var_w_fd_spread = std::abs(v_h - v_h2);
    m.var_w_closed_form = var_work_closed_form(cfg, g);

    m.sigma_mean = -g.beta_hot * m.mean_qh - g.beta_cold * m.mean_qc;
    m.power = -m.mean_w / cfg.tau_cycle();

    const double w_out = -m.mean_w;
    if (std::abs(w_out) < kModeEps || std::abs(m.mean_qh) < kModeEps ||
        std::abs(m.mean_qc) < kModeEps)
        m.mode = OperationMode::Boundary;
    else if (w_out > 0.0 && m.mean_qh > 0.0 && m.mean_qc < 0.0)
        m.mode = OperationMode::Engine;
    else if (w_out < 0.0 && m.mean_qh < 0.0 && m.mean_qc > 0.0)
        m.mode = OperationMode::Refrigerator;
    else
        m.mode = OperationMode::Heater;

    m.eta_th = m.mode == OperationMode::Engine ? w_out / m.mean_qh : kNaN;
    m.cop = m.mode == OperationMode::Refrigerator ? m.mean_qc / m.mean_w : kNaN;
    m.cv_power = m.mode == OperationMode::Boundary ? kNaN : std::sqrt(m.var_w) / std::abs(m.mean_w);
    m.tur_bound = m.sigma_mean > 0.0 ? qoe::tur_bound(m.sigma_mean) : kNaN;
    return m;
}

double efficiency(const CycleConfig& cfg) {
    CycleMoments m = cycle_moments(cfg);
    if (m.mode != OperationMode::Engine)
        throw std::domain_error(std::string("efficiency: cycle operates as ") + to_string(m.mode) +
                                ", not an engine; for a refrigerator use the coefficient of "
                                "performance <q_c>/<w> instead");
    return m.eta_th;
}

double efficiency_closed_form(const CycleConfig& cfg) {
    const GoverningBaths g = governing_baths(cfg);
    const double ratio = cfg.omega_c / cfg.omega_h;
    return 1.0 - ratio -
           ratio * (g.phi - 1.0) * (g.n_hot + g.n_cold) / (g.n_hot - g.phi * g.n_cold);
}

double generalized_carnot_efficiency(const CycleConfig& cfg) {
    const GoverningBaths g = governing_baths(cfg);
    return 1.0 - g.beta_hot / g.beta_cold;
}

NumericMoments moments_from_characteristic_function(const CycleConfig& cfg) {
    const GoverningBaths g = governing_baths(cfg);
    const double h = 1e-3 / std::max(cfg.omega_h, 1.0);
    auto lnG_u = [&](double u) { return std::log(cf_impl(u, 0.0, cfg, g)); };
    auto lnG_v = [&](double v) { return std::log(cf_impl(0.0, v, cfg, g)); };
    auto d1 = [](auto f, double hh) {
        return (f(-2 * hh) - 8.0 * f(-hh) + 8.0 * f(hh) - f(2 * hh)) / (12.0 * hh);
    };
    NumericMoments n;
    // G = <e^{-iuw - ivq}>, so <w> = i d lnG/du at 0
    n.mean_w = (complex<double>(0, 1) * d1(lnG_u, h)).real();
    n.mean_qh = (complex<double>(0, 1) * d1(lnG_v, h)).real();
    n.var_w = var_fd_once(cfg, g, 0.5 * h);
    return n;
}

}  // namespace qoe
