#include "qoe/reservoir.hpp"

#include <cmath>
#include <stdexcept>

#include "qoe/correlations.hpp"
#include "qoe/numerics.hpp"

namespace qoe {

double EffectiveReservoir::bose_occupation() const {
    return 1.0 / std::expm1(beta_eff * omega);
}

double EffectiveReservoir::beta_eff_detailed_balance() const {
    return -std::log(r1 / r2) / omega;
}

EffectiveReservoir effective_reservoir(const ReservoirSpec& spec) {
    require_finite(spec.beta, "beta");
    require_finite(spec.omega, "omega");
    require_finite(spec.xi, "xi");
    if (spec.beta <= 0.0 || spec.omega <= 0.0)
        throw std::invalid_argument("effective_reservoir: beta and omega must be > 0");
    if (spec.kind == ReservoirKind::ThermalBoson && spec.xi != 0.0)
        throw std::invalid_argument("effective_reservoir: ThermalBoson requires xi = 0");
    if (spec.beta * spec.omega > 600.0 || spec.beta * spec.xi > 600.0)
        throw std::invalid_argument("effective_reservoir: beta*omega or beta*xi too large");

    EffectiveReservoir r;
    r.omega = spec.omega;
    const double bw = spec.beta * spec.omega;

    switch (spec.kind) {
        case ReservoirKind::ThermalBoson: {
            const double nb = 1.0 / std::expm1(bw);
            r.r1 = nb / (2.0 * nb + 1.0);
            r.r2 = (nb + 1.0) / (2.0 * nb + 1.0);
            r.beta_eff = spec.beta;
            break;
        }
        case ReservoirKind::CorrelatedPairOneAtom: {
            const auto s = thermal_state(spec.beta, spec.omega, spec.xi);
            r.r1 = s.rho_e + s.rho_d;
            r.r2 = s.rho_g + s.rho_d;
            const double ch = std::cosh(spec.beta * spec.xi);
            r.beta_eff = spec.beta -
                         std::log((1.0 + std::exp(bw) * ch) / (std::exp(bw) + ch)) / spec.omega;
            break;
        }
        case ReservoirKind::CorrelatedPairTwoAtoms: {
            const auto s = thermal_state(spec.beta, spec.omega, spec.xi);
            r.r1 = s.rho_e + s.rho_d + s.rho_nd;
            r.r2 = s.rho_g + s.rho_d + s.rho_nd;
            r.beta_eff = spec.beta -
                         std::log((1.0 + std::exp(spec.beta * (spec.omega - spec.xi))) /
                                  (std::exp(bw) + std::exp(-spec.beta * spec.xi))) /
                             spec.omega;
            break;
        }
    }

    if (!(r.r1 < r.r2) || r.r1 <= 0.0)
        throw std::domain_error("effective_reservoir: population inversion (r1 >= r2), "
                                "no positive effective temperature");
    r.n_occ = 0.5 / std::tanh(0.5 * r.beta_eff * spec.omega);
    return r;
}

}  // namespace qoe
