#pragma once

namespace qoe {

// What drives an isochore: a bosonic thermal bath, or a beam of thermally
// correlated atom pairs with one or both partners crossing the cavity.
enum class ReservoirKind { ThermalBoson, CorrelatedPairOneAtom, CorrelatedPairTwoAtoms };

struct ReservoirSpec {
    ReservoirKind kind;
    double beta;     // pair / bath inverse temperature
    double omega;    // cavity frequency during the contact
    double xi = 0.0; // pair coupling; must be 0 for ThermalBoson
};

// Emission/absorption arrival weights and the effective inverse temperature
// they impose on the cavity through detailed balance, r1/r2 = e^{-beta_eff*omega}.
struct EffectiveReservoir {
    double r1;        // emission-side weight (excited arrivals)
    double r2;        // absorption-side weight (ground arrivals), r2 > r1
    double beta_eff;  // closed-form effective inverse temperature
    double n_occ;     // coth(beta_eff*omega/2)/2, includes the zero-point 1/2
    double omega;

    // Bose occupation without the zero-point term, 1/(e^{beta_eff*omega}-1).
    double bose_occupation() const;
    // Detailed-balance route -ln(r1/r2)/omega; equals beta_eff up to rounding.
    double beta_eff_detailed_balance() const;
};

// Map a reservoir spec to its arrival rates and effective temperature.
//   one atom  : r1 = rho_e + rho_d,          r2 = rho_g + rho_d
//   two atoms : r1 = rho_e + rho_d + rho_nd, r2 = rho_g + rho_d + rho_nd
//   thermal   : Bose ratio, beta_eff = beta
// Throws std::domain_error on population inversion (r1 >= r2).
EffectiveReservoir effective_reservoir(const ReservoirSpec& spec);

}  // namespace qoe
