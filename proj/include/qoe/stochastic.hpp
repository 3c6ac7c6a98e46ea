#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qoe/cycle.hpp"
#include "qoe/fock_dynamics.hpp"

namespace qoe {

enum class CycleOrientation { Forward, Reversed };

// Discrete joint distribution of total work and hot-isochore heat over one
// cycle. Atoms live on the integer lattice (a, b) with
//   w = a*omega_c + b*omega_h,   q_h = -b*omega_h,
// which aggregates exactly (no float-keyed binning); w and q_h are derived at
// read time. leak is the probability mass lost to the Fock cutoff.
struct JointWorkHeatDistribution {
    struct Atom {
        int a, b;
        double prob;
    };
    std::vector<Atom> atoms;  // ordered by (a, b)
    double leak;
    CycleOrientation orientation;
    double omega_c, omega_h;
    double beta_cold, beta_hot;  // governing inverse temperatures

    double work(const Atom& at) const { return at.a * omega_c + at.b * omega_h; }
    double heat_hot(const Atom& at) const { return -at.b * omega_h; }
    // sigma = (beta_cold - beta_hot) q_h + beta_cold w, on the lattice
    double entropy_production(const Atom& at) const {
        return at.a * beta_cold * omega_c + at.b * beta_hot * omega_h;
    }
};

// Counterclockwise (engine) cycle: cold thermal draw, compression, hot
// steady-state draw, expansion. The expansion transition matrix is the exact
// transpose of the compression one (micro-reversibility, asserted in the
// dynamics tests), so a single propagated stroke feeds both.
JointWorkHeatDistribution build_joint_distribution(const CycleConfig& cfg,
                                                   const TransitionMatrix& compression);
JointWorkHeatDistribution build_joint_distribution(const CycleConfig& cfg, int dim,
                                                   const PropagationOptions& opts = {});

// Clockwise cycle: hot draw, expansion, cold draw, compression.
JointWorkHeatDistribution build_reversed_distribution(const CycleConfig& cfg,
                                                      const TransitionMatrix& compression);
JointWorkHeatDistribution build_reversed_distribution(const CycleConfig& cfg, int dim,
                                                      const PropagationOptions& opts = {});

// Map atoms to entropy production and re-bin by sigma value (ascending).
std::vector<std::pair<double, double>> entropy_production_distribution(
    const JointWorkHeatDistribution& dist);

struct DistributionMoments {
    double mean_w, mean_qh, mean_qc, var_w;
    double mean_sigma;
    double exp_neg_sigma;  // integral fluctuation theorem functional
};
DistributionMoments distribution_moments(const JointWorkHeatDistribution& dist);

// Pointwise detailed fluctuation theorem ln[p(sigma)/p_R(-sigma)] = sigma on
// the shared lattice support with both probabilities above prob_floor, plus a
// p-weighted linear regression of the log-ratio on sigma.
struct FluctuationTheoremCheck {
    int shared_atoms;
    double max_abs_deviation;
    double slope, intercept;
};
FluctuationTheoremCheck check_fluctuation_theorem(const JointWorkHeatDistribution& forward,
                                                  const JointWorkHeatDistribution& reversed,
                                                  double prob_floor = 1e-12);

// Inverse-CDF sampling over the atom list with a fixed-seed mt19937_64;
// bit-reproducible for a given (distribution, n_samples, seed).
struct SampleStats {
    long n_samples;
    double mean_w, mean_qh, var_w;
    double se_mean_w, se_mean_qh;         // standard errors of the means
    std::vector<long> counts;             // per atom, aligned with dist.atoms
};
SampleStats sample_trajectories(const JointWorkHeatDistribution& dist, long n_samples,
                                std::uint64_t seed);

}  // namespace qoe
