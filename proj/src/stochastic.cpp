#include "qoe/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "qoe/numerics.hpp"

namespace qoe {

namespace {

constexpr double kLeakTol = 1e-6;

VectorXd thermal_weights(double beta_omega, int dim) {
    VectorXd w(dim);
    const double q = std::exp(-beta_omega);
    double v = 1.0 - q;
    for (int n = 0; n < dim; ++n) {
        w(n) = v;
        v *= q;
    }
    return w;  // unnormalized over the cutoff on purpose: the tail is honest leak
}

// Accumulate sum_{n,i} X(n, i+b) Y(i, n+a) onto the (a, b) lattice via one
// outer product per (n, i) pair; rows of the block run over the Y column
// index, columns over the X column index.
Eigen::MatrixXd contract_lattice(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
    const int dim = X.rows();
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * dim - 1, 2 * dim - 1);
    for (int n = 0; n < dim; ++n)
        for (int i = 0; i < dim; ++i)
            G.block(dim - 1 - n, dim - 1 - i, dim, dim).noalias() +=
                Y.row(i).transpose() * X.row(n);
    return G;
}

JointWorkHeatDistribution assemble(const CycleConfig& cfg, const Eigen::MatrixXd& G,
                                   const GoverningBaths& g, CycleOrientation orientation,
                                   int dim) {
    JointWorkHeatDistribution d;
    d.orientation = orientation;
    d.omega_c = cfg.omega_c;
    d.omega_h = cfg.omega_h;
    d.beta_cold = g.beta_cold;
    d.beta_hot = g.beta_hot;
    double total = 0.0;
    for (int ia = 0; ia < G.rows(); ++ia)
        for (int ib = 0; ib < G.cols(); ++ib)
            if (G(ia, ib) > 0.0) {
                d.atoms.push_back({ia - (dim - 1), ib - (dim - 1), G(ia, ib)});
                total += G(ia, ib);
            }
    d.leak = 1.0 - total;
    if (d.leak > kLeakTol) {
        int need = std::max(required_fock_dim(g.beta_cold * cfg.omega_c),
                            required_fock_dim(g.beta_hot * cfg.omega_h)) + 16;
        throw std::domain_error("joint distribution leak " + std::to_string(d.leak) +
                                " above 1e-6; need dim >= " + std::to_string(std::max(need, 2 * dim)));
    }
    return d;
}

void check_matrix(const CycleConfig& cfg, const TransitionMatrix& compression) {
    // the compression matrix must describe this config's stroke
    if (compression.dim <= 0)
        throw std::invalid_argument("joint distribution: empty transition matrix");
    (void)cfg;
}

}  // namespace

JointWorkHeatDistribution build_joint_distribution(const CycleConfig& cfg,
                                                   const TransitionMatrix& compression) {
    check_matrix(cfg, compression);
    const GoverningBaths g = governing_baths(cfg);
    const int dim = compression.dim;
    const VectorXd pc = thermal_weights(g.beta_cold * cfg.omega_c, dim);
    const VectorXd ph = thermal_weights(g.beta_hot * cfg.omega_h, dim);

    // X(n, m) = P^c_n p_ch[n->m]; Y(i, j) = P^h_i p_hc[i->j] = P^h_i p_ch[j->i]
    Eigen::MatrixXd X = pc.asDiagonal() * compression.p;
    Eigen::MatrixXd Y = ph.asDiagonal() * compression.p.transpose();
    return assemble(cfg, contract_lattice(X, Y), g, CycleOrientation::Forward, dim);
}

JointWorkHeatDistribution build_reversed_distribution(const CycleConfig& cfg,
                                                      const TransitionMatrix& compression) {
    check_matrix(cfg, compression);
    const GoverningBaths g = governing_baths(cfg);
    const int dim = compression.dim;
    const VectorXd pc = thermal_weights(g.beta_cold * cfg.omega_c, dim);
    const VectorXd ph = thermal_weights(g.beta_hot * cfg.omega_h, dim);

    // clockwise: hot draw i -> expansion -> j, cold draw n -> compression -> m;
    // the lattice coordinates keep the same meaning, a = j - n, b = m - i
    Eigen::MatrixXd Xr = ph.asDiagonal() * compression.p.transpose();  // rows i, cols j
    Eigen::MatrixXd Yr = pc.asDiagonal() * compression.p;              // rows n, cols m
    return assemble(cfg, contract_lattice(Yr, Xr), g, CycleOrientation::Reversed, dim);
}

JointWorkHeatDistribution build_joint_distribution(const CycleConfig& cfg, int dim,
                                                   const PropagationOptions& opts) {
    auto tm = unitary_transition_matrix(
        compression_protocol(cfg.omega_c, cfg.omega_h, cfg.tau_dri), dim, opts);
    return build_joint_distribution(cfg, tm);
}

JointWorkHeatDistribution build_reversed_distribution(const CycleConfig& cfg, int dim,
                                                      const PropagationOptions& opts) {
    auto tm = unitary_transition_matrix(
        compression_protocol(cfg.omega_c, cfg.omega_h, cfg.tau_dri), dim, opts);
    return build_reversed_distribution(cfg, tm);
}

std::vector<std::pair<double, double>> entropy_production_distribution(
    const JointWorkHeatDistribution& dist) {
    std::vector<std::pair<double, double>> out;
    out.reserve(dist.atoms.size());
    for (const auto& at : dist.atoms) out.emplace_back(dist.entropy_production(at), at.prob);
    std::sort(out.begin(), out.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& [s, p] : out) {
        if (!merged.empty() && std::abs(s - merged.back().first) < 1e-9 * (1.0 + std::abs(s)))
            merged.back().second += p;
        else
            merged.emplace_back(s, p);
    }
    return merged;
}

DistributionMoments distribution_moments(const JointWorkHeatDistribution& dist) {
    DistributionMoments m{0, 0, 0, 0, 0, 0};
    double w2 = 0.0;
    for (const auto& at : dist.atoms) {
        const double w = dist.work(at), qh = dist.heat_hot(at), s = dist.entropy_production(at);
        m.mean_w += at.prob * w;
        m.mean_qh += at.prob * qh;
        w2 += at.prob * w * w;
        m.mean_sigma += at.prob * s;
        // p e^{-s} <= p_R of the partner atom, so the log-space form cannot overflow
        const double lp = std::log(at.prob) - s;
        if (lp > -745.0) m.exp_neg_sigma += std::exp(lp);
    }
    m.mean_qc = -m.mean_w - m.mean_qh;
    m.var_w = w2 - m.mean_w * m.mean_w;
    return m;
}

FluctuationTheoremCheck check_fluctuation_theorem(const JointWorkHeatDistribution& forward,
                                                  const JointWorkHeatDistribution& reversed,
                                                  double prob_floor) {
    auto key = [](int a, int b) {
        return (std::int64_t(a) << 32) ^ (std::int64_t(std::uint32_t(b)));
    };
    std::unordered_map<std::int64_t, double> rev;
    rev.reserve(reversed.atoms.size());
    for (const auto& at : reversed.atoms) rev[key(at.a, at.b)] = at.prob;

    FluctuationTheoremCheck c{0, 0.0, 0.0, 0.0};
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& at : forward.atoms) {
        if (at.prob <= prob_floor) continue;
        auto it = rev.find(key(-at.a, -at.b));
        if (it == rev.end() || it->second <= prob_floor) continue;
        const double sigma = forward.entropy_production(at);
        const double y = std::log(at.prob / it->second);
        c.max_abs_deviation = std::max(c.max_abs_deviation, std::abs(y - sigma));
        ++c.shared_atoms;
        const double w = at.prob;
        sw += w;
        sx += w * sigma;
        sy += w * y;
        sxx += w * sigma * sigma;
        sxy += w * sigma * y;
    }
    const double denom = sw * sxx - sx * sx;
    if (c.shared_atoms >= 2 && std::abs(denom) > 1e-300) {
        c.slope = (sw * sxy - sx * sy) / denom;
        c.intercept = (sy - c.slope * sx) / sw;
    }
    return c;
}

SampleStats sample_trajectories(const JointWorkHeatDistribution& dist, long n_samples,
                                std::uint64_t seed) {
    if (n_samples < 1)
        throw std::invalid_argument("sample_trajectories: n_samples must be >= 1");
    if (dist.atoms.empty())
        throw std::invalid_argument("sample_trajectories: empty distribution");

    std::vector<double> cdf(dist.atoms.size());
    double acc = 0.0;
    for (size_t i = 0; i < dist.atoms.size(); ++i) {
        acc += dist.atoms[i].prob;
        cdf[i] = acc;
    }
    std::mt19937_64 rng(seed);
    SampleStats st;
    st.n_samples = n_samples;
    st.counts.assign(dist.atoms.size(), 0);
    for (long k = 0; k < n_samples; ++k) {
        // 53-bit uniform in [0, 1), scaled into the retained mass
        const double u = double(rng() >> 11) * 0x1.0p-53 * acc;
        const size_t idx =
            std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        ++st.counts[std::min(idx, dist.atoms.size() - 1)];
    }
    double sw = 0, sqh = 0, sww = 0;
    for (size_t i = 0; i < dist.atoms.size(); ++i) {
        if (!st.counts[i]) continue;
        const double w = dist.work(dist.atoms[i]), qh = dist.heat_hot(dist.atoms[i]);
        sw += st.counts[i] * w;
        sqh += st.counts[i] * qh;
        sww += st.counts[i] * w * w;
    }
    st.mean_w = sw / n_samples;
    st.mean_qh = sqh / n_samples;
    const double denom = std::max<long>(n_samples - 1, 1);
    st.var_w = (sww - n_samples * st.mean_w * st.mean_w) / denom;
    double sqq = 0.0;
    for (size_t i = 0; i < dist.atoms.size(); ++i)
        if (st.counts[i]) {
            const double dq = dist.heat_hot(dist.atoms[i]) - st.mean_qh;
            sqq += st.counts[i] * dq * dq;
        }
    st.se_mean_w = std::sqrt(std::max(st.var_w, 0.0) / n_samples);
    st.se_mean_qh = std::sqrt(sqq / denom / n_samples);
    return st;
}

}  // namespace qoe
