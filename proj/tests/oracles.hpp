// Brute-force reference computations used only by the tests. Everything here
// works on explicitly assembled matrices so it stays independent of the
// closed forms in the library.
#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace oracle {

using Eigen::Matrix2d;
using Eigen::Matrix4d;
using Eigen::Vector4d;

// Two-atom XY Hamiltonian in the product basis {gg, ge, eg, ee}.
inline Matrix4d pair_hamiltonian(double omega, double xi) {
    Matrix4d H = Matrix4d::Zero();
    H(0, 0) = -omega;
    H(3, 3) = omega;
    H(1, 2) = H(2, 1) = xi;
    return H;
}

// Thermal state by numerically exponentiating the 4x4 Hamiltonian.
inline Matrix4d pair_thermal_matrix(double beta, double omega, double xi) {
    Eigen::SelfAdjointEigenSolver<Matrix4d> es(pair_hamiltonian(omega, xi));
    Vector4d w = (-beta * es.eigenvalues().array()).exp();
    Matrix4d rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
    return rho / rho.trace();
}

// Wootters concurrence from the eigenvalues of rho (sy x sy) rho* (sy x sy).
inline double concurrence_wootters(const Matrix4d& rho) {
    Matrix4d yy = Matrix4d::Zero();
    yy(0, 3) = yy(3, 0) = -1.0;
    yy(1, 2) = yy(2, 1) = 1.0;
    Matrix4d R = rho * yy * rho * yy;  // rho real, so rho* = rho
    Eigen::EigenSolver<Matrix4d> es(R);
    Eigen::Vector4d lam = es.eigenvalues().real().cwiseMax(0.0).cwiseSqrt();
    std::sort(lam.data(), lam.data() + 4, std::greater<double>());
    return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

inline double entropy_bits(const Eigen::VectorXd& probs) {
    double s = 0.0;
    for (int i = 0; i < probs.size(); ++i)
        if (probs(i) > 1e-300) s -= probs(i) * std::log2(probs(i));
    return s;
}

inline double vn_entropy_bits(const Eigen::MatrixXd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho);
    return entropy_bits(es.eigenvalues().cwiseMax(0.0));
}

inline Matrix2d partial_trace_atom1(const Matrix4d& rho) {
    Matrix2d r;
    r(0, 0) = rho(0, 0) + rho(1, 1);
    r(0, 1) = rho(0, 2) + rho(1, 3);
    r(1, 0) = rho(2, 0) + rho(3, 1);
    r(1, 1) = rho(2, 2) + rho(3, 3);
    return r;
}

inline Matrix2d partial_trace_atom2(const Matrix4d& rho) {
    Matrix2d r;
    r(0, 0) = rho(0, 0) + rho(2, 2);
    r(0, 1) = rho(0, 1) + rho(2, 3);
    r(1, 0) = rho(1, 0) + rho(3, 2);
    r(1, 1) = rho(1, 1) + rho(3, 3);
    return r;
}

// Classical correlations J(theta) evaluated on the explicit 4x4 matrix with
// projective measurements {cos t |g> - sin t |e>, -sin t |g> - cos t |e>} on
// atom 2.
inline double classical_correlations_matrix(const Matrix4d& rho, double theta) {
    Eigen::Vector2d b1(std::cos(theta), -std::sin(theta));
    Eigen::Vector2d b2(-std::sin(theta), -std::cos(theta));
    const double s1 = vn_entropy_bits(partial_trace_atom1(rho));
    double cond = 0.0;
    for (const auto& b : {b1, b2}) {
        Matrix2d proj = b * b.transpose();
        // I (x) proj in the {gg, ge, eg, ee} ordering: atom 1 slow, atom 2 fast
        Matrix4d P = Matrix4d::Zero();
        for (int i1 = 0; i1 < 2; ++i1)
            for (int j1 = 0; j1 < 2; ++j1)
                for (int i2 = 0; i2 < 2; ++i2)
                    for (int j2 = 0; j2 < 2; ++j2)
                        P(2 * i1 + i2, 2 * j1 + j2) = (i1 == j1 ? proj(i2, j2) : 0.0);
        Matrix4d post = P * rho * P;
        double pk = post.trace();
        if (pk < 1e-300) continue;
        Matrix2d cond_state = partial_trace_atom1(post) / pk;
        cond += pk * vn_entropy_bits(cond_state);
    }
    return s1 - cond;
}

// Discord from first principles: I(rho) - sup_theta J(theta) on a fine grid
// with local refinement.
inline double discord_from_definition(const Matrix4d& rho, int grid = 721) {
    const double s1 = vn_entropy_bits(partial_trace_atom1(rho));
    const double s2 = vn_entropy_bits(partial_trace_atom2(rho));
    const double s12 = vn_entropy_bits(rho);
    const double mutual = s1 + s2 - s12;
    double best = -1.0, best_t = 0.0;
    const double hi = 1.5707963267948966;
    for (int i = 0; i < grid; ++i) {
        double t = hi * i / (grid - 1);
        double j = classical_correlations_matrix(rho, t);
        if (j > best) {
            best = j;
            best_t = t;
        }
    }
    // parabolic-free refinement: ternary search around the grid optimum
    double lo = std::max(0.0, best_t - hi / (grid - 1));
    double up = std::min(hi, best_t + hi / (grid - 1));
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (up - lo) / 3.0, m2 = up - (up - lo) / 3.0;
        if (classical_correlations_matrix(rho, m1) < classical_correlations_matrix(rho, m2))
            lo = m1;
        else
            up = m2;
    }
    best = std::max(best, classical_correlations_matrix(rho, 0.5 * (lo + up)));
    return mutual - best;
}

}  // namespace oracle
