#include "qoe/fock_dynamics.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>
#include <stdexcept>
#include <string>

#include "qoe/numerics.hpp"

namespace qoe {

namespace {
using std::complex;
const complex<double> kI(0.0, 1.0);
}  // namespace

double DrivingProtocol::omega_at(double t) const {
    return omega_start * omega_end * tau /
           ((omega_start - omega_end) * t + omega_end * tau);
}

DrivingProtocol compression_protocol(double omega_c, double omega_h, double tau) {
    return {omega_c, omega_h, tau, StrokeDirection::Compression};
}

DrivingProtocol expansion_protocol(double omega_c, double omega_h, double tau) {
    return {omega_h, omega_c, tau, StrokeDirection::Expansion};
}

MatrixXd oscillator_hamiltonian(double omega, double omega_ref, int dim) {
    MatrixXd H = MatrixXd::Zero(dim, dim);
    const double diag_c = (omega_ref * omega_ref + omega * omega) / (4.0 * omega_ref);
    const double off_c = (omega * omega - omega_ref * omega_ref) / (4.0 * omega_ref);
    for (int n = 0; n < dim; ++n) H(n, n) = diag_c * (2.0 * n + 1.0);
    for (int n = 0; n + 2 < dim; ++n) {
        double v = off_c * std::sqrt(double(n + 1) * double(n + 2));
        H(n, n + 2) = H(n + 2, n) = v;
    }
    return H;
}

double nonadiabatic_factor_analytic(double tau_dri, double omega_c, double omega_h) {
    require_finite(tau_dri, "tau_dri");
    if (tau_dri <= 0.0) throw std::invalid_argument("nonadiabatic factor: tau_dri must be > 0");
    if (omega_c <= 0.0 || omega_h <= 0.0 || omega_c == omega_h)
        throw std::invalid_argument("nonadiabatic factor: need distinct positive frequencies");
    const double L = std::log(omega_h / omega_c);
    const double root_zeta = 2.0 * tau_dri * omega_c * omega_h / (omega_h - omega_c);
    const double zeta = root_zeta * root_zeta;
    const double d = zeta - 1.0;
    if (std::abs(d) < 1e-6) {
        // series of [1 - cos(sqrt(d) L)]/d about d = 0
        const double L2 = L * L;
        return 1.0 + L2 / 2.0 - d * L2 * L2 / 24.0 + d * d * L2 * L2 * L2 / 720.0;
    }
    if (d > 0.0) return 1.0 + (1.0 - std::cos(std::sqrt(d) * L)) / d;
    return 1.0 + (std::cosh(std::sqrt(-d) * L) - 1.0) / (-d);
}

namespace {

// exp(-i H dt) for real symmetric H, via eigendecomposition
MatrixXcd hermitian_exp(const MatrixXd& H, double dt) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(H);
    const VectorXd& lam = es.eigenvalues();
    const MatrixXd& V = es.eigenvectors();
    Eigen::VectorXcd ph(lam.size());
    for (int k = 0; k < lam.size(); ++k) ph(k) = std::exp(-kI * lam(k) * dt);
    return V * ph.asDiagonal() * V.transpose();
}

// Time-ordered product of interval exponentials over [0, tau]. GaussCF4 uses a
// fourth-order commutator-free pair of exponentials per interval built from the
// two Gauss nodes; Midpoint is the plain second-order single exponential.
MatrixXcd propagate_unitary(const DrivingProtocol& pr, int dim_int, int steps,
                            PropagationOptions::Scheme scheme) {
    const double om_ref = std::sqrt(pr.omega_start * pr.omega_end);
    const double dt = pr.tau / steps;
    MatrixXcd U = MatrixXcd::Identity(dim_int, dim_int);
    if (scheme == PropagationOptions::Scheme::Midpoint) {
        for (int k = 0; k < steps; ++k) {
            double om = pr.omega_at((k + 0.5) * dt);
            U = hermitian_exp(oscillator_hamiltonian(om, om_ref, dim_int), dt) * U;
        }
        return U;
    }
    const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
    const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
    const double wa = 0.25 + std::sqrt(3.0) / 6.0;
    const double wb = 0.25 - std::sqrt(3.0) / 6.0;
    for (int k = 0; k < steps; ++k) {
        const double t0 = k * dt;
        MatrixXd H1 = oscillator_hamiltonian(pr.omega_at(t0 + c1 * dt), om_ref, dim_int);
        MatrixXd H2 = oscillator_hamiltonian(pr.omega_at(t0 + c2 * dt), om_ref, dim_int);
        MatrixXd B1 = wa * H1 + wb * H2;
        MatrixXd B2 = wb * H1 + wa * H2;
        U = hermitian_exp(B2, dt) * (hermitian_exp(B1, dt) * U);
    }
    return U;
}

struct EigBasis {
    VectorXd lam;
    MatrixXd V;
};

EigBasis instantaneous_basis(double omega, double om_ref, int dim_int) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(oscillator_hamiltonian(omega, om_ref, dim_int));
    return {es.eigenvalues(), es.eigenvectors()};
}

// Energy amplification of a thermal probe at beta*omega_start = probe_beta_omega:
//   sum_n P_n <n|U^dag H(omega_end) U|n> / (omega_end/omega_start sum_n P_n eps_n)
double probe_phi(const MatrixXcd& U, const EigBasis& start_basis, const MatrixXd& H_end,
                 const DrivingProtocol& pr, double probe_beta_omega, int dim_int) {
    const double q = std::exp(-probe_beta_omega);
    int nkeep = std::min(dim_int / 2, int(std::ceil(39.0 / probe_beta_omega)) + 1);
    double e_fin = 0.0, e_ini = 0.0, norm = 0.0;
    for (int n = 0; n < nkeep; ++n) {
        const double pn = (1.0 - q) * std::pow(q, n);
        Eigen::VectorXcd psi = U * start_basis.V.col(n);
        e_fin += pn * (psi.adjoint() * (H_end * psi))(0).real();
        e_ini += pn * (n + 0.5) * pr.omega_start;
        norm += pn;
    }
    e_fin /= norm;
    e_ini /= norm;
    return e_fin / (pr.omega_end * e_ini / pr.omega_start);
}

int default_initial_steps(const DrivingProtocol& pr) {
    const double om_max = std::max(pr.omega_start, pr.omega_end);
    int n = int(std::ceil(2.0 * pr.tau * om_max));
    return std::max(64, n);
}

void validate_protocol(const DrivingProtocol& pr) {
    if (pr.tau <= 0.0 || pr.omega_start <= 0.0 || pr.omega_end <= 0.0 ||
        pr.omega_start == pr.omega_end)
        throw std::invalid_argument("driving protocol: need tau > 0 and distinct positive endpoint frequencies");
}

struct ConvergedPropagation {
    MatrixXcd U;
    int steps;
    double phi;
};

ConvergedPropagation propagate_converged(const DrivingProtocol& pr, int dim_int,
                                         const PropagationOptions& opts) {
    const double om_ref = std::sqrt(pr.omega_start * pr.omega_end);
    EigBasis start = instantaneous_basis(pr.omega_start, om_ref, dim_int);
    MatrixXd H_end = oscillator_hamiltonian(pr.omega_end, om_ref, dim_int);

    if (opts.fixed_steps > 0) {
        MatrixXcd U = propagate_unitary(pr, dim_int, opts.fixed_steps, opts.scheme);
        double phi = probe_phi(U, start, H_end, pr, opts.probe_beta_omega, dim_int);
        return {std::move(U), opts.fixed_steps, phi};
    }

    int n = opts.initial_steps > 0 ? opts.initial_steps : default_initial_steps(pr);
    MatrixXcd U = propagate_unitary(pr, dim_int, n, opts.scheme);
    double phi = probe_phi(U, start, H_end, pr, opts.probe_beta_omega, dim_int);
    while (true) {
        if (2 * n > opts.max_steps)
            throw std::runtime_error("propagation did not converge within the step budget (phi change " +
                                     std::to_string(opts.phi_tol) + " not reached)");
        n *= 2;
        MatrixXcd U2 = propagate_unitary(pr, dim_int, n, opts.scheme);
        double phi2 = probe_phi(U2, start, H_end, pr, opts.probe_beta_omega, dim_int);
        if (std::abs(phi2 - phi) < opts.phi_tol) return {std::move(U2), n, phi2};
        U = std::move(U2);
        phi = phi2;
    }
}

}  // namespace

TransitionMatrix unitary_transition_matrix(const DrivingProtocol& protocol, int dim,
                                           const PropagationOptions& opts) {
    validate_protocol(protocol);
    if (dim < 4) throw std::invalid_argument("unitary_transition_matrix: dim too small");
    const int dim_int = std::max(dim, opts.pad_factor * dim);
    const double om_ref = std::sqrt(protocol.omega_start * protocol.omega_end);

    auto conv = propagate_converged(protocol, dim_int, opts);
    EigBasis start = instantaneous_basis(protocol.omega_start, om_ref, dim_int);
    EigBasis end = instantaneous_basis(protocol.omega_end, om_ref, dim_int);

    // truncated-basis sanity inside the trusted band
    for (int k = 0; k <= dim - opts.guard && k < dim; ++k) {
        if (std::abs(end.lam(k) - (k + 0.5) * protocol.omega_end) > 0.01 * protocol.omega_end ||
            std::abs(start.lam(k) - (k + 0.5) * protocol.omega_start) > 0.01 * protocol.omega_start)
            throw std::runtime_error("unitary_transition_matrix: internal basis truncation corrupts level " +
                                     std::to_string(k) + "; increase pad_factor");
    }

    MatrixXcd amp = end.V.transpose() * conv.U * start.V;  // amp(m, n) = <m_end|U|n_start>
    MatrixXd p_full = amp.cwiseAbs2();

    TransitionMatrix tm;
    tm.p = p_full.topLeftCorner(dim, dim).transpose();  // row n -> column m
    tm.row_leak = VectorXd::Ones(dim) - tm.p.rowwise().sum();
    // mass sitting in the top guard band of the internal space: the unitary
    // conserves norm exactly, so boundary population is the real signature of
    // an active cutoff
    const int band = std::max(2, opts.guard / 2);
    tm.row_loss = VectorXd::Zero(dim);
    for (int n = 0; n < dim; ++n)
        tm.row_loss(n) = p_full.col(n).tail(band).sum();
    tm.dim = dim;
    tm.guard = opts.guard;
    tm.internal_dim = dim_int;
    tm.steps = conv.steps;
    tm.phi_probe = conv.phi;

    int worst = -1;
    double worst_loss = opts.row_loss_tol;
    for (int n = 0; n <= dim - opts.guard && n < dim; ++n) {
        if (tm.row_loss(n) > worst_loss) {
            worst_loss = tm.row_loss(n);
            worst = n;
        }
    }
    if (worst >= 0)
        throw std::runtime_error("unitary_transition_matrix: trusted-band row " + std::to_string(worst) +
                                 " loses " + std::to_string(worst_loss) +
                                 " probability to the cutoff; increase dim or pad_factor");
    return tm;
}

double nonadiabatic_factor_numeric(double tau_dri, double omega_c, double omega_h,
                                   int dim, const PropagationOptions& opts) {
    DrivingProtocol pr = compression_protocol(omega_c, omega_h, tau_dri);
    validate_protocol(pr);
    const int dim_int = std::max(dim, opts.pad_factor * dim);
    return propagate_converged(pr, dim_int, opts).phi;
}

// ---------------- Lindblad relaxation ----------------

namespace {

// unit-prefactor generator: r1 D[a^dag] + r2 D[a]
void apply_generator(const MatrixXcd& rho, double r1, double r2,
                     const std::vector<double>& sq, MatrixXcd& out) {
    const int N = rho.rows();
    out.resize(N, N);
    for (int m = 0; m < N; ++m) {
        for (int n = 0; n < N; ++n) {
            complex<double> v = -0.5 * (r1 * double(n + m + 2) + r2 * double(n + m)) * rho(n, m);
            if (n >= 1 && m >= 1) v += r1 * sq[n] * sq[m] * rho(n - 1, m - 1);
            if (n + 1 < N && m + 1 < N) v += r2 * sq[n + 1] * sq[m + 1] * rho(n + 1, m + 1);
            out(n, m) = v;
        }
    }
}

}  // namespace

int required_fock_dim(double beta_eff_omega) {
    if (beta_eff_omega <= 0.0)
        throw std::domain_error("required_fock_dim: beta_eff*omega must be > 0");
    if (std::isinf(beta_eff_omega)) return 1;
    return int(std::ceil(-std::log(1e-12) / beta_eff_omega));
}

MatrixXcd thermal_fock_state(double beta_omega, int dim) {
    const double q = std::exp(-beta_omega);
    Eigen::VectorXd w(dim);
    for (int n = 0; n < dim; ++n) w(n) = std::pow(q, n);
    w /= w.sum();
    MatrixXcd rho = MatrixXcd::Zero(dim, dim);
    rho.diagonal() = w.cast<complex<double>>();
    return rho;
}

double trace_distance(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd d = a - b;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (d + d.adjoint()));
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

SteadyStateResult lindblad_steady_state(const EffectiveReservoir& res, double gamma_tau,
                                        int dim, const LindbladOptions& opts) {
    return lindblad_steady_state(res.r1, res.r2, gamma_tau, dim, opts);
}

SteadyStateResult lindblad_steady_state(double r1, double r2, double gamma_tau, int dim,
                                        const LindbladOptions& opts) {
    if (r1 < 0.0 || r2 <= 0.0 || !(r1 < r2))
        throw std::domain_error("lindblad_steady_state: need 0 <= r1 < r2");
    if (gamma_tau <= 0.0)
        throw std::invalid_argument("lindblad_steady_state: gamma_tau must be > 0");
    if (dim < 2) throw std::invalid_argument("lindblad_steady_state: dim too small");
    const double beta_eff_omega = r1 > 0.0 ? std::log(r2 / r1)
                                           : std::numeric_limits<double>::infinity();
    const int need = required_fock_dim(beta_eff_omega);
    if (dim < need)
        throw std::domain_error("lindblad_steady_state: fock cutoff dim = " + std::to_string(dim) +
                                " leaves thermal tail above 1e-12; need dim >= " + std::to_string(need));

    MatrixXcd rho;
    if (opts.initial_state.size() > 0) {
        if (opts.initial_state.rows() != dim || opts.initial_state.cols() != dim)
            throw std::invalid_argument("lindblad_steady_state: initial state has the wrong shape");
        rho = opts.initial_state;
    } else {
        // generic initial state with populations and all coherence sectors occupied
        Eigen::VectorXcd psi(dim);
        for (int n = 0; n < dim; ++n) psi(n) = std::pow(0.5, n);
        psi /= psi.norm();
        rho = psi * psi.adjoint();
    }

    // Dormand-Prince 5(4)
    static const double A[7][6] = {
        {0, 0, 0, 0, 0, 0},
        {1.0 / 5, 0, 0, 0, 0, 0},
        {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
        {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
        {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static const double B5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192,
                                 -2187.0 / 6784, 11.0 / 84, 0};
    static const double B4[7] = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    std::vector<double> sq(dim + 1);
    for (int n = 0; n <= dim; ++n) sq[n] = std::sqrt(double(n));

    const double pref = gamma_tau * gamma_tau;
    // stability cap: the generator is non-normal, so stay well inside the
    // eigenvalue-based explicit-scheme boundary
    double h_cap = 2.5 / (pref * (r1 + r2) * (2.0 * dim + 2.0));
    double h = h_cap / 50.0;
    SteadyStateResult res;
    res.max_trace_drift = 0.0;
    res.max_hermiticity_violation = 0.0;
    res.min_eigenvalue = 0.0;
    MatrixXcd k[7], work, cand, err;

    apply_generator(rho, r1, r2, sq, k[0]);
    double residual = k[0].norm();
    // the discrete step map has its own fixed point with residual ~ h^4;
    // when the residual stalls above the target, shrink the cap
    const int stall_window = 200;
    double stall_reference = residual;
    long accepted = 0;
    long attempts = 0;
    while (residual >= opts.residual_tol) {
        if (++attempts > opts.max_steps)
            throw std::runtime_error("lindblad_steady_state: no convergence within step budget "
                                     "(residual " + std::to_string(residual) + ")");
        // k[0] holds L1(rho); stage derivatives include the physical prefactor
        for (int s = 1; s < 7; ++s) {
            work = rho;
            for (int j = 0; j < s; ++j)
                if (A[s][j] != 0.0) work += (h * pref * A[s][j]) * k[j];
            apply_generator(work, r1, r2, sq, k[s]);
        }
        cand = rho;
        err.setZero(rho.rows(), rho.cols());
        for (int s = 0; s < 7; ++s) {
            if (B5[s] != 0.0) cand += (h * pref * B5[s]) * k[s];
            double db = B5[s] - B4[s];
            if (db != 0.0) err += (h * pref * db) * k[s];
        }
        double scale = opts.abs_tol + opts.rel_tol * rho.norm();
        double e = err.norm() / scale;
        if (e <= 1.0) {
            rho = cand;
            ++accepted;
            res.max_trace_drift = std::max(res.max_trace_drift, std::abs(rho.trace().real() - 1.0));
            res.max_hermiticity_violation =
                std::max(res.max_hermiticity_violation, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
            if (opts.eig_check_stride > 0 && accepted % opts.eig_check_stride == 0) {
                Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
                res.min_eigenvalue = std::min(res.min_eigenvalue, es.eigenvalues().minCoeff());
            }
            apply_generator(rho, r1, r2, sq, k[0]);
            residual = k[0].norm();
            if (accepted % stall_window == 0) {
                if (residual > 0.5 * stall_reference) h_cap *= 0.5;
                stall_reference = residual;
            }
        }
        double fac = 0.9 * std::pow(std::max(e, 1e-10), -0.2);
        h *= std::min(5.0, std::max(0.2, fac));
        h = std::min(h, h_cap);
    }

    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    res.min_eigenvalue = std::min(res.min_eigenvalue, es.eigenvalues().minCoeff());
    res.rho = std::move(rho);
    res.residual = residual;
    res.steps = accepted;
    return res;
}

MatrixXcd lindblad_steady_state_nullspace(double r1, double r2, int dim) {
    if (dim > 32)
        throw std::invalid_argument("lindblad_steady_state_nullspace: dense kernel solve is "
                                    "limited to dim <= 32");
    if (r1 < 0.0 || !(r1 < r2))
        throw std::domain_error("lindblad_steady_state_nullspace: need 0 <= r1 < r2");
    const int D = dim * dim;
    // vec(rho) column-major; L real since all couplings are real
    MatrixXd L = MatrixXd::Zero(D, D);
    auto idx = [dim](int n, int m) { return n + dim * m; };
    for (int n = 0; n < dim; ++n) {
        for (int m = 0; m < dim; ++m) {
            const int row = idx(n, m);
            if (n >= 1 && m >= 1)
                L(row, idx(n - 1, m - 1)) += r1 * std::sqrt(double(n) * double(m));
            if (n + 1 < dim && m + 1 < dim)
                L(row, idx(n + 1, m + 1)) += r2 * std::sqrt(double(n + 1) * double(m + 1));
            L(row, idx(n, m)) -= 0.5 * (r1 * double(n + m + 2) + r2 * double(n + m));
        }
    }
    Eigen::BDCSVD<MatrixXd> svd(L, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(D - 1) > 1e-10 * sv(0))
        throw std::runtime_error("lindblad_steady_state_nullspace: kernel not found");
    if (D >= 2 && sv(D - 2) < 1e-8 * sv(0))
        throw std::runtime_error("lindblad_steady_state_nullspace: kernel not one-dimensional");
    Eigen::VectorXd v = svd.matrixV().col(D - 1);
    MatrixXd rho = Eigen::Map<MatrixXd>(v.data(), dim, dim);
    rho = 0.5 * (rho + rho.transpose());
    rho /= rho.trace();
    return rho.cast<complex<double>>();
}

}  // namespace qoe
