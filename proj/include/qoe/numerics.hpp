#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace qoe {

inline constexpr double kLn2 = 0.6931471805599453094;

// x*ln(x) with the 0*ln(0) = 0 convention.
inline double xlogx(double x) {
    return x > 0.0 ? x * std::log(x) : 0.0;
}

// Binary Shannon entropy in bits.
inline double binary_entropy_bits(double p) {
    return -(xlogx(p) + xlogx(1.0 - p)) / kLn2;
}

inline void require_finite(double x, const char* name) {
    if (!std::isfinite(x))
        throw std::invalid_argument(std::string(name) + " must be finite");
}

// Maximize a unimodal function on [a, b] by golden-section search.
// Returns (argmax, max). xtol is the absolute tolerance on the argument.
std::pair<double, double> golden_section_max(const std::function<double(double)>& f,
                                             double a, double b, double xtol);

// Solve f(x) = target for increasing f on [lo, hi] by bisection, stopping when
// |f(x) - target| < ytol. Throws if the bracket does not straddle the target.
double bisect_increasing(const std::function<double(double)>& f,
                         double lo, double hi, double target, double ytol,
                         int max_iter = 400);

}  // namespace qoe
