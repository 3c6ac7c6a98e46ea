#include "qoe/numerics.hpp"

#include <cmath>

namespace qoe {

std::pair<double, double> golden_section_max(const std::function<double(double)>& f,
                                             double a, double b, double xtol) {
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

double bisect_increasing(const std::function<double(double)>& f,
                         double lo, double hi, double target, double ytol,
                         int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (target < flo - ytol || target > fhi + ytol)
        throw std::domain_error("bisect_increasing: target outside bracket");
    for (int it = 0; it < max_iter; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (std::abs(fm - target) < ytol) return mid;
        (fm < target ? lo : hi) = mid;
        if (hi - lo < 1e-15 * (1.0 + std::abs(mid))) return mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace qoe
