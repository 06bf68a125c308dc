#pragma once

#include <span>
#include <vector>

namespace nkcsim {

// Least-squares polynomial fit (normal equations, Gaussian elimination with
// partial pivoting). Coefficients are ascending powers. Degree is capped at
// 3: the replication figures smooth with "polynomial fit up to order 3".
struct PolyFit {
    std::vector<double> coeffs;
    double residual_norm = 0.0; // sqrt of the summed squared residuals
};

PolyFit fit_polynomial(std::span<const double> x, std::span<const double> y, int degree);

double poly_eval(std::span<const double> coeffs, double x);

struct ArgmaxResult {
    double x = 0.0;
    double y = 0.0;
};

// Maximizer of a polynomial of degree <= 3 over [lo, hi]: closed-form
// critical points of the derivative plus both endpoints. Ties resolve to
// the smallest x.
ArgmaxResult argmax_on_interval(std::span<const double> coeffs, double lo, double hi);

} // namespace nkcsim
