#include "nkcsim/polyfit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "nkcsim/error.hpp"

namespace nkcsim {

double poly_eval(std::span<const double> coeffs, double x) {
    double y = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        y = y * x + coeffs[i];
    }
    return y;
}

PolyFit fit_polynomial(std::span<const double> x, std::span<const double> y, int degree) {
    if (degree < 0 || degree > 3) {
        throw SimError(ErrorCode::InvalidInput,
                       "fit degree must be between 0 and 3 (got " +
                           std::to_string(degree) + ")");
    }
    if (x.size() != y.size()) {
        throw SimError(ErrorCode::InvalidInput, "x and y must have equal length");
    }
    const std::size_t m = static_cast<std::size_t>(degree) + 1;
    std::set<double> distinct(x.begin(), x.end());
    if (x.size() < m || distinct.size() < m) {
        throw SimError(ErrorCode::RankDeficient,
                       "need at least degree+1 points with distinct x for a degree " +
                           std::to_string(degree) + " fit");
    }

    // Normal equations A c = b with A[i][j] = sum x^(i+j), b[i] = sum y x^i.
    double moments[7] = {0};
    double rhs[4] = {0};
    for (std::size_t p = 0; p < x.size(); ++p) {
        double xp = 1.0;
        for (std::size_t i = 0; i < 2 * m - 1; ++i) {
            moments[i] += xp;
            if (i < m) rhs[i] += y[p] * xp;
            xp *= x[p];
        }
    }
    double a[4][5];
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) a[i][j] = moments[i + j];
        a[i][m] = rhs[i];
    }

    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < m; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        if (std::fabs(a[pivot][col]) < 1e-12 * std::max(1.0, std::fabs(moments[0]))) {
            throw SimError(ErrorCode::RankDeficient,
                           "normal equations are rank deficient");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j <= m; ++j) std::swap(a[pivot][j], a[col][j]);
        }
        for (std::size_t r = col + 1; r < m; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t j = col; j <= m; ++j) a[r][j] -= f * a[col][j];
        }
    }

    PolyFit fit;
    fit.coeffs.assign(m, 0.0);
    for (std::size_t i = m; i-- > 0;) {
        double acc = a[i][m];
        for (std::size_t j = i + 1; j < m; ++j) acc -= a[i][j] * fit.coeffs[j];
        fit.coeffs[i] = acc / a[i][i];
    }

    double ss = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p) {
        const double r = y[p] - poly_eval(fit.coeffs, x[p]);
        ss += r * r;
    }
    fit.residual_norm = std::sqrt(ss);
    return fit;
}

ArgmaxResult argmax_on_interval(std::span<const double> coeffs, double lo, double hi) {
    if (coeffs.empty() || coeffs.size() > 4) {
        throw SimError(ErrorCode::InvalidInput,
                       "argmax supports polynomials of degree 0 to 3");
    }
    if (!(lo < hi)) {
        throw SimError(ErrorCode::InvalidInput, "interval requires lo < hi");
    }

    double candidates[4] = {lo, hi, 0.0, 0.0};
    std::size_t count = 2;

    // Critical points of the derivative c1 + 2*c2 x + 3*c3 x^2.
    const double c1 = coeffs.size() > 1 ? coeffs[1] : 0.0;
    const double c2 = coeffs.size() > 2 ? coeffs[2] : 0.0;
    const double c3 = coeffs.size() > 3 ? coeffs[3] : 0.0;
    if (c3 != 0.0) {
        const double disc = 4.0 * c2 * c2 - 12.0 * c3 * c1;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            candidates[count++] = (-2.0 * c2 + s) / (6.0 * c3);
            candidates[count++] = (-2.0 * c2 - s) / (6.0 * c3);
        }
    } else if (c2 != 0.0) {
        candidates[count++] = -c1 / (2.0 * c2);
    }

    ArgmaxResult best{lo, poly_eval(coeffs, lo)};
    for (std::size_t i = 0; i < count; ++i) {
        const double x = candidates[i];
        if (x < lo || x > hi) continue;
        const double y = poly_eval(coeffs, x);
        if (y > best.y || (y == best.y && x < best.x)) {
            best = {x, y};
        }
    }
    return best;
}

} // namespace nkcsim
