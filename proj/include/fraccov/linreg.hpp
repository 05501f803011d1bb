#ifndef FRACCOV_LINREG_HPP
#define FRACCOV_LINREG_HPP

#include <cstddef>
#include <span>
#include <stdexcept>

namespace fraccov {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    int n = 0;
};

// Ordinary least squares of y against x. Throws if fewer than two points or
// if all x are identical (singular design).
inline LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("least_squares: size mismatch");
    const std::size_t n = x.size();
    if (n < 2)
        throw std::invalid_argument("least_squares: need at least 2 points");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0)
        throw std::invalid_argument("least_squares: singular design (all x equal)");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.n = static_cast<int>(n);
    if (syy <= 0.0) {
        fit.r_squared = 1.0; // constant y fitted exactly by a flat line
    } else {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - (fit.intercept + fit.slope * x[i]);
            ss_res += r * r;
        }
        double r2 = 1.0 - ss_res / syy;
        if (r2 < 0.0) r2 = 0.0;
        if (r2 > 1.0) r2 = 1.0;
        fit.r_squared = r2;
    }
    return fit;
}

} // namespace fraccov

#endif
