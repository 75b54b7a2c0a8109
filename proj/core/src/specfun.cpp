#include "mixnorm/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mixnorm::specfun {

namespace {

constexpr double sqrt_pi_half = 0.88622692545275801364908374167057;  // sqrt(pi)/2

// Bracket for the p0 bisection. The defining equation has a second root at
// q = 2; on [1.70, 1.95] the argument (q+1)/2 stays in [1.35, 1.475], which
// contains only the intended root.
constexpr double p0_bracket_lo = 1.70;
constexpr double p0_bracket_hi = 1.95;

double bisect_p0(double tolerance) {
    auto residual = [](double q) { return gamma((q + 1.0) / 2.0) - sqrt_pi_half; };
    double lo = p0_bracket_lo;
    double hi = p0_bracket_hi;
    const double f_lo = residual(lo);
    for (int iter = 0; iter < 200 && hi - lo > tolerance; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) * f_lo > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// p0 at full double resolution for internal consumers.
double p0_cached() {
    static const double value = bisect_p0(1e-13);
    return value;
}

}  // namespace

double gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("gamma: argument must be positive");
    // Lanczos, g = 7, nine coefficients.
    static constexpr double coeff[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // Reflection keeps the approximation on its accurate range.
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
    }
    const double z = x - 1.0;
    double series = coeff[0];
    for (int k = 1; k < 9; ++k)
        series += coeff[k] / (z + k);
    const double base = z + 7.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(base, z + 0.5) *
           std::exp(-base) * series;
}

double find_p0(double tolerance) {
    if (!(tolerance > 0.0) || tolerance > 1e-3)
        throw std::invalid_argument("find_p0: tolerance must lie in (0, 1e-3]");
    return bisect_p0(tolerance);
}

double critical_p() {
    const double p0 = p0_cached();
    return p0 / (p0 - 1.0);
}

KhinchineRegime khinchine_regime(double q) {
    if (!(q >= 1.0) || !(q <= 2.0))
        throw std::domain_error("khinchine_regime: q must lie in [1, 2]");
    return {q, q <= p0_cached() ? Regime::ClosedPower : Regime::GammaFormula};
}

double khinchine_A(double q) {
    const KhinchineRegime regime = khinchine_regime(q);
    if (regime.regime == Regime::ClosedPower)
        return std::exp2(0.5 - 1.0 / q);
    return std::numbers::sqrt2 *
           std::pow(gamma((q + 1.0) / 2.0) / std::sqrt(std::numbers::pi), 1.0 / q);
}

}  // namespace mixnorm::specfun
