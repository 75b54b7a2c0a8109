#pragma once

namespace mixnorm::specfun {

/// Real Gamma function for x > 0 (Lanczos approximation, g = 7, fixed
/// double-precision coefficients). Relative error stays below 1e-12 on
/// [0.5, 10]. Throws std::domain_error for x <= 0; poles and the negative
/// axis are not supported.
double gamma(double x);

/// The root p0 ~ 1.84742 of Gamma((p+1)/2) = sqrt(pi)/2 in (1, 2).
///
/// q = 2 also solves the equation (Gamma(3/2) = sqrt(pi)/2), so the
/// bisection runs on the fixed bracket [1.70, 1.95], which contains the
/// root below 2 and excludes 2. `tolerance` bounds the width of the final
/// bracket; it must lie in (0, 1e-3].
double find_p0(double tolerance);

/// Conjugate exponent p0/(p0-1) ~ 2.18006 of the root above.
double critical_p();

enum class Regime { ClosedPower, GammaFormula };

/// Which of Haagerup's two formulas governs A_q at a given q in [1, 2].
struct KhinchineRegime {
    double q;
    Regime regime;
};

KhinchineRegime khinchine_regime(double q);

/// Best lower Khinchine constant A_q for real scalars, 1 <= q <= 2:
/// 2^(1/2 - 1/q) for q <= p0, sqrt(2) * (Gamma((q+1)/2)/sqrt(pi))^(1/q)
/// for p0 < q <= 2. The branches agree at p0 and both equal 1 at q = 2.
/// Throws std::domain_error outside [1, 2].
double khinchine_A(double q);

}  // namespace mixnorm::specfun
