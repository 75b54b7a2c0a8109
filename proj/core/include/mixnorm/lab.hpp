#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixnorm/norms.hpp"

namespace mixnorm::lab {

enum class ConstantRegime {
    OptimalKnown,  // p >= p0/(p0-1): lower and upper bounds coincide
    GapRegime,     // 2 < p < p0/(p0-1): bases differ by at most ~4e-4
    Trivial,       // p = 2: the constant is 1
};

/// Bounds for the optimal constant of the mixed Littlewood-type inequality
/// at (m, p), with the closed-form prediction (2^(1/2-1/p))^(m-1).
struct ConstantReport {
    int m = 0;
    double p = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    double predicted = 0.0;
    ConstantRegime regime = ConstantRegime::Trivial;
    std::int64_t witness_form_dims = 0;    // slot dimension of the witness form
    std::string norm_source;               // "exact-engine" or "closed-form+ascent-check"
};

/// Ratio of the mixed norm of the extremal m-linear form (partition
/// (1, m-1), exponents (p/(p-1), 2)) to its operator norm. The norm comes
/// from the exact engine for m <= 4; for m >= 5 the closed form 2^(m-1)
/// is used after an ascent consistency check from the deterministic
/// witness start. Equals (2^(1/2-1/p))^(m-1) for every p in [2, inf].
double ratio_certificate(int m, double p,
                         const norms::ExactNormOptions& options = {});

ConstantReport constant_report(int m, double p,
                               const norms::ExactNormOptions& options = {});

struct SandwichBounds {
    double lower;     // 2^(1/2 - 1/p)
    double upper;     // 2^(1/2 - 1/(2p))
    double exponent;  // 4p/(3p - 2)
};

/// Lower/upper bounds for the sharp bilinear constant on l_p x c0 at the
/// critical exponent 4p/(3p-2), for p >= critical_p(). The lower bound is
/// re-derived numerically from the extremal bilinear form: the flat sum
/// (sum |T2|^lambda)^(1/lambda) over its norm must match 2^(1/2-1/p) to
/// 1e-12, and an inconsistency throws std::runtime_error. At p = inf both
/// bounds equal sqrt(2).
SandwichBounds bilinear_sandwich(double p);

struct GapRow {
    double x;
    double upper;  // 1 / A_{x/(x-1)}
    double lower;  // 2^(1/2 - 1/x)
    double diff;   // upper - lower
};

/// Uniform grid of `samples` points on [2, critical_p()], endpoints
/// included, comparing the closed-form lower base with the Khinchine upper
/// base. diff vanishes at both endpoints and stays below 4e-4 in between.
std::vector<GapRow> gap_curve(int samples);

}  // namespace mixnorm::lab
