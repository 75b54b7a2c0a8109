#pragma once

#include <cstdint>
#include <vector>

namespace mixnorm::forms {

/// Per-slot domain exponents of an m-linear form; each entry is >= 2 or
/// infinite_exponent (the c0 / sup-norm slot).
struct SpaceSignature {
    std::vector<double> exponents;

    explicit SpaceSignature(std::vector<double> exps);
};

/// Block partition (n1, ..., nk) of the m slots plus outer exponents
/// (q1, ..., qk). Block j groups n_j consecutive slots; q_j must be finite
/// and positive.
struct MixedNormScheme {
    std::vector<int> partition;
    std::vector<double> outer_exponents;

    MixedNormScheme(std::vector<int> part, std::vector<double> exps);
};

enum class AdmissibilityViolation {
    None,
    ExponentReciprocalSum,  // sum 1/p_i outside [0, 1/2]
    OuterExponentRange,     // some q_j outside [1/(1 - sum 1/p_i), 2]
    ExponentSumBound,       // sum 1/q_j > (k+1)/2 - sum 1/p_i
};

struct AdmissibilityCheck {
    bool admissible;
    AdmissibilityViolation violation;
    double p_reciprocal_sum;   // sum 1/p_i (1/inf = 0)
    double outer_floor;        // 1/(1 - sum 1/p_i)
    double q_reciprocal_sum;   // sum 1/q_j
    double q_reciprocal_bound; // (k+1)/2 - sum 1/p_i
};

/// Checks the three admissibility conditions for a blocked mixed-norm
/// inequality on l_{p1} x ... x l_{pm}:
///   (1) 0 <= 1/p1 + ... + 1/pm <= 1/2,
///   (2) every q_j in [1/(1 - (1/p1 + ... + 1/pm)), 2],
///   (3) 1/q1 + ... + 1/qk <= (k+1)/2 - (1/p1 + ... + 1/pm).
/// Comparisons carry a 1e-12 absolute slack so that exact equality cases
/// evaluate as admissible. The first violated condition is reported.
AdmissibilityCheck check_admissible(const SpaceSignature& space,
                                    const MixedNormScheme& scheme);

bool admissible(const SpaceSignature& space, const MixedNormScheme& scheme);

enum class HLRegime { FirstRegime, SecondRegime };

/// Critical bilinear summability exponents for forms on l_p x l_q:
/// pq/(pq-p-q) in the regime 1/2 < 1/p + 1/q < 1 and 4pq/(3pq-2p-2q) in
/// the regime 1/p + 1/q <= 1/2; mixed_lambda is the outer exponent of the
/// unified mixed formulation (same closed form as first_regime).
struct HLExponents {
    double first_regime;
    double second_regime;
    double mixed_lambda;
    HLRegime applicable;
};

/// Both exponent values for p, q >= 2 (1/inf = 0), plus which regime
/// applies. Throws std::domain_error when p = q = 2 (degenerate
/// denominator of the first-regime formula).
HLExponents hl_exponents(double p, double q);

}  // namespace mixnorm::forms
