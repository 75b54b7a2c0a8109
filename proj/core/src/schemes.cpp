#include "mixnorm/schemes.hpp"

#include <cmath>
#include <stdexcept>

#include "mixnorm/exponents.hpp"

namespace mixnorm::forms {

namespace {
constexpr double comparison_slack = 1e-12;
}

SpaceSignature::SpaceSignature(std::vector<double> exps) : exponents(std::move(exps)) {
    if (exponents.empty())
        throw std::invalid_argument("space signature: needs at least one exponent");
    for (double p : exponents)
        if (std::isnan(p) || p < 2.0)
            throw std::invalid_argument("space signature: exponents must be >= 2 or inf");
}

MixedNormScheme::MixedNormScheme(std::vector<int> part, std::vector<double> exps)
    : partition(std::move(part)), outer_exponents(std::move(exps)) {
    if (partition.empty() || partition.size() != outer_exponents.size())
        throw std::invalid_argument(
            "mixed-norm scheme: partition and exponent lists must be nonempty and equal length");
    for (int n : partition)
        if (n < 1)
            throw std::invalid_argument("mixed-norm scheme: block sizes must be positive");
    for (double q : outer_exponents)
        if (!(q > 0.0) || is_infinite_exponent(q))
            throw std::invalid_argument(
                "mixed-norm scheme: outer exponents must be finite and positive");
}

AdmissibilityCheck check_admissible(const SpaceSignature& space,
                                    const MixedNormScheme& scheme) {
    AdmissibilityCheck out{};
    double p_sum = 0.0;
    for (double p : space.exponents)
        p_sum += exponent_reciprocal(p);
    const std::size_t k = scheme.partition.size();
    out.p_reciprocal_sum = p_sum;
    out.outer_floor = 1.0 / (1.0 - p_sum);
    double q_sum = 0.0;
    for (double q : scheme.outer_exponents)
        q_sum += 1.0 / q;
    out.q_reciprocal_sum = q_sum;
    out.q_reciprocal_bound = (static_cast<double>(k) + 1.0) / 2.0 - p_sum;

    out.admissible = false;
    if (p_sum > 0.5 + comparison_slack) {
        out.violation = AdmissibilityViolation::ExponentReciprocalSum;
        return out;
    }
    for (double q : scheme.outer_exponents) {
        if (q < out.outer_floor - comparison_slack || q > 2.0 + comparison_slack) {
            out.violation = AdmissibilityViolation::OuterExponentRange;
            return out;
        }
    }
    if (q_sum > out.q_reciprocal_bound + comparison_slack) {
        out.violation = AdmissibilityViolation::ExponentSumBound;
        return out;
    }
    out.admissible = true;
    out.violation = AdmissibilityViolation::None;
    return out;
}

bool admissible(const SpaceSignature& space, const MixedNormScheme& scheme) {
    return check_admissible(space, scheme).admissible;
}

HLExponents hl_exponents(double p, double q) {
    if (std::isnan(p) || std::isnan(q) || p < 2.0 || q < 2.0)
        throw std::invalid_argument("hl_exponents: p and q must be >= 2 or inf");
    const double s = exponent_reciprocal(p) + exponent_reciprocal(q);
    if (s >= 1.0)
        throw std::domain_error("hl_exponents: degenerate denominator at p = q = 2");
    HLExponents out{};
    out.first_regime = 1.0 / (1.0 - s);       // pq/(pq - p - q)
    out.second_regime = 4.0 / (3.0 - 2.0 * s);  // 4pq/(3pq - 2p - 2q)
    out.mixed_lambda = out.first_regime;
    out.applicable = s <= 0.5 ? HLRegime::SecondRegime : HLRegime::FirstRegime;
    return out;
}

}  // namespace mixnorm::forms
