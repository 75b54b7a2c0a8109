#include "mixnorm/lab.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mixnorm/exponents.hpp"
#include "mixnorm/extremal.hpp"
#include "mixnorm/mixed_norm.hpp"
#include "mixnorm/specfun.hpp"

namespace mixnorm::lab {

namespace {

void validate_mp(int m, double p) {
    if (m < 2 || m > forms::max_extremal_arity)
        throw std::invalid_argument("lab: arity must lie in [2, " +
                                    std::to_string(forms::max_extremal_arity) + "]");
    if (std::isnan(p) || p < 2.0)
        throw std::invalid_argument("lab: p must be >= 2 or inf");
}

// Operator norm of the extremal form: exact engine at small arity, the
// closed form 2^(m-1) above it, cross-checked against the deterministic
// ascent start.
double extremal_norm(const forms::CoefficientTensor& form, int m, double p,
                     const norms::ExactNormOptions& options, std::string* source) {
    if (m <= 4) {
        *source = "exact-engine";
        return norms::exact_norm(form, p, options).value;
    }
    *source = "closed-form+ascent-check";
    const double closed = std::exp2(static_cast<double>(m - 1));
    std::vector<double> exps(static_cast<std::size_t>(m), infinite_exponent);
    exps[0] = p;
    const norms::NormCertificate cert =
        norms::ascent_norm(form, forms::SpaceSignature(std::move(exps)),
                           /*restarts=*/1, /*max_iters=*/50, /*tol=*/1e-12);
    if (std::abs(cert.value - closed) > 1e-6)
        throw std::runtime_error(
            "lab: ascent check failed to reproduce the closed-form norm at m = " +
            std::to_string(m));
    return closed;
}

}  // namespace

double ratio_certificate(int m, double p, const norms::ExactNormOptions& options) {
    validate_mp(m, p);
    const forms::CoefficientTensor form = forms::build_extremal(m);
    const forms::MixedNormScheme scheme({1, m - 1}, {conjugate_exponent(p), 2.0});
    const double numerator = forms::mixed_norm(form, scheme);
    std::string source;
    return numerator / extremal_norm(form, m, p, options, &source);
}

ConstantReport constant_report(int m, double p, const norms::ExactNormOptions& options) {
    validate_mp(m, p);
    const forms::CoefficientTensor form = forms::build_extremal(m);
    const forms::MixedNormScheme scheme({1, m - 1}, {conjugate_exponent(p), 2.0});

    ConstantReport report;
    report.m = m;
    report.p = p;
    const double numerator = forms::mixed_norm(form, scheme);
    report.lower_bound = numerator / extremal_norm(form, m, p, options, &report.norm_source);
    report.upper_bound =
        std::pow(specfun::khinchine_A(conjugate_exponent(p)), -(static_cast<double>(m) - 1.0));
    report.predicted = std::exp2((0.5 - exponent_reciprocal(p)) * (static_cast<double>(m) - 1.0));
    if (p == 2.0)
        report.regime = ConstantRegime::Trivial;
    else if (p < specfun::critical_p())
        report.regime = ConstantRegime::GapRegime;
    else
        report.regime = ConstantRegime::OptimalKnown;
    report.witness_form_dims = form.dims().front();
    return report;
}

SandwichBounds bilinear_sandwich(double p) {
    if (std::isnan(p) || p < specfun::critical_p() - 1e-12)
        throw std::domain_error("bilinear_sandwich: requires p >= p0/(p0-1)");
    SandwichBounds out{};
    const double recip = exponent_reciprocal(p);
    out.exponent = 4.0 / (3.0 - 2.0 * recip);  // 4p/(3p-2)
    out.lower = std::exp2(0.5 - recip);
    out.upper = std::exp2(0.5 - 0.5 * recip);

    // Re-derive the lower bound from the extremal bilinear form: the flat
    // lambda-sum of its coefficients over its norm must give the same base.
    const forms::CoefficientTensor t2 = forms::build_extremal(2);
    const double flat = forms::mixed_norm(t2, forms::MixedNormScheme({2}, {out.exponent}));
    const double norm = norms::exact_norm(t2, p).value;
    const double closed = std::pow(4.0, 1.0 / out.exponent) / 2.0;
    if (std::abs(flat / norm - out.lower) > 1e-12 || std::abs(closed - out.lower) > 1e-12)
        throw std::runtime_error("bilinear_sandwich: numerical identity check failed");
    return out;
}

std::vector<GapRow> gap_curve(int samples) {
    if (samples < 2)
        throw std::invalid_argument("gap_curve: needs at least 2 samples");
    const double lo = 2.0;
    const double hi = specfun::critical_p();
    std::vector<GapRow> rows;
    rows.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        GapRow row{};
        row.x = i == samples - 1
                    ? hi
                    : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        row.upper = 1.0 / specfun::khinchine_A(row.x / (row.x - 1.0));
        row.lower = std::exp2(0.5 - 1.0 / row.x);
        row.diff = row.upper - row.lower;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace mixnorm::lab
