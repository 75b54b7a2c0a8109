#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mixnorm/exponents.hpp"
#include "mixnorm/lab.hpp"
#include "mixnorm/specfun.hpp"

using namespace mixnorm;

TEST_CASE("ratio certificates match the closed form") {
    CHECK(lab::ratio_certificate(2, 4.0) ==
          doctest::Approx(std::exp2(0.25)).epsilon(1e-12));
    for (int m = 2; m <= 4; ++m) {
        CHECK(lab::ratio_certificate(m, infinite_exponent) ==
              doctest::Approx(std::exp2((m - 1) / 2.0)).epsilon(1e-12));
        CHECK(lab::ratio_certificate(m, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("ratio certificate switches to the checked closed form at m = 5") {
    CHECK(lab::ratio_certificate(5, 3.0) ==
          doctest::Approx(std::exp2(4.0 * (0.5 - 1.0 / 3.0))).epsilon(1e-9));
}

TEST_CASE("ratio certificate validates inputs") {
    CHECK_THROWS_AS(lab::ratio_certificate(1, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(lab::ratio_certificate(13, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(lab::ratio_certificate(3, 1.5), std::invalid_argument);
}

TEST_CASE("constant report in the optimal regime") {
    const auto report = lab::constant_report(3, 3.0);
    const double expected = std::exp2(1.0 / 3.0);
    CHECK(report.regime == lab::ConstantRegime::OptimalKnown);
    CHECK(report.lower_bound == doctest::Approx(expected).epsilon(1e-9));
    CHECK(report.upper_bound == doctest::Approx(expected).epsilon(1e-9));
    CHECK(report.predicted == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(report.lower_bound - report.upper_bound) <= 1e-6);
    CHECK(report.witness_form_dims == 4);
    CHECK(report.norm_source == "exact-engine");
}

TEST_CASE("constant report at p = 2 is trivial") {
    for (int m : {2, 3}) {
        const auto report = lab::constant_report(m, 2.0);
        CHECK(report.regime == lab::ConstantRegime::Trivial);
        CHECK(report.lower_bound == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(report.upper_bound == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(report.predicted == 1.0);
    }
}

TEST_CASE("constant report at p = inf recovers the sup-norm constants") {
    const auto report = lab::constant_report(2, infinite_exponent);
    CHECK(report.regime == lab::ConstantRegime::OptimalKnown);
    CHECK(report.lower_bound == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
    CHECK(report.upper_bound == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("constant report in the gap regime") {
    for (int m : {2, 3}) {
        const auto report = lab::constant_report(m, 2.1);
        CHECK(report.regime == lab::ConstantRegime::GapRegime);
        // prediction remains a certified lower bound
        CHECK(report.predicted <= report.lower_bound + 1e-9);
        CHECK(report.lower_bound <= report.upper_bound + 1e-9);
        // the bases differ by at most the gap-curve maximum, per factor
        const double per_factor_lower = std::pow(report.lower_bound, 1.0 / (m - 1));
        const double per_factor_upper = std::pow(report.upper_bound, 1.0 / (m - 1));
        CHECK(per_factor_upper - per_factor_lower <= 4e-4 + 1e-12);
        // exponential growth persists
        CHECK(report.upper_bound / report.lower_bound <=
              std::pow(1.0 + 4e-4 / std::exp2(0.5 - 1.0 / 2.1), m - 1) + 1e-12);
    }
}

TEST_CASE("bilinear sandwich bounds") {
    {
        const auto bounds = lab::bilinear_sandwich(infinite_exponent);
        CHECK(bounds.lower == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
        CHECK(bounds.upper == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
        CHECK(bounds.exponent == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    }
    {
        const auto bounds = lab::bilinear_sandwich(4.0);
        CHECK(bounds.lower == doctest::Approx(std::exp2(0.25)).epsilon(1e-15));
        CHECK(bounds.upper == doctest::Approx(std::exp2(0.375)).epsilon(1e-15));
        CHECK(bounds.exponent == doctest::Approx(1.6).epsilon(1e-15));
        CHECK(bounds.lower <= bounds.upper);
    }
    CHECK_THROWS_AS(lab::bilinear_sandwich(2.1), std::domain_error);
}

TEST_CASE("sandwich identity holds over sampled p") {
    for (double p : {2.2, 2.5, 3.0, 5.0, 25.0}) {
        const auto bounds = lab::bilinear_sandwich(p);
        const double closed = std::pow(4.0, (3.0 * p - 2.0) / (4.0 * p)) / 2.0;
        CHECK(std::abs(closed - std::exp2(0.5 - 1.0 / p)) <= 1e-12);
        CHECK(bounds.lower == doctest::Approx(std::exp2(0.5 - 1.0 / p)).epsilon(1e-15));
    }
}

TEST_CASE("gap curve endpoints vanish and interior stays inside the claim") {
    const auto rows = lab::gap_curve(2001);
    CHECK(rows.size() == 2001);
    CHECK(rows.front().x == 2.0);
    CHECK(rows.back().x == doctest::Approx(specfun::critical_p()).epsilon(1e-15));
    CHECK(std::abs(rows.front().diff) <= 1e-9);
    CHECK(std::abs(rows.back().diff) <= 1e-9);

    double max_diff = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        CHECK(row.diff >= -1e-12);
        CHECK(row.diff == doctest::Approx(row.upper - row.lower).epsilon(1e-15));
        if (i > 0 && i + 1 < rows.size())
            CHECK(row.diff > 0.0);
        max_diff = std::max(max_diff, row.diff);
    }
    CHECK(max_diff > 0.0);
    CHECK(max_diff <= 4e-4);
    // frozen against a 40-digit evaluation of the same grid shape
    CHECK(max_diff == doctest::Approx(3.715e-4).epsilon(2e-3));
}

TEST_CASE("gap curve grid is uniform and validated") {
    const auto rows = lab::gap_curve(5);
    const double step = rows[1].x - rows[0].x;
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].x - rows[i - 1].x == doctest::Approx(step).epsilon(1e-9));
    CHECK_THROWS_AS(lab::gap_curve(1), std::invalid_argument);
}
