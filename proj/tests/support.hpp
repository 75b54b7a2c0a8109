#pragma once

// Shared test utilities: independent oracles and seeded instance
// generators. Nothing here may call into the engine internals it checks.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mixnorm/exponents.hpp"
#include "mixnorm/tensor.hpp"

namespace testsupport {

// High-precision Gamma reference, independent of the library's Lanczos path.
inline long double reference_gamma(long double x) {
    return tgammal(x);
}

// Operator norm on l_p x c0 x ... x c0 by naive full enumeration: every
// sign vector of every sup-norm slot (no Gray code, no symmetry pinning),
// each with a fresh contraction through CoefficientTensor::entry.
inline double naive_exact_norm(const mixnorm::forms::CoefficientTensor& form, double p) {
    const auto& dims = form.dims();
    const int m = form.arity();
    const double pstar = mixnorm::conjugate_exponent(p);

    int sign_bits = 0;
    for (int j = 1; j < m; ++j)
        sign_bits += static_cast<int>(dims[static_cast<std::size_t>(j)]);

    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sign_bits); ++mask) {
        std::vector<std::vector<double>> signs(static_cast<std::size_t>(m));
        int bit = 0;
        for (int j = 1; j < m; ++j) {
            auto& s = signs[static_cast<std::size_t>(j)];
            s.resize(static_cast<std::size_t>(dims[static_cast<std::size_t>(j)]));
            for (auto& v : s)
                v = (mask >> bit++) & 1 ? -1.0 : 1.0;
        }
        std::vector<double> c(static_cast<std::size_t>(dims[0]), 0.0);
        std::vector<std::int64_t> index(static_cast<std::size_t>(m), 1);
        bool done = false;
        while (!done) {
            double term = form.entry(index);
            if (term != 0.0) {
                for (int j = 1; j < m; ++j)
                    term *= signs[static_cast<std::size_t>(j)]
                                 [static_cast<std::size_t>(index[static_cast<std::size_t>(j)] - 1)];
                c[static_cast<std::size_t>(index[0] - 1)] += term;
            }
            done = true;
            for (std::size_t j = index.size(); j-- > 0;) {
                if (++index[j] <= dims[j]) {
                    done = false;
                    break;
                }
                index[j] = 1;
            }
        }
        double sum = 0.0;
        for (double v : c)
            sum += std::pow(std::abs(v), pstar);
        best = std::max(best, std::pow(sum, 1.0 / pstar));
    }
    return best;
}

inline mixnorm::forms::CoefficientTensor random_tensor(std::mt19937_64& rng, int max_arity,
                                                       std::int64_t max_dim,
                                                       double zero_probability = 0.2) {
    std::uniform_int_distribution<int> arity_dist(1, max_arity);
    std::uniform_int_distribution<std::int64_t> dim_dist(1, max_dim);
    std::uniform_real_distribution<double> value_dist(-1.0, 1.0);
    std::uniform_real_distribution<double> zero_dist(0.0, 1.0);

    const int m = arity_dist(rng);
    std::vector<std::int64_t> dims(static_cast<std::size_t>(m));
    std::int64_t total = 1;
    for (auto& d : dims) {
        d = dim_dist(rng);
        total *= d;
    }
    std::vector<double> entries(static_cast<std::size_t>(total));
    for (auto& v : entries)
        v = zero_dist(rng) < zero_probability ? 0.0 : value_dist(rng);
    return mixnorm::forms::make_form(dims, std::move(entries));
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> value_dist(-1.0, 1.0);
    std::vector<double> out(n);
    for (auto& v : out)
        v = value_dist(rng);
    return out;
}

}  // namespace testsupport
