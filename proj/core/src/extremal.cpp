#include "mixnorm/extremal.hpp"

#include <stdexcept>
#include <string>

namespace mixnorm::forms {

CoefficientTensor build_extremal(int m) {
    if (m < 2 || m > max_extremal_arity)
        throw std::invalid_argument("build_extremal: arity must lie in [2, " +
                                    std::to_string(max_extremal_arity) + "]");

    // Bilinear seed: T(x1, x2) = (x2_1 + x2_2) x1_1 + (x2_1 - x2_2) x1_2.
    std::vector<SparseEntry> entries = {
        {{1, 1}, 1.0}, {{1, 2}, 1.0}, {{2, 1}, 1.0}, {{2, 2}, -1.0}};

    for (int level = 3; level <= m; ++level) {
        const std::int64_t half = std::int64_t{1} << (level - 2);
        // Shift of the second copy per slot: 2^(level-2) in slots 1 and 2,
        // then halving down to 2 in slot level-1.
        std::vector<std::int64_t> shift(static_cast<std::size_t>(level - 1));
        shift[0] = half;
        for (int slot = 2; slot <= level - 1; ++slot)
            shift[static_cast<std::size_t>(slot - 1)] = std::int64_t{1} << (level - slot);

        std::vector<SparseEntry> next;
        next.reserve(entries.size() * 4);
        for (const SparseEntry& e : entries) {
            SparseEntry plain = e;
            plain.index.push_back(1);
            next.push_back(plain);
            plain.index.back() = 2;
            next.push_back(plain);

            SparseEntry shifted = e;
            for (std::size_t j = 0; j < shifted.index.size(); ++j)
                shifted.index[j] += shift[j];
            shifted.index.push_back(1);
            next.push_back(shifted);
            shifted.index.back() = 2;
            shifted.value = -shifted.value;
            next.push_back(shifted);
        }
        entries = std::move(next);
    }

    const std::int64_t dim = std::int64_t{1} << (m - 1);
    std::vector<std::int64_t> dims(static_cast<std::size_t>(m), dim);
    CoefficientTensor sparse = CoefficientTensor::sparse(std::move(dims), std::move(entries));
    return m <= dense_extremal_arity ? sparse.densified() : sparse;
}

}  // namespace mixnorm::forms
