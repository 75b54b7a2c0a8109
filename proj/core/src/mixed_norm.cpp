#include "mixnorm/mixed_norm.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace mixnorm::forms {

namespace {

// Folds one nonzero at a time, closing nested levels whenever the block
// prefix advances. Entries must arrive in row-major (lexicographic) index
// order, which coincides with block-major order because blocks group
// consecutive slots.
class NestedAccumulator {
public:
    NestedAccumulator(const std::vector<double>& exponents, std::vector<int> slot_block)
        : q_(exponents), slot_block_(std::move(slot_block)),
          acc_(exponents.size(), 0.0), prev_(), started_(false) {}

    void add(const std::vector<std::int64_t>& index, double value) {
        if (value == 0.0)
            return;
        if (started_) {
            std::size_t diff_slot = 0;
            while (diff_slot < index.size() && prev_[diff_slot] == index[diff_slot])
                ++diff_slot;
            if (diff_slot < index.size())
                close_down_to(slot_block_[diff_slot]);
        }
        acc_.back() += std::pow(std::abs(value), q_.back());
        prev_ = index;
        started_ = true;
    }

    double finish() {
        if (!started_)
            return 0.0;
        close_down_to(0);
        return std::pow(acc_.front(), 1.0 / q_.front());
    }

private:
    // Folds levels k-1, ..., level (0-based) into their parents.
    void close_down_to(int level) {
        for (int j = static_cast<int>(q_.size()) - 2; j >= level; --j) {
            acc_[j] += std::pow(acc_[j + 1], q_[j] / q_[j + 1]);
            acc_[j + 1] = 0.0;
        }
    }

    const std::vector<double>& q_;
    std::vector<int> slot_block_;  // block index (0-based) of each slot
    std::vector<double> acc_;
    std::vector<std::int64_t> prev_;
    bool started_;
};

}  // namespace

double mixed_norm(const CoefficientTensor& form, const MixedNormScheme& scheme) {
    const auto& dims = form.dims();
    int covered = 0;
    for (int n : scheme.partition)
        covered += n;
    if (covered != form.arity())
        throw std::invalid_argument("mixed_norm: partition must sum to the arity");

    std::vector<int> slot_block(dims.size());
    int slot = 0;
    for (std::size_t b = 0; b < scheme.partition.size(); ++b) {
        const std::int64_t block_dim = dims[static_cast<std::size_t>(slot)];
        for (int i = 0; i < scheme.partition[b]; ++i, ++slot) {
            if (dims[static_cast<std::size_t>(slot)] != block_dim)
                throw std::invalid_argument(
                    "mixed_norm: slots within a block must share one dimension");
            slot_block[static_cast<std::size_t>(slot)] = static_cast<int>(b);
        }
    }

    NestedAccumulator acc(scheme.outer_exponents, std::move(slot_block));
    if (form.is_sparse()) {
        for (const SparseEntry& e : form.sparse_entries())
            acc.add(e.index, e.value);
        return acc.finish();
    }
    const auto& entries = form.dense_entries();
    std::vector<std::int64_t> index(dims.size(), 1);
    for (double v : entries) {
        acc.add(index, v);
        for (std::size_t j = dims.size(); j-- > 0;) {
            if (++index[j] <= dims[j])
                break;
            index[j] = 1;
        }
    }
    return acc.finish();
}

}  // namespace mixnorm::forms
