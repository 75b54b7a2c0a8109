#include "mixnorm/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mixnorm::forms {

namespace {

void validate_dims(const std::vector<std::int64_t>& dims) {
    if (dims.empty())
        throw std::invalid_argument("tensor: arity must be at least 1");
    for (std::int64_t d : dims)
        if (d < 1)
            throw std::invalid_argument("tensor: dimensions must be positive");
}

std::int64_t checked_dense_size(const std::vector<std::int64_t>& dims) {
    std::int64_t total = 1;
    for (std::int64_t d : dims) {
        if (total > (std::int64_t{1} << 62) / d)
            throw std::invalid_argument("tensor: dense size overflows");
        total *= d;
    }
    return total;
}

bool index_less(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

CoefficientTensor CoefficientTensor::dense(std::vector<std::int64_t> dims,
                                           std::vector<double> entries) {
    validate_dims(dims);
    const std::int64_t total = checked_dense_size(dims);
    if (static_cast<std::int64_t>(entries.size()) != total)
        throw std::invalid_argument(
            "tensor: entry count " + std::to_string(entries.size()) +
            " does not match dimension product " + std::to_string(total));
    for (double v : entries)
        if (!std::isfinite(v))
            throw std::invalid_argument("tensor: entries must be finite");
    CoefficientTensor t;
    t.dims_ = std::move(dims);
    t.dense_entries_ = std::move(entries);
    t.sparse_storage_ = false;
    return t;
}

CoefficientTensor CoefficientTensor::sparse(std::vector<std::int64_t> dims,
                                            std::vector<SparseEntry> entries) {
    validate_dims(dims);
    for (const SparseEntry& e : entries) {
        if (e.index.size() != dims.size())
            throw std::invalid_argument("tensor: sparse index length must equal arity");
        for (std::size_t j = 0; j < dims.size(); ++j)
            if (e.index[j] < 1 || e.index[j] > dims[j])
                throw std::invalid_argument("tensor: sparse index out of range");
        if (!std::isfinite(e.value))
            throw std::invalid_argument("tensor: entries must be finite");
    }
    std::sort(entries.begin(), entries.end(),
              [](const SparseEntry& a, const SparseEntry& b) {
                  return index_less(a.index, b.index);
              });
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i - 1].index == entries[i].index)
            throw std::invalid_argument("tensor: duplicate sparse index");
    std::erase_if(entries, [](const SparseEntry& e) { return e.value == 0.0; });
    CoefficientTensor t;
    t.dims_ = std::move(dims);
    t.sparse_entries_ = std::move(entries);
    t.sparse_storage_ = true;
    return t;
}

std::int64_t CoefficientTensor::dense_size() const {
    std::int64_t total = 1;
    for (std::int64_t d : dims_)
        total *= d;
    return total;
}

std::int64_t CoefficientTensor::nonzero_count() const {
    if (sparse_storage_)
        return static_cast<std::int64_t>(sparse_entries_.size());
    return std::count_if(dense_entries_.begin(), dense_entries_.end(),
                         [](double v) { return v != 0.0; });
}

double CoefficientTensor::entry(std::span<const std::int64_t> index) const {
    if (index.size() != dims_.size())
        throw std::invalid_argument("tensor: index length must equal arity");
    for (std::size_t j = 0; j < dims_.size(); ++j)
        if (index[j] < 1 || index[j] > dims_[j])
            throw std::invalid_argument("tensor: index out of range");
    if (!sparse_storage_) {
        std::int64_t offset = 0;
        for (std::size_t j = 0; j < dims_.size(); ++j)
            offset = offset * dims_[j] + (index[j] - 1);
        return dense_entries_[static_cast<std::size_t>(offset)];
    }
    auto it = std::lower_bound(
        sparse_entries_.begin(), sparse_entries_.end(), index,
        [](const SparseEntry& e, std::span<const std::int64_t> key) {
            return std::lexicographical_compare(e.index.begin(), e.index.end(),
                                                key.begin(), key.end());
        });
    if (it != sparse_entries_.end() &&
        std::equal(it->index.begin(), it->index.end(), index.begin(), index.end()))
        return it->value;
    return 0.0;
}

const std::vector<double>& CoefficientTensor::dense_entries() const {
    if (sparse_storage_)
        throw std::logic_error("tensor: sparse storage has no dense entry array");
    return dense_entries_;
}

const std::vector<SparseEntry>& CoefficientTensor::sparse_entries() const {
    if (!sparse_storage_)
        throw std::logic_error("tensor: dense storage has no sparse entry list");
    return sparse_entries_;
}

CoefficientTensor CoefficientTensor::densified() const {
    if (!sparse_storage_)
        return *this;
    const std::int64_t total = checked_dense_size(dims_);
    std::vector<double> entries(static_cast<std::size_t>(total), 0.0);
    for (const SparseEntry& e : sparse_entries_) {
        std::int64_t offset = 0;
        for (std::size_t j = 0; j < dims_.size(); ++j)
            offset = offset * dims_[j] + (e.index[j] - 1);
        entries[static_cast<std::size_t>(offset)] = e.value;
    }
    return dense(dims_, std::move(entries));
}

CoefficientTensor CoefficientTensor::sparsified() const {
    if (sparse_storage_)
        return *this;
    std::vector<SparseEntry> entries;
    std::vector<std::int64_t> index(dims_.size(), 1);
    for (double v : dense_entries_) {
        if (v != 0.0)
            entries.push_back({index, v});
        for (std::size_t j = dims_.size(); j-- > 0;) {
            if (++index[j] <= dims_[j])
                break;
            index[j] = 1;
        }
    }
    return sparse(dims_, std::move(entries));
}

CoefficientTensor make_form(const std::vector<std::int64_t>& dims,
                            std::vector<double> entries) {
    return CoefficientTensor::dense(dims, std::move(entries));
}

double evaluate(const CoefficientTensor& form,
                const std::vector<std::vector<double>>& args) {
    const auto& dims = form.dims();
    if (args.size() != dims.size())
        throw std::invalid_argument("evaluate: argument count must equal arity");
    for (std::size_t j = 0; j < dims.size(); ++j)
        if (static_cast<std::int64_t>(args[j].size()) != dims[j])
            throw std::invalid_argument("evaluate: argument " + std::to_string(j + 1) +
                                        " has wrong length");
    double total = 0.0;
    if (form.is_sparse()) {
        for (const SparseEntry& e : form.sparse_entries()) {
            double term = e.value;
            for (std::size_t j = 0; j < dims.size(); ++j)
                term *= args[j][static_cast<std::size_t>(e.index[j] - 1)];
            total += term;
        }
        return total;
    }
    const auto& entries = form.dense_entries();
    std::vector<std::int64_t> index(dims.size(), 0);  // 0-based odometer
    for (double v : entries) {
        if (v != 0.0) {
            double term = v;
            for (std::size_t j = 0; j < dims.size(); ++j)
                term *= args[j][static_cast<std::size_t>(index[j])];
            total += term;
        }
        for (std::size_t j = dims.size(); j-- > 0;) {
            if (++index[j] < dims[j])
                break;
            index[j] = 0;
        }
    }
    return total;
}

CoefficientTensor permute_slots(const CoefficientTensor& form,
                                const std::vector<int>& perm) {
    const auto& dims = form.dims();
    const std::size_t m = dims.size();
    if (perm.size() != m)
        throw std::invalid_argument("permute_slots: permutation length must equal arity");
    std::vector<bool> seen(m, false);
    for (int s : perm) {
        if (s < 1 || static_cast<std::size_t>(s) > m || seen[static_cast<std::size_t>(s - 1)])
            throw std::invalid_argument("permute_slots: not a permutation of 1..m");
        seen[static_cast<std::size_t>(s - 1)] = true;
    }
    std::vector<std::int64_t> new_dims(m);
    for (std::size_t k = 0; k < m; ++k)
        new_dims[k] = dims[static_cast<std::size_t>(perm[k] - 1)];

    const CoefficientTensor source = form.is_sparse() ? form : form.sparsified();
    std::vector<SparseEntry> entries;
    entries.reserve(source.sparse_entries().size());
    for (const SparseEntry& e : source.sparse_entries()) {
        SparseEntry out;
        out.index.resize(m);
        for (std::size_t k = 0; k < m; ++k)
            out.index[k] = e.index[static_cast<std::size_t>(perm[k] - 1)];
        out.value = e.value;
        entries.push_back(std::move(out));
    }
    CoefficientTensor result = CoefficientTensor::sparse(new_dims, std::move(entries));
    return form.is_sparse() ? result : result.densified();
}

}  // namespace mixnorm::forms
