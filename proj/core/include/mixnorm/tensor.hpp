#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mixnorm::forms {

/// One nonzero coefficient of a sparse tensor. Indices are 1-based and
/// have length equal to the tensor arity.
struct SparseEntry {
    std::vector<std::int64_t> index;
    double value;
};

/// Dense or sparse coefficient array of an m-linear form.
///
/// entry(i1, ..., im) = T(e_i1, ..., e_im) with 1-based indices. Dense
/// storage is row-major with the last index fastest; sparse storage keeps
/// the nonzero entries sorted in the same (lexicographic) order. Instances
/// are immutable after construction.
class CoefficientTensor {
public:
    static CoefficientTensor dense(std::vector<std::int64_t> dims,
                                   std::vector<double> entries);
    static CoefficientTensor sparse(std::vector<std::int64_t> dims,
                                    std::vector<SparseEntry> entries);

    int arity() const { return static_cast<int>(dims_.size()); }
    const std::vector<std::int64_t>& dims() const { return dims_; }
    std::int64_t dim(int slot) const { return dims_[static_cast<std::size_t>(slot - 1)]; }

    bool is_sparse() const { return sparse_storage_; }
    std::int64_t dense_size() const;
    std::int64_t nonzero_count() const;

    /// Coefficient at a 1-based multi-index (O(1) dense, O(log nnz) sparse).
    double entry(std::span<const std::int64_t> index) const;

    const std::vector<double>& dense_entries() const;
    const std::vector<SparseEntry>& sparse_entries() const;

    CoefficientTensor densified() const;
    CoefficientTensor sparsified() const;

private:
    CoefficientTensor() = default;

    std::vector<std::int64_t> dims_;
    std::vector<double> dense_entries_;
    std::vector<SparseEntry> sparse_entries_;
    bool sparse_storage_ = false;
};

/// Builds a dense form from dims and a row-major entry array.
/// Throws std::invalid_argument on a length mismatch or non-finite entry.
CoefficientTensor make_form(const std::vector<std::int64_t>& dims,
                            std::vector<double> entries);

/// Multilinear evaluation T(x1, ..., xm). Each args[j] must have length
/// dims[j]; throws std::invalid_argument otherwise.
double evaluate(const CoefficientTensor& form,
                const std::vector<std::vector<double>>& args);

/// Reorders the argument slots: slot k of the result is slot perm[k-1] of
/// the input (perm is a 1-based permutation of 1..m). Plumbing for norm
/// engines that require the l_p slot first.
CoefficientTensor permute_slots(const CoefficientTensor& form,
                                const std::vector<int>& perm);

}  // namespace mixnorm::forms
