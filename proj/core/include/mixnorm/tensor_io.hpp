#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "mixnorm/tensor.hpp"

namespace mixnorm::forms {

/// Raised on malformed tensor files (unreadable file, bad JSON, missing or
/// duplicate fields, dimension mismatches, out-of-range indices).
class TensorFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tensor JSON format: an object with "arity" (integer), "dims" (array of
/// positive integers) and exactly one of "entries" (flat row-major array)
/// or "sparse_entries" (array of [index-tuple, value] pairs, 1-based).
/// The writer emits numbers with 17 significant digits on a single line,
/// so identical tensors serialize to identical bytes.
void write_tensor(std::ostream& out, const CoefficientTensor& form);
std::string tensor_to_string(const CoefficientTensor& form);
void write_tensor_file(const std::string& path, const CoefficientTensor& form);

CoefficientTensor read_tensor(std::istream& in);
CoefficientTensor read_tensor_file(const std::string& path);

}  // namespace mixnorm::forms
