#pragma once

#include "mixnorm/schemes.hpp"
#include "mixnorm/tensor.hpp"

namespace mixnorm::forms {

/// Nested mixed norm of the coefficient array under a block partition.
///
/// With blocks B1, ..., Bk (consecutive slot groups of sizes n1, ..., nk)
/// and outer exponents q1, ..., qk, the value is
///
///   ( sum_{I1} ( ... ( sum_{Ik} |T(I1,...,Ik)|^{qk} )^{q_{k-1}/qk} ... )^{q1/q2} )^{1/q1}
///
/// where I_j runs over all index tuples of block j. The innermost exponent
/// qk is applied first. Nesting with equal exponents collapses: the
/// partition (1, m-1) with exponents (q, 2) equals (1, 1, ..., 1) with
/// (q, 2, ..., 2) on every tensor.
///
/// Requires the partition to sum to the arity and, for blocks with more
/// than one slot, equal dimensions across the block's slots; throws
/// std::invalid_argument otherwise.
double mixed_norm(const CoefficientTensor& form, const MixedNormScheme& scheme);

}  // namespace mixnorm::forms
