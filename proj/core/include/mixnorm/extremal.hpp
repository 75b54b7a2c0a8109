#pragma once

#include "mixnorm/tensor.hpp"

namespace mixnorm::forms {

/// Largest arity accepted by build_extremal. The nonzero count is 4^(m-1),
/// so m = 12 keeps the sparse representation around 4M entries.
inline constexpr int max_extremal_arity = 12;

/// Arity up to which build_extremal materializes dense storage; beyond it
/// the 2^(m(m-1)) dense entry count is pointless and the sparse list is
/// returned instead.
inline constexpr int dense_extremal_arity = 4;

/// The recursively doubled extremal m-linear form.
///
/// All m slot dimensions are 2^(m-1). Writing A for the coefficient array
/// of the (m-1)-linear predecessor (dims 2^(m-2)), the entries at last
/// index 1 are B + C and at last index 2 are B - C, where B places A at
/// indices <= 2^(m-2) in every slot and C places A offset by
/// (2^(m-2), 2^(m-2), 2^(m-3), ..., 2) in slots (1, 2, 3, ..., m-1).
/// The two copies occupy disjoint blocks (they are separated in slot 1),
/// so every nonzero coefficient is +/-1 and the operator norm on
/// l_p x c0 x ... x c0 is 2^(m-1).
///
/// Requires 2 <= m <= max_extremal_arity; dense for m <= 4, sparse above.
CoefficientTensor build_extremal(int m);

}  // namespace mixnorm::forms
