#pragma once

#include <limits>

namespace mixnorm {

/// Exponent value encoding the sup-norm / c0 slots.
inline constexpr double infinite_exponent = std::numeric_limits<double>::infinity();

inline bool is_infinite_exponent(double p) {
    return p == infinite_exponent;
}

/// 1/p with the convention 1/inf = 0.
inline double exponent_reciprocal(double p) {
    return is_infinite_exponent(p) ? 0.0 : 1.0 / p;
}

/// Conjugate exponent p/(p-1); maps inf to 1 and 2 to itself.
inline double conjugate_exponent(double p) {
    return is_infinite_exponent(p) ? 1.0 : p / (p - 1.0);
}

}  // namespace mixnorm
