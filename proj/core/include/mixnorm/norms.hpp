#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mixnorm/schemes.hpp"
#include "mixnorm/tensor.hpp"

namespace mixnorm::norms {

enum class CertificateKind { Exact, LowerBound };

/// A norm value together with the witness vectors that attain it.
/// Witnesses lie in the closed unit ball of their slot's space, and
/// evaluating the form at them reproduces `value` (for LowerBound
/// certificates the value *is* that evaluation).
struct NormCertificate {
    double value = 0.0;
    CertificateKind kind = CertificateKind::LowerBound;
    std::vector<std::vector<double>> witnesses;
    std::uint64_t evaluations = 0;  // candidate configurations examined
};

/// Raised when the exact engine's sign space exceeds the configured
/// budget; callers fall back to ascent_norm.
class BudgetExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DualWitness {
    double value;
    std::vector<double> witness;
};

/// l_{p*} norm of `coefficients` (p* = p/(p-1), p* = 1 for p = inf)
/// together with the unit-ball vector x of l_p attaining
/// sum_i c_i x_i = value: x_i = sign(c_i) |c_i|^{p*-1} / ||c||^{p*-1} for
/// finite p (zero vector when c = 0) and the sign vector of c for p = inf.
DualWitness dual_norm_witness(std::span<const double> coefficients, double p);

struct ExactNormOptions {
    std::uint64_t budget = std::uint64_t{1} << 26;  // max sign configurations
    int workers = 1;
};

/// Exact operator norm of the form on l_p x c0 x ... x c0 (slot 1 carries
/// p in [2, inf], every other slot the sup norm).
///
/// The norm restricted to the sup-norm slots is convex on each unit ball,
/// so the supremum is attained at ball vertices, i.e. sign vectors; the
/// engine enumerates them in Gray-code order with incremental contraction
/// updates and resolves slot 1 by dual_norm_witness. One global sign flip
/// per slot is quotiented out by pinning each slot's first coordinate to
/// +1, so the reduced space has 2^(sum_j (dims_j - 1)) configurations;
/// BudgetExceededError is thrown when that exceeds options.budget. Among
/// maximizers, the first in enumeration order wins.
NormCertificate exact_norm(const forms::CoefficientTensor& form, double p,
                           const ExactNormOptions& options = {});

/// Heuristic lower bound on the operator norm for a general signature:
/// cyclic alternating ascent where each slot update maximizes the linear
/// contraction over that slot's ball via dual_norm_witness. The value is
/// monotone nondecreasing within a restart. Start #1 is the deterministic
/// witness chain (x_1 = e1, x_j = e1 + e2 normalized), which attains
/// 2^(m-1) on the extremal family; the remaining restarts draw random
/// ball points from a generator seeded with `seed`.
NormCertificate ascent_norm(const forms::CoefficientTensor& form,
                            const forms::SpaceSignature& space, int restarts,
                            int max_iters, double tol, std::uint64_t seed = 0);

}  // namespace mixnorm::norms
