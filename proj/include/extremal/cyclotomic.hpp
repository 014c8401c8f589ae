#pragma once

#include <cstdint>
#include <vector>

namespace extremal::cyclotomic {

/// Dense integer polynomial; coefficient i multiplies x^i.
using Poly = std::vector<std::int64_t>;

/// Phi_N, computed by dividing x^N - 1 by Phi_d for every proper divisor d.
/// Results are cached; safe to call concurrently.
const Poly& cyclotomic_polynomial(int order);

/// Remainder of `a` modulo a monic divisor, with trailing zeros trimmed.
Poly remainder(Poly a, const Poly& monic);

/// Exact quotient; throws if the division leaves a remainder.
Poly exact_quotient(Poly a, const Poly& monic);

/// True iff Phi_N divides p, i.e. p vanishes at a primitive N-th root of unity.
bool vanishes_at_primitive_root(const Poly& p, int order);

}  // namespace extremal::cyclotomic
