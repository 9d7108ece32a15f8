#pragma once

#include <cstdint>

namespace alexq::linear {

// Closed-form criteria for linear quandles Z_n[t]/(t - a), gcd(n, a) = 1.
// Every predicate throws InvalidInput when a multiplier is not a unit mod n
// or n < 2.

/// n / gcd(n, 1 - a), with gcd(n, 0) = n.
std::int64_t n_cap(std::int64_t n, std::int64_t a);

bool iso(std::int64_t n, std::int64_t a, std::int64_t b);
bool connected(std::int64_t n, std::int64_t a);
/// Lambda_n/(t - a) is the dual of Lambda_n/(t - b).
bool dual(std::int64_t n, std::int64_t a, std::int64_t b);
/// Lambda_n/(t - a) is isomorphic to its own dual: a * a = 1 mod n_cap.
bool self_dual(std::int64_t n, std::int64_t a);
/// a is a square mod n_cap(n, a), by exhaustive squaring.
bool is_square_mod_ncap(std::int64_t n, std::int64_t a);

}  // namespace alexq::linear
