#include "alexq/linear.hpp"

#include <string>

#include "alexq/abelian.hpp"
#include "alexq/error.hpp"

namespace alexq::linear {

namespace {

void require_unit(std::int64_t n, std::int64_t a) {
  if (n < 2) throw InvalidInput("modulus must be at least 2");
  if (gcd64(mod_floor(a, n), n) != 1)
    throw InvalidInput("gcd(" + std::to_string(n) + ", " + std::to_string(a) + ") != 1");
}

std::int64_t ncap_unchecked(std::int64_t n, std::int64_t a) {
  return n / gcd64(n, mod_floor(1 - a, n));
}

}  // namespace

std::int64_t n_cap(std::int64_t n, std::int64_t a) {
  if (n < 2) throw InvalidInput("modulus must be at least 2");
  return ncap_unchecked(n, a);
}

bool iso(std::int64_t n, std::int64_t a, std::int64_t b) {
  require_unit(n, a);
  require_unit(n, b);
  const auto na = ncap_unchecked(n, a);
  return na == ncap_unchecked(n, b) && mod_floor(a - b, na) == 0;
}

bool connected(std::int64_t n, std::int64_t a) {
  require_unit(n, a);
  return gcd64(n, mod_floor(1 - a, n)) == 1;
}

bool dual(std::int64_t n, std::int64_t a, std::int64_t b) {
  require_unit(n, a);
  require_unit(n, b);
  const auto na = ncap_unchecked(n, a);
  return na == ncap_unchecked(n, b) && mod_floor(a * b - 1, na) == 0;
}

bool self_dual(std::int64_t n, std::int64_t a) { return dual(n, a, a); }

bool is_square_mod_ncap(std::int64_t n, std::int64_t a) {
  require_unit(n, a);
  const auto na = ncap_unchecked(n, a);
  const auto target = mod_floor(a, na);
  for (std::int64_t x = 0; x < na; ++x)
    if ((x * x) % na == target) return true;
  return false;
}

}  // namespace alexq::linear
