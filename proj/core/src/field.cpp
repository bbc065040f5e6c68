#include "abelaut/field.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace abelaut {

bool is_odd_prime(std::uint32_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint32_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

FieldPrime::FieldPrime(std::uint32_t p) : p_(p) {
  if (p < 3 || p > 251 || !is_odd_prime(p)) {
    throw std::invalid_argument("FieldPrime: p must be an odd prime in [3, 251], got " +
                                std::to_string(p));
  }
}

std::uint32_t FieldPrime::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("FieldPrime::inv: zero has no inverse");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return reduce(t);
}

std::uint32_t FieldPrime::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t result = 1;
  std::uint32_t base = a % p_;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

}  // namespace abelaut
