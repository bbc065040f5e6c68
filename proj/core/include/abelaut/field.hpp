#pragma once

#include <cstdint>

namespace abelaut {

/// The prime field GF(p) for an odd prime p, 3 <= p <= 251.
///
/// Residues are kept reduced in [0, p) everywhere; all arithmetic reduces
/// eagerly. The object is a 4-byte value and is passed around by copy.
class FieldPrime {
 public:
  explicit FieldPrime(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  std::uint32_t reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }

  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) % p_);
  }

  /// Multiplicative inverse by extended Euclid. Throws on zero.
  std::uint32_t inv(std::uint32_t a) const;

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  bool operator==(const FieldPrime& o) const { return p_ == o.p_; }
  bool operator!=(const FieldPrime& o) const { return p_ != o.p_; }

 private:
  std::uint32_t p_;
};

bool is_odd_prime(std::uint32_t p);

}  // namespace abelaut
