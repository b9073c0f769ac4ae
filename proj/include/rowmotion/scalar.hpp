#pragma once

// Scalar fields for exact computation: GMP rationals and a prime field
// with a runtime modulus below 2^63.

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace rowmotion {

using Rational = mpq_class;

std::string to_string(const Rational& q);

/// Total bit length of numerator plus denominator.
std::size_t bit_length(const Rational& q);

/// Element of Z/pZ.  All arithmetic requires both operands to share p.
class ModP {
 public:
  ModP() = default;
  ModP(std::uint64_t value, std::uint64_t modulus)
      : value_(value % modulus), modulus_(modulus) {}

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  friend ModP operator+(ModP a, ModP b) {
    std::uint64_t s = a.value_ + b.value_;
    if (s >= a.modulus_) s -= a.modulus_;
    return ModP(s, a.modulus_, Raw{});
  }
  friend ModP operator-(ModP a, ModP b) {
    return ModP(a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + a.modulus_ - b.value_,
                a.modulus_, Raw{});
  }
  friend ModP operator*(ModP a, ModP b) {
    const auto product = static_cast<unsigned __int128>(a.value_) * b.value_;
    return ModP(static_cast<std::uint64_t>(product % a.modulus_), a.modulus_, Raw{});
  }
  /// Multiplicative inverse; the caller guarantees a nonzero value.
  ModP inverse() const;
  friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
  ModP& operator+=(ModP b) { return *this = *this + b; }
  ModP& operator*=(ModP b) { return *this = *this * b; }

  friend bool operator==(ModP a, ModP b) { return a.value_ == b.value_; }

 private:
  struct Raw {};
  ModP(std::uint64_t value, std::uint64_t modulus, Raw) : value_(value), modulus_(modulus) {}

  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 1;
};

std::string to_string(const ModP& x);

/// 2^61 - 1.
inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

}  // namespace rowmotion
