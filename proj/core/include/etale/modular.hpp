#pragma once

// Exact arithmetic over Z/mZ: factored moduli, residue vectors, primitive
// vector predicates and counts, and the CRT split/join of (Z/mZ)^N into
// its prime-power components.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "etale/bigint.hpp"

namespace etale {

using Residue = std::uint64_t;

// Scalar helpers. All take a modulus >= 1 and return canonical residues.
Residue reduce(std::int64_t value, std::uint64_t modulus);
Residue mul_mod(Residue a, Residue b, std::uint64_t modulus);
Residue add_mod(Residue a, Residue b, std::uint64_t modulus);
Residue sub_mod(Residue a, Residue b, std::uint64_t modulus);
Residue pow_mod(Residue base, std::uint64_t exponent, std::uint64_t modulus);
/// Throws DomainError when gcd(a, modulus) != 1.
Residue inverse_mod(Residue a, std::uint64_t modulus);
bool is_prime(std::uint64_t value);
std::uint64_t ipow(std::uint64_t base, unsigned exponent);

/// Result of the extended Euclidean algorithm: coeff_a*a + coeff_b*b == gcd.
struct ExtendedGcd {
  BigInt gcd;
  BigInt coeff_a;
  BigInt coeff_b;
};
ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b);

struct PrimePower {
  std::uint64_t p = 0;
  unsigned e = 0;

  std::uint64_t value() const { return ipow(p, e); }
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// An integer m >= 2 stored with its factorization, primes ascending.
class FactoredModulus {
 public:
  /// Rebuilds a modulus from an explicit factor list; validates primality,
  /// distinctness and ordering.
  static FactoredModulus from_factors(std::vector<PrimePower> factors);

  std::uint64_t value() const { return value_; }
  std::span<const PrimePower> factors() const& { return factors_; }
  std::vector<PrimePower> factors() && { return std::move(factors_); }
  bool is_prime() const { return factors_.size() == 1 && factors_[0].e == 1; }
  bool is_prime_power() const { return factors_.size() == 1; }
  std::string to_string() const;

  friend bool operator==(const FactoredModulus& a, const FactoredModulus& b) {
    return a.value_ == b.value_;
  }

 private:
  friend FactoredModulus factorize(std::int64_t m);
  FactoredModulus(std::uint64_t value, std::vector<PrimePower> factors)
      : value_(value), factors_(std::move(factors)) {}

  std::uint64_t value_;
  std::vector<PrimePower> factors_;
};

/// Trial-division factorization. Throws DomainError for m < 2.
FactoredModulus factorize(std::int64_t m);

/// Euler's totient from the factorization.
std::uint64_t euler_phi(const FactoredModulus& m);

/// A vector in (Z/mZ)^N with every entry stored in [0, m).
class ModVector {
 public:
  ModVector(FactoredModulus modulus, std::span<const std::int64_t> entries);
  ModVector(FactoredModulus modulus, std::vector<Residue> residues);

  const FactoredModulus& modulus() const { return modulus_; }
  std::span<const Residue> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  Residue operator[](std::size_t i) const { return entries_[i]; }

  friend bool operator==(const ModVector& a, const ModVector& b) {
    return a.modulus_ == b.modulus_ && a.entries_ == b.entries_;
  }

 private:
  FactoredModulus modulus_;
  std::vector<Residue> entries_;
};

/// True iff the vector has additive order exactly m, i.e. gcd(entries, m) == 1.
bool is_primitive_vector(const ModVector& v);
bool is_primitive(std::span<const Residue> entries, std::uint64_t modulus);

/// Number of primitive vectors in (Z/mZ)^N. Throws DomainError for N < 1.
BigInt count_primitive_vectors(int dimension, const FactoredModulus& m);

/// Components v mod p^e, one per prime factor of m, in ascending p order.
std::vector<ModVector> crt_split(const ModVector& v);

/// Inverse of crt_split. Components must have pairwise coprime prime-power
/// moduli and equal dimensions; otherwise DomainError.
ModVector crt_join(std::span<const ModVector> components);

/// Scalar CRT: the unique x mod prod(moduli) with x == residues[i] mod moduli[i].
Residue crt_combine(std::span<const Residue> residues, std::span<const std::uint64_t> moduli);

}  // namespace etale
