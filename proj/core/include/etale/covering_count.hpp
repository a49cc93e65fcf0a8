#pragma once

// Closed-form counts of etale covers of a genus-g curve:
//
//   T_g(m,n)  non-abelian (Z/m x| Z/n)-covers refining one fixed cyclic n-cover
//   N_g(n)    cyclic n-covers
//   C_g(m,n)  = T_g(m,n) * N_g(n), all non-abelian (Z/m x| Z/n)-covers
//
// Every count is produced twice: once by an all-integer route and once by the
// literal rational expression with its p^{-k} terms. The two must agree and
// the rational value must have denominator 1, otherwise IntegrityError.

#include <cstdint>
#include <optional>
#include <vector>

#include "etale/bigint.hpp"
#include "etale/modular.hpp"

namespace etale {

struct PrimeBreakdown {
  std::uint64_t p;
  unsigned e;
  int lf_count;      // gcd(n, p-1) - 1
  BigInt pev_count;  // primitive eigenvectors of the non-trivial part mod p^e
};

struct CoverCountReport {
  int g = 0;
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  BigInt T;
  BigInt N_cyclic;
  BigInt C_total;
  std::vector<PrimeBreakdown> per_prime;
  bool oracle_checked = false;
  std::optional<BigInt> oracle_value;
};

/// Throws DomainError unless g >= 2, m >= 2, n >= 2 and gcd(m, n) = 1.
void validate_cover_parameters(int g, std::int64_t m, std::int64_t n);

/// prod_{p^e || m} (gcd(n,p-1)-1) * p^{e(2g-2)} (1 - p^{-(2g-2)}).
BigInt primitive_eigenvector_count(int g, std::int64_t m, std::int64_t n);

/// T_g(m,n) = m^{2g-3} prod_{p|m} (gcd(n,p-1)-1)(1 + p^{-1} + ... + p^{-(2g-3)}).
BigInt count_T(int g, std::int64_t m, std::int64_t n);

/// N_g(n) = n^{2g-1} prod_{q|n} (1 + q^{-1} + ... + q^{-(2g-1)}).
BigInt count_cyclic(int g, std::int64_t n);

/// The full report; C_total = T * N_cyclic.
CoverCountReport count_total(int g, std::int64_t m, std::int64_t n);

/// Two-prime special case: (q^{2g}-1)(1 + p + ... + p^{2g-3}) if q | p-1, else 0.
BigInt count_special_two_primes(int g, std::int64_t p, std::int64_t q);

// Literal rational evaluations, exposed for integrality checks.
Rational rational_T(int g, std::int64_t m, std::int64_t n);
Rational rational_T_by_division(int g, std::int64_t m, std::int64_t n);
Rational rational_cyclic(int g, std::int64_t n);
Rational rational_total(int g, std::int64_t m, std::int64_t n);

}  // namespace etale
