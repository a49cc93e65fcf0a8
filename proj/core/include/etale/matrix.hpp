#pragma once

// Dense square matrices over Z and Z/mZ, the explicit matrices attached to the
// deck transformation of a cyclic cover, and characteristic/minimal polynomial
// based similarity checks.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "etale/modular.hpp"
#include "etale/poly.hpp"

namespace etale {

class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t dimension);  // zero matrix
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  std::int64_t& at(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  std::int64_t at(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  std::span<const std::int64_t> entries() const { return entries_; }

  IntMatrix transpose() const;
  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::int64_t> entries_;
};

IntMatrix power(const IntMatrix& base, unsigned exponent);

class ModMatrix {
 public:
  ModMatrix(const IntMatrix& lift, FactoredModulus modulus);
  static ModMatrix identity(std::size_t dimension, FactoredModulus modulus);

  std::size_t dimension() const { return dim_; }
  const FactoredModulus& modulus() const { return modulus_; }
  std::uint64_t m() const { return modulus_.value(); }
  Residue at(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  Residue& at(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  std::span<const Residue> entries() const { return entries_; }

  bool is_identity() const;
  /// The same entries reduced to a modulus dividing this one.
  ModMatrix reduced(const FactoredModulus& divisor) const;
  /// this - lambda * I.
  ModMatrix minus_scalar(Residue lambda) const;
  std::vector<Residue> apply(std::span<const Residue> v) const;

  friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b);
  friend bool operator==(const ModMatrix& a, const ModMatrix& b) {
    return a.modulus_ == b.modulus_ && a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  ModMatrix(std::size_t dimension, FactoredModulus modulus);

  std::size_t dim_;
  FactoredModulus modulus_;
  std::vector<Residue> entries_;
};

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
IntMatrix kron(const IntMatrix& a, const IntMatrix& b);
/// Block-diagonal a (+) b.
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);

/// The (n-1)x(n-1) companion matrix of 1 + x + ... + x^{n-1}: ones on the
/// subdiagonal, last column all -1.
IntMatrix companion_G(int n);

/// The n x n cyclic shift: ones on the subdiagonal and a single one top-right.
IntMatrix cyclic_shift(int n);

/// I_2 (+) (cyclic_shift(n) (x) I_{2g-2}); size 2h with h = n(g-1)+1.
IntMatrix deck_matrix(int g, int n);

/// I_{2g} (+) (companion_G(n) (x) I_{2g-2}), the same size as deck_matrix(g, n).
IntMatrix canonical_form(int g, int n);

/// det(xI - M) over Z, by the division-free Berkowitz recurrence.
ModPoly charpoly(const IntMatrix& m);
/// det(xI - M) over Z/mZ (any modulus).
ModPoly charpoly_mod(const ModMatrix& m);
/// Minimal monic annihilating polynomial over F_p; DomainError unless the
/// matrix modulus is prime.
ModPoly minpoly_mod(const ModMatrix& m);
ModPoly minpoly_mod(const IntMatrix& m, std::uint64_t p);

/// Multiplicative order of an invertible matrix mod m. DomainError if the
/// matrix is singular modulo some prime of m or the order exceeds max_order.
std::uint64_t matrix_order(const ModMatrix& m, std::uint64_t max_order = 1U << 14U);

enum class SimilarityOutcome { Similar, NotSimilar, NotDecided };

std::string to_string(SimilarityOutcome outcome);

struct PrimeSimilarity {
  std::uint64_t p;
  ModPoly charpoly_a;
  ModPoly charpoly_b;
  ModPoly minpoly_a;
  ModPoly minpoly_b;
  bool minpoly_squarefree;
};

struct SimilarityVerdict {
  SimilarityOutcome outcome;
  std::vector<PrimeSimilarity> per_prime;
  std::string witness;  // empty when Similar
  std::uint64_t order_a = 0;
  std::uint64_t order_b = 0;
};

/// Decides similarity over Z/mZ from residue-field data: equal characteristic
/// and minimal polynomials mod every p | m, with a squarefree minimal
/// polynomial, give Similar provided both matrices have order prime to m (else
/// DomainError). Differing invariants give NotSimilar without needing the order
/// condition; a repeated factor in the shared minimal polynomial gives NotDecided.
SimilarityVerdict similarity_verdict(const IntMatrix& a, const IntMatrix& b,
                                     const FactoredModulus& m);

}  // namespace etale
