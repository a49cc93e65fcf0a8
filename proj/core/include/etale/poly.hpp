#pragma once

// Univariate polynomials over Z or Z/qZ, cyclotomic polynomials, root finding
// mod p and Hensel lifting of simple roots to Z/p^eZ.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "etale/bigint.hpp"
#include "etale/modular.hpp"

namespace etale {

/// Dense polynomial, coefficients stored low degree first. The zero polynomial
/// has no coefficients; otherwise the leading coefficient is nonzero. Over
/// Z/qZ every coefficient lies in [0, q).
class ModPoly {
 public:
  ModPoly() = default;

  static ModPoly over_integers(std::vector<BigInt> coefficients);
  static ModPoly over_ring(std::vector<BigInt> coefficients, std::uint64_t modulus);
  /// x - root over Z (or Z/qZ when a modulus is given).
  static ModPoly linear(const BigInt& root, std::optional<std::uint64_t> modulus = std::nullopt);
  static ModPoly constant(const BigInt& c, std::optional<std::uint64_t> modulus = std::nullopt);

  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  bool is_zero() const { return coefficients_.empty(); }
  bool is_monic() const { return !is_zero() && coefficients_.back() == 1; }
  std::optional<std::uint64_t> modulus() const { return modulus_; }
  std::span<const BigInt> coefficients() const { return coefficients_; }
  BigInt coefficient(std::size_t i) const {
    return i < coefficients_.size() ? coefficients_[i] : BigInt(0);
  }
  const BigInt& leading() const { return coefficients_.back(); }

  /// Image in Z/qZ[x]. Reducing an already-reduced polynomial to a modulus that
  /// does not divide its own throws DomainError.
  ModPoly reduced(std::uint64_t modulus) const;
  /// The same coefficients read back as integers (canonical lifts).
  ModPoly lifted() const;

  Residue evaluate_mod(Residue x, std::uint64_t modulus) const;
  BigInt evaluate(const BigInt& x) const;
  ModPoly derivative() const;

  std::string to_string() const;

  friend ModPoly operator+(const ModPoly& a, const ModPoly& b);
  friend ModPoly operator-(const ModPoly& a, const ModPoly& b);
  friend ModPoly operator*(const ModPoly& a, const ModPoly& b);
  friend bool operator==(const ModPoly& a, const ModPoly& b) = default;

 private:
  ModPoly(std::vector<BigInt> coefficients, std::optional<std::uint64_t> modulus);
  void normalize();

  std::vector<BigInt> coefficients_;
  std::optional<std::uint64_t> modulus_;
};

ModPoly pow(const ModPoly& base, unsigned exponent);

struct PolyDivision {
  ModPoly quotient;
  ModPoly remainder;
};

/// Long division by a divisor whose leading coefficient is a unit of the
/// coefficient ring (+-1 over Z). Otherwise DomainError.
PolyDivision divide(const ModPoly& dividend, const ModPoly& divisor);

/// Monic gcd over F_p; both inputs must be reduced mod the same prime.
ModPoly gcd_mod_prime(const ModPoly& a, const ModPoly& b);

/// True iff q has no repeated factor over the algebraic closure of F_p.
bool is_squarefree_mod_prime(const ModPoly& q);

/// d-th cyclotomic polynomial over Z, by exact division of x^d - 1.
ModPoly cyclotomic(int d);

/// f(x) = 1 + x + ... + x^{n-1} over Z.
ModPoly geometric_series(int n);

/// (x - 1)^{2g} f(x)^{2g-2}: the characteristic polynomial of the deck
/// transformation of a degree-n cyclic cover of a genus-g surface.
ModPoly sigma_charpoly(int g, int n);

/// Every root of poly in F_p, ascending, by exhaustive evaluation.
std::vector<Residue> linear_roots_mod_p(const ModPoly& poly, std::uint64_t p);

struct HenselStep {
  unsigned precision;  // the root is correct mod p^precision
  Residue value;
};

struct HenselTrace {
  Residue root_mod_p = 0;
  Residue lifted = 0;
  std::vector<HenselStep> steps;
};

/// Newton lifting p -> p^2 -> p^4 -> ... capped at p^e, recording each stage.
HenselTrace hensel_lift_trace(const ModPoly& poly, Residue root, std::uint64_t p, unsigned e);

/// The unique lift of a simple root mod p to a root mod p^e.
Residue hensel_lift_root(const ModPoly& poly, Residue root, std::uint64_t p, unsigned e);

/// All roots of f(x) = (x^n - 1)/(x - 1) in Z/p^eZ, ascending. Requires gcd(n, p) = 1.
std::vector<Residue> eigenvalue_set(int n, std::uint64_t p, unsigned e);

/// gcd(n, p - 1) - 1: the number of linear factors of f over Z/p^eZ.
int linear_factor_count(int n, std::uint64_t p);

/// Smallest k >= 1 with a^k == 1 mod modulus; a must be a unit.
std::uint64_t multiplicative_order(Residue a, std::uint64_t modulus);

}  // namespace etale
