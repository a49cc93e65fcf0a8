#pragma once

// Symplectic bases of (Z^{2g}, B) adapted to a surjection delta: Z^{2g} -> Z/nZ.
//
// Coordinates are ordered x_1, y_1, x_2, y_2, ..., x_g, y_g, so the standard
// form is block diagonal with g copies of [[0, 1], [-1, 0]]. An adapted basis
// has B(x_i, y_j) = delta_ij, all other pairings zero, delta(x_1) a unit mod n
// and delta of every other basis vector equal to zero.

#include <cstdint>
#include <string>
#include <vector>

#include "etale/bigint.hpp"
#include "etale/matrix.hpp"
#include "etale/modular.hpp"

namespace etale {

struct SkewForm {
  int g = 0;
  IntMatrix gram;  // 2g x 2g
};

/// g hyperbolic blocks. DomainError for g < 1.
SkewForm standard_form(int g);

/// DomainError unless the Gram matrix is 2g x 2g, skew-symmetric and has
/// determinant +-1.
void validate_unimodular_skew(const SkewForm& form);

/// Primitive v in Z^{2g} with delta(v) a unit mod n. With delta lifted to
/// entries in [0, n) and d the gcd of the lift, v satisfies lift(v) = d: a
/// standard basis vector when some lifted entry equals d, otherwise an
/// extended-gcd combination of the entries divided by its content.
/// DomainError when delta is not surjective.
std::vector<std::int64_t> primitive_with_unit_image(const ModVector& delta);

struct SymplecticBasisCert {
  int g = 0;
  std::uint64_t n = 0;
  /// Columns are the basis vectors in coordinate order x_1, y_1, ..., x_g, y_g.
  IntMatrix change_of_basis;
  std::vector<Residue> delta_values;  // delta of each basis vector, same order
  /// det of the Gram matrix of the orthogonal complement at each level of the
  /// hyperbolic splitting, outermost first; every entry must be 1.
  std::vector<BigInt> residual_determinants;

  std::vector<std::int64_t> x(int i) const;  // 1-based
  std::vector<std::int64_t> y(int i) const;  // 1-based
};

/// Runs the hyperbolic-splitting construction against the standard form.
SymplecticBasisCert adapt_basis(const ModVector& delta, int g);
/// Same construction against an arbitrary unimodular skew form.
SymplecticBasisCert adapt_basis(const ModVector& delta, int g, const SkewForm& form);

/// M^T J M == J for the standard form J of size 2g. DomainError when M is not
/// 2g x 2g (or has odd size).
bool is_symplectic(const IntMatrix& m, int g);

struct CertificateCheck {
  std::string name;
  bool passed;
};

/// Evaluates every certificate invariant from scratch against delta and form.
std::vector<CertificateCheck> check_certificate(const SymplecticBasisCert& cert,
                                                const ModVector& delta, const SkewForm& form);
std::vector<CertificateCheck> check_certificate(const SymplecticBasisCert& cert,
                                                const ModVector& delta);

/// Exact determinant via fraction-free (Bareiss) elimination.
BigInt determinant(const std::vector<std::vector<BigInt>>& matrix);
BigInt determinant(const IntMatrix& matrix);

}  // namespace etale
