#include "etale/symplectic.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "etale/errors.hpp"

namespace etale {
namespace {

using Vec = std::vector<BigInt>;
using Mat = std::vector<Vec>;  // row-major

Mat to_big(const IntMatrix& m) {
  Mat out(m.dimension(), Vec(m.dimension()));
  for (std::size_t i = 0; i < m.dimension(); ++i)
    for (std::size_t j = 0; j < m.dimension(); ++j) out[i][j] = m.at(i, j);
  return out;
}

BigInt pairing(const Mat& form, const Vec& u, const Vec& w) {
  BigInt s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) s += u[i] * form[i][j] * w[j];
  }
  return s;
}

BigInt evaluate(const Vec& functional, const Vec& v) {
  BigInt s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += functional[i] * v[i];
  return s;
}

Vec axpy(const Vec& x, const BigInt& a, const Vec& y) {  // x + a*y
  Vec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += a * y[i];
  return r;
}

// Echelon basis of the lattice spanned by the rows, entries above each pivot
// reduced into [0, pivot).
Mat lattice_basis(Mat rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = rank; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        if (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c])) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[rank], rows[best]);
      bool done = true;
      for (std::size_t r = rank + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        const BigInt q = rows[r][c] / rows[rank][c];
        rows[r] = axpy(rows[r], -q, rows[rank]);
        if (rows[r][c] != 0) done = false;
      }
      if (done) {
        if (rows[rank][c] < 0)
          for (auto& x : rows[rank]) x = -x;
        pivots.push_back(c);
        ++rank;
        break;
      }
    }
  }
  rows.resize(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    const std::size_t c = pivots[i];
    for (std::size_t r = 0; r < i; ++r) {
      BigInt q = rows[r][c] / rows[i][c];
      if (rows[r][c] - q * rows[i][c] < 0) q -= 1;
      if (q != 0) rows[r] = axpy(rows[r], -q, rows[i]);
    }
  }
  return rows;
}

BigInt gram_determinant(const Mat& form, const Mat& basis) {
  Mat gram(basis.size(), Vec(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) gram[i][j] = pairing(form, basis[i], basis[j]);
  return basis.empty() ? BigInt(1) : determinant(gram);
}

// Projection onto the B-orthogonal complement of the hyperbolic pair (a, b),
// B(a, b) = 1: w - B(w, b) a + B(w, a) b.
Mat complement(const Mat& form, const Vec& a, const Vec& b, const Mat& spanning) {
  Mat projected;
  for (const auto& w : spanning) {
    projected.push_back(axpy(axpy(w, -pairing(form, w, b), a), pairing(form, w, a), b));
  }
  return lattice_basis(std::move(projected));
}

// Solve (form^T) z = rhs over Q and insist on an integral answer.
Vec solve_transpose(const Mat& form, const Vec& rhs) {
  const std::size_t k = rhs.size();
  std::vector<std::vector<Rational>> aug(k, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = Rational(form[j][i]);
    aug[i][k] = Rational(rhs[i]);
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t r = c;
    while (r < k && aug[r][c] == 0) ++r;
    if (r == k) throw DomainError("form is singular");
    std::swap(aug[c], aug[r]);
    const Rational inv = 1 / aug[c][c];
    for (auto& x : aug[c]) x *= inv;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == c || aug[i][c] == 0) continue;
      const Rational f = aug[i][c];
      for (std::size_t j = c; j <= k; ++j) aug[i][j] -= f * aug[c][j];
    }
  }
  Vec z(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (boost::multiprecision::denominator(aug[i][k]) != 1) {
      throw IntegrityError("dual vector is not integral; form is not unimodular");
    }
    z[i] = boost::multiprecision::numerator(aug[i][k]);
  }
  return z;
}

std::vector<BigInt> minimal_lift(const ModVector& delta) {
  return {delta.entries().begin(), delta.entries().end()};
}

void require_surjective(const ModVector& delta) {
  if (!is_primitive_vector(delta)) {
    throw DomainError("delta is not surjective onto Z/" + std::to_string(delta.modulus().value()) +
                      "Z: an epimorphism is required");
  }
}

std::int64_t narrow(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
    throw IntegrityError("basis entry exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(x);
}

}  // namespace

BigInt determinant(const std::vector<std::vector<BigInt>>& matrix) {
  const std::size_t k = matrix.size();
  if (k == 0) return 1;
  Mat a = matrix;
  BigInt sign = 1;
  BigInt previous = 1;
  for (std::size_t c = 0; c + 1 < k; ++c) {
    if (a[c][c] == 0) {
      std::size_t r = c + 1;
      while (r < k && a[r][c] == 0) ++r;
      if (r == k) return 0;
      std::swap(a[c], a[r]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < k; ++i) {
      for (std::size_t j = c + 1; j < k; ++j) {
        a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / previous;
      }
    }
    previous = a[c][c];
  }
  return sign * a[k - 1][k - 1];
}

BigInt determinant(const IntMatrix& matrix) { return determinant(to_big(matrix)); }

SkewForm standard_form(int g) {
  if (g < 1) throw DomainError("genus must be >= 1");
  SkewForm form{g, IntMatrix(static_cast<std::size_t>(2 * g))};
  for (std::size_t i = 0; i < static_cast<std::size_t>(g); ++i) {
    form.gram.at(2 * i, 2 * i + 1) = 1;
    form.gram.at(2 * i + 1, 2 * i) = -1;
  }
  return form;
}

void validate_unimodular_skew(const SkewForm& form) {
  if (form.g < 1 || form.gram.dimension() != static_cast<std::size_t>(2 * form.g)) {
    throw DomainError("form must be 2g x 2g");
  }
  for (std::size_t i = 0; i < form.gram.dimension(); ++i)
    for (std::size_t j = 0; j < form.gram.dimension(); ++j)
      if (form.gram.at(i, j) != -form.gram.at(j, i)) throw DomainError("form is not skew-symmetric");
  const BigInt det = determinant(form.gram);
  if (det != 1 && det != -1) throw DomainError("form is not unimodular (det = " + det.str() + ")");
}

std::vector<std::int64_t> primitive_with_unit_image(const ModVector& delta) {
  require_surjective(delta);
  const std::vector<BigInt> lift = minimal_lift(delta);
  BigInt d = 0;
  for (const auto& x : lift) d = boost::multiprecision::gcd(d, x);
  const std::size_t k = lift.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (lift[i] == d) {
      std::vector<std::int64_t> e(k, 0);
      e[i] = 1;
      return e;
    }
  }
  // Accumulate coefficients with sum c_i * lift_i = gcd of the prefix.
  Vec c(k, 0);
  BigInt running = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (lift[i] == 0) continue;
    const ExtendedGcd eg = extended_gcd(running, lift[i]);
    for (std::size_t j = 0; j < i; ++j) c[j] *= eg.coeff_a;
    c[i] = eg.coeff_b;
    running = eg.gcd;
  }
  BigInt content = 0;
  for (const auto& x : c) content = boost::multiprecision::gcd(content, x);
  std::vector<std::int64_t> v;
  for (const auto& x : c) v.push_back(narrow(x / content));
  return v;
}

std::vector<std::int64_t> SymplecticBasisCert::x(int i) const {
  std::vector<std::int64_t> col;
  for (std::size_t r = 0; r < change_of_basis.dimension(); ++r)
    col.push_back(change_of_basis.at(r, static_cast<std::size_t>(2 * (i - 1))));
  return col;
}

std::vector<std::int64_t> SymplecticBasisCert::y(int i) const {
  std::vector<std::int64_t> col;
  for (std::size_t r = 0; r < change_of_basis.dimension(); ++r)
    col.push_back(change_of_basis.at(r, static_cast<std::size_t>(2 * (i - 1) + 1)));
  return col;
}

SymplecticBasisCert adapt_basis(const ModVector& delta, int g) {
  return adapt_basis(delta, g, standard_form(g));
}

SymplecticBasisCert adapt_basis(const ModVector& delta, int g, const SkewForm& form) {
  if (g < 1) throw DomainError("genus must be >= 1");
  if (form.g != g) throw DomainError("form genus does not match g");
  validate_unimodular_skew(form);
  const auto dim = static_cast<std::size_t>(2 * g);
  if (delta.size() != dim) throw DomainError("delta must have 2g entries");
  require_surjective(delta);
  const std::uint64_t n = delta.modulus().value();
  const Mat b = to_big(form.gram);

  // delta lifts to an integral functional d * phi with phi primitive and
  // gcd(d, n) = 1; the seed satisfies phi(v) = 1.
  const Vec lift = minimal_lift(delta);
  BigInt d = 0;
  for (const auto& x : lift) d = boost::multiprecision::gcd(d, x);
  Vec phi;
  for (const auto& x : lift) phi.push_back(x / d);
  Vec v;
  for (auto x : primitive_with_unit_image(delta)) v.push_back(x);
  if (evaluate(phi, v) != 1) throw IntegrityError("seed vector does not evaluate to 1");

  // phi = B(z, .) for a unique integral z. Taking y1 = -z makes (v, y1)
  // hyperbolic and puts the whole orthogonal complement inside ker phi.
  Vec y1 = solve_transpose(b, phi);
  for (auto& x : y1) x = -x;
  if (pairing(b, v, y1) != 1 || evaluate(phi, y1) != 0) {
    throw IntegrityError("hyperbolic partner of the seed is inconsistent");
  }

  SymplecticBasisCert cert;
  cert.g = g;
  cert.n = n;
  Mat basis{v, y1};

  Mat identity(dim, Vec(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) identity[i][i] = 1;
  Mat rest = complement(b, v, y1, identity);
  while (true) {
    const BigInt det = gram_determinant(b, rest);
    cert.residual_determinants.push_back(det);
    if (det != 1) throw IntegrityError("residual form is not unimodular (det = " + det.str() + ")");
    if (rest.empty()) break;
    // B(a, .) is onto Z on the residual lattice; extended gcd gives the partner.
    const Vec& a = rest[0];
    Vec partner(dim, 0);
    BigInt running = 0;
    for (const auto& w : rest) {
      const BigInt value = pairing(b, a, w);
      if (value == 0) continue;
      const ExtendedGcd eg = extended_gcd(running, value);
      for (auto& x : partner) x *= eg.coeff_a;
      partner = axpy(partner, eg.coeff_b, w);
      running = eg.gcd;
    }
    if (running != 1) throw IntegrityError("residual form does not pair a basis vector onto Z");
    basis.push_back(a);
    basis.push_back(partner);
    rest = complement(b, a, partner, rest);
  }

  cert.change_of_basis = IntMatrix(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) cert.change_of_basis.at(i, j) = narrow(basis[j][i]);
    const BigInt image = evaluate(lift, basis[j]) % n;
    cert.delta_values.push_back(static_cast<Residue>(image < 0 ? image + n : image));
  }
  return cert;
}

bool is_symplectic(const IntMatrix& m, int g) {
  if (m.dimension() % 2 != 0) throw DomainError("symplectic check needs even dimension");
  if (m.dimension() != static_cast<std::size_t>(2 * g)) throw DomainError("matrix is not 2g x 2g");
  const Mat j = to_big(standard_form(g).gram);
  const Mat a = to_big(m);
  const std::size_t k = m.dimension();
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      Vec col_r(k), col_c(k);
      for (std::size_t i = 0; i < k; ++i) {
        col_r[i] = a[i][r];
        col_c[i] = a[i][c];
      }
      if (pairing(j, col_r, col_c) != j[r][c]) return false;
    }
  }
  return true;
}

std::vector<CertificateCheck> check_certificate(const SymplecticBasisCert& cert,
                                                const ModVector& delta, const SkewForm& form) {
  const std::size_t k = cert.change_of_basis.dimension();
  const std::uint64_t n = delta.modulus().value();
  const Mat b = to_big(form.gram);
  const Mat j = to_big(standard_form(cert.g).gram);
  std::vector<Vec> cols(k, Vec(k));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < k; ++i) cols[c][i] = cert.change_of_basis.at(i, c);

  bool pairing_ok = k == static_cast<std::size_t>(2 * form.g);
  for (std::size_t r = 0; pairing_ok && r < k; ++r)
    for (std::size_t c = 0; pairing_ok && c < k; ++c)
      if (pairing(b, cols[r], cols[c]) != j[r][c]) pairing_ok = false;

  std::vector<Residue> images;
  const Vec lift = minimal_lift(delta);
  for (const auto& col : cols) {
    BigInt image = evaluate(lift, col) % n;
    if (image < 0) image += n;
    images.push_back(static_cast<Residue>(image));
  }
  const bool generates = !images.empty() && std::gcd(images[0], n) == 1;
  const bool others_vanish =
      std::all_of(images.begin() + (images.empty() ? 0 : 1), images.end(), [](Residue r) { return r == 0; });
  const BigInt det = determinant(cert.change_of_basis);

  std::vector<CertificateCheck> checks{
      {"B(x_i,y_j)=delta_ij and B(x_i,x_j)=B(y_i,y_j)=0", pairing_ok},
      {"delta(x_1) generates Z/nZ", generates},
      {"delta vanishes on all other basis vectors", others_vanish},
      {"det(change_of_basis) = +-1", det == 1 || det == -1},
      {"recorded delta values match", images == cert.delta_values},
      {"residual forms unimodular",
       std::all_of(cert.residual_determinants.begin(), cert.residual_determinants.end(),
                   [](const BigInt& x) { return x == 1; })},
  };
  if (form.gram == standard_form(cert.g).gram) {
    checks.push_back({"change_of_basis^T J change_of_basis = J", is_symplectic(cert.change_of_basis, cert.g)});
  }
  return checks;
}

std::vector<CertificateCheck> check_certificate(const SymplecticBasisCert& cert,
                                                const ModVector& delta) {
  return check_certificate(cert, delta, standard_form(cert.g));
}

}  // namespace etale
