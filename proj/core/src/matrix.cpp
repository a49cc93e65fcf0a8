#include "etale/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "etale/errors.hpp"

namespace etale {
namespace {

// Berkowitz: coefficients of det(xI - A), highest degree first, over any
// commutative ring described by Ring (zero/one/add/sub/mul).
template <typename Ring>
std::vector<typename Ring::value_type> berkowitz(
    std::size_t n, const std::vector<typename Ring::value_type>& a, const Ring& ring) {
  using T = typename Ring::value_type;
  auto entry = [&](std::size_t i, std::size_t j) -> const T& { return a[i * n + j]; };
  std::vector<T> coeffs{ring.one()};
  for (std::size_t r = 0; r < n; ++r) {
    // Leading (r+1)x(r+1) block is [[M, R], [S, a_rr]] with M the r x r block.
    std::vector<T> toeplitz(r + 2, ring.zero());
    toeplitz[0] = ring.one();
    toeplitz[1] = ring.neg(entry(r, r));
    std::vector<T> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = entry(i, r);
    for (std::size_t k = 2; k < r + 2; ++k) {
      T s = ring.zero();
      for (std::size_t j = 0; j < r; ++j) s = ring.add(s, ring.mul(entry(r, j), v[j]));
      toeplitz[k] = ring.neg(s);
      if (k + 1 < r + 2) {
        std::vector<T> next(r, ring.zero());
        for (std::size_t i = 0; i < r; ++i) {
          for (std::size_t j = 0; j < r; ++j) {
            if (entry(i, j) != ring.zero()) next[i] = ring.add(next[i], ring.mul(entry(i, j), v[j]));
          }
        }
        v = std::move(next);
      }
    }
    std::vector<T> updated(r + 2, ring.zero());
    for (std::size_t i = 0; i < r + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, r); ++j) {
        updated[i] = ring.add(updated[i], ring.mul(toeplitz[i - j], coeffs[j]));
      }
    }
    coeffs = std::move(updated);
  }
  return coeffs;
}

struct IntegerRing {
  using value_type = BigInt;
  BigInt zero() const { return 0; }
  BigInt one() const { return 1; }
  BigInt neg(const BigInt& x) const { return -x; }
  BigInt add(const BigInt& x, const BigInt& y) const { return x + y; }
  BigInt mul(const BigInt& x, const BigInt& y) const { return x * y; }
};

struct ResidueRing {
  using value_type = Residue;
  std::uint64_t m;
  Residue zero() const { return 0; }
  Residue one() const { return 1 % m; }
  Residue neg(Residue x) const { return x == 0 ? 0 : m - x; }
  Residue add(Residue x, Residue y) const { return add_mod(x, y, m); }
  Residue mul(Residue x, Residue y) const { return mul_mod(x, y, m); }
};

template <typename T>
std::vector<T> reversed(std::vector<T> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

void require_square_sizes(int n) {
  if (n < 2) throw DomainError("n must be >= 2");
}

}  // namespace

IntMatrix::IntMatrix(std::size_t dimension) : dim_(dimension), entries_(dimension * dimension) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : dim_(rows.size()) {
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DomainError("IntMatrix must be square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t dimension) {
  IntMatrix id(dimension);
  for (std::size_t i = 0; i < dimension; ++i) id.at(i, i) = 1;
  return id;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t.at(j, i) = at(i, j);
  return t;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < dim_; ++i) {
    out << '[';
    for (std::size_t j = 0; j < dim_; ++j) out << (j ? " " : "") << at(i, j);
    out << "]\n";
  }
  return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim_ != b.dim_) throw DomainError("matrix dimensions differ");
  IntMatrix c(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i)
    for (std::size_t k = 0; k < a.dim_; ++k) {
      const std::int64_t x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < a.dim_; ++j) c.at(i, j) += x * b.at(k, j);
    }
  return c;
}

IntMatrix power(const IntMatrix& base, unsigned exponent) {
  IntMatrix result = IntMatrix::identity(base.dimension());
  for (unsigned i = 0; i < exponent; ++i) result = result * base;
  return result;
}

ModMatrix::ModMatrix(std::size_t dimension, FactoredModulus modulus)
    : dim_(dimension), modulus_(std::move(modulus)), entries_(dimension * dimension, 0) {}

ModMatrix::ModMatrix(const IntMatrix& lift, FactoredModulus modulus)
    : dim_(lift.dimension()), modulus_(std::move(modulus)) {
  entries_.reserve(dim_ * dim_);
  for (auto x : lift.entries()) entries_.push_back(reduce(x, modulus_.value()));
}

ModMatrix ModMatrix::identity(std::size_t dimension, FactoredModulus modulus) {
  ModMatrix id(dimension, std::move(modulus));
  for (std::size_t i = 0; i < dimension; ++i) id.at(i, i) = 1 % id.m();
  return id;
}

bool ModMatrix::is_identity() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (at(i, j) != (i == j ? 1 % m() : 0)) return false;
  return true;
}

ModMatrix ModMatrix::reduced(const FactoredModulus& divisor) const {
  if (m() % divisor.value() != 0) throw DomainError("reduction modulus must divide m");
  ModMatrix r(dim_, divisor);
  for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] % divisor.value();
  return r;
}

ModMatrix ModMatrix::minus_scalar(Residue lambda) const {
  ModMatrix r = *this;
  for (std::size_t i = 0; i < dim_; ++i) r.at(i, i) = sub_mod(at(i, i), lambda % m(), m());
  return r;
}

std::vector<Residue> ModMatrix::apply(std::span<const Residue> v) const {
  if (v.size() != dim_) throw DomainError("vector length does not match matrix dimension");
  std::vector<Residue> w(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (at(i, j) != 0) w[i] = add_mod(w[i], mul_mod(at(i, j), v[j], m()), m());
  return w;
}

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
  if (a.dim_ != b.dim_ || !(a.modulus_ == b.modulus_)) {
    throw DomainError("matrix shapes or moduli differ");
  }
  ModMatrix c(a.dim_, a.modulus_);
  const std::uint64_t m = a.m();
  for (std::size_t i = 0; i < a.dim_; ++i)
    for (std::size_t k = 0; k < a.dim_; ++k) {
      const Residue x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < a.dim_; ++j)
        c.at(i, j) = add_mod(c.at(i, j), mul_mod(x, b.at(k, j), m), m);
    }
  return c;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t na = a.dimension(), nb = b.dimension();
  IntMatrix k(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const std::int64_t x = a.at(i, j);
      if (x == 0) continue;
      for (std::size_t r = 0; r < nb; ++r)
        for (std::size_t c = 0; c < nb; ++c) k.at(i * nb + r, j * nb + c) = x * b.at(r, c);
    }
  return k;
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t na = a.dimension(), nb = b.dimension();
  IntMatrix s(na + nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) s.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) s.at(na + i, na + j) = b.at(i, j);
  return s;
}

IntMatrix companion_G(int n) {
  require_square_sizes(n);
  const auto k = static_cast<std::size_t>(n - 1);
  IntMatrix g(k);
  for (std::size_t i = 0; i < k; ++i) {
    g.at(i, k - 1) = -1;
    if (i > 0) g.at(i, i - 1) = 1;
  }
  return g;
}

IntMatrix cyclic_shift(int n) {
  require_square_sizes(n);
  const auto k = static_cast<std::size_t>(n);
  IntMatrix s(k);
  s.at(0, k - 1) = 1;
  for (std::size_t i = 1; i < k; ++i) s.at(i, i - 1) = 1;
  return s;
}

IntMatrix deck_matrix(int g, int n) {
  if (g < 2 || n < 2) throw DomainError("deck_matrix needs g >= 2 and n >= 2");
  const auto block = IntMatrix::identity(static_cast<std::size_t>(2 * g - 2));
  return direct_sum(IntMatrix::identity(2), kron(cyclic_shift(n), block));
}

IntMatrix canonical_form(int g, int n) {
  if (g < 2 || n < 2) throw DomainError("canonical_form needs g >= 2 and n >= 2");
  const auto block = IntMatrix::identity(static_cast<std::size_t>(2 * g - 2));
  return direct_sum(IntMatrix::identity(static_cast<std::size_t>(2 * g)),
                    kron(companion_G(n), block));
}

ModPoly charpoly(const IntMatrix& m) {
  std::vector<BigInt> entries(m.entries().begin(), m.entries().end());
  return ModPoly::over_integers(reversed(berkowitz(m.dimension(), entries, IntegerRing{})));
}

ModPoly charpoly_mod(const ModMatrix& m) {
  std::vector<Residue> entries(m.entries().begin(), m.entries().end());
  auto coeffs = reversed(berkowitz(m.dimension(), entries, ResidueRing{m.m()}));
  return ModPoly::over_ring(std::vector<BigInt>(coeffs.begin(), coeffs.end()), m.m());
}

ModPoly minpoly_mod(const ModMatrix& m) {
  if (!m.modulus().is_prime()) {
    throw DomainError("minimal polynomial is only defined here over a prime field");
  }
  const std::uint64_t p = m.m();
  const std::size_t len = m.dimension() * m.dimension();
  // Row-reduce vec(I), vec(M), vec(M^2), ... keeping, for every reduced row,
  // its expression as a combination of the powers. The first power whose
  // reduced row vanishes yields the annihilating relation of least degree.
  struct Reduced {
    std::vector<Residue> row;
    std::vector<Residue> combo;  // coefficient of M^i
    std::size_t pivot;
  };
  std::vector<Reduced> basis;
  ModMatrix current = ModMatrix::identity(m.dimension(), m.modulus());
  for (std::size_t k = 0; k <= m.dimension(); ++k) {
    std::vector<Residue> row(current.entries().begin(), current.entries().end());
    std::vector<Residue> combo(k + 1, 0);
    combo[k] = 1;
    for (const auto& b : basis) {
      const Residue c = row[b.pivot];
      if (c == 0) continue;
      for (std::size_t i = 0; i < len; ++i) row[i] = sub_mod(row[i], mul_mod(c, b.row[i], p), p);
      for (std::size_t i = 0; i < b.combo.size(); ++i)
        combo[i] = sub_mod(combo[i], mul_mod(c, b.combo[i], p), p);
    }
    const auto nz = std::find_if(row.begin(), row.end(), [](Residue x) { return x != 0; });
    if (nz == row.end()) {
      return ModPoly::over_ring(std::vector<BigInt>(combo.begin(), combo.end()), p);
    }
    const auto pivot = static_cast<std::size_t>(nz - row.begin());
    const Residue inv = inverse_mod(row[pivot], p);
    for (auto& x : row) x = mul_mod(x, inv, p);
    for (auto& x : combo) x = mul_mod(x, inv, p);
    for (auto& b : basis) {
      const Residue c = b.row[pivot];
      if (c == 0) continue;
      for (std::size_t i = 0; i < len; ++i) b.row[i] = sub_mod(b.row[i], mul_mod(c, row[i], p), p);
      b.combo.resize(combo.size(), 0);
      for (std::size_t i = 0; i < combo.size(); ++i)
        b.combo[i] = sub_mod(b.combo[i], mul_mod(c, combo[i], p), p);
    }
    basis.push_back({std::move(row), std::move(combo), pivot});
    current = current * m;
  }
  throw IntegrityError("no annihilating polynomial of degree <= dimension (Cayley-Hamilton)");
}

ModPoly minpoly_mod(const IntMatrix& m, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  return minpoly_mod(ModMatrix(m, factorize(static_cast<std::int64_t>(p))));
}

std::uint64_t matrix_order(const ModMatrix& m, std::uint64_t max_order) {
  for (const auto& f : m.modulus().factors()) {
    const ModPoly cp = charpoly_mod(m.reduced(FactoredModulus::from_factors({{f.p, 1}})));
    if (cp.coefficient(0) == 0) {
      throw DomainError("matrix is singular mod " + std::to_string(f.p));
    }
  }
  ModMatrix x = m;
  for (std::uint64_t k = 1; k <= max_order; ++k) {
    if (x.is_identity()) return k;
    x = x * m;
  }
  throw DomainError("matrix order exceeds " + std::to_string(max_order));
}

std::string to_string(SimilarityOutcome outcome) {
  switch (outcome) {
    case SimilarityOutcome::Similar: return "SIMILAR";
    case SimilarityOutcome::NotSimilar: return "NOT-SIMILAR";
    case SimilarityOutcome::NotDecided: return "NOT-DECIDED";
  }
  return "?";
}

SimilarityVerdict similarity_verdict(const IntMatrix& a, const IntMatrix& b,
                                     const FactoredModulus& m) {
  SimilarityVerdict verdict{SimilarityOutcome::Similar, {}, {}};
  if (a.dimension() != b.dimension()) {
    verdict.outcome = SimilarityOutcome::NotSimilar;
    verdict.witness = "dimensions differ";
    return verdict;
  }
  for (const auto& f : m.factors()) {
    const FactoredModulus field = FactoredModulus::from_factors({{f.p, 1}});
    const ModMatrix am(a, field), bm(b, field);
    PrimeSimilarity ps{f.p, charpoly_mod(am), charpoly_mod(bm), minpoly_mod(am), minpoly_mod(bm),
                       false};
    ps.minpoly_squarefree = is_squarefree_mod_prime(ps.minpoly_a);
    if (verdict.outcome != SimilarityOutcome::NotSimilar) {
      if (ps.charpoly_a != ps.charpoly_b) {
        verdict.outcome = SimilarityOutcome::NotSimilar;
        verdict.witness = "characteristic polynomials differ mod " + std::to_string(f.p);
      } else if (ps.minpoly_a != ps.minpoly_b) {
        verdict.outcome = SimilarityOutcome::NotSimilar;
        verdict.witness = "minimal polynomials differ mod " + std::to_string(f.p);
      } else if (!ps.minpoly_squarefree && verdict.outcome == SimilarityOutcome::Similar) {
        verdict.outcome = SimilarityOutcome::NotDecided;
        verdict.witness = "minimal polynomial has a repeated factor mod " + std::to_string(f.p);
      }
    }
    verdict.per_prime.push_back(std::move(ps));
  }
  if (verdict.outcome != SimilarityOutcome::Similar) return verdict;

  // Lifting similarity from the residue fields to Z/mZ needs orders prime to m.
  verdict.order_a = matrix_order(ModMatrix(a, m));
  verdict.order_b = matrix_order(ModMatrix(b, m));
  for (const auto& f : m.factors()) {
    if (verdict.order_a % f.p == 0 || verdict.order_b % f.p == 0) {
      throw DomainError("matrix order is not prime to " + std::to_string(f.p) +
                        "; residue-field similarity does not lift");
    }
  }
  return verdict;
}

}  // namespace etale
