#pragma once

// Brute-force reference computations used as test oracles. Nothing here calls
// into etale_core beyond the plain data types, so agreement is meaningful.

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Q = boost::multiprecision::cpp_rational;
using Matrix = std::vector<std::vector<std::int64_t>>;

inline std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p <= m; ++p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  return out;
}

inline bool prime(std::uint64_t p) { return p >= 2 && factor(p).size() == 1 && factor(p)[0].second == 1; }

inline std::uint64_t phi(std::uint64_t m) {
  std::uint64_t c = 0;
  for (std::uint64_t a = 1; a <= m; ++a) c += std::gcd(a, m) == 1;
  return c;
}

inline std::uint64_t power(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Calls f(v) for every v in (Z/mZ)^dim, odometer order.
template <class F>
void for_each_vector(std::uint64_t m, std::size_t dim, F&& f) {
  std::vector<std::uint64_t> v(dim, 0);
  while (true) {
    f(v);
    std::size_t j = 0;
    for (; j < dim; ++j) {
      if (++v[j] < m) break;
      v[j] = 0;
    }
    if (j == dim) return;
  }
}

inline bool primitive(const std::vector<std::uint64_t>& v, std::uint64_t m) {
  std::uint64_t g = m;
  for (auto x : v) g = std::gcd(g, x);
  return g == 1;
}

inline std::uint64_t count_primitive(std::size_t dim, std::uint64_t m) {
  std::uint64_t c = 0;
  for_each_vector(m, dim, [&](const auto& v) { c += primitive(v, m); });
  return c;
}

// Every residue r mod modulus with poly(r) == 0; poly low degree first.
inline std::vector<std::uint64_t> roots(const std::vector<std::int64_t>& poly, std::uint64_t modulus) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < modulus; ++x) {
    Big acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;) acc = (acc * x + poly[i]) % modulus;
    if (acc < 0) acc += modulus;
    if (acc == 0) out.push_back(x);
  }
  return out;
}

inline std::vector<std::int64_t> geometric(int n) { return std::vector<std::int64_t>(n, 1); }

inline Matrix identity(std::size_t k) {
  Matrix m(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) m[i][i] = 1;
  return m;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t k = a.size();
  Matrix c(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < k; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

// The deck transformation written out entry by entry: identity on the first
// two coordinates, then 2g-2 interleaved copies of the n-cycle e_i -> e_{i+1}.
inline Matrix deck(int g, int n) {
  const std::size_t r = static_cast<std::size_t>(2 * g - 2);
  const std::size_t k = 2 + static_cast<std::size_t>(n) * r;
  Matrix m(k, std::vector<std::int64_t>(k, 0));
  m[0][0] = m[1][1] = 1;
  for (std::size_t block = 0; block < static_cast<std::size_t>(n); ++block) {
    const std::size_t next = (block + 1) % static_cast<std::size_t>(n);
    for (std::size_t t = 0; t < r; ++t) m[2 + next * r + t][2 + block * r + t] = 1;
  }
  return m;
}

// Characteristic polynomial det(xI - A) by Faddeev-LeVerrier over Q; low
// degree first.
inline std::vector<Big> charpoly(const Matrix& a) {
  const std::size_t k = a.size();
  std::vector<std::vector<Q>> mk(k, std::vector<Q>(k, 0));
  std::vector<Q> c(k + 1, 0);
  c[k] = 1;
  std::vector<std::vector<Q>> aq(k, std::vector<Q>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) aq[i][j] = a[i][j];
  for (std::size_t step = 1; step <= k; ++step) {
    // M_step = A M_{step-1} + c_{k-step+1} I
    std::vector<std::vector<Q>> next(k, std::vector<Q>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t l = 0; l < k; ++l)
        for (std::size_t j = 0; j < k; ++j) next[i][j] += aq[i][l] * mk[l][j];
    for (std::size_t i = 0; i < k; ++i) next[i][i] += c[k - step + 1];
    Q trace = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t l = 0; l < k; ++l) trace += aq[i][l] * next[l][i];
    c[k - step] = -trace / step;
    mk = std::move(next);
  }
  std::vector<Big> out;
  for (const auto& x : c) out.push_back(boost::multiprecision::numerator(x));
  return out;
}

inline std::vector<Big> poly_mul(const std::vector<Big>& a, const std::vector<Big>& b) {
  std::vector<Big> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Degree of the minimal polynomial over F_p: the first k with I, A, ..., A^k
// linearly dependent, found by Gaussian elimination on flattened powers.
inline std::size_t minpoly_degree(const Matrix& a, std::uint64_t p) {
  const std::size_t k = a.size();
  std::vector<std::vector<std::int64_t>> basis;  // reduced rows with pivots
  std::vector<std::size_t> pivots;
  Matrix pw = identity(k);
  auto mod = [p](std::int64_t x) {
    const auto r = static_cast<std::int64_t>(x % static_cast<std::int64_t>(p));
    return r < 0 ? r + static_cast<std::int64_t>(p) : r;
  };
  auto inv = [p, &mod](std::int64_t x) {
    for (std::int64_t y = 1; y < static_cast<std::int64_t>(p); ++y)
      if (mod(x * y) == 1) return y;
    return std::int64_t{0};
  };
  for (std::size_t deg = 0; deg <= k; ++deg) {
    std::vector<std::int64_t> row;
    for (const auto& r : pw)
      for (auto x : r) row.push_back(mod(x));
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::int64_t f = row[pivots[b]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < row.size(); ++j) row[j] = mod(row[j] - f * basis[b][j]);
    }
    std::size_t piv = 0;
    while (piv < row.size() && row[piv] == 0) ++piv;
    if (piv == row.size()) return deg;
    const std::int64_t s = inv(row[piv]);
    for (auto& x : row) x = mod(x * s);
    basis.push_back(row);
    pivots.push_back(piv);
    pw = multiply(pw, a);
    for (auto& r : pw)
      for (auto& x : r) x = mod(x);
  }
  return k;
}

// Primitive eigenvectors of A mod m with unit eigenvalue != 1, counted by
// direct matrix-vector products, then divided into scalar orbits.
struct Directions {
  std::uint64_t primitive_eigenvectors = 0;
  std::uint64_t directions = 0;
};

inline Directions directions(const Matrix& a, std::uint64_t m) {
  const std::size_t k = a.size();
  Directions d;
  for_each_vector(m, k, [&](const std::vector<std::uint64_t>& v) {
    if (!primitive(v, m)) return;
    std::vector<std::uint64_t> w(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < k; ++j) s += a[i][j] * static_cast<std::int64_t>(v[j]);
      s %= static_cast<std::int64_t>(m);
      w[i] = static_cast<std::uint64_t>(s < 0 ? s + static_cast<std::int64_t>(m) : s);
    }
    for (std::uint64_t lambda = 2; lambda < m; ++lambda) {
      if (std::gcd(lambda, m) != 1) continue;
      bool eigen = true;
      for (std::size_t i = 0; i < k && eigen; ++i) eigen = w[i] == lambda * v[i] % m;
      if (eigen) {
        ++d.primitive_eigenvectors;
        break;
      }
    }
  });
  d.directions = d.primitive_eigenvectors / phi(m);
  return d;
}

inline Matrix standard_form(int g) {
  Matrix j(static_cast<std::size_t>(2 * g), std::vector<std::int64_t>(static_cast<std::size_t>(2 * g), 0));
  for (std::size_t i = 0; i < static_cast<std::size_t>(g); ++i) {
    j[2 * i][2 * i + 1] = 1;
    j[2 * i + 1][2 * i] = -1;
  }
  return j;
}

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.size(), std::vector<std::int64_t>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t[j][i] = a[i][j];
  return t;
}

// Determinant by cofactor expansion; fine for the 4x4 and 6x6 cases here.
inline Big det(const Matrix& a) {
  const std::size_t k = a.size();
  if (k == 0) return 1;
  if (k == 1) return a[0][0];
  Big s = 0;
  for (std::size_t c = 0; c < k; ++c) {
    if (a[0][c] == 0) continue;
    Matrix minor;
    for (std::size_t i = 1; i < k; ++i) {
      std::vector<std::int64_t> row;
      for (std::size_t j = 0; j < k; ++j)
        if (j != c) row.push_back(a[i][j]);
      minor.push_back(row);
    }
    const Big term = a[0][c] * det(minor);
    s += (c % 2 == 0) ? term : Big(-term);
  }
  return s;
}

}  // namespace oracle
