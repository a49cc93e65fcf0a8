#include "etale/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "etale/errors.hpp"

namespace etale {
namespace {

BigInt canonical(const BigInt& c, std::uint64_t modulus) {
  BigInt r = c % modulus;
  if (r < 0) r += modulus;
  return r;
}

std::optional<std::uint64_t> common_ring(const ModPoly& a, const ModPoly& b) {
  if (a.modulus() != b.modulus()) {
    throw DomainError("polynomials live over different coefficient rings");
  }
  return a.modulus();
}

bool is_unit(const BigInt& c, std::optional<std::uint64_t> modulus) {
  if (!modulus) return c == 1 || c == -1;
  return boost::multiprecision::gcd(canonical(c, *modulus), BigInt(*modulus)) == 1;
}

BigInt unit_inverse(const BigInt& c, std::optional<std::uint64_t> modulus) {
  if (!modulus) return c;  // +-1 is its own inverse
  const auto r = static_cast<Residue>(canonical(c, *modulus));
  return inverse_mod(r, *modulus);
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

}  // namespace

ModPoly::ModPoly(std::vector<BigInt> coefficients, std::optional<std::uint64_t> modulus)
    : coefficients_(std::move(coefficients)), modulus_(modulus) {
  if (modulus_ && *modulus_ < 2) throw DomainError("coefficient modulus must be >= 2");
  normalize();
}

void ModPoly::normalize() {
  if (modulus_) {
    for (auto& c : coefficients_) c = canonical(c, *modulus_);
  }
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

ModPoly ModPoly::over_integers(std::vector<BigInt> coefficients) {
  return ModPoly(std::move(coefficients), std::nullopt);
}

ModPoly ModPoly::over_ring(std::vector<BigInt> coefficients, std::uint64_t modulus) {
  return ModPoly(std::move(coefficients), modulus);
}

ModPoly ModPoly::linear(const BigInt& root, std::optional<std::uint64_t> modulus) {
  return ModPoly({-root, BigInt(1)}, modulus);
}

ModPoly ModPoly::constant(const BigInt& c, std::optional<std::uint64_t> modulus) {
  return ModPoly({c}, modulus);
}

ModPoly ModPoly::reduced(std::uint64_t modulus) const {
  if (modulus_ && *modulus_ % modulus != 0) {
    throw DomainError("cannot reduce mod " + std::to_string(modulus) + " from Z/" +
                      std::to_string(*modulus_));
  }
  return ModPoly(coefficients_, modulus);
}

ModPoly ModPoly::lifted() const { return ModPoly(coefficients_, std::nullopt); }

Residue ModPoly::evaluate_mod(Residue x, std::uint64_t modulus) const {
  Residue acc = 0;
  x %= modulus;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    const auto c = static_cast<Residue>(canonical(*it, modulus));
    acc = add_mod(mul_mod(acc, x, modulus), c, modulus);
  }
  return acc;
}

BigInt ModPoly::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  if (modulus_) acc = canonical(acc, *modulus_);
  return acc;
}

ModPoly ModPoly::derivative() const {
  std::vector<BigInt> d;
  for (std::size_t i = 1; i < coefficients_.size(); ++i) {
    d.push_back(coefficients_[i] * static_cast<unsigned>(i));
  }
  return ModPoly(std::move(d), modulus_);
}

std::string ModPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coefficients_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigInt magnitude = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (magnitude != 1 || i == 0) out << magnitude;
    if (i >= 1) out << 'x';
    if (i >= 2) out << '^' << i;
  }
  if (modulus_) out << " (mod " << *modulus_ << ')';
  return out.str();
}

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
  const auto ring = common_ring(a, b);
  std::vector<BigInt> c(std::max(a.coefficients_.size(), b.coefficients_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
  return ModPoly(std::move(c), ring);
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) {
  const auto ring = common_ring(a, b);
  std::vector<BigInt> c(std::max(a.coefficients_.size(), b.coefficients_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) - b.coefficient(i);
  return ModPoly(std::move(c), ring);
}

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
  const auto ring = common_ring(a, b);
  if (a.is_zero() || b.is_zero()) return ModPoly({}, ring);
  std::vector<BigInt> c(a.coefficients_.size() + b.coefficients_.size() - 1);
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) {
      c[i + j] += a.coefficients_[i] * b.coefficients_[j];
    }
  }
  return ModPoly(std::move(c), ring);
}

ModPoly pow(const ModPoly& base, unsigned exponent) {
  ModPoly result = ModPoly::constant(1, base.modulus());
  ModPoly square = base;
  while (exponent > 0) {
    if (exponent & 1U) result = result * square;
    exponent >>= 1U;
    if (exponent > 0) square = square * square;
  }
  return result;
}

PolyDivision divide(const ModPoly& dividend, const ModPoly& divisor) {
  const auto ring = common_ring(dividend, divisor);
  if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
  if (!is_unit(divisor.leading(), ring)) {
    throw DomainError("divisor leading coefficient is not a unit");
  }
  const BigInt lead_inv = unit_inverse(divisor.leading(), ring);
  const int dd = divisor.degree();
  std::vector<BigInt> rem(dividend.coefficients().begin(), dividend.coefficients().end());
  std::vector<BigInt> quot(
      static_cast<std::size_t>(std::max(0, dividend.degree() - dd + 1)));
  for (int i = dividend.degree(); i >= dd; --i) {
    BigInt c = rem[static_cast<std::size_t>(i)] * lead_inv;
    if (ring) c = canonical(c, *ring);
    if (c == 0) continue;
    quot[static_cast<std::size_t>(i - dd)] = c;
    for (int j = 0; j <= dd; ++j) {
      auto& r = rem[static_cast<std::size_t>(i - dd + j)];
      r -= c * divisor.coefficient(static_cast<std::size_t>(j));
      if (ring) r = canonical(r, *ring);
    }
  }
  if (ring) {
    return {ModPoly::over_ring(std::move(quot), *ring), ModPoly::over_ring(std::move(rem), *ring)};
  }
  return {ModPoly::over_integers(std::move(quot)), ModPoly::over_integers(std::move(rem))};
}

ModPoly gcd_mod_prime(const ModPoly& a, const ModPoly& b) {
  const auto ring = common_ring(a, b);
  if (!ring || !is_prime(*ring)) throw DomainError("gcd_mod_prime needs a prime modulus");
  ModPoly x = a, y = b;
  while (!y.is_zero()) {
    ModPoly r = divide(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return divide(x, ModPoly::constant(x.leading(), ring)).quotient;
}

bool is_squarefree_mod_prime(const ModPoly& q) {
  if (!q.modulus() || !is_prime(*q.modulus())) {
    throw DomainError("is_squarefree_mod_prime needs a polynomial over F_p");
  }
  if (q.degree() <= 0) return true;
  const ModPoly dq = q.derivative();
  if (dq.is_zero()) return false;  // q is a p-th power
  return gcd_mod_prime(q, dq).degree() == 0;
}

ModPoly cyclotomic(int d) {
  if (d < 1) throw DomainError("cyclotomic index must be >= 1");
  std::vector<BigInt> xd(static_cast<std::size_t>(d) + 1);
  xd.front() = -1;
  xd.back() = 1;
  ModPoly result = ModPoly::over_integers(std::move(xd));
  for (int k = 1; k < d; ++k) {
    if (d % k != 0) continue;
    PolyDivision qr = divide(result, cyclotomic(k));
    if (!qr.remainder.is_zero()) throw IntegrityError("cyclotomic division left a remainder");
    result = std::move(qr.quotient);
  }
  return result;
}

ModPoly geometric_series(int n) {
  if (n < 1) throw DomainError("geometric series length must be >= 1");
  return ModPoly::over_integers(std::vector<BigInt>(static_cast<std::size_t>(n), BigInt(1)));
}

ModPoly sigma_charpoly(int g, int n) {
  if (g < 2 || n < 2) throw DomainError("sigma_charpoly needs g >= 2 and n >= 2");
  return pow(ModPoly::linear(1), static_cast<unsigned>(2 * g)) *
         pow(geometric_series(n), static_cast<unsigned>(2 * g - 2));
}

std::vector<Residue> linear_roots_mod_p(const ModPoly& poly, std::uint64_t p) {
  require_prime(p);
  const ModPoly reduced = poly.reduced(p);
  if (reduced.is_zero()) throw DomainError("polynomial vanishes identically mod p");
  std::vector<Residue> coeffs;
  for (const auto& c : reduced.coefficients()) coeffs.push_back(static_cast<Residue>(c));
  std::vector<Residue> roots;
  for (Residue x = 0; x < p; ++x) {
    Residue acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      acc = add_mod(mul_mod(acc, x, p), *it, p);
    }
    if (acc == 0) roots.push_back(x);
  }
  return roots;
}

HenselTrace hensel_lift_trace(const ModPoly& poly, Residue root, std::uint64_t p, unsigned e) {
  if (poly.modulus()) throw DomainError("Hensel lifting expects a polynomial over Z");
  require_prime(p);
  if (e < 1) throw DomainError("target exponent must be >= 1");
  root %= p;
  if (poly.evaluate_mod(root, p) != 0) {
    throw DomainError(std::to_string(root) + " is not a root mod " + std::to_string(p));
  }
  const ModPoly dpoly = poly.derivative();
  if (dpoly.evaluate_mod(root, p) == 0) {
    throw LiftError("derivative vanishes at " + std::to_string(root) + " mod " +
                    std::to_string(p) + "; root is not simple");
  }
  HenselTrace trace;
  trace.root_mod_p = root;
  trace.steps.push_back({1, root});
  Residue a = root;
  unsigned precision = 1;
  while (precision < e) {
    precision = std::min(2 * precision, e);
    const std::uint64_t q = ipow(p, precision);
    const Residue fa = poly.evaluate_mod(a, q);
    const Residue dfa_inv = inverse_mod(dpoly.evaluate_mod(a, q), q);
    a = sub_mod(a % q, mul_mod(fa, dfa_inv, q), q);
    trace.steps.push_back({precision, a});
  }
  trace.lifted = a;
  return trace;
}

Residue hensel_lift_root(const ModPoly& poly, Residue root, std::uint64_t p, unsigned e) {
  return hensel_lift_trace(poly, root, p, e).lifted;
}

std::vector<Residue> eigenvalue_set(int n, std::uint64_t p, unsigned e) {
  if (n < 2) throw DomainError("n must be >= 2");
  if (e < 1) throw DomainError("exponent e must be >= 1");
  require_prime(p);
  if (std::gcd(static_cast<std::uint64_t>(n), p) != 1) {
    throw DomainError("coprimality required: gcd(n, p) must be 1");
  }
  const ModPoly f = geometric_series(n);
  std::vector<Residue> lifted;
  for (Residue r : linear_roots_mod_p(f, p)) lifted.push_back(hensel_lift_root(f, r, p, e));
  std::sort(lifted.begin(), lifted.end());
  return lifted;
}

int linear_factor_count(int n, std::uint64_t p) {
  if (n < 1) throw DomainError("n must be >= 1");
  require_prime(p);
  if (std::gcd(static_cast<std::uint64_t>(n), p) != 1) {
    throw DomainError("coprimality required: gcd(n, p) must be 1");
  }
  return static_cast<int>(std::gcd(static_cast<std::uint64_t>(n), p - 1)) - 1;
}

std::uint64_t multiplicative_order(Residue a, std::uint64_t modulus) {
  if (std::gcd(a % modulus, modulus) != 1) throw DomainError("order of a non-unit");
  Residue x = a % modulus;
  std::uint64_t k = 1;
  while (x != 1 % modulus) {
    x = mul_mod(x, a, modulus);
    ++k;
  }
  return k;
}

}  // namespace etale
