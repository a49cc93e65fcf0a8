#include "etale/covering_count.hpp"

#include <numeric>

#include "etale/errors.hpp"

namespace etale {
namespace {

// 1 + x^{-1} + ... + x^{-(terms-1)}
Rational inverse_geometric(std::uint64_t x, unsigned terms) {
  Rational sum = 0;
  Rational power = 1;
  for (unsigned k = 0; k < terms; ++k) {
    sum += power;
    power /= x;
  }
  return sum;
}

// 1 + x + ... + x^{terms-1}
BigInt geometric(std::uint64_t x, unsigned terms) {
  BigInt sum = 0;
  BigInt power = 1;
  for (unsigned k = 0; k < terms; ++k) {
    sum += power;
    power *= x;
  }
  return sum;
}

int lf_count(std::uint64_t p, std::int64_t n) {
  return static_cast<int>(std::gcd(static_cast<std::uint64_t>(n), p - 1)) - 1;
}

BigInt require_integral(const Rational& value, const char* what) {
  if (boost::multiprecision::denominator(value) != 1) {
    throw IntegrityError(std::string(what) + " is not an integer: " + value.str());
  }
  return boost::multiprecision::numerator(value);
}

}  // namespace

void validate_cover_parameters(int g, std::int64_t m, std::int64_t n) {
  if (g < 2) throw DomainError("genus g must be >= 2");
  if (m < 2) throw DomainError("m must be >= 2");
  if (n < 2) throw DomainError("n must be >= 2");
  if (std::gcd(m, n) != 1) {
    throw DomainError("coprimality required: gcd(m, n) = " + std::to_string(std::gcd(m, n)) +
                      ", counting is only defined for gcd(m, n) = 1");
  }
}

Rational rational_T(int g, std::int64_t m, std::int64_t n) {
  validate_cover_parameters(g, m, n);
  Rational value = pow_big(BigInt(m), static_cast<unsigned>(2 * g - 3));
  for (const auto& f : factorize(m).factors()) {
    value *= lf_count(f.p, n) * inverse_geometric(f.p, static_cast<unsigned>(2 * g - 2));
  }
  return value;
}

Rational rational_T_by_division(int g, std::int64_t m, std::int64_t n) {
  validate_cover_parameters(g, m, n);
  const auto k = static_cast<unsigned>(2 * g - 2);
  Rational value = 1;
  for (const auto& f : factorize(m).factors()) {
    const BigInt pe = pow_big(BigInt(f.p), f.e);
    const Rational p_inv = Rational(1, f.p);
    Rational numerator = lf_count(f.p, n) * Rational(pow_big(pe, k)) *
                         (1 - Rational(BigInt(1), pow_big(BigInt(f.p), k)));
    Rational denominator = Rational(pe) * (1 - p_inv);
    value *= numerator / denominator;
  }
  return value;
}

Rational rational_cyclic(int g, std::int64_t n) {
  if (g < 2) throw DomainError("genus g must be >= 2");
  if (n < 2) throw DomainError("n must be >= 2");
  Rational value = pow_big(BigInt(n), static_cast<unsigned>(2 * g - 1));
  for (const auto& f : factorize(n).factors()) {
    value *= inverse_geometric(f.p, static_cast<unsigned>(2 * g));
  }
  return value;
}

Rational rational_total(int g, std::int64_t m, std::int64_t n) {
  validate_cover_parameters(g, m, n);
  Rational value = pow_big(BigInt(m), static_cast<unsigned>(2 * g - 3)) *
                   pow_big(BigInt(n), static_cast<unsigned>(2 * g - 1));
  for (const auto& f : factorize(m).factors()) {
    value *= lf_count(f.p, n) * inverse_geometric(f.p, static_cast<unsigned>(2 * g - 2));
  }
  for (const auto& f : factorize(n).factors()) {
    value *= inverse_geometric(f.p, static_cast<unsigned>(2 * g));
  }
  return value;
}

BigInt primitive_eigenvector_count(int g, std::int64_t m, std::int64_t n) {
  validate_cover_parameters(g, m, n);
  const auto k = static_cast<unsigned>(2 * g - 2);
  BigInt count = 1;
  for (const auto& f : factorize(m).factors()) {
    const BigInt p = f.p;
    count *= lf_count(f.p, n) * (pow_big(p, f.e * k) - pow_big(p, (f.e - 1) * k));
  }
  return count;
}

BigInt count_T(int g, std::int64_t m, std::int64_t n) {
  validate_cover_parameters(g, m, n);
  const FactoredModulus fm = factorize(m);
  const auto k = static_cast<unsigned>(2 * g - 3);
  // m^{2g-3} * (1 + p^{-1} + ... + p^{-(2g-3)}) per prime, multiplied through.
  BigInt t = 1;
  for (const auto& f : fm.factors()) {
    t *= lf_count(f.p, n) * pow_big(BigInt(f.p), (f.e - 1) * k) * geometric(f.p, k + 1);
  }
  if (require_integral(rational_T(g, m, n), "T_g(m,n)") != t ||
      require_integral(rational_T_by_division(g, m, n), "T_g(m,n)") != t ||
      t * euler_phi(fm) != primitive_eigenvector_count(g, m, n)) {
    throw IntegrityError("T_g(m,n) routes disagree for g=" + std::to_string(g) +
                         " m=" + std::to_string(m) + " n=" + std::to_string(n));
  }
  return t;
}

BigInt count_cyclic(int g, std::int64_t n) {
  if (g < 2) throw DomainError("genus g must be >= 2");
  if (n < 2) throw DomainError("n must be >= 2");
  const auto k = static_cast<unsigned>(2 * g - 1);
  BigInt count = 1;
  for (const auto& f : factorize(n).factors()) {
    count *= pow_big(BigInt(f.p), (f.e - 1) * k) * geometric(f.p, k + 1);
  }
  if (require_integral(rational_cyclic(g, n), "N_g(n)") != count) {
    throw IntegrityError("N_g(n) routes disagree for g=" + std::to_string(g) +
                         " n=" + std::to_string(n));
  }
  return count;
}

CoverCountReport count_total(int g, std::int64_t m, std::int64_t n) {
  validate_cover_parameters(g, m, n);
  CoverCountReport report;
  report.g = g;
  report.m = static_cast<std::uint64_t>(m);
  report.n = static_cast<std::uint64_t>(n);
  report.T = count_T(g, m, n);
  report.N_cyclic = count_cyclic(g, n);
  report.C_total = report.T * report.N_cyclic;
  if (require_integral(rational_total(g, m, n), "C_g(m,n)") != report.C_total) {
    throw IntegrityError("C_g(m,n) differs from T_g(m,n) * N_g(n)");
  }
  const auto k = static_cast<unsigned>(2 * g - 2);
  for (const auto& f : factorize(m).factors()) {
    const BigInt p = f.p;
    const int lf = lf_count(f.p, n);
    report.per_prime.push_back(
        {f.p, f.e, lf, lf * (pow_big(p, f.e * k) - pow_big(p, (f.e - 1) * k))});
  }
  return report;
}

BigInt count_special_two_primes(int g, std::int64_t p, std::int64_t q) {
  if (g < 2) throw DomainError("genus g must be >= 2");
  if (p < 2 || q < 2 || !is_prime(static_cast<std::uint64_t>(p)) ||
      !is_prime(static_cast<std::uint64_t>(q))) {
    throw DomainError("p and q must be primes");
  }
  if (p == q) throw DomainError("coprimality required: p and q must be distinct");
  if ((p - 1) % q != 0) return 0;
  const BigInt q_big = q;
  return (pow_big(q_big, static_cast<unsigned>(2 * g)) - 1) *
         geometric(static_cast<std::uint64_t>(p), static_cast<unsigned>(2 * g - 2));
}

}  // namespace etale
