#include "etale/modular.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

#include "etale/errors.hpp"

namespace etale {

Residue reduce(std::int64_t value, std::uint64_t modulus) {
  const auto m = static_cast<std::int64_t>(modulus);
  std::int64_t r = value % m;
  if (r < 0) r += m;
  return static_cast<Residue>(r);
}

__extension__ using Wide = unsigned __int128;

Residue mul_mod(Residue a, Residue b, std::uint64_t modulus) {
  return static_cast<Residue>((static_cast<Wide>(a) * b) % modulus);
}

Residue add_mod(Residue a, Residue b, std::uint64_t modulus) {
  const Residue s = a + b;
  return s >= modulus ? s - modulus : s;
}

Residue sub_mod(Residue a, Residue b, std::uint64_t modulus) {
  return a >= b ? a - b : a + modulus - b;
}

Residue pow_mod(Residue base, std::uint64_t exponent, std::uint64_t modulus) {
  Residue result = 1 % modulus;
  base %= modulus;
  while (exponent > 0) {
    if (exponent & 1U) result = mul_mod(result, base, modulus);
    base = mul_mod(base, base, modulus);
    exponent >>= 1U;
  }
  return result;
}

Residue inverse_mod(Residue a, std::uint64_t modulus) {
  std::int64_t old_r = static_cast<std::int64_t>(a % modulus);
  std::int64_t r = static_cast<std::int64_t>(modulus);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  if (old_r != 1) {
    throw DomainError("residue " + std::to_string(a) + " is not invertible mod " +
                      std::to_string(modulus));
  }
  return reduce(old_s, modulus);
}

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint64_t d = 3; d * d <= value; d += 2) {
    if (value % d == 0) return false;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t base, unsigned exponent) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b) {
  BigInt old_r = a, r = b;
  BigInt old_s = 1, s = 0;
  BigInt old_t = 0, t = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

FactoredModulus FactoredModulus::from_factors(std::vector<PrimePower> factors) {
  if (factors.empty()) throw DomainError("modulus must be >= 2");
  std::uint64_t value = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (!etale::is_prime(f.p) || f.e == 0) {
      throw DomainError("factor list must contain primes with positive exponents");
    }
    if (i > 0 && factors[i - 1].p >= f.p) {
      throw DomainError("factor list must be strictly ascending in p");
    }
    value *= f.value();
  }
  return FactoredModulus(value, std::move(factors));
}

std::string FactoredModulus::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i > 0) out << '*';
    out << factors_[i].p;
    if (factors_[i].e > 1) out << '^' << factors_[i].e;
  }
  return out.str();
}

FactoredModulus factorize(std::int64_t m) {
  if (m < 2) throw DomainError("modulus must be >= 2");
  auto rest = static_cast<std::uint64_t>(m);
  std::vector<PrimePower> factors;
  for (std::uint64_t p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e > 0) factors.push_back({p, e});
  }
  if (rest > 1) factors.push_back({rest, 1});
  return FactoredModulus(static_cast<std::uint64_t>(m), std::move(factors));
}

std::uint64_t euler_phi(const FactoredModulus& m) {
  std::uint64_t phi = 1;
  for (const auto& f : m.factors()) phi *= ipow(f.p, f.e - 1) * (f.p - 1);
  return phi;
}

ModVector::ModVector(FactoredModulus modulus, std::span<const std::int64_t> entries)
    : modulus_(std::move(modulus)) {
  entries_.reserve(entries.size());
  for (auto x : entries) entries_.push_back(reduce(x, modulus_.value()));
}

ModVector::ModVector(FactoredModulus modulus, std::vector<Residue> residues)
    : modulus_(std::move(modulus)), entries_(std::move(residues)) {
  for (auto& x : entries_) x %= modulus_.value();
}

bool is_primitive(std::span<const Residue> entries, std::uint64_t modulus) {
  std::uint64_t g = modulus;
  for (auto x : entries) {
    g = std::gcd(g, x);
    if (g == 1) return true;
  }
  return g == 1;
}

bool is_primitive_vector(const ModVector& v) {
  return is_primitive(v.entries(), v.modulus().value());
}

BigInt count_primitive_vectors(int dimension, const FactoredModulus& m) {
  if (dimension < 1) throw DomainError("vector dimension must be >= 1");
  const auto n = static_cast<unsigned>(dimension);
  BigInt count = 1;
  for (const auto& f : m.factors()) {
    // p^{eN} - p^{(e-1)N}: everything minus the vectors lying in p(Z/p^e)^N.
    const BigInt p = f.p;
    count *= pow_big(p, f.e * n) - pow_big(p, (f.e - 1) * n);
  }
  return count;
}

std::vector<ModVector> crt_split(const ModVector& v) {
  std::vector<ModVector> parts;
  for (const auto& f : v.modulus().factors()) {
    const std::uint64_t q = f.value();
    std::vector<Residue> entries(v.entries().begin(), v.entries().end());
    for (auto& x : entries) x %= q;
    parts.emplace_back(FactoredModulus::from_factors({f}), std::move(entries));
  }
  return parts;
}

Residue crt_combine(std::span<const Residue> residues, std::span<const std::uint64_t> moduli) {
  if (residues.size() != moduli.size() || moduli.empty()) {
    throw DomainError("crt_combine needs one residue per modulus");
  }
  std::uint64_t total = 1;
  for (auto q : moduli) total *= q;
  Residue x = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::uint64_t q = moduli[i];
    const std::uint64_t rest = total / q;
    if (std::gcd(rest, q) != 1) throw DomainError("CRT moduli must be pairwise coprime");
    const Residue basis = mul_mod(rest, inverse_mod(rest % q, q), total);
    x = add_mod(x, mul_mod(residues[i] % q, basis, total), total);
  }
  return x;
}

ModVector crt_join(std::span<const ModVector> components) {
  if (components.empty()) throw DomainError("crt_join needs at least one component");
  const std::size_t dim = components.front().size();
  std::vector<PrimePower> factors;
  std::vector<std::uint64_t> moduli;
  for (const auto& c : components) {
    if (c.size() != dim) throw DomainError("crt_join components differ in dimension");
    if (!c.modulus().is_prime_power()) {
      throw DomainError("crt_join components must have prime-power moduli");
    }
    factors.push_back(c.modulus().factors()[0]);
    moduli.push_back(c.modulus().value());
  }
  std::vector<std::size_t> order(components.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return factors[a].p < factors[b].p; });
  std::vector<PrimePower> sorted;
  for (auto i : order) sorted.push_back(factors[i]);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].p == sorted[i - 1].p) throw DomainError("crt_join moduli share a prime");
  }
  FactoredModulus joined = FactoredModulus::from_factors(std::move(sorted));

  std::vector<Residue> entries(dim);
  std::vector<Residue> column(components.size());
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < components.size(); ++i) column[i] = components[i][j];
    entries[j] = crt_combine(column, moduli);
  }
  return ModVector(std::move(joined), std::move(entries));
}

}  // namespace etale
