#include <gtest/gtest.h>

#include <random>

#include "etale/errors.hpp"
#include "etale/modular.hpp"
#include "oracles.hpp"

using namespace etale;

namespace {

std::vector<std::pair<std::uint64_t, unsigned>> as_pairs(const FactoredModulus& m) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (const auto& f : m.factors()) out.push_back({f.p, f.e});
  return out;
}

}  // namespace

TEST(Factorize, Examples) {
  EXPECT_EQ(as_pairs(factorize(12)), (std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 1}}));
  EXPECT_EQ(as_pairs(factorize(7)), (std::vector<std::pair<std::uint64_t, unsigned>>{{7, 1}}));
  EXPECT_THROW(factorize(1), DomainError);
  EXPECT_THROW(factorize(0), DomainError);
  EXPECT_THROW(factorize(-5), DomainError);
}

TEST(Factorize, MatchesTrialDivisionUpTo2000) {
  for (std::int64_t m = 2; m <= 2000; ++m) {
    const FactoredModulus f = factorize(m);
    EXPECT_EQ(as_pairs(f), oracle::factor(static_cast<std::uint64_t>(m))) << m;
    EXPECT_EQ(f.value(), static_cast<std::uint64_t>(m));
    EXPECT_EQ(f.is_prime(), oracle::prime(static_cast<std::uint64_t>(m)));
  }
}

TEST(Factorize, FromFactorsValidates) {
  EXPECT_EQ(FactoredModulus::from_factors({{2, 2}, {3, 1}}).value(), 12U);
  EXPECT_THROW(FactoredModulus::from_factors({{4, 1}}), DomainError);
  EXPECT_THROW(FactoredModulus::from_factors({{3, 1}, {2, 1}}), DomainError);
  EXPECT_THROW(FactoredModulus::from_factors({{2, 1}, {2, 1}}), DomainError);
  EXPECT_THROW(FactoredModulus::from_factors({}), DomainError);
}

TEST(EulerPhi, Examples) {
  EXPECT_EQ(euler_phi(factorize(2)), 1U);
  EXPECT_EQ(euler_phi(factorize(9)), 6U);
  EXPECT_EQ(euler_phi(factorize(12)), 4U);
}

TEST(EulerPhi, MatchesGcdCount) {
  for (std::uint64_t m = 2; m <= 500; ++m) EXPECT_EQ(euler_phi(factorize(static_cast<std::int64_t>(m))), oracle::phi(m));
}

TEST(Primitive, Examples) {
  const std::vector<std::int64_t> a{2, 3}, b{2, 4}, c{0, 0};
  EXPECT_TRUE(is_primitive_vector(ModVector(factorize(6), a)));
  EXPECT_FALSE(is_primitive_vector(ModVector(factorize(6), b)));
  EXPECT_FALSE(is_primitive_vector(ModVector(factorize(5), c)));
}

TEST(Primitive, CountExamples) {
  EXPECT_EQ(count_primitive_vectors(2, factorize(3)), 8);
  EXPECT_EQ(count_primitive_vectors(4, factorize(2)), 15);
  for (std::int64_t pe : {2, 4, 8, 9, 27, 25, 49}) {
    EXPECT_EQ(count_primitive_vectors(1, factorize(pe)), euler_phi(factorize(pe)));
  }
  EXPECT_THROW(count_primitive_vectors(0, factorize(3)), DomainError);
}

TEST(Primitive, CountMatchesEnumeration) {
  for (std::size_t dim = 1; dim <= 6; ++dim) {
    for (std::uint64_t m = 2; m <= 30; ++m) {
      if (oracle::power(m, static_cast<unsigned>(dim)) > 2'000'000) continue;
      EXPECT_EQ(count_primitive_vectors(static_cast<int>(dim), factorize(static_cast<std::int64_t>(m))),
                oracle::count_primitive(dim, m))
          << "N=" << dim << " m=" << m;
    }
  }
}

TEST(Crt, Examples) {
  const std::vector<std::int64_t> seven{7};
  const auto parts = crt_split(ModVector(factorize(12), seven));
  ASSERT_EQ(parts.size(), 2U);
  EXPECT_EQ(parts[0].modulus().value(), 4U);
  EXPECT_EQ(parts[0][0], 3U);
  EXPECT_EQ(parts[1].modulus().value(), 3U);
  EXPECT_EQ(parts[1][0], 1U);
  EXPECT_EQ(crt_join(parts), ModVector(factorize(12), seven));

  const std::vector<std::int64_t> zeros(5, 0);
  for (const auto& part : crt_split(ModVector(factorize(30), zeros))) {
    for (auto x : part.entries()) EXPECT_EQ(x, 0U);
  }
}

TEST(Crt, JoinRejectsBadComponents) {
  const std::vector<std::int64_t> one{1}, two{1, 1};
  const std::vector<ModVector> mismatched{ModVector(factorize(4), one), ModVector(factorize(3), two)};
  EXPECT_THROW(crt_join(mismatched), DomainError);
  const std::vector<ModVector> shared{ModVector(factorize(4), one), ModVector(factorize(2), one)};
  EXPECT_THROW(crt_join(shared), DomainError);
  const std::vector<ModVector> composite{ModVector(factorize(6), one), ModVector(factorize(5), one)};
  EXPECT_THROW(crt_join(composite), DomainError);
}

TEST(Crt, RoundTripAndPrimitivityOnRandomVectors) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::int64_t> mod_dist(2, 210);
  std::uniform_int_distribution<std::size_t> dim_dist(1, 6);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::int64_t m = mod_dist(rng);
    std::vector<std::int64_t> entries(dim_dist(rng));
    for (auto& x : entries) x = std::uniform_int_distribution<std::int64_t>(-3 * m, 3 * m)(rng);
    const ModVector v(factorize(m), entries);
    const auto parts = crt_split(v);
    ASSERT_EQ(crt_join(parts), v);
    bool all_primitive = true;
    for (const auto& part : parts) all_primitive = all_primitive && is_primitive_vector(part);
    ASSERT_EQ(is_primitive_vector(v), all_primitive);
  }
}

TEST(Scalars, InverseAndPow) {
  for (std::uint64_t m = 2; m <= 60; ++m) {
    for (std::uint64_t a = 0; a < m; ++a) {
      if (std::gcd(a, m) == 1) {
        EXPECT_EQ(mul_mod(a, inverse_mod(a, m), m), 1 % m);
      } else {
        EXPECT_THROW(inverse_mod(a, m), DomainError);
      }
    }
  }
  EXPECT_EQ(pow_mod(3, 4, 7), 4U);
  EXPECT_EQ(reduce(-1, 7), 6U);
  EXPECT_EQ(crt_combine(std::vector<Residue>{3, 1}, std::vector<std::uint64_t>{4, 3}), 7U);
}

TEST(Scalars, ExtendedGcd) {
  for (int a = -20; a <= 20; ++a) {
    for (int b = -20; b <= 20; ++b) {
      const ExtendedGcd r = extended_gcd(a, b);
      EXPECT_EQ(r.gcd, std::gcd(a, b));
      EXPECT_EQ(r.coeff_a * a + r.coeff_b * b, r.gcd);
    }
  }
}
