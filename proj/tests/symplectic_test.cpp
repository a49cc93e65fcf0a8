#include <gtest/gtest.h>

#include <random>

#include "etale/errors.hpp"
#include "etale/symplectic.hpp"
#include "oracles.hpp"

using namespace etale;

namespace {

ModVector delta_of(std::int64_t n, std::vector<std::int64_t> values) { return ModVector(factorize(n), values); }

oracle::Matrix rows(const IntMatrix& m) {
  oracle::Matrix out(m.dimension(), std::vector<std::int64_t>(m.dimension()));
  for (std::size_t i = 0; i < m.dimension(); ++i)
    for (std::size_t j = 0; j < m.dimension(); ++j) out[i][j] = m.at(i, j);
  return out;
}

// Recomputes every certificate property with plain integer arithmetic.
void expect_adapted(const SymplecticBasisCert& cert, const std::vector<std::int64_t>& delta, std::int64_t n, int g) {
  const oracle::Matrix c = rows(cert.change_of_basis);
  const oracle::Matrix j = oracle::standard_form(g);
  EXPECT_EQ(oracle::multiply(oracle::multiply(oracle::transpose(c), j), c), j);
  const oracle::Big d = oracle::det(c);
  EXPECT_TRUE(d == 1 || d == -1);
  for (std::size_t col = 0; col < c.size(); ++col) {
    std::int64_t image = 0;
    for (std::size_t i = 0; i < c.size(); ++i) image += delta[i] * c[i][col];
    image %= n;
    if (image < 0) image += n;
    if (col == 0) {
      EXPECT_EQ(std::gcd(image, n), 1);
    } else {
      EXPECT_EQ(image, 0);
    }
  }
}

}  // namespace

TEST(StandardForm, Examples) {
  EXPECT_EQ(standard_form(1).gram, (IntMatrix{{0, 1}, {-1, 0}}));
  EXPECT_EQ(standard_form(2).gram, (IntMatrix{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}));
  for (int g = 1; g <= 5; ++g) EXPECT_EQ(determinant(standard_form(g).gram), 1);
  EXPECT_THROW(standard_form(0), DomainError);
}

TEST(StandardForm, Validation) {
  EXPECT_NO_THROW(validate_unimodular_skew(standard_form(3)));
  EXPECT_THROW(validate_unimodular_skew({1, IntMatrix{{0, 2}, {-2, 0}}}), DomainError);
  EXPECT_THROW(validate_unimodular_skew({1, IntMatrix{{0, 1}, {1, 0}}}), DomainError);
  EXPECT_THROW(validate_unimodular_skew({2, IntMatrix{{0, 1}, {-1, 0}}}), DomainError);
}

TEST(PrimitiveWithUnitImage, Examples) {
  EXPECT_EQ(primitive_with_unit_image(delta_of(5, {1, 0, 0, 0})), (std::vector<std::int64_t>{1, 0, 0, 0}));
  const auto v = primitive_with_unit_image(delta_of(6, {2, 3}));
  EXPECT_EQ(std::gcd(v[0], v[1]), 1);
  std::int64_t image = (2 * v[0] + 3 * v[1]) % 6;
  if (image < 0) image += 6;
  EXPECT_TRUE(image == 1 || image == 5);
  EXPECT_THROW(primitive_with_unit_image(delta_of(6, {2, 4})), DomainError);
}

TEST(AdaptBasis, Examples) {
  const SymplecticBasisCert id = adapt_basis(delta_of(3, {1, 0, 0, 0}), 2);
  EXPECT_EQ(id.change_of_basis, IntMatrix::identity(4));

  const auto generator_on_second_pair = delta_of(3, {0, 0, 1, 0});
  const SymplecticBasisCert moved = adapt_basis(generator_on_second_pair, 2);
  EXPECT_EQ(moved.x(1), (std::vector<std::int64_t>{0, 0, 1, 0}));
  expect_adapted(moved, {0, 0, 1, 0}, 3, 2);

  const SymplecticBasisCert ones = adapt_basis(delta_of(2, {1, 1, 1, 1}), 2);
  expect_adapted(ones, {1, 1, 1, 1}, 2, 2);
  for (const auto& check : check_certificate(ones, delta_of(2, {1, 1, 1, 1}))) EXPECT_TRUE(check.passed) << check.name;

  EXPECT_THROW(adapt_basis(delta_of(6, {2, 4, 0, 2}), 2), DomainError);
  EXPECT_THROW(adapt_basis(delta_of(3, {1, 0, 0}), 2), DomainError);
  EXPECT_THROW(adapt_basis(delta_of(3, {1, 0}), 1, SkewForm{1, IntMatrix{{0, 3}, {-3, 0}}}), DomainError);
}

TEST(AdaptBasis, RandomSurjectionsPassAllChecks) {
  std::mt19937_64 rng(7);
  int done = 0;
  while (done < 500) {
    const int g = 2 + static_cast<int>(rng() % 2);
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 8);
    std::vector<std::int64_t> values(static_cast<std::size_t>(2 * g));
    for (auto& x : values) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
    const ModVector delta = delta_of(n, values);
    if (!is_primitive_vector(delta)) continue;
    const SymplecticBasisCert cert = adapt_basis(delta, g);
    expect_adapted(cert, values, n, g);
    EXPECT_TRUE(is_symplectic(cert.change_of_basis, g));
    for (const auto& check : check_certificate(cert, delta)) ASSERT_TRUE(check.passed) << check.name;
    ASSERT_EQ(cert.residual_determinants.size(), static_cast<std::size_t>(g));
    ++done;
  }
}

TEST(AdaptBasis, AlreadyAdaptedDeltaStaysAdapted) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int g = 2 + trial % 2;
    const std::int64_t n = 2 + trial % 8;
    std::vector<std::int64_t> values(static_cast<std::size_t>(2 * g));
    for (auto& x : values) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
    values[0] = 1;
    const ModVector delta = delta_of(n, values);
    const SymplecticBasisCert first = adapt_basis(delta, g);
    // delta expressed in the adapted basis: its values on the new basis vectors.
    std::vector<std::int64_t> pulled(first.delta_values.begin(), first.delta_values.end());
    const SymplecticBasisCert second = adapt_basis(delta_of(n, pulled), g);
    const BigInt d = determinant(second.change_of_basis);
    EXPECT_TRUE(d == 1 || d == -1);
    expect_adapted(second, pulled, n, g);
  }
}

TEST(AdaptBasis, NonStandardUnimodularForm) {
  // The standard form pulled back along a unimodular change of coordinates.
  const IntMatrix p{{1, 2, 0, 1}, {0, 1, 0, 0}, {0, 3, 1, 0}, {0, 0, 0, 1}};
  const IntMatrix gram = p.transpose() * standard_form(2).gram * p;
  const SkewForm form{2, gram};
  const ModVector delta = delta_of(5, {2, 0, 1, 3});
  const SymplecticBasisCert cert = adapt_basis(delta, 2, form);
  for (const auto& check : check_certificate(cert, delta, form)) EXPECT_TRUE(check.passed) << check.name;
}

TEST(IsSymplectic, Examples) {
  EXPECT_TRUE(is_symplectic(IntMatrix::identity(4), 2));
  EXPECT_TRUE(is_symplectic(IntMatrix{{0, 1}, {-1, 0}}, 1));
  EXPECT_FALSE(is_symplectic(IntMatrix{{2, 0}, {0, 1}}, 1));
  EXPECT_THROW(is_symplectic(IntMatrix::identity(3), 1), DomainError);
  EXPECT_THROW(is_symplectic(IntMatrix::identity(4), 1), DomainError);
}

TEST(Determinant, MatchesCofactorExpansion) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + rng() % 5;
    IntMatrix m(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m.at(i, j) = static_cast<std::int64_t>(rng() % 11) - 5;
    EXPECT_EQ(determinant(m), oracle::det(rows(m)));
  }
}
