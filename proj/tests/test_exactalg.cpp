#include <gtest/gtest.h>

#include "support/support.hpp"

namespace affrig {
namespace {

using testing::Rng;

const FieldDescriptor kQ = FieldDescriptor::rationals();

ExactMatrix mat(const FieldDescriptor& f, const std::vector<std::vector<long long>>& rows) {
  std::vector<Vector> vs;
  for (const auto& r : rows) vs.push_back(integer_vector(f, r));
  return ExactMatrix::from_rows(f, rows.empty() ? 0 : rows.front().size(), vs);
}

TEST(FieldDescriptorTest, RejectsComposite) {
  EXPECT_THROW(FieldDescriptor::prime_field(4), InvalidInput);
  EXPECT_THROW(FieldDescriptor::cyclotomic(9), InvalidInput);
  EXPECT_THROW(FieldDescriptor::prime_field(1), InvalidInput);
  EXPECT_NO_THROW(FieldDescriptor::prime_field(2));
}

TEST(FieldScalarTest, RationalsStayReduced) {
  const auto x = FieldScalar::from_rational(kQ, mpq_class(6, -4));
  EXPECT_EQ(x.to_string(), "-3/2");
  EXPECT_EQ(x * FieldScalar::from_integer(kQ, 2), FieldScalar::from_integer(kQ, -3));
  EXPECT_EQ(x.inverse(), FieldScalar::from_rational(kQ, mpq_class(-2, 3)));
  EXPECT_THROW(FieldScalar(kQ).inverse(), InvalidInput);
}

TEST(FieldScalarTest, PrimeFieldResidues) {
  const auto f = FieldDescriptor::prime_field(7);
  const auto x = FieldScalar::from_integer(f, -1);
  EXPECT_EQ(x.residue(), 6U);
  EXPECT_EQ((x * x).residue(), 1U);
  EXPECT_EQ(FieldScalar::from_integer(f, 3).inverse().residue(), 5U);
  EXPECT_EQ(FieldScalar::from_rational(f, mpq_class(1, 2)).residue(), 4U);
  EXPECT_THROW(FieldScalar::from_rational(f, mpq_class(1, 7)), InvalidInput);
}

TEST(FieldScalarTest, MixedFieldsRejected) {
  const auto a = FieldScalar::one(FieldDescriptor::prime_field(3));
  const auto b = FieldScalar::one(FieldDescriptor::prime_field(5));
  EXPECT_THROW(a + b, DescriptorMismatch);
  EXPECT_THROW(cyc_mul(zeta_pow(FieldDescriptor::cyclotomic(3), 1), zeta_pow(FieldDescriptor::cyclotomic(5), 1)),
               DescriptorMismatch);
}

TEST(CyclotomicTest, ZetaPowers) {
  const auto c3 = FieldDescriptor::cyclotomic(3);
  EXPECT_TRUE(zeta_pow(c3, 0).is_one());
  EXPECT_TRUE(zeta_pow(c3, 3).is_one());
  EXPECT_EQ(zeta_pow(c3, 2), FieldScalar::from_coordinates(3, {mpq_class(-1), mpq_class(-1)}));
  EXPECT_EQ(cyc_mul(zeta_pow(c3, 1), zeta_pow(c3, 1)), zeta_pow(c3, 2));
}

TEST(CyclotomicTest, ProductExampleOverThree) {
  const auto c3 = FieldDescriptor::cyclotomic(3);
  const auto one = FieldScalar::one(c3);
  const auto a = one + zeta_pow(c3, 1);
  const auto b = one + zeta_pow(c3, 2);
  EXPECT_TRUE(cyc_mul(a, b).is_one());
  EXPECT_EQ(cyc_mul(a, one), a);
}

TEST(CyclotomicTest, TopPowerReduction) {
  for (std::uint32_t p : {3U, 5U, 7U}) {
    const auto c = FieldDescriptor::cyclotomic(p);
    std::vector<mpq_class> expect(p - 1, mpq_class(-1));
    EXPECT_EQ(cyc_mul(zeta_pow(c, p - 2), zeta_pow(c, 1)), FieldScalar::from_coordinates(p, expect));
  }
}

TEST(CyclotomicTest, CharacterOrthogonality) {
  for (std::uint32_t p : {2U, 3U, 5U, 7U, 11U}) {
    const auto c = FieldDescriptor::cyclotomic(p);
    for (std::uint32_t t = 0; t < p; ++t) {
      FieldScalar s(c);
      for (std::uint32_t k = 0; k < p; ++k) s += zeta_pow(c, static_cast<long long>(k) * t);
      EXPECT_EQ(s, FieldScalar::from_integer(c, t == 0 ? p : 0)) << "p=" << p << " t=" << t;
    }
  }
}

TEST(CyclotomicTest, FieldAxiomsOnRandomElements) {
  Rng rng(11);
  for (std::uint32_t p : {2U, 3U, 5U, 7U, 11U}) {
    const auto c = FieldDescriptor::cyclotomic(p);
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = testing::random_scalar(rng, c);
      const auto b = testing::random_scalar(rng, c);
      const auto d = testing::random_scalar(rng, c);
      EXPECT_EQ(a * (b + d), a * b + a * d);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * d, a * (b * d));
      EXPECT_EQ(a * zeta_pow(c, 3), times_zeta_pow(a, 3));
      if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
      EXPECT_EQ(zeta_pow(c, trial) * zeta_pow(c, 2 * trial + 1), zeta_pow(c, 3 * trial + 1));
    }
  }
}

TEST(CyclotomicTest, RationalDetection) {
  const auto c5 = FieldDescriptor::cyclotomic(5);
  EXPECT_EQ(FieldScalar::from_integer(c5, 4).as_rational(), mpq_class(4));
  EXPECT_FALSE(zeta_pow(c5, 1).as_rational().has_value());
  FieldScalar sum(c5);
  for (int k = 1; k < 5; ++k) sum += zeta_pow(c5, k);
  EXPECT_EQ(sum.as_rational(), mpq_class(-1));
}

TEST(RrefTest, Examples) {
  const auto id = rref(ExactMatrix::identity(kQ, 2));
  EXPECT_EQ(id.echelon, ExactMatrix::identity(kQ, 2));
  EXPECT_EQ(id.rank, 2U);
  EXPECT_EQ(id.pivots, (std::vector<std::size_t>{0, 1}));

  const auto r = rref(mat(kQ, {{1, 2}, {2, 4}}));
  EXPECT_EQ(r.echelon, mat(kQ, {{1, 2}, {0, 0}}));
  EXPECT_EQ(r.rank, 1U);
  EXPECT_EQ(r.pivots, std::vector<std::size_t>{0});

  const auto f2 = FieldDescriptor::prime_field(2);
  const auto r2 = rref(mat(f2, {{1, 1}, {1, 1}}));
  EXPECT_EQ(r2.echelon, mat(f2, {{1, 1}, {0, 0}}));
  EXPECT_EQ(r2.rank, 1U);
}

TEST(KernelTest, Examples) {
  EXPECT_TRUE(kernel_basis(ExactMatrix::identity(kQ, 3)).empty());
  const auto z = kernel_basis(ExactMatrix(kQ, 2, 3));
  ASSERT_EQ(z.size(), 3U);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(z[i], unit_vector(kQ, 3, i));

  const auto f3 = FieldDescriptor::prime_field(3);
  const auto k = kernel_basis(mat(f3, {{1, 1, 1}}));
  ASSERT_EQ(k.size(), 2U);
  EXPECT_EQ(k[0], integer_vector(f3, {2, 1, 0}));
  EXPECT_EQ(k[1], integer_vector(f3, {2, 0, 1}));
}

TEST(SolveAffineTest, Examples) {
  const auto b = integer_vector(kQ, {3, -1});
  EXPECT_EQ(solve_affine(ExactMatrix::identity(kQ, 2), b), b);
  EXPECT_FALSE(solve_affine(mat(kQ, {{1, 0}, {1, 0}}), integer_vector(kQ, {1, 2})).has_value());
  EXPECT_EQ(solve_affine(mat(kQ, {{1, 1}}), integer_vector(kQ, {2})), integer_vector(kQ, {2, 0}));
  EXPECT_THROW(solve_affine(mat(kQ, {{1, 1}}), integer_vector(kQ, {2, 1})), DimensionMismatch);
}

class MatrixProperties : public ::testing::TestWithParam<FieldDescriptor> {};

TEST_P(MatrixProperties, RrefKernelRankLaws) {
  const auto f = GetParam();
  Rng rng(f.p() * 31 + 7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = testing::uniform(rng, 0, 4);
    const std::size_t c = testing::uniform(rng, 0, 5);
    ExactMatrix m = testing::random_matrix(rng, f, r, c);
    if (r >= 2 && testing::uniform(rng, 0, 1) == 0) {
      for (std::size_t j = 0; j < c; ++j) m(1, j) = m(0, j) + m(0, j);
    }
    const auto red = rref(m);
    EXPECT_EQ(rref(red.echelon).echelon, red.echelon);
    EXPECT_EQ(red.rank, rank(m.transpose()));
    const auto ker = kernel_basis(m);
    EXPECT_EQ(ker.size(), c - red.rank);
    for (const auto& v : ker) EXPECT_TRUE(is_zero(m.apply(v)));
    const Vector x = testing::random_vector(rng, f, c);
    const Vector rhs = m.apply(x);
    const auto sol = solve_affine(m, rhs);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(m.apply(*sol), rhs);
    EXPECT_EQ(rref(m).echelon, red.echelon);
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, MatrixProperties,
                         ::testing::Values(FieldDescriptor::rationals(), FieldDescriptor::prime_field(2),
                                           FieldDescriptor::prime_field(5), FieldDescriptor::cyclotomic(3),
                                           FieldDescriptor::cyclotomic(5)),
                         [](const auto& info) {
                           std::string n = info.param.name();
                           for (auto& ch : n) {
                             if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                           }
                           return n;
                         });

}  // namespace
}  // namespace affrig
