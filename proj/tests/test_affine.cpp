#include <gtest/gtest.h>

#include <functional>

#include "support/support.hpp"

namespace affrig {
namespace {

using testing::Rng;

const FieldDescriptor kQ = FieldDescriptor::rationals();

Vector iv(const FieldDescriptor& f, std::vector<long long> v) { return integer_vector(f, v); }

LinearSubspace span(const FieldDescriptor& f, std::size_t n, const std::vector<std::vector<long long>>& gens) {
  std::vector<Vector> vs;
  for (const auto& g : gens) vs.push_back(iv(f, g));
  return linear_span(f, n, vs);
}

DualPair quadratic_pair() {
  ExactMatrix b(kQ, 4, 4);
  b(0, 1) = b(1, 0) = b(2, 2) = b(3, 3) = FieldScalar::one(kQ);
  return DualPair(b);
}

// Every subspace of F_p^n, enumerated from all generating sets of size <= n.
std::vector<LinearSubspace> all_subspaces(const FieldDescriptor& f, std::size_t n) {
  std::vector<Vector> points;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= f.p();
  for (std::size_t idx = 0; idx < total; ++idx) {
    Vector v;
    std::size_t rest = idx;
    for (std::size_t i = 0; i < n; ++i) {
      v.push_back(FieldScalar::from_integer(f, static_cast<long long>(rest % f.p())));
      rest /= f.p();
    }
    points.push_back(v);
  }
  std::vector<LinearSubspace> out;
  std::function<void(std::size_t, std::vector<Vector>&)> rec = [&](std::size_t start, std::vector<Vector>& gens) {
    const LinearSubspace l = linear_span(f, n, gens);
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    if (gens.size() == n) return;
    for (std::size_t i = start; i < points.size(); ++i) {
      gens.push_back(points[i]);
      rec(i + 1, gens);
      gens.pop_back();
    }
  };
  std::vector<Vector> gens;
  rec(0, gens);
  return out;
}

TEST(DualPairTest, RejectsSingularAndNonSquare) {
  EXPECT_THROW(DualPair(ExactMatrix(kQ, 2, 2)), InvalidInput);
  EXPECT_THROW(DualPair(ExactMatrix(kQ, 2, 3)), InvalidInput);
  EXPECT_THROW(DualPair(ExactMatrix::identity(FieldDescriptor::cyclotomic(3), 2)), InvalidInput);
  const auto dp = quadratic_pair();
  EXPECT_EQ(dp.pair(iv(kQ, {1, 0, 0, 0}), iv(kQ, {0, 1, 0, 0})), FieldScalar::one(kQ));
}

TEST(LinearSpanTest, Examples) {
  EXPECT_EQ(linear_span(kQ, 3, {}).dim(), 0U);
  const auto l = span(kQ, 3, {{1, 0, 0}, {2, 0, 0}});
  EXPECT_EQ(l.dim(), 1U);
  EXPECT_EQ(l, span(kQ, 3, {{1, 0, 0}}));
  const auto f2 = FieldDescriptor::prime_field(2);
  const auto m = span(f2, 3, {{1, 1, 0}, {0, 1, 1}});
  ASSERT_EQ(m.dim(), 2U);
  EXPECT_EQ(m.basis()[0], iv(f2, {1, 0, 1}));
  EXPECT_EQ(m.basis()[1], iv(f2, {0, 1, 1}));
  EXPECT_THROW(linear_span(kQ, 3, {iv(kQ, {1, 2})}), DimensionMismatch);
}

TEST(IntersectionTest, Examples) {
  const auto a = span(kQ, 3, {{1, 2, 3}, {0, 1, 1}});
  EXPECT_EQ(subspace_intersection(a, a), a);
  EXPECT_EQ(subspace_intersection(span(kQ, 2, {{1, 0}}), span(kQ, 2, {{0, 1}})).dim(), 0U);
  EXPECT_EQ(subspace_intersection(span(kQ, 3, {{1, 0, 0}, {0, 1, 0}}), span(kQ, 3, {{0, 1, 0}, {0, 0, 1}})),
            span(kQ, 3, {{0, 1, 0}}));
}

TEST(PerpTest, Examples) {
  const auto dp = DualPair::standard(kQ, 2);
  EXPECT_EQ(perp(dp, LinearSubspace::zero(kQ, 2), Side::E), LinearSubspace::full(kQ, 2));
  EXPECT_EQ(perp(dp, LinearSubspace::full(kQ, 2), Side::E), LinearSubspace::zero(kQ, 2));
  EXPECT_EQ(perp(dp, span(kQ, 2, {{1, 0}}), Side::E), span(kQ, 2, {{0, 1}}));
  const auto q = quadratic_pair();
  EXPECT_EQ(perp(q, span(kQ, 4, {{1, 0, 0, 0}}), Side::E), span(kQ, 4, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
}

TEST(PerpTest, DoublePerpExhaustive) {
  for (auto [p, n] : {std::pair{2U, 3U}, std::pair{3U, 2U}}) {
    const auto f = FieldDescriptor::prime_field(p);
    Rng rng(p);
    const auto dp = testing::random_dual_pair(rng, f, n);
    const auto subs = all_subspaces(f, n);
    EXPECT_EQ(subs.size(), p == 2 ? 16U : 6U);
    for (const auto& l : subs) {
      for (Side s : {Side::E, Side::F}) {
        const auto pl = perp(dp, l, s);
        EXPECT_EQ(pl.dim() + l.dim(), n);
        EXPECT_EQ(perp(dp, pl, opposite(s)), l);
      }
    }
  }
}

TEST(ClassifyTest, QuadraticExample) {
  const auto dp = quadratic_pair();
  const auto e1 = AffineSubspace::through_origin(Side::E, span(kQ, 4, {{1, 0, 0, 0}}));
  const auto f1 = AffineSubspace::through_origin(Side::F, span(kQ, 4, {{1, 0, 0, 0}}));
  const auto big_lin = span(kQ, 4, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  const auto xe = AffineSubspace::through_origin(Side::E, big_lin);
  const auto yf = AffineSubspace::through_origin(Side::F, big_lin);
  EXPECT_EQ(classify_pair(dp, e1, f1), PairClass::Thin);
  EXPECT_EQ(classify_pair(dp, xe, f1), PairClass::Perfect);
  EXPECT_EQ(classify_pair(dp, xe, yf), PairClass::Thick);
}

TEST(ClassifyTest, PointAndFullSpace) {
  const auto dp = DualPair::standard(kQ, 3);
  const auto pt = AffineSubspace::point(Side::E, iv(kQ, {1, 2, 3}));
  EXPECT_EQ(classify_pair(dp, pt, AffineSubspace::full(Side::F, kQ, 3)), PairClass::Perfect);
  EXPECT_EQ(classify_pair(dp, AffineSubspace::full(Side::E, kQ, 3), AffineSubspace::full(Side::F, kQ, 3)),
            PairClass::Thick);
  EXPECT_THROW(classify_pair(dp, AffineSubspace::full(Side::F, kQ, 3), pt), InvalidInput);
}

TEST(AffineTest, TranslateExamples) {
  const auto f3 = FieldDescriptor::prime_field(3);
  const auto x = AffineSubspace(Side::E, iv(f3, {1, 2}), span(f3, 2, {{1, 0}}));
  EXPECT_EQ(affine_translate(iv(f3, {0, 0}), x), x);
  EXPECT_EQ(affine_translate(iv(f3, {2, 0}), x), x);
  const auto line = AffineSubspace::through_origin(Side::E, span(f3, 2, {{1, 0}}));
  EXPECT_EQ(affine_translate(iv(f3, {0, 1}), line).base(), iv(f3, {0, 1}));
  EXPECT_EQ(x.base(), iv(f3, {0, 2}));
}

TEST(AffineTest, IntersectionExamples) {
  const auto ax1 = AffineSubspace::through_origin(Side::E, span(kQ, 2, {{1, 0}}));
  const auto ax2 = AffineSubspace::through_origin(Side::E, span(kQ, 2, {{0, 1}}));
  const auto shifted = AffineSubspace(Side::E, iv(kQ, {0, 1}), span(kQ, 2, {{1, 0}}));
  EXPECT_EQ(affine_intersection(ax1, ax1), ax1);
  EXPECT_FALSE(affine_intersection(ax1, shifted).has_value());
  EXPECT_EQ(affine_intersection(ax1, ax2), AffineSubspace::point(Side::E, iv(kQ, {0, 0})));
}

TEST(AffineTest, DifferenceExamples) {
  const auto x = AffineSubspace(Side::E, iv(kQ, {3, 1}), span(kQ, 2, {{1, 1}}));
  EXPECT_EQ(affine_difference(x, x), AffineSubspace::through_origin(Side::E, x.linear()));
  EXPECT_EQ(affine_difference(AffineSubspace::point(Side::E, iv(kQ, {3, 1})),
                              AffineSubspace::point(Side::E, iv(kQ, {1, 4}))),
            AffineSubspace::point(Side::E, iv(kQ, {2, -3})));
  const auto a = AffineSubspace(Side::E, iv(kQ, {0, 1, 0}), span(kQ, 3, {{1, 0, 0}}));
  const auto b = AffineSubspace::through_origin(Side::E, span(kQ, 3, {{0, 0, 1}}));
  EXPECT_EQ(affine_difference(a, b), AffineSubspace(Side::E, iv(kQ, {0, 1, 0}), span(kQ, 3, {{1, 0, 0}, {0, 0, 1}})));
}

TEST(AffineTest, ContainsExamples) {
  const auto f3 = FieldDescriptor::prime_field(3);
  const auto x = AffineSubspace(Side::E, iv(f3, {0, 1}), span(f3, 2, {{1, 0}}));
  EXPECT_TRUE(affine_contains(x, x.base()));
  EXPECT_TRUE(affine_contains(x, iv(f3, {1, 1})));
  EXPECT_FALSE(affine_contains(x, iv(f3, {1, 0})));
}

class AffineProperties : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(AffineProperties, RandomizedLaws) {
  const std::uint32_t p = GetParam();
  const auto f = p == 0 ? kQ : FieldDescriptor::prime_field(p);
  Rng rng(1000 + p);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = testing::uniform(rng, 1, 4);
    const auto dp = testing::random_dual_pair(rng, f, n);
    const auto a = testing::random_linear(rng, f, n, testing::uniform(rng, 0, n));
    const auto b = testing::random_linear(rng, f, n, testing::uniform(rng, 0, n));
    EXPECT_EQ(a.dim() + b.dim(), subspace_sum(a, b).dim() + subspace_intersection(a, b).dim());
    EXPECT_EQ(perp(dp, perp(dp, a, Side::E), Side::F), a);

    // Canonicality under scaled and shuffled generators.
    std::vector<Vector> gens = a.basis();
    std::reverse(gens.begin(), gens.end());
    const FieldScalar two = FieldScalar::from_integer(f, 2);
    for (auto& g : gens) g = scale(two.is_zero() ? FieldScalar::one(f) : two, g);
    if (!gens.empty()) gens.push_back(add(gens.front(), gens.back()));
    EXPECT_EQ(linear_span(f, n, gens), a);

    const auto x = AffineSubspace(Side::E, testing::random_vector(rng, f, n), a);
    const auto y = AffineSubspace(Side::F, testing::random_vector(rng, f, n), b);
    EXPECT_EQ(classify_pair(dp, x, y), classify_pair_dual(dp, x, y));

    const Vector l = a.dim() > 0 ? a.basis().front() : zero_vector(f, n);
    EXPECT_EQ(affine_translate(l, x), x);
    EXPECT_TRUE(affine_contains(affine_translate(l, x), add(x.base(), l)));

    const auto x2 = AffineSubspace(Side::E, testing::random_vector(rng, f, n), b);
    const auto d = affine_difference(x, x2);
    EXPECT_TRUE(affine_contains(d, sub(x.base(), x2.base())));
    if (auto m = affine_intersection(x, x2)) {
      EXPECT_EQ(m->linear(), subspace_intersection(a, b));
      EXPECT_TRUE(affine_subset(*m, x));
      EXPECT_TRUE(affine_subset(*m, x2));
      EXPECT_TRUE(affine_contains(d, zero_vector(f, n)));
    } else {
      EXPECT_FALSE(affine_contains(d, zero_vector(f, n)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, AffineProperties, ::testing::Values(0U, 2U, 3U, 5U));

}  // namespace
}  // namespace affrig
