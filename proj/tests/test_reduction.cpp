#include <gtest/gtest.h>

#include <random>

#include "circdet/reduction.hpp"
#include "support/oracles.hpp"

using namespace circdet;
using circdet::testing::ints;
namespace ct = circdet::testing;

namespace {

const recurrence_spec fib = from_family(family::fibonacci{});
const recurrence_spec tri = from_family(family::tribonacci{});

errc code_of(auto&& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  return errc::parse_error;
}

std::vector<recurrence_spec> random_specs(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<recurrence_spec> out;
  while (static_cast<int>(out.size()) < count) {
    const std::size_t m = static_cast<std::size_t>(ct::draw(rng, 1, 4));
    std::vector<exact> c, a;
    for (std::size_t i = 0; i < m; ++i) c.emplace_back(ct::draw(rng, -3, 3));
    if (sgn(c.back()) == 0) continue;
    for (std::size_t i = 0; i < m; ++i) a.emplace_back(ct::draw(rng, -3, 3));
    out.emplace_back(c, a);
  }
  return out;
}

}  // namespace

TEST(Alpha, Tribonacci4) {
  const auto al = alpha(tri, 4);
  EXPECT_EQ(al.values, ints({-6, -6, -4}));
}

TEST(Alpha, FibonacciFirst) { EXPECT_EQ(alpha(fib, 4)[1], -4); }

TEST(Alpha, DegenerateWhenPeriodic) {
  // a_k = a_{k-2}: 1,2,1,2,... so a_{n+1} = a_1 for even n.
  const auto spec = make_recurrence(ints({0, 1}), ints({1, 2}));
  EXPECT_EQ(alpha(spec, 4)[1], 0);
  EXPECT_EQ(alpha(spec, 6)[1], 0);
  EXPECT_NE(alpha(spec, 5)[1], 0);
}

TEST(Alpha, OrderTooSmall) {
  EXPECT_EQ(code_of([] { alpha(tri, 3); }), errc::order_too_small);
  EXPECT_EQ(code_of([] { build_P(tri, 3); }), errc::order_too_small);
  EXPECT_EQ(code_of([] { det_lemma(tri, 2); }), errc::order_too_small);
}

TEST(AlphaProperty, FirstEqualsA1MinusNext) {
  for (const auto& spec : random_specs(13, 100))
    for (std::size_t n = spec.order() + 1; n <= 10; ++n) {
      const auto w = generate(spec, n + 1);
      ASSERT_EQ(alpha(spec, n)[1], w[1] - w[n + 1]);
    }
}

TEST(Basis, SecondOrderIsGeometric) {
  const alpha_vector al{ints({3, -5}), 6};
  const auto b = basis_sequences(al, 8);
  ASSERT_EQ(b.size(), 1u);
  const exact ratio = make_exact(5, 3);  // -alpha_2 / alpha_1
  for (std::size_t i = 1; i <= 8; ++i) EXPECT_EQ(b[0][i], pow(ratio, i - 1));
}

TEST(Basis, ThirdOrderStart) {
  const auto b = basis_sequences(alpha(tri, 4), 5);
  ASSERT_EQ(b.size(), 2u);
  // alpha = (-6, -6, -4)
  EXPECT_EQ(b[0].terms, (std::vector<exact>{1, 0, make_exact(-2, 3), make_exact(2, 3), make_exact(-2, 9)}));
  EXPECT_EQ(b[1][1], 0);
  EXPECT_EQ(b[1][2], 1);
  EXPECT_EQ(b[1][3], -1);  // -alpha_2 / alpha_1
  EXPECT_EQ(b[0][3], make_exact(-2, 3));  // -alpha_3 / alpha_1
}

TEST(Basis, DegenerateAndOrderOne) {
  EXPECT_EQ(code_of([] { basis_sequences(alpha_vector{ints({0, 1, 1}), 5}, 5); }), errc::degenerate_alpha1);
  EXPECT_TRUE(basis_sequences(alpha_vector{ints({4}), 5}, 5).empty());
}

TEST(BasisProperty, KroneckerInitials) {
  for (const auto& spec : random_specs(17, 60)) {
    if (spec.order() < 2) continue;
    const std::size_t n = spec.order() + 3;
    const auto al = alpha(spec, n);
    if (sgn(al[1]) == 0) continue;
    for (const auto& b : basis_sequences(al, n - 1))
      for (std::size_t i = 1; i < spec.order(); ++i) ASSERT_EQ(b[i], i == b.r ? 1 : 0);
  }
}

TEST(BuildP, SecondOrderN4) {
  const auto spec = make_recurrence(ints({5, 7}), ints({1, 1}));
  const auto p = build_P(spec, 4);
  EXPECT_EQ(p, dense_matrix::from_rows({ints({1, 0, 0, 0}), ints({0, 0, 0, 1}), ints({-7, 0, 1, -5}),
                                        ints({0, 1, -5, -7})}));
  const auto pf = build_P(fib, 4);
  EXPECT_EQ(pf(3, 1), -1);
  EXPECT_EQ(pf(3, 4), -1);
}

TEST(BuildQ, SecondOrderN4) {
  const auto al = alpha(fib, 4);
  const auto q = build_Q(al, 4);
  const exact ratio = -al[2] / al[1];
  EXPECT_EQ(q(2, 2), ratio * ratio);  // b_3
  EXPECT_EQ(q(3, 2), ratio);          // b_2
  EXPECT_EQ(q(4, 2), 1);              // anti-diagonal
  EXPECT_EQ(q(1, 1), 1);
}

TEST(BuildQ, OrderOneIsPermutation) {
  const auto q = build_Q(alpha_vector{ints({3}), 5}, 5);
  for (std::size_t i = 1; i <= 5; ++i)
    for (std::size_t j = 1; j <= 5; ++j) {
      const bool one = (i == 1 && j == 1) || i + j == 7;
      EXPECT_EQ(q(i, j), one ? 1 : 0);
    }
}

TEST(TransformProperty, DeterminantSign) {
  EXPECT_EQ(transform_sign(4), -1);  // 4*5/2 - 1 = 9
  EXPECT_EQ(transform_sign(5), 1);   // 14
  for (const auto& spec : random_specs(23, 80))
    for (std::size_t n = spec.order() + 1; n <= 12; ++n) {
      const exact sign = transform_sign(n);
      ASSERT_EQ(det_bareiss(build_P(spec, n)), sign);  // build_P asserts rule disjointness
      const auto al = alpha(spec, n);
      if (spec.order() >= 2 && sgn(al[1]) == 0) continue;
      ASSERT_EQ(det_bareiss(build_Q(al, n)), sign);
    }
}

TEST(PaqStructure, Examples) {
  EXPECT_NO_THROW(verify_paq_structure(circulant_from_spec(fib, 5), fib));
  EXPECT_NO_THROW(verify_paq_structure(circulant_from_spec(tri, 4), tri));
  const auto rep = verify_paq_structure(circulant_from_spec(tri, 6), tri);
  EXPECT_EQ(rep.product(6, 4), rep.alpha[3]);
  EXPECT_EQ(rep.product(5, 4), rep.alpha[2]);
  EXPECT_EQ(rep.product(4, 4), rep.alpha[1]);
  EXPECT_EQ(rep.det_product, rep.det_a);
}

TEST(PaqStructure, DetectsWrongMatrix) {
  // Pair the tribonacci recurrence with a circulant it did not generate.
  const circulant_matrix wrong(ints({1, 1, 2, 4, 7, 14}));
  EXPECT_EQ(code_of([&] { verify_paq_structure(wrong, tri); }), errc::structure_violation);
}

TEST(Lemma, Examples) {
  EXPECT_EQ(det_lemma(fib, 4).exact_value(), -35);
  EXPECT_EQ(det_lemma(tri, 4).exact_value(), -160);
  EXPECT_EQ(det_lemma(from_family(family::geometric{2}), 3).exact_value(), 392);
  const exact a = make_exact(-3, 2);
  for (std::size_t n = 2; n <= 9; ++n)
    EXPECT_EQ(det_lemma(from_family(family::geometric{a}), n).exact_value(), pow(a, n) * pow(1 - pow(a, n), n - 1));
}

TEST(Lemma, Degenerate) {
  const auto spec = make_recurrence(ints({0, 1}), ints({1, 2}));
  EXPECT_EQ(code_of([&] { det_lemma(spec, 4); }), errc::degenerate_alpha1);
}

TEST(Lemma, BudgetAndCost) {
  EXPECT_EQ(lemma_cost(3, 64), 63u * 63u);
  EXPECT_EQ(lemma_cost(1, 512), 1u);
  EXPECT_EQ(code_of([] { det_lemma(tri, 12, {1, 100}); }), errc::budget_exceeded);
}

TEST(Lemma, ParallelSplitIsIdentical) {
  const auto spec = make_recurrence(ints({1, -2, 3, 1}), ints({2, -1, 0, 3}));
  for (std::size_t n = 5; n <= 10; ++n) {
    const exact serial = det_lemma_value(spec, n);
    ASSERT_EQ(det_lemma_value(spec, n, {4, 0}), serial);
    ASSERT_EQ(det_lemma_value(spec, n, {3, 0}), serial);
  }
}

TEST(LemmaProperty, MatchesOracleAndPaq) {
  int checked = 0;
  for (const auto& spec : random_specs(29, 120))
    for (std::size_t n = spec.order() + 1; n <= 10; ++n) {
      const auto mat = circulant_from_spec(spec, n);
      const auto al = alpha(spec, n);
      if (spec.order() >= 2 && sgn(al[1]) == 0) continue;
      ASSERT_EQ(det_lemma_value(spec, n), det_bareiss(mat.materialize()));
      ASSERT_NO_THROW(verify_paq_structure(mat, spec));
      ++checked;
    }
  EXPECT_GT(checked, 500);
}

TEST(LemmaProperty, SmallCasesAgainstLeibniz) {
  for (const auto& spec : random_specs(31, 40))
    for (std::size_t n = spec.order() + 1; n <= 7; ++n) {
      const auto al = alpha(spec, n);
      if (spec.order() >= 2 && sgn(al[1]) == 0) continue;
      ASSERT_EQ(det_lemma_value(spec, n), ct::det_leibniz(ct::rotate_rows(generate(spec, n).terms())));
    }
}
