#include <gtest/gtest.h>

#include "circdet/closed_forms.hpp"
#include "support/oracles.hpp"

using namespace circdet;
using circdet::testing::ints;
namespace ct = circdet::testing;

namespace {

exact oracle(const recurrence_spec& spec, std::size_t n) {
  return det_bareiss(circulant_from_spec(spec, n).materialize());
}

const second_order_params fibonacci_p{1, 1, 1, 1};
const second_order_params lucas_p{1, 1, 1, 3};
const second_order_params jacobsthal_p{1, 2, 1, 1};
const second_order_params jacobsthal_lucas_p{1, 2, 1, 3};

}  // namespace

// Frozen values below were computed with an independent Leibniz expansion.
TEST(FrozenOracle, SmallDeterminants) {
  EXPECT_EQ(ct::det_leibniz(ct::rotate_rows(ints({1, 1, 2, 3}))), -35);
  EXPECT_EQ(ct::det_leibniz(ct::rotate_rows(ints({1, 3, 4, 7}))), -1875);
  EXPECT_EQ(ct::det_leibniz(ct::rotate_rows(ints({1, 1, 3, 5}))), -400);
  EXPECT_EQ(ct::det_leibniz(ct::rotate_rows(ints({1, 1, 2, 4}))), -160);
  EXPECT_EQ(ct::det_leibniz(ct::rotate_rows(ints({1, 1, 2, 3, 5}))), 1812);
  EXPECT_EQ(ct::det_leibniz(ct::rotate_rows(ints({1, 3, 4, 7, 11}))), 134446);
  EXPECT_EQ(ct::det_leibniz(ct::rotate_rows(ints({1, 1, 2, 4, 7}))), 11625);
  EXPECT_EQ(ct::det_leibniz(ct::rotate_rows(ints({2, 4, 8}))), 392);
}

TEST(SecondOrder, Examples) {
  EXPECT_EQ(det_second_order(fibonacci_p, 4), -35);
  EXPECT_EQ(det_second_order(jacobsthal_p, 4), -400);
  EXPECT_EQ(det_second_order(lucas_p, 4), -1875);
}

TEST(SecondOrder, QaVariantDiffersOnJacobsthal) {
  EXPECT_EQ(det_second_order(jacobsthal_p, 4, eq2_variant::qa), -378);
  // p == q for Fibonacci, so both readings coincide.
  EXPECT_EQ(det_second_order(fibonacci_p, 6, eq2_variant::qa), det_second_order(fibonacci_p, 6));
}

TEST(SecondOrder, RejectsSmallOrders) {
  EXPECT_THROW(det_second_order(fibonacci_p, 3), error);
  EXPECT_THROW(det_second_order(fibonacci_p, 2), error);
}

TEST(SecondOrderProperty, FamiliesMatchOracle) {
  for (std::size_t n = 4; n <= 12; ++n) {
    for (const auto& p : {fibonacci_p, lucas_p, jacobsthal_p, jacobsthal_lucas_p})
      ASSERT_EQ(det_second_order(p, n), oracle(p.spec(), n)) << "n=" << n;
    // arbitrary parameters, including rationals
    const second_order_params odd{-2, 3, make_exact(1, 2), -1};
    ASSERT_EQ(det_second_order(odd, n), oracle(odd.spec(), n));
  }
}

TEST(Shen, Fibonacci) {
  EXPECT_EQ(det_fibonacci_shen(4), -35);
  EXPECT_EQ(det_fibonacci_shen(5), 1812);
  EXPECT_THROW(det_fibonacci_shen(2), error);
  for (std::size_t n = 3; n <= 12; ++n) {
    ASSERT_EQ(det_fibonacci_shen(n), oracle(from_family(family::fibonacci{}), n));
    if (n > 3) {
      ASSERT_EQ(det_fibonacci_shen(n), det_second_order(fibonacci_p, n));
    }
  }
}

TEST(Shen, Lucas) {
  EXPECT_EQ(det_lucas_shen(4), -1875);
  EXPECT_EQ(det_lucas_shen(5), 134446);
  for (std::size_t n = 3; n <= 12; ++n) {
    ASSERT_EQ(det_lucas_shen(n), oracle(from_family(family::lucas{}), n));
    if (n > 3) {
      ASSERT_EQ(det_lucas_shen(n), det_second_order(lucas_p, n));
    }
  }
}

TEST(Tribonacci, Examples) {
  EXPECT_EQ(det_tribonacci(4), -160);
  EXPECT_EQ(det_tribonacci(5), 11625);
  EXPECT_THROW(det_tribonacci(3), error);
}

TEST(Tribonacci, ContextMatchesReductionAlpha) {
  for (std::size_t n = 4; n <= 16; ++n) {
    const tribonacci_context ctx(n);
    ASSERT_EQ(ctx.alpha().values, alpha(from_family(family::tribonacci{}), n).values);
    ASSERT_EQ(ctx.a(0), 0);
  }
}

TEST(TribonacciProperty, MatchesOracleAndLemma) {
  const auto tri = from_family(family::tribonacci{});
  for (std::size_t n = 4; n <= 12; ++n) {
    const exact d = det_tribonacci(n);
    ASSERT_EQ(d, oracle(tri, n));
    ASSERT_EQ(d, det_lemma_value(tri, n));
  }
}

TEST(TribonacciProperty, NegativeDiscriminant) {
  for (std::size_t n = 4; n <= 32; ++n) ASSERT_LT(sgn(tribonacci_context(n).discriminant()), 0) << n;
}

TEST(Geometric, Examples) {
  EXPECT_EQ(det_geometric(2, 3), 392);
  for (std::size_t n = 2; n <= 6; ++n) EXPECT_EQ(det_geometric(1, n), 0);
  EXPECT_EQ(det_geometric(-1, 2), 0);
  EXPECT_EQ(det_geometric(5, 1), 5);
  try {
    det_geometric(0, 3);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::zero_ratio);
  }
}

TEST(GeometricProperty, MatchesOracle) {
  for (const exact& a : {exact(-2), exact(-1), make_exact(1, 2), exact(2), exact(3), make_exact(-5, 7)})
    for (std::size_t n = 1; n <= 10; ++n) ASSERT_EQ(det_geometric(a, n), oracle(from_family(family::geometric{a}), n));
}

TEST(Wronskian, Examples) {
  const auto al4 = alpha(from_family(family::tribonacci{}), 4);
  EXPECT_TRUE(binet_wronskian_identity(al4, 5, 3));
  for (std::size_t t = 2; t <= 8; ++t) EXPECT_TRUE(binet_wronskian_identity(al4, t, t));
  const auto al6 = alpha(from_family(family::tribonacci{}), 6);
  for (std::size_t k = 2; k <= 10; ++k)
    for (std::size_t t = 2; t <= k; ++t) EXPECT_TRUE(binet_wronskian_identity(al6, k, t)) << k << "," << t;
}

TEST(Wronskian, Errors) {
  EXPECT_THROW(binet_wronskian_identity(alpha_vector{ints({1, 2, 0}), 5}, 4, 3), error);
  EXPECT_THROW(binet_wronskian_identity(alpha_vector{ints({0, 2, 1}), 5}, 4, 3), error);
  EXPECT_THROW(binet_wronskian_identity(alpha_vector{ints({1, 2}), 5}, 4, 3), error);
  EXPECT_THROW(binet_wronskian_identity(alpha_vector{ints({1, 2, 3}), 5}, 3, 4), error);
}

TEST(WronskianProperty, ArbitraryThirdOrderAlpha) {
  // The identity is a Casoratian relation; it does not depend on tribonacci values.
  const alpha_vector al{{make_exact(3, 2), -4, make_exact(-7, 5)}, 9};
  for (std::size_t k = 2; k <= 14; ++k)
    for (std::size_t t = 2; t <= k; ++t) ASSERT_TRUE(binet_wronskian_identity(al, k, t));
}

TEST(Dispatch, PicksFormula) {
  EXPECT_EQ(det_closed(from_family(family::fibonacci{}), 4).closed_form_name, "fibonacci-shen");
  EXPECT_EQ(det_closed(from_family(family::lucas{}), 4).closed_form_name, "lucas-shen");
  EXPECT_EQ(det_closed(from_family(family::jacobsthal{}), 4).closed_form_name, "second-order");
  EXPECT_EQ(det_closed(from_family(family::tribonacci{}), 4).closed_form_name, "tribonacci");
  const auto g = det_closed(make_recurrence(ints({2}), ints({2})), 3);
  EXPECT_EQ(g.closed_form_name, "geometric");
  EXPECT_EQ(g.exact_value(), 392);
  EXPECT_EQ(g.method_name(), "closed:geometric");
  EXPECT_THROW(det_closed(make_recurrence(ints({1, 1, 2}), ints({1, 1, 1})), 5), error);
  EXPECT_FALSE(has_closed_form(make_recurrence(ints({2}), ints({3})), 4));
  EXPECT_TRUE(has_closed_form(from_family(family::jacobsthal{}), 4));
  EXPECT_FALSE(has_closed_form(from_family(family::jacobsthal{}), 3));
}
