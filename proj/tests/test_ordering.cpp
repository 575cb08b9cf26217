#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "varrat/ordering.hpp"

using namespace varrat;

namespace {

const VariableOrdering kOrthant2 = VariableOrdering::constant(Cone::orthant(2));

PayoffVec xi11() { return make_payoff({1, 1}) / std::sqrt(2.0); }

// K[(2,2)] = hull{(1,0),(1,1)}, K[(1,0)] = R^2_+ (nearest anchor).
VariableOrdering two_anchor() {
  return VariableOrdering({{make_payoff({2, 2}), Cone::from_generators({make_payoff({1, 0}), make_payoff({1, 1})}, 2)},
                           {make_payoff({1, 0}), Cone::orthant(2)}});
}

}  // namespace

TEST(LeqUnder, ComponentwiseSmaller) { EXPECT_TRUE(leq_under(kOrthant2, make_payoff({2, 2}), make_payoff({1, 1}))); }

TEST(LeqUnder, IncomparableUnderOrthant) {
  EXPECT_FALSE(leq_under(kOrthant2, make_payoff({1, 0}), make_payoff({0, 1})));
  EXPECT_FALSE(leq_under(kOrthant2, make_payoff({0, 1}), make_payoff({1, 0})));
}

TEST(LeqUnder, Reflexive) {
  std::mt19937_64 rng(5);
  const auto K = two_anchor();
  for (int i = 0; i < 200; ++i) {
    const PayoffVec p = oracle::random_vec(rng, 2, -5, 5);
    EXPECT_TRUE(leq_under(K, p, p));
  }
}

TEST(LeqUnder, DimensionMismatch) {
  EXPECT_THROW(leq_under(kOrthant2, make_payoff({1, 1}), make_payoff({1, 1, 1})), InvalidInput);
}

TEST(LeqUnder, AntisymmetricOnPointedCone) {
  std::mt19937_64 rng(6);
  const auto K = VariableOrdering::constant(Cone::shrunk_orthant(2, 0.3));
  for (int i = 0; i < 500; ++i) {
    const PayoffVec a = oracle::random_vec(rng, 2, 0, 3), b = oracle::random_vec(rng, 2, 0, 3);
    if (leq_under(K, a, b) && leq_under(K, b, a)) { EXPECT_LE((a - b).norm(), 1e-8); }
  }
}

TEST(VariableOrdering, NearestAnchorLowestIndexOnTies) {
  const VariableOrdering K({{make_payoff({0, 0}), Cone::orthant(2)},
                            {make_payoff({2, 0}), Cone::shrunk_orthant(2, 0.5)}});
  EXPECT_EQ(K.select(make_payoff({0.2, 5})), 0u);
  EXPECT_EQ(K.select(make_payoff({1.8, 0})), 1u);
  EXPECT_EQ(K.select(make_payoff({1, 7})), 0u);
}

TEST(VariableOrdering, RejectsNonPointedAnchor) {
  const Cone half({make_payoff({1, 0})}, {make_payoff({0, 1}), make_payoff({0, -1}), make_payoff({1, 0})}, 2);
  EXPECT_THROW(VariableOrdering({{make_payoff({0, 0}), half}}), InvalidInput);
  EXPECT_NO_THROW(VariableOrdering::unchecked({{make_payoff({0, 0}), half}}));
  EXPECT_THROW(VariableOrdering(std::vector<Anchor>{}), InvalidInput);
}

TEST(CommonConeOfOrdering, SubsetOfEveryAnchor) {
  const auto K = two_anchor();
  const Cone c = common_cone(K);
  for (const auto& a : K.anchors())
    for (const auto& g : c.generators()) EXPECT_TRUE(a.cone.contains(g));
}

TEST(Transitivity, ConstantOrthantPasses) {
  std::mt19937_64 rng(7);
  std::vector<PayoffVec> sample;
  for (int i = 0; i < 30; ++i) sample.push_back(oracle::random_vec(rng, 2, 0, 3));
  EXPECT_TRUE(check_transitivity(kOrthant2, sample).pass());
}

TEST(Transitivity, ChainUnderOrthantHasNoViolations) {
  const std::vector<PayoffVec> sample{make_payoff({2, 2}), make_payoff({1, 1}), make_payoff({0, 0})};
  EXPECT_EQ(check_transitivity(kOrthant2, sample).violations.size(), 0u);
}

TEST(Transitivity, TwoAnchorSampleWithoutViolation) {
  // (2,2)-(0.5,0.9) = (1.5,1.1) lies in hull{(1,0),(1,1)}, so this sample is consistent.
  const std::vector<PayoffVec> sample{make_payoff({2, 2}), make_payoff({1, 1}), make_payoff({0.5, 0.9})};
  EXPECT_TRUE(check_transitivity(two_anchor(), sample).pass());
}

TEST(Transitivity, TwoAnchorViolationFound) {
  const std::vector<PayoffVec> sample{make_payoff({2, 2}), make_payoff({1, 1}), make_payoff({1, 0.5})};
  const auto report = check_transitivity(two_anchor(), sample);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0], (std::array<std::size_t, 3>{0, 1, 2}));
  // independent re-derivation: (2,2)-(1,0.5) = (1,1.5) has p1 < p2, outside hull{(1,0),(1,1)}
  EXPECT_FALSE(oracle::in_hull(make_payoff({1, 1.5}), {make_payoff({1, 0}), make_payoff({1, 1})}));
}

TEST(Nesting, TransitiveChainIsNested) {
  const VariableOrdering K({{make_payoff({0, 0}), Cone::shrunk_orthant(2, 0.5)},
                            {make_payoff({5, 5}), Cone::shrunk_orthant(2, 0.2)},
                            {make_payoff({9, 9}), Cone::orthant(2)}});
  std::mt19937_64 rng(8);
  std::vector<PayoffVec> sample;
  for (int i = 0; i < 40; ++i) sample.push_back(oracle::random_vec(rng, 2, 0, 10));
  EXPECT_TRUE(check_transitivity(K, sample).pass());
  EXPECT_TRUE(check_nesting(K, sample).pass());
  for (const auto& f0 : sample)
    for (const auto& f1 : sample)
      if (leq_under(K, f0, f1))
        for (const auto& g : K.at(f1).generators()) { EXPECT_TRUE(K.at(f0).contains(g)); }
}

TEST(Nesting, WideConeBelowIsReported) {
  const VariableOrdering K({{make_payoff({2, 2}), Cone::shrunk_orthant(2, 0.5)}, {make_payoff({1, 1}), Cone::orthant(2)}});
  const std::vector<PayoffVec> sample{make_payoff({2, 2}), make_payoff({1, 1})};
  EXPECT_FALSE(check_nesting(K, sample).pass());
}

TEST(ParetoMin, TwoIncomparableMinima) {
  const std::vector<PayoffVec> pts{make_payoff({1, 2}), make_payoff({2, 1}), make_payoff({2, 2})};
  EXPECT_EQ(pareto_min_indices(pts, kOrthant2), (std::vector<std::size_t>{0, 1}));
}

TEST(ParetoMin, SinglePoint) {
  const std::vector<PayoffVec> pts{make_payoff({4, 4})};
  EXPECT_EQ(pareto_min(pts, kOrthant2).size(), 1u);
}

TEST(ParetoMin, DominatedByBoundaryPoint) {
  const std::vector<PayoffVec> pts{make_payoff({1, 0}), make_payoff({1, 1})};
  EXPECT_EQ(pareto_min_indices(pts, kOrthant2), (std::vector<std::size_t>{0}));
}

TEST(ParetoMin, DuplicatesOfMinimumKept) {
  const std::vector<PayoffVec> pts{make_payoff({1, 0}), make_payoff({3, 3}), make_payoff({1, 0})};
  EXPECT_EQ(pareto_min_indices(pts, kOrthant2), (std::vector<std::size_t>{0, 2}));
}

TEST(ApproxMin, LargeEpsKeepsBoth) {
  const std::vector<PayoffVec> pts{make_payoff({1, 0}), make_payoff({1, 1})};
  EXPECT_EQ(approx_min_indices(pts, kOrthant2, 2.0, xi11()).size(), 2u);
}

TEST(ApproxMin, FarPointExcluded) {
  const std::vector<PayoffVec> pts{make_payoff({0, 0}), make_payoff({5, 5})};
  EXPECT_EQ(approx_min_indices(pts, kOrthant2, 0.1, xi11()), (std::vector<std::size_t>{0}));
}

TEST(ApproxMin, ParetoPointsAreApproxMinimal) {
  const std::vector<PayoffVec> pts{make_payoff({1, 2}), make_payoff({2, 1})};
  for (double eps : {1e-3, 0.1, 1.0, 10.0}) EXPECT_EQ(approx_min_indices(pts, kOrthant2, eps, xi11()).size(), 2u);
}

TEST(ApproxMin, RejectsBadParameters) {
  const std::vector<PayoffVec> pts{make_payoff({1, 2})};
  EXPECT_THROW(approx_min(pts, kOrthant2, 1.0, make_payoff({1, 1})), InvalidInput);
  EXPECT_THROW(approx_min(pts, kOrthant2, 0.0, xi11()), InvalidInput);
}

TEST(MinimalityProperty, AgreesWithOracleOnRandomSets) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 3), count(1, 20);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = dim(rng);
    std::vector<Anchor> anchors;
    std::vector<oracle::Anchor> oanchors;
    const int k = 1 + trial % 3;
    for (int a = 0; a < k; ++a) {
      const double s = m == 1 ? 0.0 : std::round(600 * u(rng)) / 1000.0;
      const PayoffVec point = PayoffVec::Constant(m, 3.0 * a);
      anchors.push_back({point, Cone::shrunk_orthant(m, s)});
      std::vector<PayoffVec> gens;
      for (int i = 0; i < m; ++i)
        gens.push_back((1.0 - s) * PayoffVec::Unit(m, i) + PayoffVec::Constant(m, s / m));
      oanchors.push_back({point, gens});
    }
    const VariableOrdering K(anchors);
    std::vector<PayoffVec> pts;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      PayoffVec p(m);
      for (int j = 0; j < m; ++j) p[j] = std::round(10000 * u(rng)) / 1000.0;
      pts.push_back(p);
    }
    if (n > 2) pts.push_back(pts[0]);
    EXPECT_EQ(pareto_min_indices(pts, K), oracle::pareto(pts, oanchors)) << "trial " << trial;
    PayoffVec xi = oracle::random_vec(rng, m, 0.2, 1.0);
    xi /= xi.norm();
    if (!common_cone(K).contains(xi)) xi = PayoffVec::Ones(m) / std::sqrt(static_cast<double>(m));
    const double eps = 0.05 + 2.0 * u(rng);
    EXPECT_EQ(approx_min_indices(pts, K, eps, xi), oracle::approx(pts, oanchors, eps, xi)) << "trial " << trial;
  }
}
