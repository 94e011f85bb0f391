#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "touchard/explorer.hpp"
#include "touchard/io.hpp"

using namespace touchard;

TEST(FindThreshold, ZeroOrderClosedFormRoot) {
  // l = 0, lambda = 0, alpha = 4/3: m - (1 - e^{-m})/3 = 1/3.
  const class_params p(0.0, 4.0 / 3.0);
  const auto t = find_threshold(criterion_kind::M_theorem, 0, p);
  EXPECT_LT(std::fabs(t.residual), 1e-9);
  EXPECT_NEAR(t.m_star, 0.45523335558519032, 1e-10);
  EXPECT_LT(t.final_bracket.hi - t.final_bracket.lo, 1e-10);
  EXPECT_FALSE(t.non_monotone);
  ASSERT_EQ(t.brackets.size(), 1u);

  // Brute-force coefficient sums on either side of m*.
  const double below = lemma_sum_M(touchard_series({0, t.m_star - 1e-6}, 64), p).criterion_value;
  const double above = lemma_sum_M(touchard_series({0, t.m_star + 1e-6}, 64), p).criterion_value;
  EXPECT_LT(below, p.bound());
  EXPECT_GT(above, p.bound());
}

TEST(FindThreshold, BracketInvariantAndIterationBound) {
  for (auto c : {criterion_kind::M_theorem, criterion_kind::N_theorem, criterion_kind::integral}) {
    for (unsigned l : {0u, 1u, 2u, 3u}) {
      for (double lam : {0.0, 0.5}) {
        const class_params p(lam, 1.2);
        const auto t = find_threshold(c, l, p);
        const auto at = [&](double m) { return evaluate_criterion(c, {l, m}, p).criterion_value; };
        EXPECT_LE(at(t.final_bracket.lo), p.bound());
        EXPECT_GT(at(t.final_bracket.hi), p.bound());
        const auto& b = t.brackets.front();
        EXPECT_LE(t.iterations, std::ceil(std::log2((b.hi - b.lo) / 1e-10)) + 2);
        EXPECT_LT(std::fabs(t.residual), 1e-8);
      }
    }
  }
}

TEST(FindThreshold, SmallestLadderPointIsMember) {
  for (unsigned l : {0u, 2u, 4u})
    for (double lam : {0.0, 0.25, 0.5, 0.75})
      for (double alpha : {1.05, 1.2, 4.0 / 3.0}) {
        const class_params p(lam, alpha);
        EXPECT_LT(theorem_M_lhs({l, std::ldexp(1.0, -10)}, p).criterion_value, p.bound());
        EXPECT_LT(theorem_N_lhs({l, std::ldexp(1.0, -10)}, p).criterion_value, p.bound());
      }
}

TEST(FindThreshold, Errors) {
  // alpha * lambda = 1: the criterion never grows, so there is no finite threshold.
  try {
    (void)find_threshold(criterion_kind::M_theorem, 1, class_params(0.75, 4.0 / 3.0));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::no_threshold);
  }
  // Ladder stops before the crossing.
  threshold_options short_ladder;
  short_ladder.ladder_min_exp = -10;
  short_ladder.ladder_max_exp = -5;
  EXPECT_THROW((void)find_threshold(criterion_kind::M_theorem, 0, class_params(0.0, 1.2), std::nullopt, short_ladder),
               error);
  EXPECT_THROW((void)find_threshold(criterion_kind::rtau, 0, class_params(0.0, 1.2)), error);
}

TEST(FindThreshold, RTauScalesTheThreshold) {
  const class_params p(0.25, 1.2);
  const rtau_params small({1.0, 0.0}, 0.25, -0.25);  // scale 0.5
  const auto a = find_threshold(criterion_kind::rtau, 1, p, small);
  const auto b = find_threshold(criterion_kind::M_theorem, 1, p);
  EXPECT_GT(a.m_star, b.m_star);
  EXPECT_LT(std::fabs(a.residual), 1e-8);
}

TEST(CriterionComparison, NDominatesMWhereWeightsAreNonnegative) {
  for (double lam : {0.0, 0.25, 0.5})
    for (double alpha : {1.05, 1.2}) {
      const class_params p(lam, alpha);
      bool nonneg = true;
      for (std::size_t n = 2; n <= 64; ++n) nonneg = nonneg && p.weight(n) >= 0.0;
      if (!nonneg) continue;
      for (unsigned l : {0u, 1u, 2u})
        for (double m : {0.1, 0.5, 1.0, 2.0}) {
          const auto rm = theorem_M_lhs({l, m}, p);
          const auto rn = theorem_N_lhs({l, m}, p);
          EXPECT_GE(rn.criterion_value, rm.criterion_value);
          if (rn.member) {
            EXPECT_TRUE(rm.member);
          }
        }
    }
}

TEST(Sweep, SinglePointMatchesReport) {
  sweep_grid g;
  g.criterion = criterion_kind::N_theorem;
  g.l = {2};
  g.m = {0.7};
  g.lambda = {0.25};
  g.alpha = {1.2};
  const auto rows = sweep(g);
  ASSERT_EQ(rows.size(), 1u);
  const auto rep = theorem_N_lhs({2, 0.7}, class_params(0.25, 1.2));
  EXPECT_EQ(rows[0].criterion_value, rep.criterion_value);
  EXPECT_EQ(rows[0].bound, rep.bound);
  EXPECT_EQ(rows[0].member, rep.member);
  EXPECT_EQ(rows[0].status, "ok");
}

TEST(Sweep, EmptyGridGivesHeaderOnly) {
  sweep_grid g;
  g.l = {0, 1};
  g.m = {};
  g.lambda = {0.0};
  g.alpha = {1.2};
  const auto rows = sweep(g);
  EXPECT_TRUE(rows.empty());
  std::ostringstream os;
  write_sweep_csv(os, rows);
  EXPECT_EQ(os.str(), std::string(kSweepCsvHeader) + "\n");
}

TEST(Sweep, RowErrorsDoNotAbort) {
  sweep_grid g;
  g.l = {1};
  g.m = {-1.0, 1.0};
  g.lambda = {0.0, 1.5};
  g.alpha = {1.2};
  const auto rows = sweep(g);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].status, "InvalidParameter");
  EXPECT_EQ(rows[1].status, "InvalidParameter");
  EXPECT_EQ(rows[2].status, "ok");
  EXPECT_EQ(rows[3].status, "InvalidParameter");
  EXPECT_TRUE(std::isnan(rows[0].criterion_value));
}

TEST(Sweep, LexicographicOrderAndRTauColumns) {
  sweep_grid g;
  g.criterion = criterion_kind::rtau;
  g.l = {0, 1};
  g.m = {0.5, 1.0};
  g.lambda = {0.0};
  g.alpha = {1.2};
  g.tau = {{1.0, 0.0}, {0.0, 0.5}};
  g.A = {0.5};
  g.B = {-0.5};
  const auto rows = sweep(g);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].l, 0u);
  EXPECT_EQ(rows[1].tau, std::complex<double>(0.0, 0.5));
  EXPECT_EQ(rows[2].m, 1.0);
  EXPECT_EQ(rows[4].l, 1u);
  EXPECT_NEAR(rows[1].criterion_value, 0.5 * rows[0].criterion_value, 1e-15);
}

TEST(Sweep, ConsistentWithThreshold) {
  const class_params p(0.25, 1.2);
  const auto t = find_threshold(criterion_kind::M_theorem, 1, p);
  ASSERT_FALSE(t.non_monotone);
  sweep_grid g;
  g.l = {1};
  g.lambda = {0.25};
  g.alpha = {1.2};
  for (int i = 1; i <= 200; ++i) g.m.push_back(0.02 * i);
  const auto rows = sweep(g);
  int flips = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].member != rows[i - 1].member) {
      ++flips;
      EXPECT_LE(rows[i - 1].m, t.m_star);
      EXPECT_GE(rows[i].m, t.m_star);
    }
  }
  EXPECT_EQ(flips, 1);
}

TEST(Sweep, ParallelIsBitIdenticalToSerial) {
  sweep_grid g;
  g.criterion = criterion_kind::N_theorem;
  g.l = {0, 1, 2, 3};
  for (int i = 1; i <= 25; ++i) g.m.push_back(0.17 * i);
  g.lambda = {0.0, 0.25, 0.5, 0.75};
  g.alpha = {1.05, 1.2, 4.0 / 3.0};
  std::ostringstream serial, parallel;
  write_sweep_csv(serial, sweep(g, 1));
  write_sweep_csv(parallel, sweep(g, 6));
  EXPECT_EQ(serial.str(), parallel.str());
}
