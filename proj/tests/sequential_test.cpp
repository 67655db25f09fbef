// Copyright 2026 The sequd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sequd/sequential.hpp"

#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace sequd;

TEST(sequential, joint_success_at_optimum) {
  EXPECT_NEAR(joint_success_analytic(0.25, {0.5, 0.5}, {0.5, 0.5}), 0.25, 1e-15);
}

TEST(sequential, joint_success_identical_states) {
  EXPECT_NEAR(joint_success_analytic(1.0, {1.0, 1.0}, {1.0, 1.0}), 0.0, 1e-15);
}

TEST(sequential, joint_success_unequal_charlie) {
  const double p = joint_success_analytic(0.25, {0.5, 0.5}, {0.25, 1.0});
  EXPECT_NEAR(p, 0.1875, 1e-15);
  EXPECT_LT(p, 0.25);
}

TEST(sequential, joint_success_constraint_violations) {
  // Charlie's t = 0.1 < s.
  try {
    joint_success_analytic(0.25, {0.5, 0.5}, {0.1, 0.1});
    FAIL() << "expected ConstraintViolation";
  } catch (const ConstraintViolation& e) {
    EXPECT_NE(std::string(e.what()).find("q1C*q2C"), std::string::npos);
  }
  // Bob's product 0.36 != s^2/t^2 = 0.25.
  try {
    joint_success_analytic(0.25, {0.6, 0.6}, {0.5, 0.5});
    FAIL() << "expected ConstraintViolation";
  } catch (const ConstraintViolation& e) {
    EXPECT_NE(std::string(e.what()).find("q1B*q2B"), std::string::npos);
  }
  EXPECT_THROW(joint_success_analytic(0.25, {-0.1, 0.5}, {0.5, 0.5}), DomainError);
}

TEST(sequential, optimize_examples) {
  const auto a = optimize_two_observer(0.25);
  EXPECT_NEAR(a.t_star, 0.5, 1e-8);
  EXPECT_NEAR(a.q_star, 0.5, 1e-8);
  EXPECT_NEAR(a.p_star, 0.25, 1e-8);
  EXPECT_LT(a.p_star, 0.75);

  const auto b = optimize_two_observer(0.64);
  EXPECT_NEAR(b.q_star, 0.8, 1e-8);
  EXPECT_NEAR(b.p_star, 0.04, 1e-8);
}

TEST(sequential, optimize_rejects_degenerate) {
  EXPECT_THROW(optimize_two_observer(0.0), DegenerateInputError);
  EXPECT_THROW(optimize_two_observer(1.0), DegenerateInputError);
}

TEST(sequential, optimizer_matches_closed_form_and_scan) {
  for (int i = 0; i < 100; ++i) {
    const double s = 0.01 + 0.98 * (i + 0.5) / 100.0;
    SCOPED_TRACE(s);
    const auto r = optimize_two_observer(s);
    const double root = std::sqrt(s);
    EXPECT_LT(std::abs(r.p_star - (1 - root) * (1 - root)), 1e-8);
    EXPECT_NEAR(r.t_star, root, 1e-8);
    EXPECT_NEAR(r.q_star, root, 1e-8);
    EXPECT_LT(r.closed_form_gap, 1e-8);
    EXPECT_LE(oracle::scan_two_observer(s, 100000), r.p_star + 1e-6);
  }
}

TEST(sequential, n_observer_examples) {
  EXPECT_NEAR(optimal_n_observer(0.25, 1), 0.75, 1e-15);
  EXPECT_NEAR(optimal_n_observer(0.25, 2), optimize_two_observer(0.25).p_star, 1e-8);
  EXPECT_NEAR(optimal_n_observer(0.729, 3), 0.001, 1e-12);
  EXPECT_THROW(optimal_n_observer(0.25, 0), DomainError);
}

TEST(sequential, n_observer_monotone) {
  for (int n = 1; n <= 6; ++n) {
    double prev = 2.0;
    for (int i = 1; i < 200; ++i) {
      const double p = optimal_n_observer(i / 200.0, n);
      EXPECT_LT(p, prev);
      prev = p;
    }
  }
  for (double s : {0.05, 0.3, 0.7, 0.95}) {
    double prev = 2.0;
    for (int n = 1; n <= 8; ++n) {
      const double p = optimal_n_observer(s, n);
      EXPECT_LT(p, prev);
      prev = p;
    }
  }
}

TEST(sequential, chain_two_observers) {
  const auto c = build_chain(0.25, 2);
  ASSERT_EQ(c.observers(), 2u);
  EXPECT_NEAR(c.stages[0].s(), 0.25, 1e-15);
  EXPECT_NEAR(c.stages[0].t(), 0.5, 1e-12);
  EXPECT_NEAR(c.stages[1].s(), 0.5, 1e-12);
  EXPECT_NEAR(c.stages[1].t(), 1.0, 1e-12);
  for (const auto& st : c.stages) {
    EXPECT_NEAR(st.q1, 0.5, 1e-12);
    EXPECT_NEAR(st.q2, 0.5, 1e-12);
    EXPECT_TRUE(validate(st).passed());
  }
  EXPECT_TRUE(chain_is_consistent(c));
  EXPECT_NEAR(chain_joint_success(c), 0.25, 1e-12);
  EXPECT_NEAR(chain_at_least_one(c), 0.75, 1e-12);
}

TEST(sequential, chain_single_observer_is_optimal) {
  const auto c = build_chain(0.4, 1);
  ASSERT_EQ(c.observers(), 1u);
  EXPECT_DOUBLE_EQ(c.stages[0].q1, 0.4);
  EXPECT_TRUE(c.stages[0].exhausts_information());
}

TEST(sequential, chain_three_observers) {
  const auto c = build_chain(0.729, 3);
  ASSERT_EQ(c.observers(), 3u);
  const double overlaps[] = {0.729, 0.81, 0.9, 1.0};
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(c.stages[k].q1, 0.9, 1e-12);
    EXPECT_NEAR(c.stages[k].s(), overlaps[k], 1e-12);
    EXPECT_NEAR(c.stages[k].t(), overlaps[k + 1], 1e-12);
  }
  EXPECT_TRUE(chain_is_consistent(c));
  EXPECT_NEAR(chain_joint_success(c), 0.001, 1e-12);
}

TEST(sequential, chain_rejects_bad_arguments) {
  EXPECT_THROW(build_chain(0.5, 0), DomainError);
  EXPECT_THROW(build_chain(0.0, 2), DegenerateInputError);
  EXPECT_THROW(build_chain(1.0, 2), DegenerateInputError);
}

TEST(sequential, three_observer_schedule_oracle) {
  for (double s : {0.1, 0.3, 0.729}) {
    const double best = oracle::scan_three_observer(s, 1500);
    EXPECT_LE(best, optimal_n_observer(s, 3) + 1e-6);
    EXPECT_GT(best, optimal_n_observer(s, 3) - 1e-4);
  }
}

TEST(sequential, simulate_two_observers) {
  const auto c = build_chain(0.25, 2);
  const auto t = simulate_chain(c, 1000000, 17);
  EXPECT_EQ(t.trials, 1000000u);
  EXPECT_EQ(t.prepared[0] + t.prepared[1], t.trials);
  EXPECT_EQ(t.error_count, 0u);
  const double se = std::sqrt(0.25 * 0.75 / 1e6);
  EXPECT_NEAR(t.joint_probability(), 0.25, 4 * se);
  const double se1 = std::sqrt(0.75 * 0.25 / 1e6);
  EXPECT_NEAR(t.at_least_one_rate(), 0.75, 4 * se1);
  ASSERT_EQ(t.observer_success.size(), 2u);
  EXPECT_NEAR(static_cast<double>(t.observer_success[0]) / 1e6, 0.5, 4 * std::sqrt(0.25 / 1e6));
  EXPECT_LE(t.at_least_one, t.trials);
}

TEST(sequential, simulate_various_n) {
  for (int n = 1; n <= 4; ++n) {
    const double s = 0.2;
    const auto c = build_chain(s, n);
    const auto t = simulate_chain(c, 400000, 1000 + n);
    const double p = optimal_n_observer(s, n);
    EXPECT_EQ(t.error_count, 0u);
    EXPECT_NEAR(t.joint_probability(), p, 4 * std::sqrt(p * (1 - p) / 4e5)) << "n=" << n;
    EXPECT_NEAR(t.at_least_one_rate(), 1 - s, 4 * std::sqrt(s * (1 - s) / 4e5)) << "n=" << n;
  }
}

TEST(sequential, simulate_is_deterministic_and_split_independent) {
  const auto c = build_chain(0.4, 3);
  const auto a = simulate_chain(c, 50001, 123, 1);
  const auto b = simulate_chain(c, 50001, 123, 4);
  const auto d = simulate_chain(c, 50001, 123, 7);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, d);
  const auto e = simulate_chain(c, 50001, 124, 1);
  EXPECT_NE(a, e);
}

TEST(sequential, simulate_rejects_zero_trials) {
  EXPECT_THROW(simulate_chain(build_chain(0.3, 2), 0, 1), DomainError);
}

TEST(sequential, golden_section_generic) {
  const double x = golden_section_maximize([](double v) { return -(v - 0.3) * (v - 0.3); }, 0.0, 1.0);
  EXPECT_NEAR(x, 0.3, 1e-7);
}
