/*
 * Copyright 2026 The riskscan Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "riskscan/cost.hpp"

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "riskscan/synth.hpp"

using namespace riskscan;

namespace {

AgentState agent(const std::string& id, Vec2 p, Vec2 v, double theta = 0.0, double mass = 1500.0,
                 double length = 4.0, double width = 2.0) {
  AgentState s;
  s.agent_id = id;
  s.p = p;
  s.v = v;
  s.theta = theta;
  s.mass = mass;
  s.length = length;
  s.width = width;
  return s;
}

// Brute-force oracle: minimum distance to densely sampled boundary points.
double obb_distance_sampled(const Vec2& p, const Obb& box, int samples_per_side) {
  const Vec2 axis_x = heading_dir(box.heading);
  const Vec2 axis_y = axis_x.perp_left();
  const Vec2 local = (p - box.center).rotated(-box.heading);
  if (std::abs(local.x) <= box.half_length && std::abs(local.y) <= box.half_width) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples_per_side; ++i) {
    const double f = -1.0 + 2.0 * i / samples_per_side;
    const Vec2 pts[4] = {
        box.center + axis_x * (f * box.half_length) + axis_y * box.half_width,
        box.center + axis_x * (f * box.half_length) - axis_y * box.half_width,
        box.center + axis_x * box.half_length + axis_y * (f * box.half_width),
        box.center - axis_x * box.half_length + axis_y * (f * box.half_width),
    };
    for (const Vec2& q : pts) best = std::min(best, (p - q).norm());
  }
  return best;
}

}  // namespace

TEST_CASE("pair_cost matches the interaction cost form") {
  CostParams params;

  SUBCASE("stationary pair keeps the baseline") {
    const AgentState a = agent("a", {0, 0}, {0, 0});
    const AgentState b = agent("b", {10, 0}, {0, 0});
    CHECK(pair_cost(a, b, params) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("moving obstacle, stationary ego") {
    const AgentState ego = agent("a", {0, 0}, {0, 0});
    const AgentState obstacle = agent("b", {20, 0}, {10, 0});
    // Oracle: 1 + ln(75001) + ln(37501) (tests/oracles/derive_expected.py)
    CHECK(pair_cost(ego, obstacle, params) ==
          doctest::Approx(22.757379604032512).epsilon(1e-14));
  }
  SUBCASE("equal velocities lose the relative term exactly") {
    const AgentState a = agent("a", {0, 0}, {7, 3});
    const AgentState b = agent("b", {15, 0}, {7, 3});
    const double expected = 1.0 + std::log1p(0.5 * 1500.0 * (49.0 + 9.0));
    CHECK(pair_cost(a, b, params) == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("non-decreasing in the closing speed") {
    const AgentState ego = agent("a", {0, 0}, {0, 0});
    double prev = -1.0;
    for (int dv = 0; dv <= 20; ++dv) {
      const AgentState obstacle = agent("b", {20, 0}, {static_cast<double>(dv), 0});
      const double c = pair_cost(ego, obstacle, params);
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("obb_distance analytic cases") {
  const Obb box{{0, 0}, 0.0, 2.0, 1.0};
  CHECK(obb_distance({0, 0}, box) == 0.0);
  CHECK(obb_distance({1.5, 0.5}, box) == 0.0);
  CHECK(obb_distance({3.0, 0.0}, box) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(obb_distance({3.0, 2.0}, box) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  // Rotating box and point together is invariant.
  const Obb rotated{{5, -3}, 0.7, 2.0, 1.0};
  const Vec2 p = Vec2{5, -3} + Vec2{3.0, 2.0}.rotated(0.7);
  CHECK(obb_distance(p, rotated) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("obb_distance agrees with boundary sampling") {
  std::uint64_t rng = 99;
  const auto next = [&] { return unit_real(rng = mix64(rng)); };
  for (int i = 0; i < 50; ++i) {
    const Obb box{{next() * 40 - 20, next() * 40 - 20}, next() * 2 * M_PI, 0.3 + next() * 4,
                  0.3 + next() * 2};
    const Vec2 p{next() * 60 - 30, next() * 60 - 30};
    const double exact = obb_distance(p, box);
    const double sampled = obb_distance_sampled(p, box, 2500);
    CHECK(std::abs(exact - sampled) < 1e-3);
  }
}

TEST_CASE("gauss_weight") {
  CostParams params;  // sigma_c = 2
  CHECK(gauss_weight(0.0, params) == 1.0);
  CHECK(gauss_weight(2.0, params) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(gauss_weight(12.0, params) < 2e-8);  // 6 sigma
}

TEST_CASE("cost_contribution composes kernel and pair cost") {
  CostParams params;
  const AgentState obstacle = agent("b", {10, 0}, {0, 0});

  SUBCASE("inside the box the contribution is the full pair cost") {
    CHECK(cost_contribution({10.2, 0.3}, obstacle, 7.5, params) == doctest::Approx(7.5));
  }
  SUBCASE("one sigma outside the boundary") {
    // Box face at x = 12; one sigma_c beyond it.
    const double v = cost_contribution({12.0 + params.sigma_c, 0.0}, obstacle, 7.5, params);
    CHECK(v == doctest::Approx(7.5 * std::exp(-0.5)).epsilon(1e-12));
  }
  SUBCASE("zero pair cost annihilates") {
    CHECK(cost_contribution({10.5, 0.0}, obstacle, 0.0, params) == 0.0);
  }
  SUBCASE("approaching the boundary from outside converges to the pair cost") {
    for (const double eps : {1.0, 0.1, 0.01, 0.001}) {
      const double v = cost_contribution({12.0 + eps, 0.0}, obstacle, 7.5, params);
      CHECK(std::abs(v - 7.5) < 7.5 * (eps * eps / (2.0 * params.sigma_c * params.sigma_c)) + 1e-12);
    }
  }
}

TEST_CASE("cost_map structure") {
  CostParams params;
  GridSpec grid;
  const AgentState ego = agent("ego", {0, 0}, {10, 0});

  SUBCASE("no obstacles gives the zero field") {
    const CostField field = cost_map(ego, {}, grid, params);
    CHECK(field.layers.empty());
    for (const double v : field.total.values) CHECK(v == 0.0);
  }
  SUBCASE("a single obstacle equals its contribution at every cell") {
    const std::vector<AgentState> obstacles{agent("b", {15, 2}, {5, 0})};
    const CostField field = cost_map(ego, obstacles, grid, params);
    const double c = pair_cost(ego, obstacles[0], params);
    const double reach = kKernelCutoffSigmas * params.sigma_c;
    for (std::size_t r = 0; r < grid.rows(); ++r) {
      for (std::size_t c_idx = 0; c_idx < grid.cols(); ++c_idx) {
        const Vec2 w = field.total.cell_center_world(r, c_idx);
        const double d = obb_distance(w, obb_from(obstacles[0]));
        const double expected = d > reach ? 0.0 : c * gauss_weight(d, params);
        CHECK(field.total.at(r, c_idx) == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
  SUBCASE("two obstacles sum exactly") {
    const std::vector<AgentState> both{agent("b", {15, 2}, {5, 0}), agent("c", {8, -4}, {0, 3})};
    const CostField ab = cost_map(ego, both, grid, params);
    const CostField only_b = cost_map(ego, {both.data(), 1}, grid, params);
    const CostField only_c = cost_map(ego, {both.data() + 1, 1}, grid, params);
    for (std::size_t i = 0; i < ab.total.values.size(); ++i) {
      CHECK(ab.total.values[i] ==
            doctest::Approx(only_b.total.values[i] + only_c.total.values[i]).epsilon(1e-12));
      CHECK(ab.total.values[i] ==
            doctest::Approx(ab.layers[0].values[i] + ab.layers[1].values[i]).epsilon(1e-12));
    }
  }
  SUBCASE("ego in the obstacle list is rejected") {
    const std::vector<AgentState> bad{ego};
    CHECK_THROWS_AS(cost_map(ego, bad, grid, params), std::invalid_argument);
  }
}

TEST_CASE("cost_map rigid-motion equivariance") {
  CostParams params;
  GridSpec grid;
  std::uint64_t rng = 5;
  const auto next = [&] { return unit_real(rng = mix64(rng)); };
  for (int trial = 0; trial < 5; ++trial) {
    const Vec2 shift{next() * 100 - 50, next() * 100 - 50};
    const double rot = next() * 2 * M_PI;
    const auto transform = [&](AgentState s) {
      s.p = shift + s.p.rotated(rot);
      s.v = s.v.rotated(rot);
      s.theta = wrap_angle(s.theta + rot);
      return s;
    };
    const AgentState ego = agent("ego", {0, 0}, {8, 0});
    const std::vector<AgentState> obstacles{agent("b", {12, 3}, {2, -1}, 0.4),
                                            agent("c", {25, -6}, {-3, 2}, 2.1)};
    std::vector<AgentState> moved;
    for (const auto& o : obstacles) moved.push_back(transform(o));
    const CostField base = cost_map(ego, obstacles, grid, params);
    const CostField shifted = cost_map(transform(ego), moved, grid, params);
    for (std::size_t i = 0; i < base.total.values.size(); ++i) {
      CHECK(std::abs(base.total.values[i] - shifted.total.values[i]) < 1e-9);
    }
  }
}
