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
#ifndef RISKSCAN_GRID_HPP
#define RISKSCAN_GRID_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "riskscan/geometry.hpp"

namespace riskscan {

// Ego-aligned rectangular grid: columns run along the ego heading from
// -s_back to +s_front, rows run laterally from -half_width_lat to
// +half_width_lat. Values are sampled at cell centers.
struct GridSpec {
  double s_back = 5.0;
  double s_front = 40.0;
  double half_width_lat = 15.0;
  double resolution = 0.5;

  bool operator==(const GridSpec& o) const = default;

  std::size_t cols() const;
  std::size_t rows() const;
  std::size_t cell_count() const { return cols() * rows(); }
  // Cell-center coordinates in the anchor frame (u forward, w left).
  Vec2 cell_center_local(std::size_t row, std::size_t col) const;

  // Positivity and the 1e6 cell-count guard. Throws std::invalid_argument.
  void check() const;
};

struct ScalarField {
  GridSpec spec;
  Pose2 anchor;
  std::vector<double> values;  // row-major, rows x cols

  ScalarField() = default;
  ScalarField(const GridSpec& s, const Pose2& a)
      : spec(s), anchor(a), values(s.cell_count(), 0.0) {}

  double& at(std::size_t row, std::size_t col) { return values[row * spec.cols() + col]; }
  double at(std::size_t row, std::size_t col) const { return values[row * spec.cols() + col]; }
  Vec2 cell_center_world(std::size_t row, std::size_t col) const {
    return anchor.to_world(spec.cell_center_local(row, col));
  }
  double max_value() const;
  bool same_layout(const ScalarField& o) const { return spec == o.spec && anchor == o.anchor; }
};

// Export format: two header rows (spec, anchor), a column header, then one
// row per cell as row,col,x,y,value.
std::string field_to_csv(const ScalarField& field);

}  // namespace riskscan

#endif
