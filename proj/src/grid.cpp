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
#include "riskscan/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "riskscan/io.hpp"

namespace riskscan {

std::size_t GridSpec::cols() const {
  return static_cast<std::size_t>(std::max(1.0, std::ceil((s_back + s_front) / resolution - 1e-9)));
}

std::size_t GridSpec::rows() const {
  return static_cast<std::size_t>(std::max(1.0, std::ceil(2.0 * half_width_lat / resolution - 1e-9)));
}

Vec2 GridSpec::cell_center_local(std::size_t row, std::size_t col) const {
  return {-s_back + (static_cast<double>(col) + 0.5) * resolution,
          -half_width_lat + (static_cast<double>(row) + 0.5) * resolution};
}

void GridSpec::check() const {
  if (!(resolution > 0.0)) throw std::invalid_argument("grid resolution must be positive");
  if (!(s_back > 0.0) || !(s_front > 0.0) || !(half_width_lat > 0.0)) {
    throw std::invalid_argument("grid extents must be positive");
  }
  if (cell_count() > 1000000) throw std::invalid_argument("grid exceeds 1e6 cells");
}

double ScalarField::max_value() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

std::string field_to_csv(const ScalarField& field) {
  std::ostringstream out;
  out << "spec," << format_double(field.spec.s_back) << ',' << format_double(field.spec.s_front)
      << ',' << format_double(field.spec.half_width_lat) << ','
      << format_double(field.spec.resolution) << '\n';
  out << "anchor," << format_double(field.anchor.p.x) << ',' << format_double(field.anchor.p.y)
      << ',' << format_double(field.anchor.heading) << '\n';
  out << "row,col,x,y,value\n";
  const std::size_t rows = field.spec.rows(), cols = field.spec.cols();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Vec2 w = field.cell_center_world(r, c);
      out << r << ',' << c << ',' << format_double(w.x) << ',' << format_double(w.y) << ','
          << format_double(field.at(r, c)) << '\n';
    }
  }
  return out.str();
}

}  // namespace riskscan
