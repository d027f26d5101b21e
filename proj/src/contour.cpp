// Copyright (c) the levelset authors
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

#include "levelset/contour.hpp"

#include <array>

#include "levelset/error.hpp"

namespace levelset {

double ContourSet::Length() const {
  double total = 0.0;
  for (const auto& [a, b] : Segments()) total += (b - a).norm();
  return total;
}

std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>> ContourSet::Segments() const {
  std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>> out;
  for (size_t c = 0; c < chains.size(); ++c) {
    const auto& chain = chains[c];
    for (size_t m = 1; m < chain.size(); ++m) out.emplace_back(points[chain[m - 1]], points[chain[m]]);
    if (closed[c] && chain.size() > 2) out.emplace_back(points[chain.back()], points[chain.front()]);
  }
  return out;
}

ContourSet ExtractZeroContours(const Eigen::MatrixXd& values, const GridSpec& grid) {
  const int res = grid.resolution;
  if (values.rows() != res || values.cols() != res) throw InputError("field does not match grid");
  auto negative = [&](int i, int j) { return values(i, j) < 0.0; };

  ContourSet out;
  // Crossing index per edge; x-edges join (i,j)-(i+1,j), y-edges (i,j)-(i,j+1).
  Eigen::MatrixXi on_x = Eigen::MatrixXi::Constant(res, res, -1);
  Eigen::MatrixXi on_y = Eigen::MatrixXi::Constant(res, res, -1);
  auto add_crossing = [&](int i0, int j0, int i1, int j1) {
    const double v0 = values(i0, j0);
    const double v1 = values(i1, j1);
    const double t = v0 / (v0 - v1);
    const Eigen::Vector2d a(grid.node(i0), grid.node(j0));
    const Eigen::Vector2d b(grid.node(i1), grid.node(j1));
    out.points.push_back(a + t * (b - a));
    out.edges.push_back({i0, j0, i1, j1});
    return static_cast<int>(out.points.size()) - 1;
  };
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      if (i + 1 < res && negative(i, j) != negative(i + 1, j)) on_x(i, j) = add_crossing(i, j, i + 1, j);
      if (j + 1 < res && negative(i, j) != negative(i, j + 1)) on_y(i, j) = add_crossing(i, j, i, j + 1);
    }
  }

  std::vector<std::array<int, 2>> links(out.points.size(), {-1, -1});
  auto link = [&](int a, int b) {
    for (int p : {a, b}) {
      const int other = p == a ? b : a;
      if (links[p][0] < 0) {
        links[p][0] = other;
      } else {
        links[p][1] = other;
      }
    }
  };
  for (int j = 0; j + 1 < res; ++j) {
    for (int i = 0; i + 1 < res; ++i) {
      const int bottom = on_x(i, j);
      const int right = on_y(i + 1, j);
      const int top = on_x(i, j + 1);
      const int left = on_y(i, j);
      std::array<int, 4> found{};
      int count = 0;
      for (int e : {bottom, right, top, left}) {
        if (e >= 0) found[count++] = e;
      }
      if (count == 2) {
        link(found[0], found[1]);
      } else if (count == 4) {
        const double center =
            0.25 * (values(i, j) + values(i + 1, j) + values(i + 1, j + 1) + values(i, j + 1));
        if ((center < 0.0) == negative(i, j)) {
          // (i,j) and (i+1,j+1) connect through the center.
          link(bottom, right);
          link(top, left);
        } else {
          link(bottom, left);
          link(top, right);
        }
      }
    }
  }

  std::vector<bool> visited(out.points.size(), false);
  auto walk = [&](int start, bool is_closed) {
    std::vector<int> chain;
    int prev = -1;
    int cur = start;
    while (cur >= 0 && !visited[cur]) {
      visited[cur] = true;
      chain.push_back(cur);
      const int next = links[cur][0] != prev ? links[cur][0] : links[cur][1];
      prev = cur;
      cur = next;
    }
    out.chains.push_back(std::move(chain));
    out.closed.push_back(is_closed);
  };
  for (int p = 0; p < out.size(); ++p) {
    if (!visited[p] && links[p][1] < 0) walk(p, false);
  }
  for (int p = 0; p < out.size(); ++p) {
    if (!visited[p]) walk(p, true);
  }
  return out;
}

}  // namespace levelset
