#include "evimap/space.hpp"

#include <cmath>

#include <fmt/format.h>

#include "evimap/error.hpp"

namespace evimap {

Space Space::grid(std::size_t width, std::size_t height, double cell_size) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("grid must be nonempty, got {}x{}", width, height));
  }
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("cell size must be positive, got {}", cell_size));
  }
  Space s;
  s.kind_ = Kind::grid2d;
  s.width_ = width;
  s.height_ = height;
  s.size_ = width * height;
  s.cell_size_ = cell_size;
  return s;
}

Space Space::explicit_table(std::vector<std::vector<double>> distances) {
  const std::size_t n = distances.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "explicit space needs at least one point");
  Space s;
  s.kind_ = Kind::explicit_table;
  s.size_ = n;
  s.table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (distances[i].size() != n) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("distance row {} has {} entries, expected {}", i,
                                                          distances[i].size(), n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double d = distances[i][j];
      const bool ok = (i == j) ? d == 0.0 : (d > 0.0 && !std::isnan(d));
      if (!ok || distances[j].size() != n || distances[j][i] != d) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("invalid distance d({}, {}) = {}", i, j, d));
      }
      s.table_[i * n + j] = d;
    }
  }
  return s;
}

PointId Space::at(std::size_t x, std::size_t y) const {
  if (!is_grid() || x >= width_ || y >= height_) {
    throw Error(ErrorCode::PointOutOfRange, fmt::format("cell ({}, {}) outside {}x{} grid", x, y, width_, height_));
  }
  return y * width_ + x;
}

GridCoord Space::coord(PointId p) const {
  if (!is_grid() || p >= size_) {
    throw Error(ErrorCode::PointOutOfRange, fmt::format("point {} has no grid coordinate", p));
  }
  return {p % width_, p / width_};
}

double Space::distance(PointId a, PointId b) const {
  if (is_grid()) {
    const auto ax = static_cast<double>(a % width_);
    const auto ay = static_cast<double>(a / width_);
    const auto bx = static_cast<double>(b % width_);
    const auto by = static_cast<double>(b / width_);
    return cell_size_ * std::hypot(ax - bx, ay - by);
  }
  return table_[a * size_ + b];
}

bool Space::precedes(PointId a, PointId b) const {
  if (is_grid()) {
    const auto ax = a % width_;
    const auto bx = b % width_;
    if (ax != bx) return ax < bx;
    return a / width_ < b / width_;
  }
  return a < b;
}

}  // namespace evimap
