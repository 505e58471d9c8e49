#pragma once

#include <cstddef>
#include <vector>

namespace evimap {

/// Index of a point within a Space. Grid spaces number cells row-major from
/// the top-left corner.
using PointId = std::size_t;

struct GridCoord {
  std::size_t x = 0;
  std::size_t y = 0;

  friend bool operator==(const GridCoord&, const GridCoord&) = default;
};

/// A finite set of points with a symmetric distance. The triangle inequality
/// is not required.
class Space {
 public:
  enum class Kind { grid2d, explicit_table };

  /// Euclidean distance between cell indices, scaled by cell_size.
  static Space grid(std::size_t width, std::size_t height, double cell_size = 1.0);
  /// distances[i][j] must be symmetric, zero on the diagonal and positive elsewhere.
  static Space explicit_table(std::vector<std::vector<double>> distances);

  Kind kind() const { return kind_; }
  bool is_grid() const { return kind_ == Kind::grid2d; }
  std::size_t size() const { return size_; }
  bool contains(PointId p) const { return p < size_; }

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  double cell_size() const { return cell_size_; }
  PointId at(std::size_t x, std::size_t y) const;
  GridCoord coord(PointId p) const;

  double distance(PointId a, PointId b) const;

  /// Lexicographic order on grid coordinates (x, then y); index order for
  /// explicit spaces. Used to break distance ties deterministically.
  bool precedes(PointId a, PointId b) const;

 private:
  Space() = default;

  Kind kind_ = Kind::grid2d;
  std::size_t size_ = 0;
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  double cell_size_ = 1.0;
  std::vector<double> table_;
};

}  // namespace evimap
