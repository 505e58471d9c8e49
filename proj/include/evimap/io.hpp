#pragma once

// File formats.
//
// Observation document (UTF-8, '\n' line endings):
//
//   # comment
//   values: white,black
//   10,12,black
//   3,4,white|black      <- set-valued; rejected here since it is the whole domain
//
// The header must precede all rows. Rows are `x,y,value[|value...]` with
// zero-based grid coordinates, x to the right and y downwards.
//
// Rasters are binary PGM (P5, maxval 255, row-major, top-left origin).
// Intensities are quantized as floor(v * 255 + 0.5) after clamping to [0, 1].

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "evimap/mapping.hpp"
#include "evimap/observation.hpp"
#include "evimap/space.hpp"

namespace evimap {

/// Throws ParseError carrying the offending line, with code ParseError for
/// malformed or trivial rows and DomainError for unknown values.
ObservationSet parse_observations(std::string_view document, const Space& grid);
std::string serialize_observations(const ObservationSet& observations, const Space& grid);

struct Raster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 1;  // 1 = gray (PGM), 3 = RGB (PPM)
  std::vector<std::uint8_t> pixels;
};

std::uint8_t quantize(double v);

/// Linear ramp [0, 1] -> [0, 255].
Raster render_scalar(const ScalarField& field);

/// Binary domains only: gray level (m(second) - m(first) + 1) / 2 from the
/// normalized cell masses, so mass on the second value renders light.
/// Observation cells are forced to 0 for the second value and 255 for the
/// first; conflicted cells render middle gray. Throws UnsupportedDomainSize.
Raster render_belief(const BeliefField& field);

/// One raster per value with the normalized singleton mass m({v}).
std::vector<Raster> render_value_rasters(const BeliefField& field);

/// RGB: red = m(second value), blue = m(first value), green = m(empty).
/// Binary domains only.
Raster render_belief_rgb(const BeliefField& field);

/// Undetermined cells are 0; value i of k renders as quantize((i + 1) / k).
Raster render_values(const ValueField& field, std::size_t domain_size);

std::string encode_pnm(const Raster& raster);

/// Header x,y,m_empty, singletons, then (for |S| <= 4) every other proper
/// subset by mask as m_a|b, then m_S. Six decimals. Conflicted cells carry
/// all their mass on the empty set.
std::string mass_csv(const BeliefField& field);
std::string scalar_csv(const ScalarField& field, std::string_view column);
/// Undetermined cells are written as "-".
std::string value_csv(const ValueField& field, const ValueDomain& domain);
std::string suggestion_csv(const std::vector<Suggestion>& suggestions, const Space& grid);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace evimap
