#include "evimap/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>

#include "evimap/error.hpp"

namespace evimap {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::size_t parse_coordinate(std::string_view text, std::size_t line, const char* axis) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError(ErrorCode::ParseError, line, fmt::format("{} coordinate '{}' is not a nonnegative integer", axis, text));
  }
  return value;
}

const Observation* sole_observation_at(const ObservationSet& observations, PointId p) {
  const Observation* found = nullptr;
  for (const auto& obs : observations.observations()) {
    if (obs.location != p || observations.is_trivial(obs)) continue;
    if (found && found->value != obs.value) return nullptr;
    found = &obs;
  }
  return found;
}

void require_binary(const BeliefField& field) {
  if (field.domain()->size() != 2) {
    throw Error(ErrorCode::UnsupportedDomainSize,
                fmt::format("belief rendering needs a binary domain, got {} values", field.domain()->size()));
  }
}

std::vector<ValueSet> csv_subsets(const ValueDomain& domain) {
  std::vector<ValueSet> subsets{ValueSet{}};
  for (std::size_t v = 0; v < domain.size(); ++v) subsets.push_back(ValueSet::singleton(v));
  if (domain.size() <= 4) {
    for (ValueSet::Bits bits = 1; bits < domain.full().bits(); ++bits) {
      const auto s = ValueSet::from_bits(bits);
      if (s.size() > 1) subsets.push_back(s);
    }
  }
  subsets.push_back(domain.full());
  return subsets;
}

std::string column_name(const ValueDomain& domain, ValueSet s) {
  if (s.empty()) return "m_empty";
  if (s == domain.full()) return "m_S";
  std::string name = "m_";
  bool first = true;
  for (auto i : s.indices()) {
    if (!first) name += '|';
    name += domain.label(i);
    first = false;
  }
  return name;
}

}  // namespace

ObservationSet parse_observations(std::string_view document, const Space& grid) {
  if (!grid.is_grid()) throw Error(ErrorCode::InvalidArgument, "observation documents address grid cells");
  std::optional<ObservationSet> result;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= document.size()) {
    const auto pos = document.find('\n', start);
    const auto raw = document.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    start = (pos == std::string_view::npos) ? document.size() + 1 : pos + 1;
    ++line_no;

    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.starts_with("values:")) {
      if (result) throw ParseError(ErrorCode::ParseError, line_no, "duplicate values header");
      std::vector<std::string> labels;
      for (auto label : split(line.substr(7), ',')) labels.emplace_back(label);
      try {
        result.emplace(make_domain(std::move(labels)));
      } catch (const Error& e) {
        throw ParseError(ErrorCode::ParseError, line_no, e.what());
      }
      continue;
    }
    if (!result) throw ParseError(ErrorCode::ParseError, line_no, "expected 'values:' header before observations");

    const auto fields = split(line, ',');
    if (fields.size() != 3) {
      throw ParseError(ErrorCode::ParseError, line_no, fmt::format("expected x,y,value but found {} fields", fields.size()));
    }
    const auto x = parse_coordinate(fields[0], line_no, "x");
    const auto y = parse_coordinate(fields[1], line_no, "y");
    if (x >= grid.width() || y >= grid.height()) {
      throw ParseError(ErrorCode::PointOutOfRange, line_no,
                       fmt::format("cell ({}, {}) outside {}x{} grid", x, y, grid.width(), grid.height()));
    }
    const auto& domain = *result->domain();
    ValueSet value;
    for (auto label : split(fields[2], '|')) {
      if (label.empty()) throw ParseError(ErrorCode::ParseError, line_no, "empty value");
      const auto index = domain.index_of(label);
      if (!index) throw ParseError(ErrorCode::DomainError, line_no, fmt::format("unknown value '{}'", label));
      value = value | ValueSet::singleton(*index);
    }
    if (value == domain.full()) {
      throw ParseError(ErrorCode::ParseError, line_no, "trivial observation: every value is possible");
    }
    result->add({grid.at(x, y), value});
  }
  if (!result) throw ParseError(ErrorCode::ParseError, line_no, "missing 'values:' header");
  return std::move(*result);
}

std::string serialize_observations(const ObservationSet& observations, const Space& grid) {
  const auto& domain = *observations.domain();
  std::string out = "values: ";
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (i > 0) out += ',';
    out += domain.label(i);
  }
  out += '\n';
  for (const auto& obs : observations.observations()) {
    const auto c = grid.coord(obs.location);
    std::string labels;
    for (auto i : obs.value.indices()) {
      if (!labels.empty()) labels += '|';
      labels += domain.label(i);
    }
    out += fmt::format("{},{},{}\n", c.x, c.y, labels);
  }
  return out;
}

std::uint8_t quantize(double v) {
  const double clamped = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::floor(clamped * 255.0 + 0.5));
}

Raster render_scalar(const ScalarField& field) {
  Raster r{field.width, field.height, 1, {}};
  r.pixels.reserve(field.values.size());
  for (double v : field.values) r.pixels.push_back(quantize(v));
  return r;
}

Raster render_belief(const BeliefField& field) {
  require_binary(field);
  const auto first = ValueSet::singleton(0);
  const auto second = ValueSet::singleton(1);
  Raster r{field.space().width(), field.space().height(), 1, std::vector<std::uint8_t>(field.size())};
  for (PointId p = 0; p < field.size(); ++p) {
    if (const auto* obs = sole_observation_at(field.observations(), p)) {
      r.pixels[p] = obs->value == second ? 0 : 255;
      continue;
    }
    const auto m = field.normalized_cell(p);
    r.pixels[p] = m ? quantize((m->mass(second) - m->mass(first) + 1.0) / 2.0) : quantize(0.5);
  }
  return r;
}

std::vector<Raster> render_value_rasters(const BeliefField& field) {
  const auto n = field.domain()->size();
  std::vector<Raster> out(n, Raster{field.space().width(), field.space().height(), 1,
                                    std::vector<std::uint8_t>(field.size(), 0)});
  for (PointId p = 0; p < field.size(); ++p) {
    const auto m = field.normalized_cell(p);
    if (!m) continue;
    for (std::size_t v = 0; v < n; ++v) out[v].pixels[p] = quantize(m->mass(ValueSet::singleton(v)));
  }
  return out;
}

Raster render_belief_rgb(const BeliefField& field) {
  require_binary(field);
  Raster r{field.space().width(), field.space().height(), 3, std::vector<std::uint8_t>(field.size() * 3)};
  for (PointId p = 0; p < field.size(); ++p) {
    const auto& m = field.cell(p);
    const double red = m ? m->mass(ValueSet::singleton(1)) : 0.0;
    const double blue = m ? m->mass(ValueSet::singleton(0)) : 0.0;
    const double green = m ? m->mass(ValueSet{}) : 1.0;
    r.pixels[3 * p + 0] = quantize(red);
    r.pixels[3 * p + 1] = quantize(green);
    r.pixels[3 * p + 2] = quantize(blue);
  }
  return r;
}

Raster render_values(const ValueField& field, std::size_t domain_size) {
  Raster r{field.width, field.height, 1, {}};
  r.pixels.reserve(field.values.size());
  for (const auto& v : field.values) {
    r.pixels.push_back(v ? quantize(static_cast<double>(*v + 1) / static_cast<double>(domain_size)) : 0);
  }
  return r;
}

std::string encode_pnm(const Raster& raster) {
  if (raster.channels != 1 && raster.channels != 3) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unsupported channel count {}", raster.channels));
  }
  if (raster.pixels.size() != raster.width * raster.height * raster.channels) {
    throw Error(ErrorCode::InvalidArgument, "raster size does not match its pixel buffer");
  }
  std::string out = fmt::format("{}\n{} {}\n255\n", raster.channels == 1 ? "P5" : "P6", raster.width, raster.height);
  out.append(reinterpret_cast<const char*>(raster.pixels.data()), raster.pixels.size());
  return out;
}

std::string mass_csv(const BeliefField& field) {
  const auto& domain = *field.domain();
  const auto subsets = csv_subsets(domain);
  std::string out = "x,y";
  for (auto s : subsets) out += "," + column_name(domain, s);
  out += '\n';
  for (PointId p = 0; p < field.size(); ++p) {
    const auto c = field.space().coord(p);
    out += fmt::format("{},{}", c.x, c.y);
    const auto& m = field.cell(p);
    for (auto s : subsets) {
      const double mass = m ? m->mass(s) : (s.empty() ? 1.0 : 0.0);
      out += fmt::format(",{:.6f}", mass);
    }
    out += '\n';
  }
  return out;
}

std::string scalar_csv(const ScalarField& field, std::string_view column) {
  std::string out = fmt::format("x,y,{}\n", column);
  for (std::size_t y = 0; y < field.height; ++y) {
    for (std::size_t x = 0; x < field.width; ++x) out += fmt::format("{},{},{:.6f}\n", x, y, field.at(x, y));
  }
  return out;
}

std::string value_csv(const ValueField& field, const ValueDomain& domain) {
  std::string out = "x,y,value\n";
  for (std::size_t y = 0; y < field.height; ++y) {
    for (std::size_t x = 0; x < field.width; ++x) {
      const auto v = field.at(x, y);
      out += fmt::format("{},{},{}\n", x, y, v ? domain.label(*v) : std::string("-"));
    }
  }
  return out;
}

std::string suggestion_csv(const std::vector<Suggestion>& suggestions, const Space& grid) {
  std::string out = "x,y,expected_loss\n";
  for (const auto& s : suggestions) {
    const auto c = grid.coord(s.point);
    out += fmt::format("{},{},{:.9f}\n", c.x, c.y, s.expected_loss);
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoError, fmt::format("cannot open '{}' for writing", tmp.string()));
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw Error(ErrorCode::IoError, fmt::format("failed writing '{}'", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, fmt::format("cannot move output into '{}'", path.string()));
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, fmt::format("cannot read '{}'", path.string()));
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace evimap
