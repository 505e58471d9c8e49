#include "evimap/mapping.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "evimap/error.hpp"
#include "parallel.hpp"

namespace evimap {

namespace {

void require_grid(const Space& space) {
  if (!space.is_grid()) throw Error(ErrorCode::InvalidArgument, "maps are defined on grid spaces only");
}

ScalarField blank_scalar(const BeliefField& field) {
  return {field.space().width(), field.space().height(), std::vector<double>(field.size(), 0.0)};
}

std::optional<MassAssignment> combine_cell(const PreparedEvidence& evidence, PointId p) {
  try {
    return evidence.combine(p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TotalConflict) throw;
    return std::nullopt;
  }
}

double cell_entropy(const std::optional<MassAssignment>& m, std::size_t domain_size) {
  if (m) {
    try {
      return entropy(pignistic(normalize(*m)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TotalConflict) throw;
    }
  }
  return std::log(static_cast<double>(domain_size));
}

double total_entropy(const Space& grid, const ObservationSet& observations, const DecayModel& decay,
                     const InteractionModel& interaction, const CombinationConfig& config) {
  const PreparedEvidence evidence(observations, grid, decay, interaction, config);
  const auto domain_size = observations.domain()->size();
  double total = 0.0;
  for (PointId p = 0; p < grid.size(); ++p) total += cell_entropy(combine_cell(evidence, p), domain_size);
  return total;
}

}  // namespace

BeliefField::BeliefField(Space space, ObservationSet observations, DecayModel decay, InteractionModel interaction,
                         CombinationConfig config, std::vector<std::optional<MassAssignment>> cells)
    : space_(std::move(space)),
      observations_(std::move(observations)),
      decay_(std::move(decay)),
      interaction_(interaction),
      config_(config),
      cells_(std::move(cells)) {
  if (cells_.size() != space_.size()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} cell assignments for a space of {} points", cells_.size(), space_.size()));
  }
}

std::size_t BeliefField::conflicted_count() const {
  return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](const auto& c) { return !c; }));
}

std::optional<MassAssignment> BeliefField::normalized_cell(PointId p) const {
  const auto& m = cells_.at(p);
  if (!m) return std::nullopt;
  try {
    return normalize(*m);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TotalConflict) throw;
    return std::nullopt;
  }
}

BeliefField extrapolate_field(const Space& grid, const ObservationSet& observations, const DecayModel& decay,
                              const InteractionModel& interaction, const CombinationConfig& config,
                              unsigned threads) {
  require_grid(grid);
  const PreparedEvidence evidence(observations, grid, decay, interaction, config);
  std::vector<std::optional<MassAssignment>> cells(grid.size());
  detail::parallel_for(grid.size(), threads, [&](std::size_t p) { cells[p] = combine_cell(evidence, p); });
  return BeliefField(grid, observations, decay, interaction, config, std::move(cells));
}

double entropy(const ProbabilityDistribution& p) {
  double h = 0.0;
  for (double q : p.p) {
    if (q > 0.0) h -= q * std::log(q);
  }
  return h;
}

ProbabilityDistribution cell_distribution(const BeliefField& field, PointId p) {
  if (auto m = field.normalized_cell(p)) return pignistic(*m);
  const auto n = field.domain()->size();
  return {field.domain(), std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

ScalarField entropy_map(const BeliefField& field) {
  auto out = blank_scalar(field);
  for (PointId p = 0; p < field.size(); ++p) out.values[p] = entropy(cell_distribution(field, p));
  return out;
}

ScalarField information_map(const BeliefField& field) {
  auto out = entropy_map(field);
  const double max_entropy = std::log(static_cast<double>(field.domain()->size()));
  for (auto& v : out.values) v = std::clamp(1.0 - v / max_entropy, 0.0, 1.0);
  return out;
}

ScalarField information_rendering_map(const BeliefField& field) {
  if (field.domain()->size() != 2) return information_map(field);
  auto out = blank_scalar(field);
  for (PointId p = 0; p < field.size(); ++p) {
    out.values[p] = std::min(1.0, 2.0 * std::abs(cell_distribution(field, p)[0] - 0.5));
  }
  return out;
}

ScalarField conflict_map(const BeliefField& field) {
  if (field.config().mode != CombinationMode::unnormalized) {
    throw Error(ErrorCode::WrongMode, "conflict is only tracked by fields combined in unnormalized mode");
  }
  auto out = blank_scalar(field);
  for (PointId p = 0; p < field.size(); ++p) out.values[p] = field.cell(p)->mass(ValueSet{});
  return out;
}

ValueField plausible_map(const BeliefField& field, double threshold) {
  if (!(threshold >= 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("threshold {} outside [0, 1)", threshold));
  }
  constexpr double kTie = 1e-12;
  const auto n = field.domain()->size();
  ValueField out{field.space().width(), field.space().height(), std::vector<std::optional<std::size_t>>(field.size())};
  for (PointId p = 0; p < field.size(); ++p) {
    const auto m = field.normalized_cell(p);
    if (!m) continue;
    double best_belief = 0.0;
    for (std::size_t v = 0; v < n; ++v) best_belief = std::max(best_belief, belief(*m, ValueSet::singleton(v)));
    if (best_belief < threshold) continue;

    const auto dist = pignistic(*m);
    std::size_t best = 0;
    for (std::size_t v = 1; v < n; ++v) {
      if (dist[v] > dist[best]) best = v;
    }
    bool tied = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (v != best && dist[best] - dist[v] <= kTie) tied = true;
    }
    if (!tied) out.values[p] = best;
  }
  return out;
}

std::vector<Suggestion> rank_measurements(const Space& grid, const ObservationSet& observations,
                                          const DecayModel& decay, const InteractionModel& interaction,
                                          const CombinationConfig& config, std::size_t stride, unsigned threads) {
  require_grid(grid);
  if (stride == 0) throw Error(ErrorCode::InvalidArgument, "stride must be positive");
  const auto current = extrapolate_field(grid, observations, decay, interaction, config, threads);
  const double current_entropy = [&] {
    const auto h = entropy_map(current);
    double sum = 0.0;
    for (double v : h.values) sum += v;
    return sum;
  }();

  std::vector<PointId> candidates;
  for (std::size_t y = 0; y < grid.height(); y += stride) {
    for (std::size_t x = 0; x < grid.width(); x += stride) candidates.push_back(grid.at(x, y));
  }

  std::vector<Suggestion> ranked(candidates.size());
  detail::parallel_for(candidates.size(), threads, [&](std::size_t i) {
    const PointId c = candidates[i];
    const auto outcome = cell_distribution(current, c);
    double expected = 0.0;
    for (std::size_t v = 0; v < outcome.p.size(); ++v) {
      if (outcome[v] <= 0.0) continue;
      ObservationSet extended = observations;
      extended.add({c, ValueSet::singleton(v)});
      expected += outcome[v] * total_entropy(grid, extended, decay, interaction, config);
    }
    ranked[i] = {c, current_entropy - expected};
  });

  std::stable_sort(ranked.begin(), ranked.end(), [&](const Suggestion& a, const Suggestion& b) {
    if (a.expected_loss != b.expected_loss) return a.expected_loss > b.expected_loss;
    return grid.precedes(a.point, b.point);
  });
  return ranked;
}

std::vector<Suggestion> suggest_next_measurement(const Space& grid, const ObservationSet& observations,
                                                 const DecayModel& decay, const InteractionModel& interaction,
                                                 const CombinationConfig& config, const SuggestOptions& options) {
  if (options.top == 0) throw Error(ErrorCode::InvalidArgument, "top must be at least 1");
  auto ranked = rank_measurements(grid, observations, decay, interaction, config, options.stride, options.threads);
  if (ranked.size() > options.top) ranked.resize(options.top);
  return ranked;
}

}  // namespace evimap
