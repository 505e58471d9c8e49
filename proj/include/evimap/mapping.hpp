#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "evimap/combination.hpp"
#include "evimap/evidence.hpp"
#include "evimap/observation.hpp"
#include "evimap/persistence.hpp"
#include "evimap/space.hpp"

namespace evimap {

/// Combined mass assignment at every cell of a grid. A cell whose
/// normalized combination hit total conflict holds no assignment.
class BeliefField {
 public:
  BeliefField(Space space, ObservationSet observations, DecayModel decay, InteractionModel interaction,
              CombinationConfig config, std::vector<std::optional<MassAssignment>> cells);

  const Space& space() const { return space_; }
  const ObservationSet& observations() const { return observations_; }
  const DomainPtr& domain() const { return observations_.domain(); }
  const DecayModel& decay() const { return decay_; }
  const InteractionModel& interaction() const { return interaction_; }
  const CombinationConfig& config() const { return config_; }

  std::size_t size() const { return cells_.size(); }
  const std::optional<MassAssignment>& cell(PointId p) const { return cells_.at(p); }
  bool conflicted(PointId p) const { return !cells_.at(p).has_value(); }
  std::size_t conflicted_count() const;

  /// Cell assignment with any empty-set mass normalized away; nullopt when
  /// the cell is conflicted or its conflict is total.
  std::optional<MassAssignment> normalized_cell(PointId p) const;

 private:
  Space space_;
  ObservationSet observations_;
  DecayModel decay_;
  InteractionModel interaction_;
  CombinationConfig config_;
  std::vector<std::optional<MassAssignment>> cells_;
};

struct ScalarField {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t x, std::size_t y) const { return values.at(y * width + x); }
};

/// Per-cell value index, or nullopt where the map stays undetermined.
struct ValueField {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::optional<std::size_t>> values;

  std::optional<std::size_t> at(std::size_t x, std::size_t y) const { return values.at(y * width + x); }
};

/// Evaluates combine_at_focus at every cell. `threads` = 0 uses the hardware
/// concurrency; results do not depend on it.
BeliefField extrapolate_field(const Space& grid, const ObservationSet& observations, const DecayModel& decay,
                              const InteractionModel& interaction, const CombinationConfig& config,
                              unsigned threads = 0);

/// Natural-log entropy of a distribution, with 0 ln 0 = 0.
double entropy(const ProbabilityDistribution& p);

/// Pignistic distribution of a cell; uniform for conflicted cells.
ProbabilityDistribution cell_distribution(const BeliefField& field, PointId p);

/// Entropy of the pignistic distribution per cell, in [0, ln |S|].
ScalarField entropy_map(const BeliefField& field);

/// 1 - H / ln |S| per cell, in [0, 1].
ScalarField information_map(const BeliefField& field);

/// Grayscale information level: 2 |p(first value) - 1/2| for binary domains,
/// information_map otherwise.
ScalarField information_rendering_map(const BeliefField& field);

/// Empty-set mass per cell. Requires a field built in unnormalized mode.
ScalarField conflict_map(const BeliefField& field);

/// Most probable value per cell under the pignistic transform, undetermined
/// where no singleton belief reaches `threshold` or where the maximum is tied.
ValueField plausible_map(const BeliefField& field, double threshold);

struct Suggestion {
  PointId point = 0;
  double expected_loss = 0.0;
};

struct SuggestOptions {
  std::size_t top = 1;
  /// Candidates are the cells whose coordinates are both multiples of stride.
  std::size_t stride = 1;
  unsigned threads = 0;
};

/// Expected loss of total grid entropy from one more complete measurement,
/// with outcomes weighted by the current pignistic distribution at the
/// candidate cell. Every candidate, ranked by decreasing loss.
std::vector<Suggestion> rank_measurements(const Space& grid, const ObservationSet& observations,
                                          const DecayModel& decay, const InteractionModel& interaction,
                                          const CombinationConfig& config, std::size_t stride = 1,
                                          unsigned threads = 0);

/// The first `options.top` entries of rank_measurements.
std::vector<Suggestion> suggest_next_measurement(const Space& grid, const ObservationSet& observations,
                                                 const DecayModel& decay, const InteractionModel& interaction,
                                                 const CombinationConfig& config, const SuggestOptions& options);

}  // namespace evimap
