#pragma once

// Aggregation of all observation supports at a focus point.
//
// Observations close to one another are not independent sources. Each
// support is discounted by the conditional importance of its site given the
// sites already counted, visiting sites by increasing distance to the focus:
//
//   mu(empty) = 0,  mu({y}) = 1,
//   mu(X) = 2 - (2/n) * sum_{pairs {y,z} of X} exp(-d(y,z) / lambda_mu),  n = |X| >= 2
//   mu(y | X) = clamp(mu(X + y) - mu(X), 0, 1)
//
// and the i-th support keeps the complement (1 - f_i)^mu_i on the whole
// domain. The measure functions below accept any multiset of sites. During
// combination mu runs over distinct sites, so further observations at a site
// already counted get importance 0.

#include <cstddef>
#include <span>
#include <vector>

#include "evimap/evidence.hpp"
#include "evimap/observation.hpp"
#include "evimap/persistence.hpp"
#include "evimap/space.hpp"

namespace evimap {

class InteractionModel {
 public:
  explicit InteractionModel(double lambda_mu);
  double lambda_mu() const { return lambda_mu_; }

 private:
  double lambda_mu_;
};

enum class Discount { plain, interaction };

/// Ordering of observations at equal distance from the focus.
enum class TieBreak {
  /// (distance, value set mask, site coordinates). Keeps results invariant
  /// under grid symmetries whenever the importance clamp is inactive.
  value_then_point,
  /// (distance, site coordinates, value set mask).
  point_then_value,
};

struct CombinationConfig {
  CombinationMode mode = CombinationMode::normalized;
  Discount discount = Discount::interaction;
  TieBreak tie_break = TieBreak::value_then_point;
};

/// Supports weaker than this after discounting are skipped as vacuous.
inline constexpr double kNegligibleSupport = 1e-12;

double interaction_measure(std::span<const PointId> sites, const Space& space, const InteractionModel& model);

/// Importance of a new site x once `counted` has been taken into account.
double conditional_importance(PointId x, std::span<const PointId> counted, const Space& space,
                              const InteractionModel& model);

/// 1 - (1 - strength)^importance, exact at importance 0 and 1.
double discounted_strength(double strength, double importance);

/// One entry of the ordered list L_O(x) built for a focus point.
struct RankedSupport {
  Observation observation;
  double distance = 0.0;
  double strength = 0.0;    // f(O(y), d(x, y))
  double importance = 1.0;  // mu_i
};

/// Observations prepared once for evaluation at many focus points: the
/// nontrivial range and the pairwise interaction weights between sites.
class PreparedEvidence {
 public:
  PreparedEvidence(const ObservationSet& observations, const Space& space, const DecayModel& decay,
                   const InteractionModel& interaction, const CombinationConfig& config);

  const DomainPtr& domain() const { return domain_; }
  const CombinationConfig& config() const { return config_; }

  std::vector<RankedSupport> rank(PointId focus) const;
  MassAssignment combine(PointId focus) const;
  /// Closed form, valid when every observation is a singleton.
  MassAssignment combine_precise(PointId focus) const;

 private:
  Space space_;
  DomainPtr domain_;
  DecayModel decay_;
  CombinationConfig config_;
  std::vector<Observation> range_;
  std::vector<double> weights_;  // exp(-d(y_i, y_j) / lambda_mu), row-major
};

MassAssignment combine_at_focus(const ObservationSet& observations, PointId focus, const Space& space,
                                const DecayModel& decay, const InteractionModel& interaction,
                                const CombinationConfig& config);

/// Same result as combine_at_focus for singleton-valued observations, from
/// products of complements instead of a fold of combinations.
MassAssignment combine_at_focus_precise(const ObservationSet& observations, PointId focus, const Space& space,
                                        const DecayModel& decay, const InteractionModel& interaction,
                                        const CombinationConfig& config);

}  // namespace evimap
