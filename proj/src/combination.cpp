#include "evimap/combination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "evimap/error.hpp"

namespace evimap {

namespace {

// mu of a multiset of n sites whose pairwise weights sum to pair_sum.
double measure_from_pairs(std::size_t n, double pair_sum) {
  if (n == 0) return 0.0;
  if (n == 1) return 1.0;
  return 2.0 - (2.0 / static_cast<double>(n)) * pair_sum;
}

double clamp_importance(double increment) { return std::clamp(increment, 0.0, 1.0); }

double pair_weight(double distance, double lambda_mu) { return std::exp(-distance / lambda_mu); }

}  // namespace

InteractionModel::InteractionModel(double lambda_mu) : lambda_mu_(lambda_mu) {
  if (!(lambda_mu > 0.0) || std::isinf(lambda_mu)) {
    throw Error(ErrorCode::InvalidModel, fmt::format("interaction scale must be positive and finite, got {}", lambda_mu));
  }
}

double interaction_measure(std::span<const PointId> sites, const Space& space, const InteractionModel& model) {
  double pair_sum = 0.0;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      pair_sum += pair_weight(space.distance(sites[i], sites[j]), model.lambda_mu());
    }
  }
  return measure_from_pairs(sites.size(), pair_sum);
}

double conditional_importance(PointId x, std::span<const PointId> counted, const Space& space,
                              const InteractionModel& model) {
  std::vector<PointId> extended(counted.begin(), counted.end());
  extended.push_back(x);
  return clamp_importance(interaction_measure(extended, space, model) - interaction_measure(counted, space, model));
}

double discounted_strength(double strength, double importance) {
  if (importance == 1.0) return strength;
  if (importance == 0.0) return 0.0;
  return 1.0 - std::pow(1.0 - strength, importance);
}

PreparedEvidence::PreparedEvidence(const ObservationSet& observations, const Space& space, const DecayModel& decay,
                                   const InteractionModel& interaction, const CombinationConfig& config)
    : space_(space), domain_(observations.domain()), decay_(decay), config_(config), range_(observations.range()) {
  if (*decay_.domain() != *domain_) {
    throw Error(ErrorCode::DomainMismatch, "decay model and observations use different domains");
  }
  if (range_.empty()) throw Error(ErrorCode::NoObservations, "no nontrivial observation to extrapolate from");
  for (const auto& obs : range_) {
    if (!space_.contains(obs.location)) {
      throw Error(ErrorCode::PointOutOfRange, fmt::format("observation at point {} outside the space", obs.location));
    }
  }
  const std::size_t n = range_.size();
  weights_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = pair_weight(space_.distance(range_[i].location, range_[j].location), interaction.lambda_mu());
      weights_[i * n + j] = w;
      weights_[j * n + i] = w;
    }
  }
}

std::vector<RankedSupport> PreparedEvidence::rank(PointId focus) const {
  if (!space_.contains(focus)) {
    throw Error(ErrorCode::PointOutOfRange, fmt::format("focus point {} outside the space", focus));
  }
  const std::size_t n = range_.size();
  std::vector<double> distance(n);
  for (std::size_t i = 0; i < n; ++i) distance[i] = space_.distance(focus, range_[i].location);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto point_less = [&](std::size_t a, std::size_t b) {
    return space_.precedes(range_[a].location, range_[b].location);
  };
  const auto point_equal = [&](std::size_t a, std::size_t b) { return range_[a].location == range_[b].location; };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (distance[a] != distance[b]) return distance[a] < distance[b];
    const auto va = range_[a].value;
    const auto vb = range_[b].value;
    if (config_.tie_break == TieBreak::value_then_point) {
      if (va != vb) return va < vb;
      return point_less(a, b);
    }
    if (!point_equal(a, b)) return point_less(a, b);
    return va < vb;
  });

  // mu is a set function of sites: a second observation at a counted site
  // adds nothing to the measure and gets importance 0.
  std::vector<RankedSupport> ranked;
  ranked.reserve(n);
  std::vector<std::size_t> counted;
  double pair_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t idx = order[k];
    double importance = 1.0;
    if (config_.discount == Discount::interaction) {
      const bool repeated = std::any_of(counted.begin(), counted.end(),
                                        [&](std::size_t j) { return range_[j].location == range_[idx].location; });
      if (repeated) {
        importance = 0.0;
      } else {
        const double before = measure_from_pairs(counted.size(), pair_sum);
        for (auto j : counted) pair_sum += weights_[j * n + idx];
        counted.push_back(idx);
        importance = clamp_importance(measure_from_pairs(counted.size(), pair_sum) - before);
      }
    }
    ranked.push_back({range_[idx], distance[idx], decay(range_[idx].value, distance[idx], decay_).value(), importance});
  }
  return ranked;
}

MassAssignment PreparedEvidence::combine(PointId focus) const {
  auto acc = MassAssignment::vacuous(domain_);
  for (const auto& s : rank(focus)) {
    const double alpha = discounted_strength(s.strength, s.importance);
    if (alpha < kNegligibleSupport) continue;
    acc = evimap::combine(acc, MassAssignment::simple_support(domain_, s.observation.value, alpha), config_.mode);
  }
  return acc;
}

MassAssignment PreparedEvidence::combine_precise(PointId focus) const {
  for (const auto& obs : range_) {
    if (!obs.complete()) {
      throw Error(ErrorCode::NonSingletonObservation,
                  fmt::format("observation {} is not a single value", domain_->format(obs.value)));
    }
  }
  const std::size_t values = domain_->size();
  // Complement (1 - alpha_k)^mu_k of every discounted support.
  std::vector<double> with(values, 1.0);     // product over supports of v
  std::vector<double> without(values, 1.0);  // product over supports of other values
  std::vector<bool> supported(values, false);
  double all = 1.0;
  for (const auto& s : rank(focus)) {
    const double complement =
        s.importance == 1.0 ? 1.0 - s.strength : (s.importance == 0.0 ? 1.0 : std::pow(1.0 - s.strength, s.importance));
    const std::size_t v = s.observation.value.single_index();
    supported[v] = true;
    all *= complement;
    for (std::size_t u = 0; u < values; ++u) {
      if (u == v) {
        with[u] *= complement;
      } else {
        without[u] *= complement;
      }
    }
  }

  MassBuilder builder(domain_);
  double assigned = all;
  for (std::size_t v = 0; v < values; ++v) {
    const double m = (1.0 - with[v]) * without[v];
    builder.add(ValueSet::singleton(v), m);
    assigned += m;
  }
  builder.add(domain_->full(), all);
  const auto distinct = std::count(supported.begin(), supported.end(), true);
  const double conflict = distinct > 1 ? std::max(0.0, 1.0 - assigned) : 0.0;
  builder.add(ValueSet{}, conflict);
  auto unnormalized = std::move(builder).build();
  if (config_.mode == CombinationMode::unnormalized) return unnormalized;
  return normalize(unnormalized);
}

MassAssignment combine_at_focus(const ObservationSet& observations, PointId focus, const Space& space,
                                const DecayModel& decay, const InteractionModel& interaction,
                                const CombinationConfig& config) {
  return PreparedEvidence(observations, space, decay, interaction, config).combine(focus);
}

MassAssignment combine_at_focus_precise(const ObservationSet& observations, PointId focus, const Space& space,
                                        const DecayModel& decay, const InteractionModel& interaction,
                                        const CombinationConfig& config) {
  return PreparedEvidence(observations, space, decay, interaction, config).combine_precise(focus);
}

}  // namespace evimap
