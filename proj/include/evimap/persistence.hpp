#pragma once

#include <limits>
#include <vector>

#include "evimap/evidence.hpp"
#include "evimap/observation.hpp"
#include "evimap/space.hpp"

namespace evimap {

inline constexpr double kInfinitePersistence = std::numeric_limits<double>::infinity();

enum class DecayKind { exponential };

/// Per-value persistence scale λ(v) in distance units. λ = 0 marks a
/// non-persistent value, λ = +inf a strongly persistent one.
///
/// Any decay family plugged in here must satisfy, for every value set V:
///   f(V, d) is non-increasing in d;
///   f(V, d) = 1 iff d = 0;
///   f(V, d) -> 0 as d -> inf (for finite λ).
class DecayModel {
 public:
  DecayModel(DomainPtr domain, std::vector<double> lambda_per_value, DecayKind kind = DecayKind::exponential);
  static DecayModel uniform(DomainPtr domain, double lambda);

  const DomainPtr& domain() const { return domain_; }
  DecayKind kind() const { return kind_; }
  double lambda(std::size_t value_index) const { return lambdas_.at(value_index); }
  const std::vector<double>& lambdas() const { return lambdas_; }

 private:
  DomainPtr domain_;
  std::vector<double> lambdas_;
  DecayKind kind_;
};

/// Strength of a simple support, in [0, 1].
class SupportStrength {
 public:
  explicit SupportStrength(double value);
  double value() const { return value_; }
  operator double() const { return value_; }

 private:
  double value_;
};

/// λ(V) = min over members; the least persistent member governs the set.
double lambda_of_set(ValueSet values, const DecayModel& model);

/// f(V, d). For λ(V) = 0 the support is 1 at d = 0 and 0 beyond.
SupportStrength decay(ValueSet values, double distance, const DecayModel& model);

/// λ such that the support halves at the given distance.
double lambda_from_half_distance(double half_distance);

/// Simple support m_{y->x}: mass f(O(y), d(x, y)) on O(y), the rest on the
/// whole domain.
MassAssignment support_from_observation(const Observation& obs, PointId focus, const Space& space,
                                        const DecayModel& model);

}  // namespace evimap
