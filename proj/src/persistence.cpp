#include "evimap/persistence.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "evimap/error.hpp"

namespace evimap {

DecayModel::DecayModel(DomainPtr domain, std::vector<double> lambda_per_value, DecayKind kind)
    : domain_(std::move(domain)), lambdas_(std::move(lambda_per_value)), kind_(kind) {
  if (!domain_) throw Error(ErrorCode::InvalidDomain, "null domain");
  if (lambdas_.size() != domain_->size()) {
    throw Error(ErrorCode::InvalidModel,
                fmt::format("{} persistence scales for a domain of {} values", lambdas_.size(), domain_->size()));
  }
  for (std::size_t i = 0; i < lambdas_.size(); ++i) {
    if (!(lambdas_[i] >= 0.0)) {
      throw Error(ErrorCode::InvalidModel,
                  fmt::format("persistence of '{}' must be in [0, inf], got {}", domain_->label(i), lambdas_[i]));
    }
  }
}

DecayModel DecayModel::uniform(DomainPtr domain, double lambda) {
  const auto n = domain ? domain->size() : 0;
  return DecayModel(std::move(domain), std::vector<double>(n, lambda));
}

SupportStrength::SupportStrength(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("support strength {} outside [0, 1]", value));
  }
}

double lambda_of_set(ValueSet values, const DecayModel& model) {
  if (values.empty()) throw Error(ErrorCode::EmptyValueSet, "persistence of an empty value set");
  if (!model.domain()->is_valid(values)) throw Error(ErrorCode::InvalidSubset, "value set outside domain");
  double lambda = kInfinitePersistence;
  for (auto i : values.indices()) lambda = std::min(lambda, model.lambda(i));
  return lambda;
}

SupportStrength decay(ValueSet values, double distance, const DecayModel& model) {
  if (!(distance >= 0.0)) {
    throw Error(ErrorCode::NegativeDistance, fmt::format("distance {} is negative", distance));
  }
  const double lambda = lambda_of_set(values, model);
  if (distance == 0.0) return SupportStrength(1.0);
  if (lambda == 0.0) return SupportStrength(0.0);
  if (std::isinf(lambda)) return SupportStrength(1.0);
  switch (model.kind()) {
    case DecayKind::exponential:
      return SupportStrength(std::exp(-distance / lambda));
  }
  return SupportStrength(0.0);
}

double lambda_from_half_distance(double half_distance) {
  if (!(half_distance > 0.0)) {
    throw Error(ErrorCode::NonPositiveDistance, fmt::format("half distance {} must be positive", half_distance));
  }
  return half_distance / std::numbers::ln2;
}

MassAssignment support_from_observation(const Observation& obs, PointId focus, const Space& space,
                                        const DecayModel& model) {
  const auto& domain = model.domain();
  if (obs.value.empty()) throw Error(ErrorCode::EmptyValueSet, "observation with no possible value");
  if (obs.value == domain->full()) {
    throw Error(ErrorCode::TrivialObservation, "an observation of the whole domain carries no evidence");
  }
  if (!space.contains(focus) || !space.contains(obs.location)) {
    throw Error(ErrorCode::PointOutOfRange, "focus or observation outside the space");
  }
  const auto strength = decay(obs.value, space.distance(focus, obs.location), model);
  return MassAssignment::simple_support(domain, obs.value, strength);
}

}  // namespace evimap
