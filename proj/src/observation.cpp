#include "evimap/observation.hpp"

#include "evimap/error.hpp"

namespace evimap {

ObservationSet::ObservationSet(DomainPtr domain) : domain_(std::move(domain)) {
  if (!domain_) throw Error(ErrorCode::InvalidDomain, "null domain");
}

ObservationSet::ObservationSet(DomainPtr domain, std::vector<Observation> observations)
    : ObservationSet(std::move(domain)) {
  observations_.reserve(observations.size());
  for (const auto& obs : observations) add(obs);
}

void ObservationSet::add(Observation obs) {
  if (obs.value.empty()) throw Error(ErrorCode::EmptyValueSet, "observation with no possible value");
  if (!domain_->is_valid(obs.value)) throw Error(ErrorCode::InvalidSubset, "observation value outside domain");
  observations_.push_back(obs);
}

std::vector<Observation> ObservationSet::range() const {
  std::vector<Observation> out;
  out.reserve(observations_.size());
  for (const auto& obs : observations_) {
    if (!is_trivial(obs)) out.push_back(obs);
  }
  return out;
}

}  // namespace evimap
