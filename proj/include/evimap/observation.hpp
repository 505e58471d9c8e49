#pragma once

#include <cstddef>
#include <vector>

#include "evimap/evidence.hpp"
#include "evimap/space.hpp"

namespace evimap {

/// A located, set-valued measurement: the true value at `location` lies in `value`.
struct Observation {
  PointId location = 0;
  ValueSet value;

  bool complete() const { return value.size() == 1; }

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Observations over one value domain. Several observations may share a
/// location. Trivial observations (value = whole domain) are kept but carry
/// no evidence and are excluded from range().
class ObservationSet {
 public:
  explicit ObservationSet(DomainPtr domain);
  ObservationSet(DomainPtr domain, std::vector<Observation> observations);

  const DomainPtr& domain() const { return domain_; }
  const std::vector<Observation>& observations() const { return observations_; }
  std::size_t size() const { return observations_.size(); }

  /// Throws EmptyValueSet or InvalidSubset.
  void add(Observation obs);
  bool is_trivial(const Observation& obs) const { return obs.value == domain_->full(); }
  /// Nontrivial observations, in insertion order.
  std::vector<Observation> range() const;

  friend bool operator==(const ObservationSet& a, const ObservationSet& b) {
    return *a.domain_ == *b.domain_ && a.observations_ == b.observations_;
  }

 private:
  DomainPtr domain_;
  std::vector<Observation> observations_;
};

}  // namespace evimap
