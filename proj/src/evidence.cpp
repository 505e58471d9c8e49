#include "evimap/evidence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

#include "evimap/error.hpp"

namespace evimap {

namespace {

void require_same_domain(const MassAssignment& a, const MassAssignment& b) {
  if (a.domain() != b.domain() && *a.domain() != *b.domain()) {
    throw Error(ErrorCode::DomainMismatch, "mass assignments are defined over different domains");
  }
}

void require_valid(const ValueDomain& domain, ValueSet set) {
  if (!domain.is_valid(set)) {
    throw Error(ErrorCode::InvalidSubset,
                fmt::format("subset mask {:#x} is outside a domain of {} values", set.bits(), domain.size()));
  }
}

// Sort by mask, merge duplicates, drop zero masses.
std::vector<FocalElement> canonicalize(std::vector<FocalElement> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const FocalElement& a, const FocalElement& b) { return a.set < b.set; });
  std::vector<FocalElement> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    if (!out.empty() && out.back().set == e.set) {
      out.back().mass += e.mass;
    } else {
      out.push_back(e);
    }
  }
  std::erase_if(out, [](const FocalElement& e) { return e.mass == 0.0; });
  return out;
}

}  // namespace

ValueSet ValueSet::of(std::initializer_list<std::size_t> indices) {
  Bits bits = 0;
  for (auto i : indices) bits |= Bits{1} << i;
  return ValueSet(bits);
}

std::size_t ValueSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::size_t ValueSet::single_index() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

std::vector<std::size_t> ValueSet::indices() const {
  std::vector<std::size_t> out;
  for (Bits rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
  }
  return out;
}

ValueDomain::ValueDomain(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < kMinDomainSize || labels_.size() > kMaxDomainSize) {
    throw Error(ErrorCode::InvalidDomain,
                fmt::format("domain must have between {} and {} values, got {}", kMinDomainSize,
                            kMaxDomainSize, labels_.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : labels_) {
    if (label.empty()) throw Error(ErrorCode::InvalidDomain, "empty value label");
    if (!seen.insert(label).second) {
      throw Error(ErrorCode::InvalidDomain, fmt::format("duplicate value label '{}'", label));
    }
  }
}

std::optional<std::size_t> ValueDomain::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

ValueSet ValueDomain::set(std::initializer_list<std::string_view> labels) const {
  ValueSet out;
  for (auto label : labels) {
    const auto index = index_of(label);
    if (!index) throw Error(ErrorCode::InvalidSubset, fmt::format("unknown value '{}'", label));
    out = out | ValueSet::singleton(*index);
  }
  return out;
}

ValueSet ValueDomain::set(std::span<const std::string> labels) const {
  ValueSet out;
  for (const auto& label : labels) {
    const auto index = index_of(label);
    if (!index) throw Error(ErrorCode::InvalidSubset, fmt::format("unknown value '{}'", label));
    out = out | ValueSet::singleton(*index);
  }
  return out;
}

std::string ValueDomain::format(ValueSet set) const {
  std::string out = "{";
  bool first = true;
  for (auto i : set.indices()) {
    if (!first) out += ",";
    out += labels_.at(i);
    first = false;
  }
  return out + "}";
}

DomainPtr make_domain(std::vector<std::string> labels) {
  return std::make_shared<const ValueDomain>(std::move(labels));
}

double MassAssignment::mass(ValueSet set) const {
  const auto it = std::lower_bound(focal_.begin(), focal_.end(), set,
                                   [](const FocalElement& e, ValueSet s) { return e.set < s; });
  return (it != focal_.end() && it->set == set) ? it->mass : 0.0;
}

double MassAssignment::total() const {
  double sum = 0.0;
  for (const auto& e : focal_) sum += e.mass;
  return sum;
}

bool MassAssignment::is_vacuous() const {
  return focal_.size() == 1 && focal_.front().set == domain_->full();
}

MassAssignment MassAssignment::vacuous(DomainPtr domain) {
  const auto full = domain->full();
  return MassAssignment(std::move(domain), {{full, 1.0}});
}

MassAssignment MassAssignment::simple_support(DomainPtr domain, ValueSet focus, double strength) {
  require_valid(*domain, focus);
  if (focus.empty()) throw Error(ErrorCode::InvalidSubset, "simple support on the empty set");
  if (!(strength >= 0.0 && strength <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("support strength {} outside [0, 1]", strength));
  }
  const auto full = domain->full();
  if (strength == 0.0 || focus == full) return vacuous(std::move(domain));
  if (strength == 1.0) return MassAssignment(std::move(domain), {{focus, 1.0}});
  return MassAssignment(std::move(domain), {{focus, strength}, {full, 1.0 - strength}});
}

MassAssignment MassBuilder::build() && {
  return MassAssignment(std::move(domain_), canonicalize(std::move(entries_)));
}

MassAssignment make_mass(DomainPtr domain, std::span<const FocalElement> entries) {
  if (!domain) throw Error(ErrorCode::InvalidDomain, "null domain");
  for (const auto& e : entries) {
    require_valid(*domain, e.set);
    if (!(e.mass >= 0.0)) {
      throw Error(ErrorCode::NegativeMass,
                  fmt::format("mass {} on {} is negative", e.mass, domain->format(e.set)));
    }
  }
  auto focal = canonicalize({entries.begin(), entries.end()});
  double sum = 0.0;
  for (const auto& e : focal) sum += e.mass;
  if (std::abs(sum - 1.0) > kMassSumTolerance) {
    throw Error(ErrorCode::SumNotOne, fmt::format("masses sum to {} (deviation {:+.3e})", sum, sum - 1.0));
  }
  return MassAssignment(std::move(domain), std::move(focal));
}

MassAssignment make_mass(DomainPtr domain, std::initializer_list<FocalElement> entries) {
  return make_mass(std::move(domain), std::span<const FocalElement>(entries.begin(), entries.size()));
}

double belief(const MassAssignment& m, ValueSet set) {
  require_valid(*m.domain(), set);
  double sum = 0.0;
  for (const auto& e : m.focal_elements()) {
    if (!e.set.empty() && e.set.is_subset_of(set)) sum += e.mass;
  }
  return sum;
}

double plausibility(const MassAssignment& m, ValueSet set) {
  require_valid(*m.domain(), set);
  double sum = 0.0;
  for (const auto& e : m.focal_elements()) {
    if (e.set.intersects(set)) sum += e.mass;
  }
  return sum;
}

MassAssignment combine(const MassAssignment& a, const MassAssignment& b, CombinationMode mode) {
  require_same_domain(a, b);
  if (mode == CombinationMode::normalized && (!a.is_normalized() || !b.is_normalized())) {
    throw Error(ErrorCode::Unnormalized, "normalized combination requires normalized inputs");
  }

  std::vector<FocalElement> products;
  products.reserve(a.focal_.size() * b.focal_.size());
  double conflict = 0.0;
  for (const auto& x : a.focal_) {
    for (const auto& y : b.focal_) {
      const auto meet = x.set & y.set;
      const double product = x.mass * y.mass;
      if (meet.empty()) conflict += product;
      products.push_back({meet, product});
    }
  }
  auto focal = canonicalize(std::move(products));

  if (mode == CombinationMode::normalized) {
    if (1.0 - conflict <= kConflictThreshold) {
      throw Error(ErrorCode::TotalConflict, fmt::format("conflict degree {} leaves nothing to normalize", conflict));
    }
    std::erase_if(focal, [](const FocalElement& e) { return e.set.empty(); });
    // Dividing by the surviving mass rather than 1 - conflict absorbs the
    // rounding accumulated in the product sums.
    double kept = 0.0;
    for (const auto& e : focal) kept += e.mass;
    for (auto& e : focal) e.mass /= kept;
  }
  return MassAssignment(a.domain_, std::move(focal));
}

MassAssignment combine_many(std::span<const MassAssignment> ms, CombinationMode mode) {
  if (ms.empty()) throw Error(ErrorCode::EmptyList, "nothing to combine");
  MassAssignment acc = ms.front();
  for (const auto& m : ms.subspan(1)) acc = combine(acc, m, mode);
  return acc;
}

double conflict_degree(const MassAssignment& a, const MassAssignment& b) {
  require_same_domain(a, b);
  double conflict = 0.0;
  for (const auto& x : a.focal_elements()) {
    for (const auto& y : b.focal_elements()) {
      if (!x.set.intersects(y.set)) conflict += x.mass * y.mass;
    }
  }
  return conflict;
}

MassAssignment normalize(const MassAssignment& m) {
  const double empty = m.mass(ValueSet{});
  if (empty == 0.0) return m;
  if (1.0 - empty <= kConflictThreshold) {
    throw Error(ErrorCode::TotalConflict, fmt::format("empty-set mass {} cannot be normalized away", empty));
  }
  std::vector<FocalElement> focal;
  focal.reserve(m.focal_.size());
  double kept = 0.0;
  for (const auto& e : m.focal_) {
    if (e.set.empty()) continue;
    focal.push_back(e);
    kept += e.mass;
  }
  for (auto& e : focal) e.mass /= kept;
  return MassAssignment(m.domain_, std::move(focal));
}

ProbabilityDistribution pignistic(const MassAssignment& m) {
  if (!m.is_normalized()) {
    throw Error(ErrorCode::Unnormalized, "pignistic transform needs a normalized assignment");
  }
  ProbabilityDistribution out{m.domain(), std::vector<double>(m.domain()->size(), 0.0)};
  for (const auto& e : m.focal_elements()) {
    const double share = e.mass / static_cast<double>(e.set.size());
    for (auto i : e.set.indices()) out.p[i] += share;
  }
  return out;
}

}  // namespace evimap
