#pragma once

// Finite-frame Dempster-Shafer algebra.
//
// A frame of discernment is a ValueDomain of 2..16 labelled values. Subsets of
// the frame are ValueSets, encoded as bitmasks over the domain ordering, and a
// MassAssignment stores only its focal elements (subsets with positive mass)
// sorted by mask. Unnormalized assignments (positive mass on the empty set)
// are representable; the empty-set mass is then the conflict carried along.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace evimap {

inline constexpr std::size_t kMinDomainSize = 2;
inline constexpr std::size_t kMaxDomainSize = 16;

/// Tolerance on the total mass of a constructed assignment.
inline constexpr double kMassSumTolerance = 1e-9;
/// Combinations whose normalization factor falls to this level are total conflict.
inline constexpr double kConflictThreshold = 1e-12;

class ValueSet {
 public:
  using Bits = std::uint32_t;

  constexpr ValueSet() = default;
  static constexpr ValueSet from_bits(Bits bits) { return ValueSet(bits); }
  static ValueSet of(std::initializer_list<std::size_t> indices);
  static constexpr ValueSet singleton(std::size_t index) { return ValueSet(Bits{1} << index); }

  constexpr Bits bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  constexpr bool contains(std::size_t index) const { return (bits_ >> index) & 1u; }
  constexpr bool is_subset_of(ValueSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(ValueSet other) const { return (bits_ & other.bits_) != 0; }
  /// Index of the single member; only meaningful when size() == 1.
  std::size_t single_index() const;
  std::vector<std::size_t> indices() const;

  friend constexpr ValueSet operator&(ValueSet a, ValueSet b) { return ValueSet(a.bits_ & b.bits_); }
  friend constexpr ValueSet operator|(ValueSet a, ValueSet b) { return ValueSet(a.bits_ | b.bits_); }
  friend constexpr bool operator==(ValueSet, ValueSet) = default;
  friend constexpr auto operator<=>(ValueSet a, ValueSet b) { return a.bits_ <=> b.bits_; }

 private:
  constexpr explicit ValueSet(Bits bits) : bits_(bits) {}
  Bits bits_ = 0;
};

/// Ordered list of distinct, nonempty value labels.
class ValueDomain {
 public:
  explicit ValueDomain(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t index) const { return labels_.at(index); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  ValueSet full() const { return ValueSet::from_bits((ValueSet::Bits{1} << size()) - 1); }
  bool is_valid(ValueSet set) const { return set.is_subset_of(full()); }
  /// Throws InvalidSubset for unknown labels.
  ValueSet set(std::initializer_list<std::string_view> labels) const;
  ValueSet set(std::span<const std::string> labels) const;
  std::string format(ValueSet set) const;

  friend bool operator==(const ValueDomain&, const ValueDomain&) = default;

 private:
  std::vector<std::string> labels_;
};

using DomainPtr = std::shared_ptr<const ValueDomain>;

DomainPtr make_domain(std::vector<std::string> labels);

struct FocalElement {
  ValueSet set;
  double mass = 0.0;

  friend bool operator==(const FocalElement&, const FocalElement&) = default;
};

enum class CombinationMode { normalized, unnormalized };

class MassAssignment {
 public:
  const DomainPtr& domain() const { return domain_; }
  /// Focal elements sorted by subset mask; every mass is strictly positive.
  std::span<const FocalElement> focal_elements() const { return focal_; }
  double mass(ValueSet set) const;
  double total() const;
  bool is_normalized() const { return mass(ValueSet{}) == 0.0; }
  bool is_vacuous() const;

  static MassAssignment vacuous(DomainPtr domain);
  /// m(focus) = strength, m(S) = 1 - strength. strength must lie in [0, 1].
  static MassAssignment simple_support(DomainPtr domain, ValueSet focus, double strength);

 private:
  MassAssignment(DomainPtr domain, std::vector<FocalElement> focal)
      : domain_(std::move(domain)), focal_(std::move(focal)) {}

  friend MassAssignment make_mass(DomainPtr, std::span<const FocalElement>);
  friend MassAssignment combine(const MassAssignment&, const MassAssignment&, CombinationMode);
  friend MassAssignment normalize(const MassAssignment&);
  friend class MassBuilder;

  DomainPtr domain_;
  std::vector<FocalElement> focal_;
};

/// Accumulates (subset, mass) pairs without validation. For algorithm code
/// that has already established the masses are nonnegative and sum to one.
class MassBuilder {
 public:
  explicit MassBuilder(DomainPtr domain) : domain_(std::move(domain)) {}
  void add(ValueSet set, double mass) { entries_.push_back({set, mass}); }
  MassAssignment build() &&;

 private:
  DomainPtr domain_;
  std::vector<FocalElement> entries_;
};

/// Validating constructor: merges duplicate subsets by summation and drops
/// zero masses. Throws NegativeMass, InvalidSubset or SumNotOne.
MassAssignment make_mass(DomainPtr domain, std::span<const FocalElement> entries);
MassAssignment make_mass(DomainPtr domain, std::initializer_list<FocalElement> entries);

double belief(const MassAssignment& m, ValueSet set);
double plausibility(const MassAssignment& m, ValueSet set);

/// Conjunctive combination. In normalized mode both inputs must be normalized
/// and the conflict is redistributed; in unnormalized mode it stays on the
/// empty set. Throws TotalConflict when the normalization factor vanishes.
MassAssignment combine(const MassAssignment& a, const MassAssignment& b, CombinationMode mode);
MassAssignment combine_many(std::span<const MassAssignment> ms, CombinationMode mode);

/// Mass the unnormalized combination puts on the empty set.
double conflict_degree(const MassAssignment& a, const MassAssignment& b);

MassAssignment normalize(const MassAssignment& m);

struct ProbabilityDistribution {
  DomainPtr domain;
  std::vector<double> p;

  double operator[](std::size_t index) const { return p[index]; }
};

/// Splits each focal element's mass evenly over its members. Rejects
/// unnormalized input.
ProbabilityDistribution pignistic(const MassAssignment& m);

}  // namespace evimap
