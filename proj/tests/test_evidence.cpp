#include <doctest.h>

#include <algorithm>
#include <random>

#include "evimap/error.hpp"
#include "evimap/evidence.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace evimap;
using evimap::testing::code_of;

namespace {

DomainPtr binary() { return make_domain({"true", "false"}); }

// m({true}) = 0.6, m({false}) = 0.2, m(S) = 0.2.
MassAssignment worked_result(const DomainPtr& d) {
  return make_mass(d, {{d->set({"true"}), 0.6}, {d->set({"false"}), 0.2}, {d->full(), 0.2}});
}

}  // namespace

TEST_CASE("value domain validation") {
  CHECK_NOTHROW(make_domain({"a", "b"}));
  CHECK(code_of([] { make_domain({"a"}); }) == ErrorCode::InvalidDomain);
  CHECK(code_of([] { make_domain({"a", "a"}); }) == ErrorCode::InvalidDomain);
  CHECK(code_of([] { make_domain({"a", ""}); }) == ErrorCode::InvalidDomain);
  std::vector<std::string> seventeen;
  for (int i = 0; i < 17; ++i) seventeen.push_back("v" + std::to_string(i));
  CHECK(code_of([&] { make_domain(seventeen); }) == ErrorCode::InvalidDomain);
  seventeen.pop_back();
  CHECK(make_domain(seventeen)->full().size() == 16);
}

TEST_CASE("value sets compare as sets") {
  const auto d = make_domain({"a", "b", "c"});
  CHECK(d->set({"a", "c"}) == d->set({"c", "a"}));
  CHECK(d->set({"a", "a"}) == d->set({"a"}));
  CHECK(d->set({"a", "c"}).size() == 2);
  CHECK(code_of([&] { (void)d->set({"z"}); }) == ErrorCode::InvalidSubset);
}

TEST_CASE("make_mass") {
  const auto d = make_domain({"a", "b"});
  SUBCASE("vacuous") {
    const auto m = make_mass(d, {{d->full(), 1.0}});
    CHECK(m.is_vacuous());
    CHECK(m.focal_elements().size() == 1);
  }
  SUBCASE("simple support has two focal elements") {
    const auto m = make_mass(d, {{d->set({"a"}), 0.5}, {d->full(), 0.5}});
    REQUIRE(m.focal_elements().size() == 2);
    CHECK(m.focal_elements()[0].set == d->set({"a"}));
    CHECK(m.focal_elements()[1].set == d->full());
  }
  SUBCASE("duplicates merge") {
    const auto m = make_mass(d, {{d->set({"a"}), 0.25}, {d->set({"a"}), 0.25}, {d->full(), 0.5}});
    CHECK(m.mass(d->set({"a"})) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("errors") {
    CHECK(code_of([&] { make_mass(d, {{d->set({"a"}), 0.7}, {d->set({"b"}), 0.4}}); }) == ErrorCode::SumNotOne);
    CHECK(code_of([&] { make_mass(d, {{d->set({"a"}), -0.1}, {d->full(), 1.1}}); }) == ErrorCode::NegativeMass);
    CHECK(code_of([&] { make_mass(d, {{ValueSet::from_bits(0b100), 1.0}}); }) == ErrorCode::InvalidSubset);
  }
  SUBCASE("sum tolerance is 1e-9") {
    CHECK_NOTHROW(make_mass(d, {{d->full(), 1.0 + 5e-10}}));
    CHECK_THROWS_AS(make_mass(d, {{d->full(), 1.0 + 5e-9}}), Error);
  }
}

TEST_CASE("belief and plausibility") {
  const auto d = binary();
  const auto vac = MassAssignment::vacuous(d);
  const auto m = worked_result(d);
  const auto t = d->set({"true"});
  CHECK(belief(vac, t) == 0.0);
  CHECK(plausibility(vac, t) == 1.0);
  CHECK(belief(m, t) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(plausibility(m, t) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(belief(m, d->full()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(belief(m, ValueSet{}) == 0.0);
  CHECK(plausibility(m, ValueSet{}) == 0.0);
  CHECK(code_of([&] { (void)belief(m, ValueSet::from_bits(0b1000)); }) == ErrorCode::InvalidSubset);
}

TEST_CASE("combine") {
  const auto d = binary();
  const auto t = d->set({"true"});
  const auto f = d->set({"false"});

  SUBCASE("vacuous is neutral") {
    const auto m = worked_result(d);
    for (auto mode : {CombinationMode::normalized, CombinationMode::unnormalized}) {
      const auto r = combine(m, MassAssignment::vacuous(d), mode);
      CHECK(oracle::max_abs_diff(oracle::to_dense(r), oracle::to_dense(m)) <= 1e-12);
    }
  }
  SUBCASE("two supports on the same focal element") {
    const double a = 0.3;
    const double b = 0.45;
    const auto r = combine(MassAssignment::simple_support(d, t, a), MassAssignment::simple_support(d, t, b),
                           CombinationMode::unnormalized);
    CHECK(r.mass(t) == doctest::Approx(1 - (1 - a) * (1 - b)).epsilon(1e-12));
    CHECK(r.mass(d->full()) == doctest::Approx((1 - a) * (1 - b)).epsilon(1e-12));
    const auto dense = oracle::combine_unnormalized(oracle::to_dense(MassAssignment::simple_support(d, t, a)),
                                                    oracle::to_dense(MassAssignment::simple_support(d, t, b)));
    CHECK(oracle::max_abs_diff(oracle::to_dense(r), dense) <= 1e-12);
  }
  SUBCASE("three half supports") {
    const std::vector<MassAssignment> supports{MassAssignment::simple_support(d, t, 0.5),
                                               MassAssignment::simple_support(d, t, 0.5),
                                               MassAssignment::simple_support(d, f, 0.5)};
    const auto r = combine_many(supports, CombinationMode::normalized);
    CHECK(std::abs(r.mass(t) - 0.6) <= 1e-9);
    CHECK(std::abs(r.mass(f) - 0.2) <= 1e-9);
    CHECK(std::abs(r.mass(d->full()) - 0.2) <= 1e-9);
    CHECK(r.mass(ValueSet{}) == 0.0);

    const auto u = combine_many(supports, CombinationMode::unnormalized);
    CHECK(std::abs(u.mass(ValueSet{}) - 0.375) <= 1e-12);
    CHECK(std::abs(u.mass(t) - 0.375) <= 1e-12);
    CHECK(std::abs(u.mass(f) - 0.125) <= 1e-12);
    CHECK(std::abs(u.mass(d->full()) - 0.125) <= 1e-12);
  }
  SUBCASE("total conflict") {
    const auto a = make_mass(d, {{t, 1.0}});
    const auto b = make_mass(d, {{f, 1.0}});
    CHECK(code_of([&] { combine(a, b, CombinationMode::normalized); }) == ErrorCode::TotalConflict);
    CHECK(combine(a, b, CombinationMode::unnormalized).mass(ValueSet{}) == 1.0);
  }
  SUBCASE("normalized mode rejects unnormalized inputs") {
    const auto u = make_mass(d, {{ValueSet{}, 0.5}, {t, 0.5}});
    CHECK(code_of([&] { combine(u, u, CombinationMode::normalized); }) == ErrorCode::Unnormalized);
  }
  SUBCASE("domain mismatch") {
    const auto other = make_domain({"x", "y"});
    CHECK(code_of([&] { combine(MassAssignment::vacuous(d), MassAssignment::vacuous(other),
                                CombinationMode::unnormalized); }) == ErrorCode::DomainMismatch);
  }
}

TEST_CASE("combine_many") {
  const auto d = binary();
  const auto m = worked_result(d);
  CHECK(oracle::max_abs_diff(oracle::to_dense(combine_many(std::vector{m}, CombinationMode::normalized)),
                             oracle::to_dense(m)) == 0.0);
  const std::vector<MassAssignment> vacuous(3, MassAssignment::vacuous(d));
  CHECK(combine_many(vacuous, CombinationMode::normalized).is_vacuous());
  CHECK(code_of([] { combine_many(std::span<const MassAssignment>{}, CombinationMode::normalized); }) ==
        ErrorCode::EmptyList);

  std::vector<MassAssignment> supports{MassAssignment::simple_support(d, d->set({"true"}), 0.5),
                                       MassAssignment::simple_support(d, d->set({"true"}), 0.5),
                                       MassAssignment::simple_support(d, d->set({"false"}), 0.5)};
  const auto reference = oracle::to_dense(combine_many(supports, CombinationMode::normalized));
  std::sort(supports.begin(), supports.end(),
            [](const auto& a, const auto& b) { return a.focal_elements()[0].set < b.focal_elements()[0].set; });
  do {
    CHECK(oracle::max_abs_diff(oracle::to_dense(combine_many(supports, CombinationMode::normalized)), reference) <=
          1e-12);
  } while (std::next_permutation(supports.begin(), supports.end(), [](const auto& a, const auto& b) {
    return a.focal_elements()[0].set < b.focal_elements()[0].set;
  }));
}

TEST_CASE("conflict degree") {
  const auto d = binary();
  const auto t = d->set({"true"});
  const auto f = d->set({"false"});
  CHECK(conflict_degree(MassAssignment::vacuous(d), worked_result(d)) == 0.0);
  CHECK(conflict_degree(MassAssignment::simple_support(d, t, 0.5), MassAssignment::simple_support(d, f, 0.5)) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(conflict_degree(make_mass(d, {{t, 1.0}}), make_mass(d, {{f, 1.0}})) == 1.0);
}

TEST_CASE("pignistic") {
  const auto d = binary();
  const auto vac = pignistic(MassAssignment::vacuous(d));
  CHECK(vac[0] == 0.5);
  CHECK(vac[1] == 0.5);
  const auto p = pignistic(worked_result(d));
  CHECK(p[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(pignistic(make_mass(d, {{d->set({"true"}), 1.0}}))[0] == 1.0);
  CHECK(code_of([&] { pignistic(make_mass(d, {{ValueSet{}, 0.2}, {d->full(), 0.8}})); }) ==
        ErrorCode::Unnormalized);
}

TEST_CASE("normalize") {
  const auto d = binary();
  const auto t = d->set({"true"});
  const auto f = d->set({"false"});
  const auto m = worked_result(d);
  CHECK(oracle::max_abs_diff(oracle::to_dense(normalize(m)), oracle::to_dense(m)) == 0.0);
  const auto u = make_mass(d, {{ValueSet{}, 0.375}, {t, 0.375}, {f, 0.125}, {d->full(), 0.125}});
  const auto n = normalize(u);
  CHECK(std::abs(n.mass(t) - 0.6) <= 1e-9);
  CHECK(std::abs(n.mass(f) - 0.2) <= 1e-9);
  CHECK(std::abs(n.mass(d->full()) - 0.2) <= 1e-9);
  CHECK(n.is_normalized());
  CHECK(code_of([&] { normalize(make_mass(d, {{ValueSet{}, 1.0}})); }) == ErrorCode::TotalConflict);
}

TEST_CASE("algebraic properties on random assignments") {
  std::mt19937_64 rng(20240611);
  for (std::size_t n = 2; n <= 4; ++n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
    const auto d = make_domain(labels);
    const std::size_t lattice = std::size_t{1} << n;
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = oracle::random_mass(d, rng, 1 + trial % 5, false);
      const auto b = oracle::random_mass(d, rng, 1 + trial % 4, true);
      const auto c = oracle::random_mass(d, rng, 2, true);
      const auto da = oracle::to_dense(a);

      for (std::size_t s = 0; s < lattice; ++s) {
        const auto set = ValueSet::from_bits(static_cast<ValueSet::Bits>(s));
        CHECK(std::abs(belief(a, set) - oracle::belief(da, s)) <= 1e-12);
        CHECK(std::abs(plausibility(a, set) - oracle::plausibility(da, s)) <= 1e-12);
        CHECK(belief(a, set) <= plausibility(a, set) + 1e-12);
        const auto complement = ValueSet::from_bits(static_cast<ValueSet::Bits>(~s & (lattice - 1)));
        CHECK(std::abs(belief(a, set) + plausibility(a, complement) - 1.0) <= 1e-9);
      }

      const auto ab = combine(a, b, CombinationMode::unnormalized);
      CHECK(oracle::max_abs_diff(oracle::to_dense(ab), oracle::combine_unnormalized(da, oracle::to_dense(b))) <=
            1e-12);
      CHECK(std::abs(ab.total() - 1.0) <= 1e-9);
      CHECK(oracle::max_abs_diff(oracle::to_dense(ab), oracle::to_dense(combine(b, a, CombinationMode::unnormalized))) <=
            1e-9);
      const auto left = combine(ab, c, CombinationMode::unnormalized);
      const auto right = combine(a, combine(b, c, CombinationMode::unnormalized), CombinationMode::unnormalized);
      CHECK(oracle::max_abs_diff(oracle::to_dense(left), oracle::to_dense(right)) <= 1e-9);

      const auto p = pignistic(a);
      const auto po = oracle::pignistic(da, n);
      double sum = 0.0;
      for (std::size_t v = 0; v < n; ++v) {
        CHECK(std::abs(p[v] - po[v]) <= 1e-12);
        sum += p[v];
      }
      CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("probability special case") {
  const auto d = make_domain({"a", "b", "c"});
  const auto m = make_mass(d, {{ValueSet::singleton(0), 0.2}, {ValueSet::singleton(1), 0.5}, {ValueSet::singleton(2), 0.3}});
  for (ValueSet::Bits s = 0; s < 8; ++s) {
    const auto set = ValueSet::from_bits(s);
    double sum = 0.0;
    for (auto i : set.indices()) sum += m.mass(ValueSet::singleton(i));
    CHECK(belief(m, set) == doctest::Approx(sum).epsilon(1e-12));
    CHECK(plausibility(m, set) == doctest::Approx(sum).epsilon(1e-12));
  }
  const auto p = pignistic(m);
  CHECK(p[0] == 0.2);
  CHECK(p[1] == 0.5);
  CHECK(p[2] == 0.3);
}
