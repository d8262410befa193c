#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "genpos/multidegree.hpp"
#include "test_support.hpp"

using namespace genpos;
using testsupport::md;
using testsupport::sh;

TEST_CASE("componentwise comparison is a partial order") {
  testsupport::Rng rng(101);
  auto random_degree = [&](int k) {
    std::vector<int> p(k);
    for (int& v : p) v = static_cast<int>(rng.uniform(0, 5));
    return MultiDegree(p);
  };
  for (int trial = 0; trial < 200; ++trial) {
    int k = static_cast<int>(rng.uniform(1, 4));
    MultiDegree a = random_degree(k), b = random_degree(k), c = random_degree(k);
    REQUIRE(leq(a, a));
    if (leq(a, b) && leq(b, a)) REQUIRE(a == b);
    if (leq(a, b) && leq(b, c)) REQUIRE(leq(a, c));
  }
}

TEST_CASE("degree construction rejects negative parts and mismatched arithmetic") {
  REQUIRE_THROWS_AS(MultiDegree({1, -1}), std::invalid_argument);
  REQUIRE_THROWS_AS(leq(md({1, 0}), md({1, 0, 0})), std::invalid_argument);
  REQUIRE_THROWS_AS(md({0, 0}) + md({0}), std::invalid_argument);
  REQUIRE(md({1, 2}) + md({3, 0}) == md({4, 2}));
  REQUIRE(md({2, 1, 3}).total() == 6);
}

TEST_CASE("graded dimension") {
  REQUIRE(graded_dim(md({1, 1, 1}), sh({1, 1, 1})) == 8);
  REQUIRE(graded_dim(md({0, 0}), sh({3, 2})) == 1);
  REQUIRE(graded_dim(md({0, 0, 0, 0}), sh({1, 1, 1, 1})) == 1);
  REQUIRE(graded_dim(md({2, 1}), sh({2, 3})) == 24);
  REQUIRE_THROWS_AS(graded_dim(md({1, 1}), sh({1, 1, 1})), std::invalid_argument);

  SECTION("matches direct enumeration of exponent tuples") {
    testsupport::Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
      int k = static_cast<int>(rng.uniform(1, 3));
      std::vector<int> dims(k), parts(k);
      for (int& d : dims) d = static_cast<int>(rng.uniform(1, 3));
      for (int& p : parts) p = static_cast<int>(rng.uniform(0, 4));
      SpaceShape shape(dims);
      MultiDegree j(parts);
      REQUIRE(graded_dim(j, shape) == testsupport::count_monomials_by_enumeration(j, shape));
    }
  }

  SECTION("monotone under the partial order") {
    testsupport::Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      int k = static_cast<int>(rng.uniform(1, 4));
      std::vector<int> dims(k), lo(k), hi(k);
      for (int h = 0; h < k; ++h) {
        dims[h] = static_cast<int>(rng.uniform(1, 4));
        lo[h] = static_cast<int>(rng.uniform(0, 4));
        hi[h] = lo[h] + static_cast<int>(rng.uniform(0, 3));
      }
      SpaceShape shape(dims);
      REQUIRE(graded_dim(MultiDegree(lo), shape) <= graded_dim(MultiDegree(hi), shape));
    }
  }
}

TEST_CASE("binomial growth inequality used by the depth argument") {
  // C(n+l+1, l+1) <= C(n+l, l) * (n+1) for 1 <= n, l <= 30, exactly.
  for (int n = 1; n <= 30; ++n)
    for (int l = 1; l <= 30; ++l) REQUIRE(binom(n + l + 1, l + 1) <= binom(n + l, l) * (n + 1));
}

TEST_CASE("monomial enumeration") {
  SECTION("linear forms of the first block") {
    auto m = monomials_of_degree(md({1, 0}), sh({1, 1}));
    REQUIRE(m == std::vector<std::vector<int>>{{1, 0, 0, 0}, {0, 1, 0, 0}});
  }
  SECTION("canonical order within a block") {
    auto m = monomials_of_degree(md({2}), sh({2}));
    REQUIRE(m == std::vector<std::vector<int>>{
                     {2, 0, 0}, {1, 1, 0}, {0, 2, 0}, {1, 0, 1}, {0, 1, 1}, {0, 0, 2}});
  }
  SECTION("blocks combine lexicographically") {
    auto m = monomials_of_degree(md({1, 1}), sh({1, 1}));
    REQUIRE(m == std::vector<std::vector<int>>{{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}});
  }
  SECTION("counts, distinctness and block degrees") {
    auto m = monomials_of_degree(md({1, 1, 1}), sh({1, 1, 1}));
    REQUIRE(m.size() == 8);
    auto m2 = monomials_of_degree(md({2, 1}), sh({2, 3}));
    REQUIRE(m2.size() == 24);
    std::set<std::vector<int>> dedup(m2.begin(), m2.end());
    REQUIRE(dedup.size() == 24);
    for (const auto& e : m2) {
      REQUIRE(e[0] + e[1] + e[2] == 2);
      REQUIRE(e[3] + e[4] + e[5] + e[6] == 1);
    }
  }
  SECTION("index recovers the position") {
    SpaceShape shape({2, 1});
    MultiDegree j({2, 1});
    auto m = monomials_of_degree(j, shape);
    for (size_t c = 0; c < m.size(); ++c) REQUIRE(monomial_index(shape, j, m[c]) == c);
  }
}

TEST_CASE("multiplication shift maps add one to the chosen variable") {
  testsupport::Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    int k = static_cast<int>(rng.uniform(1, 3));
    std::vector<int> dims(k), parts(k);
    for (int& d : dims) d = static_cast<int>(rng.uniform(1, 3));
    for (int& p : parts) p = static_cast<int>(rng.uniform(0, 3));
    SpaceShape shape(dims);
    MultiDegree j(parts);
    int l = static_cast<int>(rng.uniform(0, k - 1));
    int m = static_cast<int>(rng.uniform(0, shape.block_vars(l) - 1));
    auto src = monomials_of_degree(j, shape);
    auto tgt = monomials_of_degree(j.plus_axis(l), shape);
    auto map = multiplication_shift(shape, j, l, m);
    REQUIRE(map.size() == src.size());
    int var = m;
    for (int h = 0; h < l; ++h) var += shape.block_vars(h);
    std::set<size_t> images;
    for (size_t c = 0; c < src.size(); ++c) {
      auto expected = src[c];
      expected[var] += 1;
      REQUIRE(tgt[map[c]] == expected);
      images.insert(map[c]);
    }
    REQUIRE(images.size() == src.size());  // injective
  }
}

TEST_CASE("minimal elements of an upward-closed predicate") {
  SpaceShape shape({1, 1, 1});
  SECTION("graded dimension exceeding 3") {
    auto pred = [&](const MultiDegree& j) { return graded_dim(j, shape) > 3; };
    auto got = minimal_elements(pred, md({3, 3, 3}));
    std::vector<MultiDegree> expected = {md({0, 0, 3}), md({0, 1, 1}), md({0, 3, 0}),
                                         md({1, 0, 1}), md({1, 1, 0}), md({3, 0, 0})};
    auto sorted = got;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(sorted == expected);
    REQUIRE(sorted == testsupport::minimal_by_double_loop(pred, md({3, 3, 3})));
  }
  SECTION("always-true predicate has the origin as unique minimum") {
    auto got = minimal_elements([](const MultiDegree&) { return true; }, md({2, 2, 2}));
    REQUIRE(got == std::vector<MultiDegree>{md({0, 0, 0})});
  }
  SECTION("one factor") {
    SpaceShape p2({2});
    auto got = minimal_elements([&](const MultiDegree& j) { return graded_dim(j, p2) > 5; }, md({6}));
    REQUIRE(got == std::vector<MultiDegree>{md({2})});
  }
  SECTION("false everywhere gives the empty set") {
    auto got = minimal_elements([](const MultiDegree&) { return false; }, md({2, 2}));
    REQUIRE(got.empty());
  }
  SECTION("antichain and covering on random upward-closed predicates") {
    testsupport::Rng rng(10);
    for (int trial = 0; trial < 50; ++trial) {
      int k = static_cast<int>(rng.uniform(1, 3));
      std::vector<int> b(k);
      for (int& v : b) v = static_cast<int>(rng.uniform(1, 4));
      MultiDegree box(b);
      std::vector<MultiDegree> gens;
      int ngens = static_cast<int>(rng.uniform(1, 4));
      for (int g = 0; g < ngens; ++g) {
        std::vector<int> p(k);
        for (int& v : p) v = static_cast<int>(rng.uniform(0, 4));
        gens.push_back(MultiDegree(p));
      }
      auto pred = [&](const MultiDegree& j) {
        for (const auto& g : gens)
          if (leq(g, j)) return true;
        return false;
      };
      auto got = minimal_elements(pred, box);
      for (const auto& a : got)
        for (const auto& b2 : got)
          if (a != b2) REQUIRE_FALSE(leq(a, b2));
      genpos::for_each_degree_leq(box, [&](const MultiDegree& j) {
        if (!pred(j)) return;
        bool covered = false;
        for (const auto& m : got)
          if (leq(m, j)) covered = true;
        REQUIRE(covered);
      });
    }
  }
}

TEST_CASE("degree sets for three points in (P^1)^3") {
  auto ds = compute_degree_sets(3, sh({1, 1, 1}));
  std::vector<MultiDegree> expected_minimal = {md({0, 0, 3}), md({0, 1, 1}), md({0, 3, 0}),
                                               md({1, 0, 1}), md({1, 1, 0}), md({3, 0, 0})};
  REQUIRE(ds.minimal == expected_minimal);

  std::vector<MultiDegree> expected_shifts = {md({0, 0, 4}), md({0, 1, 2}), md({0, 2, 1}), md({0, 4, 0}),
                                              md({1, 0, 2}), md({1, 1, 1}), md({1, 2, 0}), md({2, 0, 1}),
                                              md({2, 1, 0}), md({4, 0, 0})};
  REQUIRE(ds.open_shifts == expected_shifts);
  REQUIRE(ds.shift_axes.at(md({1, 1, 1})) == std::vector<int>{0, 1, 2});

  SECTION("(3,1,0) is excluded because (1,1,0) sits two steps below") {
    REQUIRE(std::find(ds.open_shifts.begin(), ds.open_shifts.end(), md({3, 1, 0})) == ds.open_shifts.end());
    auto witness = shift_exclusion_witness(md({3, 1, 0}), ds.minimal);
    REQUIRE(witness.has_value());
    REQUIRE(std::get<2>(*witness) == md({1, 1, 0}));
  }
}

TEST_CASE("degree sets for one point on a single factor") {
  auto ds = compute_degree_sets(1, sh({2}));
  REQUIRE(ds.minimal == std::vector<MultiDegree>{md({1})});
  REQUIRE(ds.open_shifts == std::vector<MultiDegree>{md({2})});
  REQUIRE(ds.shift_axes.at(md({2})) == std::vector<int>{0});
  REQUIRE(ds.closure == std::vector<MultiDegree>{md({1}), md({2})});
}

TEST_CASE("degree set invariants across random inputs") {
  testsupport::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int k = static_cast<int>(rng.uniform(1, 3));
    std::vector<int> dims(k);
    for (int& d : dims) d = static_cast<int>(rng.uniform(1, 3));
    SpaceShape shape(dims);
    std::int64_t s = rng.uniform(1, 12);
    auto ds = compute_degree_sets(s, shape);
    auto oracle = testsupport::degree_sets_by_definition(s, shape);
    REQUIRE(ds.minimal == oracle.minimal);
    REQUIRE(ds.open_shifts == oracle.open_shifts);
    REQUIRE(ds.shift_axes == oracle.shift_axes);

    // Antichain.
    for (const auto& a : ds.minimal)
      for (const auto& b : ds.minimal)
        if (a != b) REQUIRE_FALSE(leq(a, b));
    // Shifts are disjoint from the minimal set and sit one step above it.
    for (const auto& j : ds.open_shifts) {
      REQUIRE(std::find(ds.minimal.begin(), ds.minimal.end(), j) == ds.minimal.end());
      const auto& axes = ds.shift_axes.at(j);
      REQUIRE_FALSE(axes.empty());
      for (int l = 0; l < k; ++l) {
        bool is_axis = std::find(axes.begin(), axes.end(), l) != axes.end();
        bool below_minimal = j.can_minus_axis(l) &&
                             std::find(ds.minimal.begin(), ds.minimal.end(), j.minus_axis(l)) != ds.minimal.end();
        REQUIRE(is_axis == below_minimal);
      }
    }
    // The closure contains the shifts, and every closed-out shift has an
    // exclusion witness.
    for (const auto& j : ds.open_shifts)
      REQUIRE(std::binary_search(ds.closure.begin(), ds.closure.end(), j));
    for (const auto& j : ds.closure) {
      bool is_minimal = std::find(ds.minimal.begin(), ds.minimal.end(), j) != ds.minimal.end();
      bool is_open = std::find(ds.open_shifts.begin(), ds.open_shifts.end(), j) != ds.open_shifts.end();
      if (!is_minimal && !is_open) REQUIRE(shift_exclusion_witness(j, ds.minimal).has_value());
    }
  }
}
