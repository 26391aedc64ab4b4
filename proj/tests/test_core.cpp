#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "qtsp/arc.hpp"
#include "qtsp/linear_matrix.hpp"
#include "qtsp/oracle.hpp"
#include "qtsp/quadratic_matrix.hpp"
#include "qtsp/rational.hpp"
#include "qtsp/rng.hpp"
#include "qtsp/tour.hpp"

using namespace qtsp;

TEST_CASE("dense arc index is the documented row-major bijection") {
  CHECK(dense_index(Arc{1, 2}, 4) == 0);
  CHECK(dense_index(Arc{1, 4}, 4) == 2);
  CHECK(dense_index(Arc{4, 3}, 4) == 11);
  for (int n = 3; n <= 8; ++n) {
    for (int idx = 0; idx < n * (n - 1); ++idx) {
      Arc a = arc_at(idx, n);
      CHECK(valid_arc(a, n));
      CHECK(dense_index(a, n) == idx);
    }
  }
  CHECK_THROWS_AS(dense_index(Arc{2, 2}, 4), std::invalid_argument);
  CHECK_THROWS_AS(dense_index(Arc{0, 1}, 4), std::invalid_argument);
  CHECK_THROWS_AS(dense_index(Arc{1, 5}, 4), std::invalid_argument);
  CHECK_THROWS_AS(arc_at(12, 4), std::invalid_argument);
  CHECK_THROWS_AS(arc_at(-1, 4), std::invalid_argument);
}

TEST_CASE("structurally null cell patterns") {
  CHECK(structurally_null(Arc{1, 2}, Arc{1, 3}));  // shared tail
  CHECK(structurally_null(Arc{1, 2}, Arc{3, 2}));  // shared head
  CHECK(structurally_null(Arc{1, 2}, Arc{2, 1}));  // mutual reversal
  CHECK_FALSE(structurally_null(Arc{1, 2}, Arc{1, 2}));  // diagonal is real
  CHECK_FALSE(structurally_null(Arc{1, 2}, Arc{3, 4}));
  CHECK_FALSE(structurally_null(Arc{1, 2}, Arc{2, 3}));
  // The patterns are mirror-symmetric.
  for (int n = 4; n <= 5; ++n)
    for (int e = 0; e < n * (n - 1); ++e)
      for (int f = 0; f < n * (n - 1); ++f)
        CHECK(structurally_null(arc_at(e, n), arc_at(f, n)) ==
              structurally_null(arc_at(f, n), arc_at(e, n)));
}

TEST_CASE("tours canonicalize to start at node 1 and validate input") {
  Tour t({3, 1, 2});
  CHECK(t.order() == std::vector<int>{1, 2, 3});
  CHECK(Tour({2, 3, 1}) == Tour({1, 2, 3}));
  CHECK(Tour({1, 3, 2}) != Tour({1, 2, 3}));
  CHECK_THROWS_AS(Tour({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Tour({1, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Tour({1, 2, 4}), std::invalid_argument);
  CHECK(Tour({1, 4, 2, 3}).str() == "1->4->2->3->1");

  Tour q({1, 2, 3, 4});
  auto arcs = q.arcs();
  REQUIRE(arcs.size() == 4);
  CHECK(arcs[0] == Arc{1, 2});
  CHECK(arcs[3] == Arc{4, 1});
  CHECK(q.contains(Arc{3, 4}));
  CHECK_FALSE(q.contains(Arc{4, 3}));
}

TEST_CASE("linear tour cost sums the arcs of the tour") {
  LinearCostMatrix ones(5);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j)
      if (i != j) ones.set(i, j, Rational(1));
  for (const Tour& t : enumerate_tours(5))
    CHECK(tour_cost_linear(ones, t) == Rational(5));

  CHECK(tour_cost_linear(LinearCostMatrix(5), Tour({1, 2, 3, 4, 5})) ==
        Rational(0));

  // Weak-sum costs are tour-independent: a=(0,1,2,3), b=0 gives 6.
  LinearCostMatrix ws(4);
  std::vector<Rational> a{Rational(), Rational(0), Rational(1), Rational(2),
                          Rational(3)};
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      if (i != j) ws.set(i, j, a[i]);
  for (const Tour& t : enumerate_tours(4))
    CHECK(tour_cost_linear(ws, t) == Rational(6));
}

TEST_CASE("quadratic tour cost runs over ordered arc pairs with diagonal") {
  QuadraticCostMatrix q(4);
  q.set(1, 2, 1, 2, Rational(5));
  CHECK(tour_cost_quadratic(q, Tour({1, 2, 3, 4})) == Rational(5));
  CHECK(tour_cost_quadratic(q, Tour({1, 3, 2, 4})) == Rational(0));

  QuadraticCostMatrix p(4);
  p.set(1, 2, 3, 4, Rational(1));
  p.set(3, 4, 1, 2, Rational(1));
  CHECK(tour_cost_quadratic(p, Tour({1, 2, 3, 4})) == Rational(2));

  // Every ordered pair of arcs of one tour is a non-null cell, so an
  // all-ones matrix charges (number of arcs)^2.
  QuadraticCostMatrix full(4);
  for (int e = 0; e < 12; ++e)
    for (int f = 0; f < 12; ++f)
      if (!structurally_null(arc_at(e, 4), arc_at(f, 4)))
        full.set(arc_at(e, 4), arc_at(f, 4), Rational(1));
  CHECK(tour_cost_quadratic(full, Tour({1, 2, 3, 4})) == Rational(16));
}

TEST_CASE("structural zero normalization clears exactly the null cells") {
  QuadraticCostMatrix q(4);
  q.set(1, 2, 1, 3, Rational(5));  // shared-tail pattern
  NormalizeResult r = normalize_structural_zeros(q, false);
  CHECK(r.cleared.size() == 1);
  CHECK(r.q.value(1, 2, 1, 3) == Rational(0));

  QuadraticCostMatrix p(4);
  p.set(1, 2, 2, 1, Rational(5));  // reversed-arc pattern
  CHECK(normalize_structural_zeros(p, false).cleared.size() == 1);

  CHECK(normalize_structural_zeros(QuadraticCostMatrix(4), false)
            .cleared.empty());

  CHECK_THROWS_WITH_AS(normalize_structural_zeros(p, true),
                       doctest::Contains("(1,2)x(2,1)"), std::invalid_argument);

  // Non-null content is untouched.
  QuadraticCostMatrix mixed(4);
  mixed.set(1, 2, 3, 4, Rational(7));
  mixed.set(1, 2, 1, 3, Rational(9));
  NormalizeResult rm = normalize_structural_zeros(mixed, false);
  CHECK(rm.q.value(1, 2, 3, 4) == Rational(7));
  CHECK(rm.q.stored_entries() == 1);
}

TEST_CASE("tour costs ignore structurally null cells") {
  SeededRng rng(17);
  QuadraticCostMatrix q(5);
  for (int e = 0; e < 20; ++e)
    for (int f = 0; f < 20; ++f)
      q.set(arc_at(e, 5), arc_at(f, 5), Rational(rng.bounded(-9, 9)));
  QuadraticCostMatrix clean = normalize_structural_zeros(q, false).q;
  for (const Tour& t : enumerate_tours(5))
    CHECK(tour_cost_quadratic(q, t) == tour_cost_quadratic(clean, t));
}

TEST_CASE("transpose doubles and skew-symmetric parts vanish on tours") {
  SeededRng rng(23);
  QuadraticCostMatrix q(5);
  for (int e = 0; e < 20; ++e)
    for (int f = 0; f < 20; ++f) {
      Arc ea = arc_at(e, 5), fa = arc_at(f, 5);
      if (!structurally_null(ea, fa)) q.set(ea, fa, Rational(rng.bounded(-9, 9)));
    }
  QuadraticCostMatrix sum(5);   // q + q^T
  QuadraticCostMatrix skew(5);  // s_{ef} = -s_{fe}, zero diagonal
  for (const QuadEntry& e : q.entries_sorted()) {
    sum.add(e.i, e.j, e.k, e.l, e.v);
    sum.add(e.k, e.l, e.i, e.j, e.v);
    if (!(e.i == e.k && e.j == e.l)) {
      skew.add(e.i, e.j, e.k, e.l, e.v);
      skew.add(e.k, e.l, e.i, e.j, -e.v);
    }
  }
  for (const Tour& t : enumerate_tours(5)) {
    CHECK(tour_cost_quadratic(sum, t) == Rational(2) * tour_cost_quadratic(q, t));
    CHECK(tour_cost_quadratic(skew, t) == Rational(0));
  }
}

TEST_CASE("quadratic matrix storage is sparse, bounded, and ordered") {
  CHECK_THROWS_AS(QuadraticCostMatrix(2), std::invalid_argument);
  CHECK_THROWS_AS(QuadraticCostMatrix(256), std::invalid_argument);
  QuadraticCostMatrix q(4);
  CHECK(q.value(1, 2, 3, 4) == Rational(0));
  q.set(3, 4, 1, 2, Rational(2));
  q.set(1, 2, 3, 4, Rational(1));
  q.add(1, 2, 3, 4, Rational(-1));
  CHECK(q.stored_entries() == 1);  // adding back to zero erases
  q.set(1, 2, 1, 2, Rational(3));
  auto entries = q.entries_sorted();
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].i == 1);
  CHECK(entries[0].k == 1);  // row (1,2) cells precede row (3,4)
  CHECK(entries[1].i == 3);
  CHECK_THROWS_AS(q.set(1, 1, 3, 4, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(q.value(1, 2, 3, 6), std::invalid_argument);
}

TEST_CASE("linear matrix bounds and equality semantics") {
  CHECK_THROWS_AS(LinearCostMatrix(2), std::invalid_argument);
  LinearCostMatrix a(4), b(4);
  a.set(1, 2, Rational(5));
  b.set(1, 2, Rational(5));
  a.set(3, 3, Rational(99));  // diagonal differs; comparison ignores it
  CHECK(a == b);
  b.set(2, 1, Rational(1));
  CHECK_FALSE(a == b);
  CHECK_THROWS_AS(a.at(0, 1), std::out_of_range);
  CHECK_THROWS_AS(a.at(1, 5), std::out_of_range);
}

TEST_CASE("rationals parse exactly and stay canonical") {
  CHECK(Rational::parse("3/6").str() == "1/2");
  CHECK(Rational::parse("-4/2").str() == "-2");
  CHECK(Rational::parse("+5").str() == "5");
  CHECK(Rational::parse("7/-3").str() == "-7/3");
  CHECK(Rational::parse("0/17").str() == "0");
  CHECK(Rational(4, 6).str() == "2/3");
  CHECK(Rational(-4, -6).str() == "2/3");
  CHECK(Rational(-4, 6).str() == "-2/3");

  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1 /2"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("--3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("2/"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);

  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) * Rational(3, 5) == Rational(1, 5));
  CHECK(Rational(1) / Rational(1, 4) == Rational(4));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK(Rational(2, 4).is_integer() == false);
  CHECK(Rational(8, 4).is_integer());
  CHECK(Rational(3, 7).numerator() == 3);
  CHECK(Rational(3, 7).denominator() == 7);
  CHECK(Rational(-5).sign() == -1);
  CHECK(Rational().is_zero());
}

TEST_CASE("seeded rng is reproducible and in-range") {
  SeededRng a(42), b(42);
  for (int i = 0; i < 200; ++i) {
    long x = a.bounded(-9, 9);
    CHECK(x == b.bounded(-9, 9));
    CHECK(x >= -9);
    CHECK(x <= 9);
  }
  std::vector<int> v1{1, 2, 3, 4, 5, 6}, v2 = v1;
  SeededRng s1(7), s2(7);
  s1.shuffle(v1);
  s2.shuffle(v2);
  CHECK(v1 == v2);
  CHECK_THROWS_AS(a.bounded(3, 2), std::invalid_argument);
}
