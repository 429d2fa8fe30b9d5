#include <cmath>

#include "doctest.h"
#include "lovx/error.hpp"
#include "lovx/random.hpp"
#include "lovx/setfun.hpp"

using namespace lovx;

namespace {

SetFunction random_set(int n, Rng& rng) {
  std::map<Arg, double> t;
  for (Mask a = 1; a < (Mask{1} << n); ++a) t[{a}] = rng.uniform(-1, 2);
  return SetFunction::from_table(n, Mode::Set, 1, t);
}

bool submodular(const SetFunction& f) {
  const Mask top = Mask{1} << f.n();
  for (Mask a = 0; a < top; ++a)
    for (Mask b = 0; b < top; ++b)
      if (f({a}) + f({b}) < f({a | b}) + f({a & b}) - 1e-9) return false;
  return true;
}

}  // namespace

TEST_CASE("table lookups, defaults and strictness") {
  std::map<Arg, double> t{{{0b01}, 1.5}, {{0b11}, 2.0}};
  auto f = SetFunction::from_table(2, Mode::Set, 1, t, 0.25);
  CHECK(f({0b01}) == 1.5);
  CHECK(f({0b10}) == 0.25);
  CHECK(f({0}) == 0.0);
  auto g = SetFunction::from_table(2, Mode::Set, 1, t, 0.0, true);
  CHECK_THROWS_AS(g({0b10}), InvalidArgument);
  CHECK_THROWS_AS(f({0b100}), InvalidArgument);
  CHECK_THROWS_AS(f({1, 2}), InvalidArgument);
}

TEST_CASE("pair arguments must be disjoint") {
  auto f = SetFunction::pair(3, [](Mask a, Mask b) { return popcount(a) - popcount(b); });
  CHECK(f({0b001, 0b110}) == -1);
  CHECK_THROWS_AS(f({0b011, 0b010}), InvalidArgument);
}

TEST_CASE("argument enumeration counts") {
  long long c = 0;
  for_each_argument(3, Mode::Pair, 1, 0, 8, [&](std::span<const Mask>) { ++c; });
  CHECK(c == 27);
  c = 0;
  for_each_argument(2, Mode::KWayPair, 2, 0, 4, [&](std::span<const Mask>) { ++c; });
  CHECK(c == 81);
  // lexicographic order
  Arg prev;
  bool sorted = true;
  for_each_argument(3, Mode::Pair, 1, 0, 8, [&](std::span<const Mask> a) {
    Arg cur(a.begin(), a.end());
    if (!prev.empty() && !(prev < cur)) sorted = false;
    prev = cur;
  });
  CHECK(sorted);
}

TEST_CASE("cheeger ratio on P3 by enumeration") {
  // edges 0-1, 1-2
  auto cut = SetFunction::set(3, [](Mask a) {
    return double(((a & 1) != 0) != ((a >> 1 & 1) != 0)) + double(((a >> 1 & 1) != 0) != ((a >> 2 & 1) != 0));
  });
  auto bal = SetFunction::set(3, [](Mask a) { return double(std::min(popcount(a), 3 - popcount(a))); });
  auto r = enumerate_ratio_optimum(cut, bal);
  CHECK(r.value == 1.0);
  CHECK(r.arg == Arg{0b001});
  auto m = enumerate_ratio_optimum(cut, bal, Family::all(), Sense::Max);
  CHECK(m.value == 2.0);
  CHECK(m.arg == Arg{0b010});
}

TEST_CASE("parallel and serial enumeration agree") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(2, 6);
    auto f = random_set(n, rng);
    auto g = SetFunction::set(n, [n](Mask a) { return double(popcount(a) * (n - popcount(a))); });
    for (Sense s : {Sense::Min, Sense::Max}) {
      auto a = enumerate_ratio_optimum(f, g, Family::all(), s);
      auto b = serial::enumerate_ratio_optimum(f, g, Family::all(), s);
      CHECK(a.value == b.value);
      CHECK(a.arg == b.arg);
      CHECK(a.feasible == b.feasible);
    }
  }
}

TEST_CASE("enumeration guards and empty support") {
  auto big = SetFunction::set(27, [](Mask) { return 1.0; });
  CHECK_THROWS_AS(enumerate_ratio_optimum(big, big), ComputationError);
  auto f = SetFunction::set(3, [](Mask) { return 1.0; });
  auto z = SetFunction::set(3, [](Mask) { return 0.0; });
  CHECK_THROWS_AS(enumerate_ratio_optimum(f, z), ComputationError);
  auto neg = SetFunction::set(3, [](Mask a) { return a == 3 ? -1.0 : 1.0; });
  CHECK_THROWS_AS(enumerate_ratio_optimum(f, neg), InvalidArgument);
}

TEST_CASE("explicit families restrict the search") {
  auto f = SetFunction::set(3, [](Mask a) { return double(popcount(a)); });
  auto one = SetFunction::set(3, [](Mask) { return 1.0; });
  auto r = enumerate_ratio_optimum(f, one, Family::explicit_list({{0b110}, {0b111}}));
  CHECK(r.value == 2.0);
  CHECK(r.arg == Arg{0b110});
}

TEST_CASE("dc split gives two submodular parts") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(1, 5);
    auto f = random_set(n, rng);
    auto dc = dc_decompose(f);
    CHECK(dc.delta_g == 2.0);
    CHECK(submodular(dc.f1));
    CHECK(submodular(dc.f2));
    for (Mask a = 0; a < (Mask{1} << n); ++a)
      CHECK(dc.f1({a}) - dc.f2({a}) == doctest::Approx(f({a})).epsilon(1e-12));
  }
}

TEST_CASE("dc split on larger ground sets uses local pairs") {
  Rng rng(3);
  auto f = random_set(13, rng);
  auto dc = dc_decompose(f);
  CHECK_FALSE(dc.exhaustive);
  // spot check submodularity on random pairs
  for (int t = 0; t < 2000; ++t) {
    Mask a = rng.engine()() & full_mask(13), b = rng.engine()() & full_mask(13);
    CHECK(dc.f1({a}) + dc.f1({b}) >= dc.f1({a | b}) + dc.f1({a & b}) - 1e-9);
  }
}
