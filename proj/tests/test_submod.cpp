#include <cmath>

#include "doctest.h"
#include "lovx/error.hpp"
#include "lovx/random_fn.hpp"
#include "lovx/submod.hpp"

using namespace lovx;

TEST_CASE("cut function is submodular, its negation is not") {
  // K3
  auto cut = SetFunction::set(3, [](Mask a) {
    const int c = popcount(a);
    return double(c * (3 - c));
  });
  CHECK(is_submodular(cut).holds);
  auto neg = scale(cut, -1);
  auto r = is_submodular(neg);
  CHECK_FALSE(r.holds);
  CHECK(r.violation > 0);
}

TEST_CASE("pair lattice operations") {
  Arg a{0b001, 0b010}, b{0b010, 0b100};
  CHECK(lattice_join(a, b, Mode::Pair) == Arg{0b001, 0b100});
  CHECK(lattice_meet(a, b, Mode::Pair) == Arg{0, 0});
}

TEST_CASE("continuous lattices") {
  std::vector<double> x{1, -1, 2}, y{0.5, -3, -1};
  CHECK(lattice_join(x, y, Lattice::BS2) == std::vector<double>{1, -3, 0});
  CHECK(lattice_meet(x, y, Lattice::BS2) == std::vector<double>{0.5, -1, 0});
  CHECK(lattice_join(x, y, Lattice::S2) == std::vector<double>{1, -1, 2});
}

TEST_CASE("min is supermodular, its negation submodular") {
  auto mn = [](std::span<const double> x) { return std::min(x[0], x[1]); };
  auto negmn = [](std::span<const double> x) { return -std::min(x[0], x[1]); };
  CHECK_FALSE(is_continuous_submodular(mn, 2, Lattice::S2, 1000, 1).holds);
  CHECK(is_continuous_submodular(negmn, 2, Lattice::S2, 1000, 1).holds);
}

TEST_CASE("family must be closed") {
  auto f = SetFunction::set(2, [](Mask a) { return double(popcount(a)); });
  CHECK_THROWS_AS(is_submodular(f, Family::explicit_list({{0b01}, {0b10}})), InvalidArgument);
  CHECK(is_submodular(f, Family::explicit_list({{0b00}, {0b01}, {0b10}, {0b11}})).holds);
}

TEST_CASE("generators") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const int n = rng.integer(2, 5);
    CHECK(is_submodular(random_submodular(n, rng)).holds);
    CHECK(is_submodular(random_bisubmodular(n, rng)).holds);
    CHECK_FALSE(is_submodular(random_nonsubmodular(n, Mode::Set, rng)).holds);
    CHECK_FALSE(is_submodular(random_nonsubmodular(n, Mode::Pair, rng)).holds);
  }
}

TEST_CASE("parallel and serial checks agree, local check on larger n") {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    auto f = random_nonsubmodular(4, Mode::Pair, rng);
    auto a = is_submodular(f), b = serial::is_submodular(f);
    CHECK(a.holds == b.holds);
    CHECK(a.a == b.a);
    CHECK(a.b == b.b);
  }
  auto big = random_submodular(14, rng);
  CHECK(is_submodular(big).holds);
  CHECK_FALSE(is_submodular(big).exhaustive);
  auto bad = big + SetFunction::set(14, [](Mask a) { return a == 0b11 ? 5.0 : 0.0; });
  CHECK_FALSE(is_submodular(bad).holds);
  CHECK_FALSE(serial::is_submodular(bad).holds);
}

TEST_CASE("three-way agreement") {
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    const int n = rng.integer(2, 4);
    for (auto f : {random_submodular(n, rng), random_nonsubmodular(n, Mode::Set, rng),
                   random_bisubmodular(n, rng), random_nonsubmodular(n, Mode::Pair, rng)}) {
      auto r = check_convexity_equivalence(f, 500, 3);
      CHECK(r.agree());
    }
  }
  // k-way on the nonnegative orthant
  auto kf = random_function(2, Mode::KWay, 2, rng);
  CHECK(check_convexity_equivalence(kf, 500, 4).agree());
}

TEST_CASE("characterization of Lovasz extensions") {
  Rng rng(13);
  auto f = random_submodular(4, rng);
  auto F = [&f](std::span<const double> x) { return lovasz_eval(f, x); };
  auto rep = check_characterization(F, Mode::Set, 4, 300, 1);
  CHECK(rep.characterized);
  CHECK(rep.reconstruction_matches);
  CHECK(rep.reconstructed_submodular);

  auto l2 = [](std::span<const double> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  };
  auto rep2 = check_characterization(l2, Mode::Set, 3, 300, 1);
  bool como = true;
  for (auto& c : rep2.conditions)
    if (c.name == "comonotonic_additivity") como = c.passed;
  CHECK_FALSE(como);
  CHECK_FALSE(rep2.reconstruction_matches);

  auto b = random_bisubmodular(3, rng);
  auto G = [&b](std::span<const double> x) { return lovasz_eval(b, x); };
  auto rep3 = check_characterization(G, Mode::Pair, 3, 300, 2);
  CHECK(rep3.characterized);
  CHECK(rep3.reconstruction_matches);
  for (auto& c : rep3.conditions) {
    INFO(c.name << " " << c.witness);
    CHECK(c.passed);
  }
}

TEST_CASE("literal BS2 rejects a bisubmodular extension") {
  // cut(A)+cut(B) on one edge: extension |x0 - x1|, convex
  auto F = [](std::span<const double> x) { return std::fabs(x[0] - x[1]); };
  std::vector<double> x{1, 1}, y{-0.5, 0};
  const double lhs = F(x) + F(y);
  const double rhs = F(lattice_join(x, y, Lattice::BS2)) + F(lattice_meet(x, y, Lattice::BS2));
  CHECK(lhs < rhs);
  CHECK_FALSE(is_continuous_submodular(F, 2, Lattice::BS2Unrestricted, 2000, 1).holds);
  CHECK(is_continuous_submodular(F, 2, Lattice::BS2, 2000, 1).holds);
}
