#include <doctest.h>

#include <cmath>
#include <map>

#include "lovx/error.hpp"
#include "lovx/homology.hpp"
#include "lovx/morse.hpp"
#include "support/oracles.hpp"

using namespace lovx;

namespace {

// Faces sorted as v0 v1 v2 e01 e02 e12.
FaceFunction circle_function() { return {{0, 1, 2, 0.5, 1.5, 3}}; }

AbstractComplex cone(const AbstractComplex& k, int apex) {
  std::vector<Simplex> gens = k.simplices;
  for (Simplex s : k.simplices) {
    s.push_back(apex);
    gens.push_back(s);
  }
  return closure_of(gens);
}

}  // namespace

TEST_CASE("discrete Morse validation") {
  const auto k = SimplicialComplex::circle();
  CHECK(validate_discrete_morse(k, circle_function()).valid);
  const auto constant = validate_discrete_morse(k, {std::vector<double>(6, 1.0)});
  CHECK_FALSE(constant.valid);
  int u = 0, l = 0;
  for (const auto& v : constant.violations) (v.kind == 'U' ? u : l)++;
  CHECK(u == 3);
  CHECK(l == 3);
  std::vector<double> by_dim;
  for (Mask f : k.faces()) by_dim.push_back(popcount(f) + 0.001 * f);
  CHECK(forman_critical(k, {by_dim}).critical.size() == 6);
  CHECK_THROWS_AS(forman_critical(k, {std::vector<double>(6, 1.0)}), InvalidArgument);
}

TEST_CASE("Forman critical cells") {
  const auto k = SimplicialComplex::circle();
  const auto c = forman_critical(k, circle_function());
  CHECK(c.critical == std::vector<int>{0, 5});
  CHECK(c.morse_vector == std::vector<int>{1, 1});

  // Cardinality plus jitter leaves every face of the 2-simplex critical.
  const auto t = SimplicialComplex::full_simplex(3);
  std::vector<double> card;
  for (Mask f : t.faces()) card.push_back(popcount(f) + 1e-3 * f);
  CHECK(forman_critical(t, {card}).morse_vector == std::vector<int>{3, 3, 1});
  // A perfect matching of the simplex leaves a single critical vertex.
  // Faces: v0 v1 v2 e01 e02 e12 t.
  const FaceFunction perfect{{0, 1.2, 2.2, 1.1, 2.1, 3.2, 3.1}};
  const auto p = forman_critical(t, perfect);
  CHECK(p.morse_vector == std::vector<int>{1, 0, 0});
  CHECK(p.critical == std::vector<int>{0});

  const SimplicialComplex two(2, {0b01, 0b10});
  CHECK(forman_critical(two, {{0.0, 1.0}}).morse_vector == std::vector<int>{2});
}

TEST_CASE("complex validation") {
  CHECK_THROWS_AS(SimplicialComplex(3, {0b001, 0b010, 0b011}), InvalidArgument);
  CHECK_THROWS_AS(SimplicialComplex(3, {0b001, 0b010, 0b100, 0b111}), InvalidArgument);
  CHECK(SimplicialComplex(3, {0b111}, true).size() == 7);
  CHECK_THROWS_AS(SimplicialComplex(2, {0b01, 0b01, 0b10}), InvalidArgument);
  CHECK_THROWS_AS((Hypergraph{3, {0b011, 0b011}}.validate()), InvalidArgument);
}

TEST_CASE("order complexes") {
  const auto oc = order_complex(SimplicialComplex::circle());
  CHECK(oc.vertices.size() == 6);
  CHECK(oc.maximal.size() == 6);
  for (const auto& ch : oc.maximal) CHECK(ch.size() == 2);
  CHECK(betti_gf2(oc.abstract()) == std::vector<int>{1, 1});

  const auto pt = order_complex(SimplicialComplex(1, {0b1}));
  CHECK(pt.chains.size() == 1);

  const auto h = order_complex(Hypergraph{3, {0b001, 0b111}});
  CHECK(h.maximal.size() == 1);
  CHECK(h.maximal[0].size() == 2);
  CHECK(h.f_vector() == std::vector<long long>{2, 1});
  CHECK(h.coordinates(1) == std::vector<double>{1, 1, 1});

  CHECK_THROWS_AS(order_complex(SimplicialComplex::full_simplex(10)), ComputationError);
}

TEST_CASE("order complex matches barycentric subdivision") {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const auto k = random_complex(rng.integer(2, 6), rng, rng.integer(1, 4));
    const auto oc = order_complex(k);
    CHECK(oc.f_vector() == oracle::subdivision_counts(k));
    CHECK(betti_gf2(oc.abstract()) == betti_gf2(k.abstract()));
  }
  CHECK(order_complex(SimplicialComplex::full_simplex(3)).f_vector() == std::vector<long long>{7, 12, 6});
}

TEST_CASE("Lovasz extension on the order complex") {
  const auto k = SimplicialComplex::circle();
  const auto f = circle_function();
  CHECK(lovasz_on_order_complex(k, f, std::vector<double>{1, 1, 0}).value == 0.5);
  const auto mid = lovasz_on_order_complex(k, f, std::vector<int>{1, 5}, {0.5, 0.5});
  CHECK(mid.value == (1.0 + 3.0) / 2);
  Rng rng(4);
  const auto oc = order_complex(k);
  for (const auto& ch : oc.maximal) {
    const double a = rng.uniform();
    const auto r = lovasz_on_order_complex(k, f, ch, {a, 1 - a});
    CHECK(std::fabs(r.value - r.lovasz) <= 1e-12);
  }
  CHECK_THROWS_AS(lovasz_on_order_complex(SimplicialComplex(3, {0b011, 0b100}, true),
                                          FaceFunction{{0, 1, 2, 3}}, std::vector<double>{1, 0, 1}),
                  InvalidArgument);
  CHECK_THROWS_AS(lovasz_on_order_complex(k, f, std::vector<double>{2, 0, 0}), InvalidArgument);
}

TEST_CASE("Betti numbers over GF(2)") {
  const auto circle = SimplicialComplex::circle().abstract();
  const auto disc = SimplicialComplex::full_simplex(3).abstract();
  CHECK(betti_gf2(circle) == std::vector<int>{1, 1});
  CHECK(betti_gf2(disc) == std::vector<int>{1, 0, 0});
  CHECK(betti_gf2(disc, circle) == std::vector<int>{0, 0, 1});
  CHECK_THROWS_AS(betti_gf2(circle, disc), InvalidArgument);
  CHECK(reduced_betti_gf2(AbstractComplex{}) == std::vector<int>{1});
  CHECK(reduced_betti_gf2(closure_of({{0}, {1}})) == std::vector<int>{0, 1});
  const auto sphere = closure_of({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  CHECK(betti_gf2(sphere) == std::vector<int>{1, 0, 1});
  // Real projective plane: GF(2) sees the torsion.
  const auto rp2 = closure_of({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                               {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
  CHECK(betti_gf2(rp2) == std::vector<int>{1, 1, 1});
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const auto k = random_complex(5, rng, 3).abstract();
    const auto b = betti_gf2(cone(k, 5));
    CHECK(b[0] == 1);
    for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i] == 0);
  }
}

TEST_CASE("PL criticality on the circle") {
  const auto k = SimplicialComplex::circle();
  const auto f = circle_function();
  const auto v0 = pl_critical(k, f, 0);
  CHECK(v0.critical);
  CHECK(v0.reduced_betti == std::vector<int>{1});
  CHECK(v0.indices == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(v0.agrees);
  const auto e12 = pl_critical(k, f, 5);
  CHECK(e12.indices == std::vector<std::pair<int, int>>{{1, 1}});
  CHECK(e12.agrees);
  const auto v2 = pl_critical(k, f, 2);
  CHECK_FALSE(v2.critical);
  CHECK(v2.agrees);
  CHECK_THROWS_AS(pl_critical(k, {{0, 1, 2, 0.5, 1.5, 0.5}}, 0), InvalidArgument);
}

TEST_CASE("Morse vectors and Euler characteristic") {
  const auto circle = morse_euler_check(SimplicialComplex::circle(), circle_function());
  CHECK(circle.holds);
  CHECK(circle.alternating_sum == 0);
  Rng rng(21);
  const auto simplex = SimplicialComplex::full_simplex(3);
  const auto s = morse_euler_check(simplex, random_morse_function(simplex, rng));
  CHECK(s.holds);
  CHECK(s.chi_complex == 1);
  const SimplicialComplex edges(4, {0b0011, 0b1100}, true);
  const auto e = morse_euler_check(edges, random_morse_function(edges, rng));
  CHECK(e.holds);
  CHECK(e.chi_complex == 2);
}

TEST_CASE("random Morse functions: Forman and PL agree") {
  Rng rng(42);
  int flipped = 0;
  for (int c = 0; c < 5; ++c) {
    const auto k = random_complex(rng.integer(3, 6), rng, rng.integer(2, 4));
    for (int t = 0; t < 20; ++t) {
      const auto f = random_morse_function(k, rng, 30);
      REQUIRE(f.injective());
      REQUIRE(validate_discrete_morse(k, f).valid);
      const auto crit = forman_critical(k, f);
      flipped += static_cast<int>(crit.critical.size()) < k.size();
      for (int i = 0; i < k.size(); ++i) CHECK(pl_critical(k, f, i).agrees);
      // Critical faces sit strictly between all their faces and cofaces.
      for (int s : crit.critical)
        for (int i = 0; i < k.size(); ++i) {
          const Mask a = k.face(i), b = k.face(s);
          if (a != b && (a & b) == b) CHECK(f.values[i] > f.values[s]);
          if (a != b && (a & b) == a) CHECK(f.values[i] < f.values[s]);
        }
      CHECK(morse_euler_check(k, f).holds);
    }
  }
  CHECK(flipped > 50);
}

TEST_CASE("hypergraph Morse functions") {
  const Hypergraph h{3, {0b001, 0b010, 0b111}};
  const auto r = hypergraph_morse(h, {{1, 2, 3}});
  CHECK(r.validation.valid);
  CHECK(r.critical == std::vector<int>{0, 1, 2});
  CHECK(r.height == std::vector<int>{0, 0, 1});
  const auto paired = hypergraph_morse(h, {{4, 2, 3}});
  CHECK(paired.validation.valid);
  CHECK(paired.critical == std::vector<int>{1});
  const auto single = hypergraph_morse(Hypergraph{2, {0b11}}, {{0.0}});
  CHECK(single.critical == std::vector<int>{0});
  CHECK(single.height == std::vector<int>{0});
  // Two sequential partners below with larger values.
  CHECK_FALSE(hypergraph_morse(h, {{5, 6, 3}}).validation.valid);
  // Heights follow the longest chain, not the size.
  const auto chain = hypergraph_morse(Hypergraph{4, {0b0001, 0b0011, 0b1111}}, {{1, 2, 3}});
  CHECK(chain.height == std::vector<int>{0, 1, 2});
}
