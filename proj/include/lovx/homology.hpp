#pragma once

#include <cstdint>
#include <vector>

namespace lovx {

// Sorted vertex list.
using Simplex = std::vector<int>;

// Finite abstract simplicial complex given by all of its nonempty simplices.
struct AbstractComplex {
  std::vector<Simplex> simplices;

  int dimension() const;  // -1 when empty
  bool closed() const;
  bool contains(const Simplex& s) const;
  // Face counts by dimension.
  std::vector<long long> f_vector() const;
  long long euler_characteristic() const;
};

// Downward closure of a generating family; output sorted by (size, lex).
AbstractComplex closure_of(const std::vector<Simplex>& generators);

// Rank over the two-element field; each row is a bitset of `cols` bits.
int gf2_rank(std::vector<std::vector<std::uint64_t>> rows, int cols);

// Betti numbers beta_0..beta_d of H_*(K) over GF(2).
std::vector<int> betti_gf2(const AbstractComplex& k);
// Relative Betti numbers of (K, L); L must be a closed subcomplex of K.
std::vector<int> betti_gf2(const AbstractComplex& k, const AbstractComplex& sub);
// Reduced Betti numbers; entry j is degree j - 1, so the empty complex gives {1}.
std::vector<int> reduced_betti_gf2(const AbstractComplex& k);

}  // namespace lovx
