#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lovx/homology.hpp"
#include "lovx/random.hpp"
#include "lovx/setfun.hpp"

namespace lovx {

// Faces are vertex bitmasks, kept sorted by (size, mask); all singletons present.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  // Validates downward closure unless close is set, in which case it is completed.
  SimplicialComplex(int n, std::vector<Mask> faces, bool close = false);

  static SimplicialComplex full_simplex(int n);
  static SimplicialComplex circle();  // boundary of a triangle

  int n() const { return n_; }
  int size() const { return static_cast<int>(faces_.size()); }
  const std::vector<Mask>& faces() const { return faces_; }
  Mask face(int i) const { return faces_[i]; }
  int index_of(Mask f) const;  // -1 if absent
  int dimension() const;
  AbstractComplex abstract() const;

 private:
  int n_ = 0;
  std::vector<Mask> faces_;
};

// Edges are arbitrary distinct nonempty vertex sets, in the given order.
struct Hypergraph {
  int n = 0;
  std::vector<Mask> edges;
  void validate() const;
};

// Value per face (or hyperedge), aligned with the owning family's order.
struct FaceFunction {
  std::vector<double> values;
  bool injective() const;
};

struct MorseViolation {
  int face = 0;
  char kind = 'U';  // 'U' cofaces with f <= f(face), 'L' faces with f >= f(face)
  int count = 0;
};

struct MorseValidation {
  bool valid = true;
  std::vector<MorseViolation> violations;
};

MorseValidation validate_discrete_morse(const SimplicialComplex& k, const FaceFunction& f);

struct FormanCritical {
  std::vector<int> critical;  // face indices
  std::vector<int> index;     // dimension of each critical face
  std::vector<int> morse_vector;
};
FormanCritical forman_critical(const SimplicialComplex& k, const FaceFunction& f);

// Vertices are the faces (or hyperedges); simplices are the inclusion chains.
struct OrderComplex {
  int n = 0;                         // ambient coordinates
  std::vector<Mask> vertices;        // vertex i realized at 1_{vertices[i]}
  std::vector<std::vector<int>> chains;  // each ordered by strict inclusion
  std::vector<std::vector<int>> maximal;

  std::vector<double> coordinates(int v) const;
  AbstractComplex abstract() const;
  std::vector<long long> f_vector() const;
};

inline constexpr long long kMaxChains = 1000000;
OrderComplex order_complex(const SimplicialComplex& k);
OrderComplex order_complex(const Hypergraph& h);

struct OrderComplexValue {
  double value = 0.0;    // sum of lambda_sigma f(sigma)
  double lovasz = 0.0;   // extension of f (0 off the complex) at the point
  std::vector<int> chain;
  std::vector<double> lambda;
};
// x must be sum lambda_sigma 1_sigma over a chain of faces, lambda >= 0, sum <= 1.
OrderComplexValue lovasz_on_order_complex(const SimplicialComplex& k, const FaceFunction& f,
                                          const std::vector<double>& x);
// Same point given by a chain of face indices and its coefficients.
OrderComplexValue lovasz_on_order_complex(const SimplicialComplex& k, const FaceFunction& f,
                                          const std::vector<int>& chain, const std::vector<double>& lambda);

struct PlCritical {
  bool critical = false;
  std::vector<int> reduced_betti;                  // of the lower link; entry j is degree j - 1
  std::vector<std::pair<int, int>> indices;        // (index, multiplicity)
  bool forman_critical = false;
  bool agrees = false;  // same criticality and, if critical, index = dim
};
PlCritical pl_critical(const SimplicialComplex& k, const FaceFunction& f, int face);

struct MorseEulerReport {
  std::vector<int> morse_vector;
  std::vector<int> pl_vector;
  long long alternating_sum = 0;
  long long chi_complex = 0;
  long long chi_order = 0;
  bool holds = false;
};
MorseEulerReport morse_euler_check(const SimplicialComplex& k, const FaceFunction& f);

struct HypergraphMorse {
  MorseValidation validation;
  std::vector<int> critical;
  std::vector<int> height;  // per edge
};
HypergraphMorse hypergraph_morse(const Hypergraph& h, const FaceFunction& f);

// Downward closure of a few random facets on n vertices, plus all singletons.
SimplicialComplex random_complex(int n, Rng& rng, int facets = 3);
// Injective discrete Morse function: dimension plus jitter, with random
// face/coface pairs flipped while the cardinality bounds allow it.
FaceFunction random_morse_function(const SimplicialComplex& k, Rng& rng, int attempts = 20);

}  // namespace lovx
