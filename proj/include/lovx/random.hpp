#pragma once

#include <cstdint>
#include <algorithm>
#include <random>
#include <vector>

namespace lovx {

// Thin wrapper so every randomized routine draws from an explicit seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double normal(double sd = 1.0) { return std::normal_distribution<double>(0.0, sd)(eng_); }
  bool coin(double p = 0.5) { return uniform() < p; }

  std::vector<double> vec(int d, double lo, double hi) {
    std::vector<double> v(d);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }

  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), eng_);
    return p;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// Seed for the i-th independent stream derived from a base seed.
inline std::uint64_t stream_seed(std::uint64_t base, std::uint64_t i) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace lovx
