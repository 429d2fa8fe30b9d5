#include "lovx/random_fn.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lovx/error.hpp"
#include "lovx/submod.hpp"

namespace lovx {

SetFunction random_function(int n, Mode mode, int k, Rng& rng, double lo, double hi) {
  std::map<Arg, double> t;
  for_each_argument(n, mode, k, 0, static_cast<Mask>(1u << n), [&](std::span<const Mask> a) {
    if (std::any_of(a.begin(), a.end(), [](Mask m) { return m != 0; }))
      t[Arg(a.begin(), a.end())] = rng.uniform(lo, hi);
  });
  return SetFunction::from_table(n, mode, k, std::move(t));
}

SetFunction random_submodular(int n, Rng& rng) {
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.coin(0.6)) w[i][j] = rng.uniform(0, 1);
  std::vector<std::pair<Mask, double>> groups;
  for (int g = 0; g < 2; ++g)
    groups.emplace_back(static_cast<Mask>(rng.integer(1, (1 << n) - 1)), rng.uniform(0, 1));
  std::vector<double> lin = rng.vec(n, -1, 1);
  // concave in |A|: decreasing increments
  std::vector<double> inc(n);
  for (double& v : inc) v = rng.uniform(-1, 1);
  std::sort(inc.begin(), inc.end(), std::greater<>());
  std::vector<double> phi(n + 1, 0.0);
  for (int c = 1; c <= n; ++c) phi[c] = phi[c - 1] + inc[c - 1];

  std::map<Arg, double> t;
  for (Mask a = 1; a < (Mask{1} << n); ++a) {
    double v = phi[popcount(a)];
    for (int i = 0; i < n; ++i) {
      if (a >> i & 1) v += lin[i];
      for (int j = i + 1; j < n; ++j)
        if (((a >> i) ^ (a >> j)) & 1) v += w[i][j];
    }
    for (auto [s, c] : groups)
      if (a & s) v += c;
    t[{a}] = v;
  }
  return SetFunction::from_table(n, Mode::Set, 1, std::move(t));
}

SetFunction random_bisubmodular(int n, Rng& rng) {
  std::vector<std::vector<double>> wm(n, std::vector<double>(n, 0.0)), wp = wm;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (rng.coin(0.5)) wm[i][j] = rng.uniform(0, 1);
      if (rng.coin(0.5)) wp[i][j] = rng.uniform(0, 1);
    }
  std::vector<double> ab = rng.vec(n, 0, 1), lin = rng.vec(n, -1, 1);
  const double cinf = rng.uniform(0, 1);
  std::map<Arg, double> t;
  for_each_argument(n, Mode::Pair, 1, 0, static_cast<Mask>(1u << n), [&](std::span<const Mask> a) {
    if (a[0] == 0 && a[1] == 0) return;
    std::vector<double> x(n, 0.0);
    for (int i = 0; i < n; ++i) x[i] = (a[0] >> i & 1) ? 1.0 : (a[1] >> i & 1) ? -1.0 : 0.0;
    double v = cinf;  // ||x||_inf = 1 on nonzero indicators
    for (int i = 0; i < n; ++i) {
      v += ab[i] * std::fabs(x[i]) + lin[i] * x[i];
      for (int j = i + 1; j < n; ++j)
        v += wm[i][j] * std::fabs(x[i] - x[j]) + wp[i][j] * std::fabs(x[i] + x[j]);
    }
    t[Arg(a.begin(), a.end())] = v;
  });
  return SetFunction::from_table(n, Mode::Pair, 1, std::move(t));
}

SetFunction random_nonsubmodular(int n, Mode mode, Rng& rng) {
  require(mode == Mode::Set || mode == Mode::Pair, "Set or Pair mode expected");
  require(n >= 2, "n >= 2 needed for a violation");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    SetFunction f = random_function(n, mode, 1, rng, 0.0, 1.0).materialized();
    if (!is_submodular(f).holds) return f;
  }
  throw ComputationError("could not draw a non-submodular function");
}

}  // namespace lovx
