#include "lovx/functional.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "lovx/error.hpp"
#include "lovx/lovasz.hpp"

namespace lovx {

void Subdifferential::add(const Subdifferential& o, double scale) {
  if (center.empty()) center.assign(o.center.size(), 0.0);
  for (std::size_t i = 0; i < center.size(); ++i) center[i] += scale * o.center[i];
  for (auto g : o.generators) {
    for (double& v : g) v *= scale;
    generators.push_back(std::move(g));
  }
  for (auto h : o.hulls) {
    for (auto& p : h)
      for (double& v : p) v *= scale;
    hulls.push_back(std::move(h));
  }
}

Subdifferential Functional::subdifferential(std::span<const double> x, double tie_tol) const {
  if (subdiff) return subdiff(x, tie_tol);
  Subdifferential s(dim);
  s.center = subgradient(x);
  return s;
}

Functional Functional::zero(int dim) {
  Functional f;
  f.name = "zero";
  f.dim = dim;
  f.value = [](std::span<const double>) { return 0.0; };
  f.subgradient = [dim](std::span<const double>) { return std::vector<double>(dim, 0.0); };
  f.subdiff = [dim](std::span<const double>, double) { return Subdifferential(dim); };
  return f;
}

Functional Functional::lovasz(const SetFunction& g, std::string name) {
  const SetFunction f = g.materialized();
  Functional out;
  out.name = std::move(name);
  out.dim = f.dim();
  out.value = [f](std::span<const double> x) { return lovasz_eval(f, x); };
  out.subgradient = [f](std::span<const double> x) { return lovasz_subgradient(f, x).g; };
  out.subdiff = [f](std::span<const double> x, double tol) {
    Subdifferential s(f.dim());
    s.hulls.push_back(lovasz_piece_gradients(f, x, tol));
    return s;
  };
  return out;
}

Functional Functional::abs_sum(int dim, std::vector<Term> terms, std::string name) {
  Functional out;
  out.name = std::move(name);
  out.dim = dim;
  auto t = std::make_shared<const std::vector<Term>>(std::move(terms));
  auto dotp = [](const Term& term, std::span<const double> x) {
    double s = 0.0;
    for (auto [i, c] : term.a) s += c * x[i];
    return s;
  };
  out.value = [t, dotp](std::span<const double> x) {
    double v = 0.0;
    for (const Term& term : *t) v += term.w * std::fabs(dotp(term, x));
    return v;
  };
  out.subgradient = [t, dotp, dim](std::span<const double> x) {
    std::vector<double> g(dim, 0.0);
    for (const Term& term : *t) {
      const double d = dotp(term, x);
      const double s = d > 0 ? 1.0 : d < 0 ? -1.0 : 0.0;
      for (auto [i, c] : term.a) g[i] += term.w * s * c;
    }
    return g;
  };
  out.subdiff = [t, dotp, dim](std::span<const double> x, double tol) {
    Subdifferential s(dim);
    for (const Term& term : *t) {
      const double d = dotp(term, x);
      if (std::fabs(d) <= tol) {
        std::vector<double> gen(dim, 0.0);
        for (auto [i, c] : term.a) gen[i] += term.w * c;
        s.generators.push_back(std::move(gen));
      } else {
        for (auto [i, c] : term.a) s.center[i] += term.w * (d > 0 ? c : -c);
      }
    }
    return s;
  };
  return out;
}

Functional Functional::linf(int dim) {
  std::vector<int> all(dim);
  for (int i = 0; i < dim; ++i) all[i] = i;
  return block_linf(dim, {all}, "linf");
}

Functional Functional::block_linf(int dim, std::vector<std::vector<int>> blocks,
                                  std::string name) {
  Functional out;
  out.name = std::move(name);
  out.dim = dim;
  auto b = std::make_shared<const std::vector<std::vector<int>>>(std::move(blocks));
  out.value = [b](std::span<const double> x) {
    double s = 0.0;
    for (const auto& blk : *b) {
      double m = 0.0;
      for (int i : blk) m = std::max(m, std::fabs(x[i]));
      s += m;
    }
    return s;
  };
  out.subgradient = [b, dim](std::span<const double> x) {
    std::vector<double> g(dim, 0.0);
    for (const auto& blk : *b) {
      if (blk.empty()) continue;
      int best = blk[0];
      for (int i : blk)
        if (std::fabs(x[i]) > std::fabs(x[best])) best = i;
      if (x[best] != 0) g[best] += x[best] > 0 ? 1.0 : -1.0;
    }
    return g;
  };
  out.subdiff = [b, dim](std::span<const double> x, double tol) {
    Subdifferential s(dim);
    for (const auto& blk : *b) {
      double m = 0.0;
      for (int i : blk) m = std::max(m, std::fabs(x[i]));
      std::vector<std::vector<double>> hull;
      if (m <= tol) {
        // The whole unit l1 ball of the block.
        for (int i : blk)
          for (double sg : {1.0, -1.0}) {
            std::vector<double> e(dim, 0.0);
            e[i] = sg;
            hull.push_back(e);
          }
        if (hull.empty()) continue;
      } else {
        for (int i : blk)
          if (m - std::fabs(x[i]) <= tol) {
            std::vector<double> e(dim, 0.0);
            e[i] = x[i] > 0 ? 1.0 : -1.0;
            hull.push_back(e);
          }
      }
      s.hulls.push_back(std::move(hull));
    }
    return s;
  };
  return out;
}

Functional Functional::max_entry(int dim) {
  Functional out;
  out.name = "max_entry";
  out.dim = dim;
  out.value = [](std::span<const double> x) { return *std::max_element(x.begin(), x.end()); };
  out.subgradient = [dim](std::span<const double> x) {
    std::vector<double> g(dim, 0.0);
    g[std::max_element(x.begin(), x.end()) - x.begin()] = 1.0;
    return g;
  };
  out.subdiff = [dim](std::span<const double> x, double tol) {
    Subdifferential s(dim);
    const double m = *std::max_element(x.begin(), x.end());
    std::vector<std::vector<double>> hull;
    for (int i = 0; i < dim; ++i)
      if (m - x[i] <= tol) {
        std::vector<double> e(dim, 0.0);
        e[i] = 1.0;
        hull.push_back(e);
      }
    s.hulls.push_back(std::move(hull));
    return s;
  };
  return out;
}

Functional Functional::scaled(const Functional& f, double c) {
  Functional out = f;
  out.name = std::to_string(c) + "*" + f.name;
  out.value = [f, c](std::span<const double> x) { return c * f.value(x); };
  out.subgradient = [f, c](std::span<const double> x) {
    auto g = f.subgradient(x);
    for (double& v : g) v *= c;
    return g;
  };
  out.subdiff = [f, c](std::span<const double> x, double tol) {
    Subdifferential s(f.dim);
    s.add(f.subdifferential(x, tol), c);
    return s;
  };
  return out;
}

Functional Functional::sum(const Functional& a, const Functional& b) {
  require(a.dim == b.dim, "functional dimensions differ");
  Functional out;
  out.name = a.name + "+" + b.name;
  out.dim = a.dim;
  out.degree = a.degree;
  out.value = [a, b](std::span<const double> x) { return a.value(x) + b.value(x); };
  out.subgradient = [a, b](std::span<const double> x) {
    auto g = a.subgradient(x);
    auto h = b.subgradient(x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += h[i];
    return g;
  };
  out.subdiff = [a, b](std::span<const double> x, double tol) {
    Subdifferential s(a.dim);
    s.add(a.subdifferential(x, tol), 1.0);
    s.add(b.subdifferential(x, tol), 1.0);
    return s;
  };
  return out;
}

}  // namespace lovx
