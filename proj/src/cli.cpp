#include "lovx/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "lovx/graphinv.hpp"
#include "lovx/laplace1.hpp"
#include "lovx/lovasz.hpp"
#include "lovx/morse.hpp"
#include "lovx/random.hpp"
#include "lovx/solvers.hpp"
#include "lovx/submod.hpp"

namespace lovx::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 42;
  double tol = 1e-9;
  int trials = -1;
  int restarts = -1;
  std::string out;

  std::string action;
  std::string function, graph, complex, hypergraph, candidate, f_file, g_file;
  std::string point, shape, objective, trace, terminals, face;
  std::string method = "discrete";
  std::string variant;
  std::string sense = "min";
  double mu = std::numeric_limits<double>::quiet_NaN();
  double noise = 0.0;
  int k = 2;
  int profile_k = 1;
  int samples = 0;
  int max_iter = -1;
  bool close = false;
};

// Input files are folded into the digest in canonical form.
class Inputs {
 public:
  Json load(const std::string& path) {
    Json j = read_json_file(path);
    material_ += path + "\n" + j.dump() + "\n";
    return j;
  }
  void note(const std::string& s) { material_ += s + "\n"; }
  std::string digest() const { return sha256_hex(material_); }

 private:
  std::string material_;
};

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json vec_json(std::span<const double> x) {
  Json a = Json::array();
  for (double v : x) a.push_back(number(v));
  return a;
}

Json edge_json(const Edge& e) { return Json::array({e.first, e.second}); }

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg;
  cfg.seed = o.seed;
  cfg.tol = o.tol;
  if (o.restarts > 0) cfg.restarts = o.restarts;
  if (o.max_iter > 0) cfg.max_iter = o.max_iter;
  return cfg;
}

std::string need(const std::string& v, const char* flag) {
  if (v.empty()) throw UsageError(std::string("missing required option ") + flag);
  return v;
}

std::vector<double> load_point(const Options& o, Inputs& in, const SetFunction& f) {
  std::vector<double> x = parse_point(need(o.point, "--point"));
  in.note("point " + vec_json(x).dump());
  if (!o.shape.empty()) {
    const auto [k, n] = parse_shape(o.shape);
    if (k != f.k() || n != f.n())
      throw ParseError("shape", "shape does not match the function (k=" + std::to_string(f.k()) +
                                    ", n=" + std::to_string(f.n()) + ")");
  }
  if (static_cast<int>(x.size()) != f.dim())
    throw ParseError("point", "expected " + std::to_string(f.dim()) + " coordinates");
  return x;
}

Json property_json(const PropertyResult& p) {
  return {{"name", p.name}, {"applicable", p.applicable}, {"passed", p.passed},
          {"trials", p.trials}, {"worst", number(p.worst)}, {"witness", p.witness}};
}

Json trace_json(const SolverTrace& t) {
  Json its = Json::array();
  for (const auto& e : t.iterations) its.push_back({{"k", e.k}, {"r", number(e.r)}, {"status", e.status}});
  return its;
}

void write_trace_lines(const std::string& file, const SolverTrace& t) {
  if (file.empty()) return;
  std::ofstream out(file);
  if (!out) throw ParseError("trace", "cannot write " + file);
  for (const auto& e : t.iterations)
    out << Json{{"k", e.k}, {"r", number(e.r)}, {"x", vec_json(e.x)}, {"status", e.status}}.dump() << "\n";
}

// ------------------------------------------------------------- eval / subgrad

Json cmd_eval(const Options& o, Inputs& in) {
  const SetFunction f = parse_function(in.load(need(o.function, "--function")));
  const auto x = load_point(o, in, f);
  return {{"mode", mode_name(f.mode())}, {"n", f.n()}, {"k", f.k()}, {"point", vec_json(x)},
          {"in_domain", in_domain(f, x)}, {"value", number(lovasz_eval(f, x))}};
}

Json cmd_subgrad(const Options& o, Inputs& in) {
  const SetFunction f = parse_function(in.load(need(o.function, "--function")));
  const auto x = load_point(o, in, f);
  const Subgradient s = lovasz_subgradient(f, x);
  Json pieces = Json::array();
  for (const auto& g : lovasz_piece_gradients(f, x, 1e-12, 2000)) pieces.push_back(vec_json(g));
  return {{"point", vec_json(x)}, {"value", number(s.value)}, {"subgradient", vec_json(s.g)},
          {"piece_gradients", pieces}};
}

// ------------------------------------------------------------- check

Json cmd_check(const Options& o, Inputs& in) {
  if (o.action == "catalog") {
    const Graph g = parse_graph(in.load(need(o.graph, "--graph")));
    const int trials = o.trials > 0 ? o.trials : 500;
    Rng rng(o.seed);
    Json rows = Json::array();
    bool all = true;
    for (const auto& name : catalog_names()) {
      const CatalogRow row = functional_catalog(name, g);
      double worst = 0.0;
      for (int t = 0; t < trials; ++t) {
        Vec x = rng.vec(row.discrete.dim(), -1.0, 1.0);
        for (double& v : x)
          if (rng.coin(0.2)) v = std::round(v);
        worst = std::max(worst, std::fabs(row.closed_form(x) - lovasz_eval(row.discrete, x)));
      }
      const bool ok = worst <= 1e-10;
      all = all && ok;
      rows.push_back({{"row", name}, {"description", row.description}, {"max_abs_diff", worst}, {"passed", ok}});
    }
    return {{"check", "catalog"}, {"trials", trials}, {"rows", rows}, {"all_passed", all}};
  }
  const SetFunction f = parse_function(in.load(need(o.function, "--function")));
  const int trials = o.trials > 0 ? o.trials : 1000;
  if (o.action == "structural") {
    StructuralOptions opt;
    opt.trials = trials;
    opt.seed = o.seed;
    opt.tol = o.tol;
    const StructuralReport r = check_structural(f, opt);
    Json props = Json::array();
    for (const auto& p : r.properties) props.push_back(property_json(p));
    return {{"check", "structural"}, {"all_passed", r.all_passed()}, {"properties", props}};
  }
  if (o.action == "submodularity") {
    const SubmodularityResult s = is_submodular(f);
    Json out{{"check", "submodularity"},
             {"submodular", s.holds},
             {"pairs", s.pairs},
             {"exhaustive", s.exhaustive}};
    if (!s.holds) {
      out["witness"] = {{"a", arg_to_json(s.a, f.mode(), f.n())}, {"b", arg_to_json(s.b, f.mode(), f.n())},
                        {"violation", s.violation}};
    }
    if (f.mode() != Mode::KWayPair) {
      const ConvexityEquivalence e = check_convexity_equivalence(f, trials, o.seed, o.tol);
      out["equivalence"] = {{"discrete_submodular", e.discrete_submodular},
                            {"convex", e.convex},
                            {"continuous_submodular", e.continuous_submodular},
                            {"agree", e.agree()}};
      if (!e.convex) out["equivalence"]["convexity_witness"] = {vec_json(e.convexity_x), vec_json(e.convexity_y)};
    }
    return out;
  }
  // characterization
  if (f.mode() != Mode::Set && f.mode() != Mode::Pair)
    throw ParseError("mode", "characterization needs a set or pair function");
  const auto F = [f](std::span<const double> x) { return lovasz_eval(f, x); };
  const CharacterizationReport r = check_characterization(F, f.mode(), f.n(), trials, o.seed, o.tol);
  Json conds = Json::array();
  for (const auto& p : r.conditions) conds.push_back(property_json(p));
  return {{"check", "characterization"}, {"conditions", conds}, {"characterized", r.characterized},
          {"reconstruction_matches", r.reconstruction_matches},
          {"reconstructed_submodular", r.reconstructed_submodular}};
}

// ------------------------------------------------------------- solve

struct Problem {
  FractionalProblem prob;
  std::string label;
  int n = 0;
};

Problem build_problem(const Options& o, Inputs& in) {
  const Sense sense = o.sense == "max" ? Sense::Max : Sense::Min;
  if (!o.f_file.empty() || !o.g_file.empty()) {
    const SetFunction f = parse_function(in.load(need(o.f_file, "--f")));
    const SetFunction g = parse_function(in.load(need(o.g_file, "--g")));
    Problem p{FractionalProblem::ratio(Functional::lovasz(f, "f"), Functional::lovasz(g, "g")), "explicit", f.n()};
    p.prob.sense = sense;
    if (is_signed(f.mode())) p.prob.rounding = signed_threshold_candidates;
    else if (f.mode() == Mode::Set) p.prob.rounding = threshold_candidates;
    return p;
  }
  const Graph g = parse_graph(in.load(need(o.graph, "--graph")));
  const std::string obj = need(o.objective, "--objective");
  if (obj == "alpha") return {independence_problem(g), obj, g.n()};
  if (obj == "gamma") return {chromatic_problem(g), obj, g.n()};
  if (obj.rfind("cheeger:", 0) == 0) return {cheeger_problem(g, parse_cheeger_variant(obj.substr(8))), obj, g.n()};
  throw UsageError("unknown objective '" + obj + "' (alpha, gamma, cheeger:<variant>)");
}

Json solve_json(const SolveResult& s) {
  return {{"r", number(s.r)},
          {"x", vec_json(s.x)},
          {"status", s.trace.status},
          {"converged", s.trace.converged},
          {"eigen_residual", number(s.trace.eigen_residual)},
          {"iterations", s.trace.iterations.size()},
          {"trace", trace_json(s.trace)}};
}

Json cmd_solve(const Options& o, Inputs& in) {
  if (o.action == "dinkelbach") {
    const SetFunction f = parse_function(in.load(need(o.f_file, "--f")));
    const SetFunction g = parse_function(in.load(need(o.g_file, "--g")));
    const DiscreteRatioResult r =
        dinkelbach_discrete(f, g, Family::nonempty(), o.sense == "max" ? Sense::Max : Sense::Min);
    if (!o.trace.empty()) {
      std::ofstream t(o.trace);
      for (std::size_t i = 0; i < r.trace.size(); ++i) t << Json{{"k", i}, {"r", r.trace[i]}}.dump() << "\n";
    }
    return {{"solver", "dinkelbach"}, {"r", r.r}, {"arg", arg_to_json(r.arg, f.mode(), f.n())},
            {"iterations", r.iterations}, {"trace", r.trace}};
  }
  Problem p = build_problem(o, in);
  const SolverConfig cfg = solver_config(o);
  SolveResult s;
  if (o.action == "ipsd") {
    const IpsdVariant v = o.variant == "ball" ? IpsdVariant::Ball : IpsdVariant::Normalized;
    if (!o.variant.empty() && o.variant != "ball" && o.variant != "normalized")
      throw UsageError("--variant must be ball or normalized");
    s = mixed_ipsd_multistart(p.prob, cfg, v);
  } else {
    SolverConfig c = cfg;
    if (o.max_iter <= 0) c.max_iter = 300;
    s = stochastic_subgradient_ratio(p.prob, c, o.noise);
  }
  write_trace_lines(o.trace, s.trace);
  Json out = solve_json(s);
  out["solver"] = o.action;
  out["objective"] = p.label;
  if (p.label == "gamma") out["gamma_estimate"] = number(double(p.n) * p.n - s.r);
  return out;
}

// ------------------------------------------------------------- invariant

Json invariant_json(const InvariantResult& r, const Options& o) {
  Json out{{"name", r.name}, {"value", number(r.value)}, {"witness", r.witness},
           {"indicator", vec_json(r.indicator)}, {"certified", r.certified}};
  if (!r.note.empty()) out["note"] = r.note;
  if (r.continuous) {
    out["continuous"] = number(*r.continuous);
    out["gap"] = number(*r.continuous - r.value);
  }
  if (o.samples > 0 && r.form) {
    const OptimumCheck c = check_discrete_continuous(r, o.samples, o.seed, o.tol);
    out["optimum_check"] = {{"at_indicator", number(c.at_indicator)}, {"best_sampled", number(c.best_sampled)},
                            {"samples", c.samples}, {"indicator_exact", c.indicator_exact},
                            {"never_beaten", c.never_beaten}};
  }
  return out;
}

SetFunction cardinality(int n) {
  return SetFunction::set(n, [](Mask a) { return static_cast<double>(popcount(a)); });
}

Json cmd_invariant(const Options& o, Inputs& in) {
  const Graph g = parse_graph(in.load(need(o.graph, "--graph")));
  const Method m = parse_method(o.method);
  const SolverConfig cfg = solver_config(o);
  const std::string& a = o.action;
  if (a == "alpha") return invariant_json(independence_number(g, m, cfg), o);
  if (a == "gamma") return invariant_json(chromatic_number(g, m, cfg), o);
  if (a == "maxkcut") return invariant_json(max_kcut(g, o.k, m, cfg), o);
  if (a == "matching") return invariant_json(matching_number(g, m, cfg), o);
  if (a == "k-alpha") return invariant_json(k_independence_number(g, o.k), o);
  if (a == "cheeger")
    return invariant_json(
        cheeger(g, parse_cheeger_variant(o.variant.empty() ? "classic" : o.variant), o.profile_k, m, cfg), o);
  if (a == "cheeger-like") {
    const CheegerLike c = cheeger_like(g, o.trials > 0 ? o.trials : 1000, o.seed);
    return {{"name", "cheeger_like"},
            {"value", c.max_form},
            {"argmax", edge_json(c.argmax)},
            {"bipartite_form", number(c.bipartite_form)},
            {"continuous_at_argmax", c.continuous_at_argmax},
            {"continuous_best_sampled", c.continuous_best_sampled},
            {"companion", c.companion},
            {"argmin", edge_json(c.argmin)},
            {"companion_at_argmin", c.companion_at_argmin},
            {"companion_best_sampled", c.companion_best_sampled}};
  }
  if (a == "poincare") {
    const PoincareReport r = poincare_profile_check(g, cfg, o.tol);
    return {{"name", "poincare"}, {"h_int", r.h_int}, {"h_ext", r.h_ext}, {"h_ver", r.h_ver},
            {"lower", r.lower}, {"p1_at_hver", r.p1_at_hver}, {"p1_best", r.p1_best}, {"holds", r.holds}};
  }
  const SetFunction f = o.function.empty() ? cardinality(g.n()) : parse_function(in.load(o.function));
  if (f.mode() != Mode::Set || f.n() != g.n()) throw ParseError("", "function must be a set function on the graph's vertices");
  RelaxationResult r;
  if (a == "vertex-cover") {
    r = submodular_vertex_cover(g, f, cfg);
  } else {
    const auto t = parse_int_list(need(o.terminals, "--terminals"));
    in.note("terminals " + o.terminals);
    r = multiway_partition(f, t, cfg);
  }
  return {{"name", a}, {"value", r.exact}, {"witness", r.witness}, {"relaxation", number(r.relaxation)},
          {"x", vec_json(r.x)}, {"submodular", r.submodular}};
}

// ------------------------------------------------------------- laplace

Json certificate_json(const EigenCertificate& c) {
  Json z = Json::array(), cs = Json::array(), s = Json::array();
  for (const auto& [e, v] : c.z) z.push_back({{"edge", edge_json(e)}, {"value", v}});
  for (const auto& [i, v] : c.c) cs.push_back({{"vertex", i}, {"value", v}});
  for (const auto& [i, v] : c.s) s.push_back({{"vertex", i}, {"value", v}});
  Json out{{"feasible", c.feasible}, {"exact", c.exact}, {"variables", c.variables}};
  if (c.feasible) out["certificate"] = {{"z", z}, {"c", cs}, {"s", s}};
  return out;
}

Json cmd_laplace(const Options& o, Inputs& in) {
  const Graph g = parse_graph(in.load(need(o.graph, "--graph")));
  std::vector<double> x;
  double mu = o.mu;
  if (!o.candidate.empty()) {
    const EigenCandidate c = parse_candidate(in.load(o.candidate), g.n());
    x = c.x;
    mu = c.mu;
  } else {
    x = parse_point(need(o.point, "--point or --candidate"));
    in.note("point " + vec_json(x).dump());
    if (static_cast<int>(x.size()) != g.n()) throw ParseError("point", "expected one entry per vertex");
  }
  if (o.action == "rayleigh") {
    Json out{{"rayleigh_1", rayleigh_1(g, x)}};
    if (g.has_boundary()) out["dirichlet"] = dirichlet_rayleigh(g, x);
    return out;
  }
  if (o.action == "nodal") {
    const NodalDomains d = nodal_domains(g, x);
    Json doms = Json::array();
    for (Mask m : d.domains) doms.push_back(mask_to_json(m, g.n()));
    return {{"count", d.count}, {"domains", doms}};
  }
  if (std::isnan(mu)) throw UsageError("eigenpair verification needs --mu or a candidate file");
  in.note("mu " + Json(mu).dump());
  const EigenCandidate c{x, mu};
  const EigenCertificate cert =
      o.action == "verify-dirichlet" ? verify_dirichlet_eigenpair(g, c, o.tol) : verify_neumann_eigenpair(g, c, o.tol);
  Json out = certificate_json(cert);
  out["mu"] = mu;
  out["x"] = vec_json(x);
  return out;
}

// ------------------------------------------------------------- morse

Json violations_json(const MorseValidation& v, const std::vector<Mask>& faces, int n) {
  Json a = Json::array();
  for (const auto& x : v.violations)
    a.push_back({{"face", mask_to_json(faces[x.face], n)}, {"kind", std::string(1, x.kind)}, {"count", x.count}});
  return a;
}

Json cmd_morse(const Options& o, Inputs& in) {
  if (o.action == "hypergraph" || (o.action == "order" && !o.hypergraph.empty())) {
    const Hypergraph h = parse_hypergraph(in.load(need(o.hypergraph, "--hypergraph")));
    if (o.action == "order") {
      const OrderComplex oc = order_complex(h);
      return {{"vertices", oc.vertices.size()}, {"chains", oc.chains.size()}, {"maximal_chains", oc.maximal.size()},
              {"f_vector", oc.f_vector()}, {"betti", betti_gf2(oc.abstract())}};
    }
    h.validate();
    const FaceFunction f = parse_face_function(in.load(need(o.function, "--function")), h.edges, h.n);
    const HypergraphMorse r = hypergraph_morse(h, f);
    Json crit = Json::array();
    for (int e : r.critical) crit.push_back({{"edge", mask_to_json(h.edges[e], h.n)}, {"height", r.height[e]}});
    return {{"valid", r.validation.valid}, {"violations", violations_json(r.validation, h.edges, h.n)},
            {"critical", crit}, {"height", r.height}};
  }
  const SimplicialComplex k = parse_complex(in.load(need(o.complex, "--complex")), o.close);
  if (o.action == "order") {
    const OrderComplex oc = order_complex(k);
    return {{"vertices", oc.vertices.size()}, {"chains", oc.chains.size()}, {"maximal_chains", oc.maximal.size()},
            {"f_vector", oc.f_vector()}, {"betti", betti_gf2(oc.abstract())},
            {"betti_complex", betti_gf2(k.abstract())}};
  }
  const FaceFunction f = parse_face_function(in.load(need(o.function, "--function")), k.faces(), k.n());
  if (o.action == "validate") {
    const MorseValidation v = validate_discrete_morse(k, f);
    return {{"valid", v.valid}, {"injective", f.injective()}, {"violations", violations_json(v, k.faces(), k.n())}};
  }
  if (o.action == "critical") {
    const FormanCritical c = forman_critical(k, f);
    Json crit = Json::array();
    for (std::size_t i = 0; i < c.critical.size(); ++i)
      crit.push_back({{"face", mask_to_json(k.face(c.critical[i]), k.n())}, {"index", c.index[i]}});
    return {{"critical", crit}, {"morse_vector", c.morse_vector}};
  }
  if (o.action == "pl") {
    std::vector<int> which;
    if (!o.face.empty()) {
      Mask m = 0;
      for (int v : parse_int_list(o.face)) {
        if (v < 0 || v >= k.n()) throw ParseError("face", "vertex out of range");
        m |= Mask{1} << v;
      }
      const int idx = k.index_of(m);
      if (idx < 0) throw ParseError("face", "not a face of the complex");
      which.push_back(idx);
    } else {
      for (int i = 0; i < k.size(); ++i) which.push_back(i);
    }
    Json faces = Json::array();
    bool agree = true;
    for (int i : which) {
      const PlCritical p = pl_critical(k, f, i);
      agree = agree && p.agrees;
      Json idx = Json::array();
      for (auto [d, mult] : p.indices) idx.push_back({{"index", d}, {"multiplicity", mult}});
      faces.push_back({{"face", mask_to_json(k.face(i), k.n())}, {"pl_critical", p.critical},
                       {"reduced_betti", p.reduced_betti}, {"indices", idx},
                       {"forman_critical", p.forman_critical}, {"agrees", p.agrees}});
    }
    return {{"faces", faces}, {"all_agree", agree}};
  }
  const MorseEulerReport r = morse_euler_check(k, f);
  return {{"morse_vector", r.morse_vector}, {"pl_vector", r.pl_vector}, {"alternating_sum", r.alternating_sum},
          {"chi_complex", r.chi_complex}, {"chi_order_complex", r.chi_order}, {"holds", r.holds}};
}

void emit(const Options& o, const Json& report, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw ParseError("out", "cannot write " + o.out);
  f << text;
}

}  // namespace

std::string strip_timing(const std::string& report) {
  Json j = Json::parse(report);
  j.erase("timing");
  return j.dump();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Lovasz extension toolkit: set functions, graph invariants, 1-Laplacians, discrete Morse theory"};
  app.name("lovx");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--tol", o.tol, "numerical tolerance")->capture_default_str();
  app.add_option("--trials", o.trials, "random trials or samples");
  app.add_option("--restarts", o.restarts, "solver restarts");
  app.add_option("--out", o.out, "write the report here instead of stdout");

  auto* eval = app.add_subcommand("eval", "evaluate the Lovasz extension at a point");
  auto* subgrad = app.add_subcommand("subgrad", "subgradient and active pieces at a point");
  for (auto* s : {eval, subgrad}) {
    s->add_option("--function", o.function, "function JSON")->required();
    s->add_option("--point", o.point, "comma-separated coordinates or @file.json")->required();
    s->add_option("--shape", o.shape, "k,n for k-way points (row-major)");
  }

  auto* check = app.add_subcommand("check", "property checks");
  check->add_option("what", o.action)->required()->check(
      CLI::IsMember({"structural", "submodularity", "characterization", "catalog"}));
  check->add_option("--function", o.function, "function JSON");
  check->add_option("--graph", o.graph, "graph JSON (catalog)");

  auto* solve = app.add_subcommand("solve", "fractional optimization");
  solve->add_option("solver", o.action)->required()->check(CLI::IsMember({"dinkelbach", "ipsd", "sgd"}));
  solve->add_option("--f", o.f_file, "numerator function JSON");
  solve->add_option("--g", o.g_file, "denominator function JSON");
  solve->add_option("--graph", o.graph, "graph JSON for a built-in objective");
  solve->add_option("--objective", o.objective, "alpha | gamma | cheeger:<variant>");
  solve->add_option("--sense", o.sense)->check(CLI::IsMember({"min", "max"}))->capture_default_str();
  solve->add_option("--variant", o.variant, "ball | normalized");
  solve->add_option("--max-iter", o.max_iter, "outer iterations");
  solve->add_option("--noise", o.noise, "sgd noise scale")->capture_default_str();
  solve->add_option("--trace", o.trace, "write the iteration trace as JSON lines");

  auto* inv = app.add_subcommand("invariant", "graph invariants");
  inv->add_option("which", o.action)->required()->check(CLI::IsMember(
      {"alpha", "gamma", "maxkcut", "matching", "cheeger", "cheeger-like", "poincare", "vertex-cover", "multiway",
       "k-alpha"}));
  inv->add_option("--graph", o.graph, "graph JSON")->required();
  inv->add_option("--method", o.method)->check(CLI::IsMember({"discrete", "continuous", "both"}))->capture_default_str();
  inv->add_option("--k", o.k, "k for maxkcut and k-alpha")->capture_default_str();
  inv->add_option("--variant", o.variant, "Cheeger variant");
  inv->add_option("--profile-k", o.profile_k, "size bound for the profile variant")->capture_default_str();
  inv->add_option("--function", o.function, "set function for vertex-cover and multiway");
  inv->add_option("--terminals", o.terminals, "comma-separated terminals for multiway");
  inv->add_option("--samples", o.samples, "compare against this many random continuous points");

  auto* lap = app.add_subcommand("laplace", "graph 1-Laplacian");
  lap->add_option("what", o.action)->required()->check(
      CLI::IsMember({"verify-dirichlet", "verify-neumann", "rayleigh", "nodal"}));
  lap->add_option("--graph", o.graph, "graph JSON")->required();
  lap->add_option("--candidate", o.candidate, "eigen-candidate JSON");
  lap->add_option("--point", o.point, "comma-separated vector or @file.json");
  lap->add_option("--mu", o.mu, "eigenvalue");

  auto* morse = app.add_subcommand("morse", "discrete Morse theory");
  morse->add_option("what", o.action)->required()->check(
      CLI::IsMember({"validate", "critical", "pl", "euler", "order", "hypergraph"}));
  morse->add_option("--complex", o.complex, "complex JSON");
  morse->add_option("--hypergraph", o.hypergraph, "hypergraph JSON");
  morse->add_option("--function", o.function, "face function JSON");
  morse->add_option("--face", o.face, "comma-separated face for pl");
  morse->add_flag("--close", o.close, "complete the face family downward");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "lovx: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  Inputs in;
  for (const auto& a : args) in.note(a);
  const auto t0 = std::chrono::steady_clock::now();
  Json report{{"command", args}, {"subcommand", sub}, {"seed", o.seed}, {"tol", o.tol}};
  try {
    Json results;
    if (sub == "eval") results = cmd_eval(o, in);
    else if (sub == "subgrad") results = cmd_subgrad(o, in);
    else if (sub == "check") results = cmd_check(o, in);
    else if (sub == "solve") results = cmd_solve(o, in);
    else if (sub == "invariant") results = cmd_invariant(o, in);
    else if (sub == "laplace") results = cmd_laplace(o, in);
    else results = cmd_morse(o, in);
    report["results"] = results;
  } catch (const UsageError& e) {
    err << "lovx " << sub << ": " << e.what() << "\n\n" << app.get_subcommands().front()->help();
    return 2;
  } catch (const ParseError& e) {
    report["error"] = {{"kind", "invalid-input"}, {"path", e.path}, {"reason", e.reason}};
  } catch (const InvalidArgument& e) {
    report["error"] = {{"kind", "invalid-input"}, {"reason", e.what()}};
  } catch (const ComputationError& e) {
    report["error"] = {{"kind", "computation"}, {"reason", e.what()}};
  }
  report["inputs_digest"] = in.digest();
  report["timing"] = {
      {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  try {
    emit(o, report, out);
  } catch (const ParseError& e) {
    err << "lovx: " << e.what() << "\n";
    return 1;
  }
  if (report.contains("error")) {
    err << "lovx " << sub << ": " << report["error"]["reason"].get<std::string>() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace lovx::cli
