#include <doctest.h>

#include <sstream>

#include "lovx/cli.hpp"

using namespace lovx;

namespace {

struct Outcome {
  int code = 0;
  Json report;
  std::string out, err;
};

std::string data(const std::string& f) { return std::string(LOVX_DATA_DIR) + "/" + f; }

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  if (!o.out.empty() && o.out[0] == '{') o.report = Json::parse(o.out);
  return o;
}

}  // namespace

TEST_CASE("eval on the cardinality function") {
  const auto o = call({"eval", "--function", data("cardinality3.json"), "--point", "0.5,0.2,0.9"});
  REQUIRE(o.code == 0);
  CHECK(o.report["results"]["value"].get<double>() == doctest::Approx(1.6).epsilon(1e-15));
  CHECK(o.report["seed"] == 42);
  CHECK(o.report.contains("inputs_digest"));
  CHECK(o.report.contains("timing"));
  CHECK(o.report["command"][0] == "eval");
}

TEST_CASE("points from files and shapes") {
  const auto o = call({"eval", "--function", data("cardinality3.json"), "--point", "@" + data("candidate_p3.json")});
  CHECK(o.code == 1);
  CHECK(o.report["error"]["path"] == "point");
  const auto bad = call({"eval", "--function", data("cardinality3.json"), "--point", "1,2", "--shape", "1,3"});
  CHECK(bad.code == 1);
  const auto shaped = call({"eval", "--function", data("cardinality3.json"), "--point", "1,2,3", "--shape", "1,3"});
  CHECK(shaped.code == 0);
  const auto wrong = call({"eval", "--function", data("cardinality3.json"), "--point", "1,2,3", "--shape", "2,3"});
  CHECK(wrong.code == 1);
}

TEST_CASE("subgradient") {
  const auto o = call({"subgrad", "--function", data("p3_cut.json"), "--point", "1,0,0"});
  REQUIRE(o.code == 0);
  CHECK(o.report["results"]["value"] == 1.0);
  CHECK(o.report["results"]["piece_gradients"].size() >= 1);
}

TEST_CASE("invariants") {
  const auto a = call({"invariant", "alpha", "--graph", data("p3.json"), "--method", "both"});
  REQUIRE(a.code == 0);
  const auto& r = a.report["results"];
  CHECK(r["value"] == 2.0);
  CHECK(r["continuous"].get<double>() >= 2.0 - 1e-6);
  CHECK(r.contains("gap"));
  const auto c = call({"invariant", "cheeger", "--graph", data("p3_boundary.json"), "--variant", "dirichlet",
                       "--samples", "500"});
  REQUIRE(c.code == 0);
  CHECK(c.report["results"]["value"] == 1.0);
  CHECK(c.report["results"]["optimum_check"]["never_beaten"] == true);
  const auto m = call({"invariant", "maxkcut", "--graph", data("c4.json"), "--k", "2"});
  CHECK(m.report["results"]["value"] == 4.0);
  const auto mw = call({"invariant", "multiway", "--graph", data("p3.json"), "--function", data("p3_cut.json"),
                        "--terminals", "0,2"});
  CHECK(mw.code == 0);
  CHECK(mw.report["results"]["value"] == 2.0);
  const auto cl = call({"invariant", "cheeger-like", "--graph", data("p3.json")});
  CHECK(cl.report["results"]["value"] == 1.5);
}

TEST_CASE("solvers") {
  const auto d = call({"solve", "dinkelbach", "--f", data("p3_cut.json"), "--g", data("p3_balance.json")});
  REQUIRE(d.code == 0);
  CHECK(d.report["results"]["r"] == 1.0);
  const auto i = call({"solve", "ipsd", "--graph", data("p3.json"), "--objective", "cheeger:classic", "--restarts", "4"});
  REQUIRE(i.code == 0);
  CHECK(i.report["results"]["r"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(i.report["results"]["trace"].size() >= 1);
  const auto s = call({"solve", "sgd", "--f", data("p3_cut.json"), "--g", data("p3_balance.json")});
  CHECK(s.code == 0);
  CHECK(call({"solve", "dinkelbach", "--f", data("p3_cut.json")}).code == 2);
}

TEST_CASE("laplace") {
  const auto v = call({"laplace", "verify-dirichlet", "--graph", data("p3_boundary.json"), "--candidate",
                       data("candidate_p3.json")});
  REQUIRE(v.code == 0);
  CHECK(v.report["results"]["feasible"] == true);
  CHECK(v.report["results"]["certificate"]["c"][0]["value"] == 1.0);
  const auto no = call({"laplace", "verify-dirichlet", "--graph", data("p3_boundary.json"), "--point", "0,1,0",
                        "--mu", "0.5"});
  CHECK(no.report["results"]["feasible"] == false);
  const auto n = call({"laplace", "nodal", "--graph", data("p3.json"), "--point", "1,0,-1"});
  CHECK(n.report["results"]["count"] == 2);
  const auto z = call({"laplace", "verify-dirichlet", "--graph", data("p3_boundary.json"), "--point", "0,0,0",
                       "--mu", "1"});
  CHECK(z.code == 1);
}

TEST_CASE("morse") {
  const auto c = call({"morse", "critical", "--complex", data("circle.json"), "--function", data("circle_function.json")});
  REQUIRE(c.code == 0);
  CHECK(c.report["results"]["morse_vector"] == Json::array({1, 1}));
  const auto e = call({"morse", "euler", "--complex", data("circle.json"), "--function", data("circle_function.json")});
  CHECK(e.report["results"]["holds"] == true);
  const auto p = call({"morse", "pl", "--complex", data("circle.json"), "--function", data("circle_function.json"),
                       "--face", "1,2"});
  CHECK(p.report["results"]["faces"][0]["indices"][0]["index"] == 1);
  CHECK(call({"morse", "order", "--complex", data("triangle_facet.json")}).code == 1);
  const auto closed = call({"morse", "order", "--complex", data("triangle_facet.json"), "--close"});
  CHECK(closed.report["results"]["f_vector"] == Json::array({7, 12, 6}));
  const auto h = call({"morse", "hypergraph", "--hypergraph", data("hypergraph.json"), "--function",
                       data("hypergraph_function.json")});
  CHECK(h.report["results"]["height"] == Json::array({0, 0, 1}));
}

TEST_CASE("input validation") {
  const auto dup = call({"invariant", "alpha", "--graph", data("p3_bad_duplicate.json")});
  CHECK(dup.code == 1);
  CHECK(dup.report["error"]["path"] == "edges[1]");
  const auto overlap = call({"eval", "--function", data("pair_overlap.json"), "--point", "1,0,0"});
  CHECK(overlap.code == 1);
  CHECK(overlap.report["error"]["path"] == "entries[1].arg");
  CHECK(call({"eval", "--function", data("missing.json"), "--point", "1"}).code == 1);
}

TEST_CASE("usage errors") {
  const auto u = call({"frobnicate"});
  CHECK(u.code == 2);
  CHECK(u.out.empty());
  CHECK(u.err.find("Usage") != std::string::npos);
  CHECK(call({"eval", "--bogus"}).code == 2);
  CHECK(call({"invariant", "nonsense", "--graph", data("p3.json")}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("reports are deterministic and re-parse") {
  const std::vector<std::string> args{"invariant", "cheeger", "--graph", data("c4.json"), "--method", "both",
                                      "--restarts", "5"};
  const auto a = call(args), b = call(args);
  CHECK(cli::strip_timing(a.out) == cli::strip_timing(b.out));
  CHECK(Json::parse(a.out).dump() == a.report.dump());
  const auto other = call({"invariant", "cheeger", "--graph", data("c4.json"), "--method", "both", "--restarts",
                           "5", "--seed", "7"});
  CHECK(other.report["inputs_digest"] != a.report["inputs_digest"]);
}
