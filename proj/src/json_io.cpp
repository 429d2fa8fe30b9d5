#include "lovx/json_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace lovx {

namespace {

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  if (!j.contains(key)) throw ParseError(path.empty() ? key : path + "." + key, "missing field");
  return j.at(key);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<int>();
}

double as_double(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

Mask as_mask(const Json& j, const std::string& path, int n) {
  if (!j.is_array()) throw ParseError(path, "expected an array of vertices");
  Mask m = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int v = as_int(j[i], at(path, i));
    if (v < 0 || v >= n) throw ParseError(at(path, i), "vertex out of range");
    if ((m >> v) & 1u) throw ParseError(at(path, i), "repeated vertex");
    m |= Mask{1} << v;
  }
  return m;
}

int ground_size(const Json& j, const std::string& path, int max) {
  const int n = as_int(field(j, path, "n"), join(path, "n"));
  if (n < 1 || n > max) throw ParseError(join(path, "n"), "must lie in [1, " + std::to_string(max) + "]");
  return n;
}

template <class F>
auto wrap(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ParseError(path, e.what());
  }
}

}  // namespace

ParseError::ParseError(std::string p, std::string r)
    : InvalidArgument((p.empty() ? std::string("<root>") : p) + ": " + r), path(std::move(p)), reason(std::move(r)) {}

Json read_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("", "cannot open " + file);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON in ") + file + ": " + e.what());
  }
}

Graph parse_graph(const Json& j) {
  const int n = ground_size(j, "", kMaxGround);
  const Json& e = field(j, "", "edges");
  if (!e.is_array()) throw ParseError("edges", "expected an array");
  std::vector<Edge> edges;
  std::set<Edge> seen;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::string p = at("edges", i);
    if (!e[i].is_array() || e[i].size() != 2) throw ParseError(p, "expected a pair of vertices");
    int a = as_int(e[i][0], p + "[0]"), b = as_int(e[i][1], p + "[1]");
    if (a < 0 || a >= n || b < 0 || b >= n) throw ParseError(p, "vertex out of range");
    if (a == b) throw ParseError(p, "self-loop");
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) throw ParseError(p, "duplicate edge");
    edges.push_back({a, b});
  }
  Graph g = wrap("", [&] { return Graph(n, edges, j.value("name", std::string())); });
  if (j.contains("boundary")) {
    const Mask a = as_mask(field(j["boundary"], "boundary", "interior"), "boundary.interior", n);
    wrap("boundary.interior", [&] {
      g.set_interior(a);
      return 0;
    });
  }
  return g;
}

SetFunction parse_function(const Json& j) {
  const int n = ground_size(j, "", kMaxGround);
  const Mode mode = wrap("mode", [&] {
    const Json& m = field(j, "", "mode");
    if (!m.is_string()) throw ParseError("mode", "expected a string");
    return parse_mode(m.get<std::string>());
  });
  const int k = j.contains("k") ? as_int(j["k"], "k") : 1;
  if (k < 1) throw ParseError("k", "must be >= 1");
  const double fallback = j.contains("default") ? as_double(j["default"], "default") : 0.0;
  const int width = is_signed(mode) ? 2 : 1;
  const Json& entries = field(j, "", "entries");
  if (!entries.is_array()) throw ParseError("entries", "expected an array");
  std::map<Arg, double> table;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string p = at("entries", i);
    const Json& arg = field(entries[i], p, "arg");
    if (!arg.is_array() || static_cast<int>(arg.size()) != k * width)
      throw ParseError(join(p, "arg"), "expected " + std::to_string(k * width) + " vertex lists");
    Arg a;
    for (std::size_t s = 0; s < arg.size(); ++s) a.push_back(as_mask(arg[s], at(join(p, "arg"), s), n));
    if (width == 2)
      for (int s = 0; s < k; ++s)
        if (a[2 * s] & a[2 * s + 1])
          throw ParseError(join(p, "arg"), "pair sets overlap in slot " + std::to_string(s));
    const double v = as_double(field(entries[i], p, "value"), join(p, "value"));
    if (!table.emplace(a, v).second) throw ParseError(join(p, "arg"), "duplicate argument");
  }
  return wrap("", [&] { return SetFunction::from_table(n, mode, k, table, fallback); });
}

SimplicialComplex parse_complex(const Json& j, bool close) {
  const int n = ground_size(j, "", kMaxGround);
  const Json& f = field(j, "", "faces");
  if (!f.is_array()) throw ParseError("faces", "expected an array");
  std::vector<Mask> faces;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Mask m = as_mask(f[i], at("faces", i), n);
    if (m == 0) throw ParseError(at("faces", i), "empty face");
    faces.push_back(m);
  }
  return wrap("faces", [&] { return SimplicialComplex(n, faces, close); });
}

Hypergraph parse_hypergraph(const Json& j) {
  Hypergraph h;
  h.n = ground_size(j, "", kMaxGround);
  const Json& e = field(j, "", "edges");
  if (!e.is_array()) throw ParseError("edges", "expected an array");
  std::set<Mask> seen;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Mask m = as_mask(e[i], at("edges", i), h.n);
    if (m == 0) throw ParseError(at("edges", i), "empty hyperedge");
    if (!seen.insert(m).second) throw ParseError(at("edges", i), "duplicate hyperedge");
    h.edges.push_back(m);
  }
  return h;
}

FaceFunction parse_face_function(const Json& j, const std::vector<Mask>& faces, int n) {
  const Json& entries = field(j, "", "entries");
  if (!entries.is_array()) throw ParseError("entries", "expected an array");
  std::map<Mask, double> given;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string p = at("entries", i);
    const Mask m = as_mask(field(entries[i], p, "face"), join(p, "face"), n);
    if (!given.emplace(m, as_double(field(entries[i], p, "value"), join(p, "value"))).second)
      throw ParseError(join(p, "face"), "duplicate face");
  }
  FaceFunction f;
  for (Mask m : faces) {
    auto it = given.find(m);
    if (it == given.end()) throw ParseError("entries", "no value for face " + Json(mask_to_json(m, n)).dump());
    f.values.push_back(it->second);
    given.erase(it);
  }
  if (!given.empty()) throw ParseError("entries", "value for a set that is not a face " + mask_to_json(given.begin()->first, n).dump());
  return f;
}

EigenCandidate parse_candidate(const Json& j, int n) {
  EigenCandidate c;
  const Json& x = field(j, "", "x");
  if (!x.is_array() || static_cast<int>(x.size()) != n) throw ParseError("x", "expected " + std::to_string(n) + " entries");
  for (std::size_t i = 0; i < x.size(); ++i) c.x.push_back(as_double(x[i], at("x", i)));
  c.mu = as_double(field(j, "", "mu"), "mu");
  return c;
}

std::vector<double> parse_point(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') {
    Json j = read_json_file(spec.substr(1));
    const std::string base = j.is_object() ? "point" : "";
    if (j.is_object()) j = field(j, "", "point");
    if (!j.is_array()) throw ParseError(base, "expected an array of numbers");
    std::vector<double> x;
    for (std::size_t i = 0; i < j.size(); ++i) x.push_back(as_double(j[i], at(base, i)));
    return x;
  }
  std::vector<double> x;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw ParseError("point", "not a number: '" + tok + "'");
    x.push_back(v);
  }
  if (x.empty()) throw ParseError("point", "empty point");
  return x;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw ParseError("", "not an integer: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::pair<int, int> parse_shape(const std::string& spec) {
  const auto v = parse_int_list(spec);
  if (v.size() != 2 || v[0] < 1 || v[1] < 1) throw ParseError("shape", "expected k,n with k, n >= 1");
  return {v[0], v[1]};
}

Json mask_to_json(Mask m, int n) {
  Json a = Json::array();
  for (int v = 0; v < n; ++v)
    if ((m >> v) & 1u) a.push_back(v);
  return a;
}

Json arg_to_json(const Arg& a, Mode, int n) {
  Json out = Json::array();
  for (Mask m : a) out.push_back(mask_to_json(m, n));
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

}  // namespace lovx
