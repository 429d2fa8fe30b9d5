#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lovx/error.hpp"
#include "lovx/graph.hpp"
#include "lovx/laplace1.hpp"
#include "lovx/morse.hpp"
#include "lovx/setfun.hpp"

namespace lovx {

using Json = nlohmann::json;

// Input rejected at `path` (e.g. "entries[2].arg") for `reason`.
struct ParseError : InvalidArgument {
  ParseError(std::string path, std::string reason);
  std::string path;
  std::string reason;
};

Json read_json_file(const std::string& file);

Graph parse_graph(const Json& j);
SetFunction parse_function(const Json& j);
SimplicialComplex parse_complex(const Json& j, bool close = false);
Hypergraph parse_hypergraph(const Json& j);
// Entries keyed by face; must cover every face in `faces` exactly once.
FaceFunction parse_face_function(const Json& j, const std::vector<Mask>& faces, int n);
EigenCandidate parse_candidate(const Json& j, int n);

// "0.5,0.2,0.9" or "@file.json" holding an array or {"point": [...]}.
std::vector<double> parse_point(const std::string& spec);
// "k,n"
std::pair<int, int> parse_shape(const std::string& spec);
std::vector<int> parse_int_list(const std::string& spec);

Json mask_to_json(Mask m, int n);
Json arg_to_json(const Arg& a, Mode mode, int n);

// Hex SHA-256.
std::string sha256_hex(const std::string& data);

}  // namespace lovx
