#pragma once

#include <optional>
#include <string>
#include <variant>

#include "credal/bayesnet.hpp"
#include "credal/credalnet.hpp"

namespace credal {

// File format (JSON):
// {
//   "version": 1,
//   "name": "asia",                     // optional
//   "class": "C",                       // optional default class node
//   "nodes": [
//     {"name": "V", "states": ["v'", "v''"], "parents": [],
//      "cpt": [[0.01, 0.99]]},
//     {"name": "T", "states": ["t'", "t''"], "parents": ["V"],
//      "credal": [{"type": "intervals",
//                  "lower": [0.04, 0.93], "upper": [0.07, 0.96]}, ...]},
//     ...
//   ]
// }
// Rows follow the convention that the last-declared parent varies fastest.
// A network is Bayesian when every node carries "cpt"; any "credal" node
// makes it credal (remaining "cpt" nodes become point sets).  Credal row
// objects: {"type":"point","mass":[...]},
//          {"type":"vertices","masses":[[...],...]},
//          {"type":"intervals","lower":[...],"upper":[...]},
//          {"type":"polytope","constraints":[{"coeffs":[...],
//                                             "rel":"<="|"="|">=",
//                                             "rhs": 0.5}, ...]}.
// Row sums must land within 1e-9 of one; nothing is renormalized, a bad row
// is an error.

struct ParsedNetwork {
  int version = 1;
  std::string name;  // empty if absent
  std::optional<std::string> default_class;
  std::variant<BayesNet, CredalNet> net;

  bool is_credal() const { return std::holds_alternative<CredalNet>(net); }
  const BayesNet& bayes() const { return std::get<BayesNet>(net); }
  const CredalNet& credal() const { return std::get<CredalNet>(net); }
};

// Throws parse_error for malformed text or shapes, validation_error for
// violated model invariants.
ParsedNetwork parse_network_text(const std::string& text);
ParsedNetwork load_network_file(const std::string& path);
std::string serialize_network(const ParsedNetwork& pn);

// Field-exact structural equality (names, labels, parents, rows, exact
// double values).
bool network_equal(const ParsedNetwork& a, const ParsedNetwork& b);

// Query file:
// {"version": 1, "class": "C", "evidence": {"L": "l'", "S": "s'"},
//  "options": {"bounds": true, "naive": false, "cap": 1048576,
//              "pair": ["c'", "c''"]}}
struct Query {
  std::optional<std::string> class_node;
  std::vector<std::pair<std::string, std::string>> evidence;
  bool bounds = false;
  bool naive = false;
  std::optional<long long> cap;
  std::optional<std::pair<std::string, std::string>> pair;
};

Query parse_query_text(const std::string& text);
Query load_query_file(const std::string& path);

// "K=V,K2=V2" -> pairs, in order.
std::vector<std::pair<std::string, std::string>> parse_evidence_arg(
    const std::string& arg);

// Rendering.  JSON output is byte-stable for identical inputs.
std::string render_report(const DominanceReport& rep, bool as_json);
std::string render_pair(const PairDominance& pd,
                        const std::vector<std::string>& class_labels,
                        const std::vector<std::string>& cutset_names,
                        const std::vector<std::vector<std::string>>&
                            cutset_state_labels,
                        bool as_json);
std::string render_posterior(const std::string& class_name,
                             const std::vector<std::string>& class_labels,
                             const std::vector<std::pair<double, double>>&
                                 bounds,
                             const std::optional<std::vector<double>>& naive,
                             bool as_json);

}  // namespace credal
