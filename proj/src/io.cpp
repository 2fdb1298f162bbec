#include "credal/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace credal {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end())
    throw parse_error(std::string(where) + ": missing field '" + key + "'");
  return *it;
}

std::vector<double> double_list(const json& j, const char* where) {
  if (!j.is_array())
    throw parse_error(std::string(where) + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number())
      throw parse_error(std::string(where) + ": expected a number");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::string> string_list(const json& j, const char* where) {
  if (!j.is_array())
    throw parse_error(std::string(where) + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string())
      throw parse_error(std::string(where) + ": expected a string");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Rel parse_rel(const std::string& s, const char* where) {
  if (s == "<=") return Rel::LE;
  if (s == "=" || s == "==") return Rel::EQ;
  if (s == ">=") return Rel::GE;
  throw parse_error(std::string(where) + ": unknown relation '" + s + "'");
}

std::string rel_text(Rel r) {
  switch (r) {
    case Rel::LE: return "<=";
    case Rel::EQ: return "=";
    default: return ">=";
  }
}

CredalSet parse_credal_row(const json& j, const SpacePtr& states,
                           const std::string& where) {
  if (!j.is_object())
    throw parse_error(where + ": credal row must be an object");
  std::string type = field(j, "type", where.c_str()).get<std::string>();
  if (type == "point") {
    auto mass = double_list(field(j, "mass", where.c_str()), where.c_str());
    return CredalSet::linear(MassFunction(states, std::move(mass), 1e-9));
  }
  if (type == "vertices") {
    const json& masses = field(j, "masses", where.c_str());
    if (!masses.is_array() || masses.empty())
      throw parse_error(where + ": 'masses' must be a non-empty array");
    std::vector<MassFunction> vs;
    for (const auto& m : masses)
      vs.emplace_back(states, double_list(m, where.c_str()), 1e-9);
    return CredalSet::vertices(std::move(vs));
  }
  if (type == "intervals") {
    auto lower = double_list(field(j, "lower", where.c_str()), where.c_str());
    auto upper = double_list(field(j, "upper", where.c_str()), where.c_str());
    return CredalSet::intervals(states, std::move(lower), std::move(upper));
  }
  if (type == "polytope") {
    const json& cons = field(j, "constraints", where.c_str());
    if (!cons.is_array())
      throw parse_error(where + ": 'constraints' must be an array");
    std::vector<LinearConstraint> rows;
    for (const auto& c : cons) {
      LinearConstraint lc;
      lc.coeffs = double_list(field(c, "coeffs", where.c_str()), where.c_str());
      lc.rel = parse_rel(field(c, "rel", where.c_str()).get<std::string>(),
                         where.c_str());
      const json& rhs = field(c, "rhs", where.c_str());
      if (!rhs.is_number()) throw parse_error(where + ": 'rhs' not a number");
      lc.rhs = rhs.get<double>();
      rows.push_back(std::move(lc));
    }
    return CredalSet::polytope(states, std::move(rows));
  }
  throw parse_error(where + ": unknown credal row type '" + type + "'");
}

}  // namespace

ParsedNetwork parse_network_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("network: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("network: top level must be an object");
  const json& ver = field(j, "version", "network");
  if (!ver.is_number_integer() || ver.get<int>() != 1)
    throw parse_error("network: unsupported version");

  std::string net_name;
  std::optional<std::string> net_class;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw parse_error("network: 'name' not a string");
    net_name = j["name"].get<std::string>();
  }
  if (j.contains("class")) {
    if (!j["class"].is_string())
      throw parse_error("network: 'class' not a string");
    net_class = j["class"].get<std::string>();
  }

  const json& nodes = field(j, "nodes", "network");
  if (!nodes.is_array() || nodes.empty())
    throw parse_error("network: 'nodes' must be a non-empty array");

  bool any_credal = false;
  for (const auto& nd : nodes) {
    if (!nd.is_object()) throw parse_error("network: node must be an object");
    bool has_cpt = nd.contains("cpt");
    bool has_credal = nd.contains("credal");
    if (has_cpt == has_credal)
      throw parse_error("network: node needs exactly one of 'cpt'/'credal'");
    if (has_credal) any_credal = true;
  }

  struct RawNode {
    std::string name;
    SpacePtr states;
    std::vector<std::string> parents;
    const json* body;
  };
  std::vector<RawNode> raw;
  for (const auto& nd : nodes) {
    RawNode r;
    r.name = field(nd, "name", "network node").get<std::string>();
    std::string where = "node '" + r.name + "'";
    r.states = FiniteSpace::make(
        r.name, string_list(field(nd, "states", where.c_str()), where.c_str()));
    if (nd.contains("parents"))
      r.parents = string_list(nd["parents"], where.c_str());
    r.body = &nd;
    raw.push_back(std::move(r));
  }

  std::optional<std::variant<BayesNet, CredalNet>> built;
  if (!any_credal) {
    std::vector<BayesNet::NodeSpec> specs;
    for (const auto& r : raw) {
      BayesNet::NodeSpec s;
      s.name = r.name;
      s.states = r.states;
      s.parents = r.parents;
      std::string where = "node '" + r.name + "' cpt";
      const json& cpt = field(*r.body, "cpt", where.c_str());
      if (!cpt.is_array())
        throw parse_error(where + ": must be an array of rows");
      for (const auto& row : cpt)
        s.rows.push_back(double_list(row, where.c_str()));
      specs.push_back(std::move(s));
    }
    built.emplace(BayesNet(specs));
  } else {
    std::vector<CredalNet::NodeSpec> specs;
    for (const auto& r : raw) {
      CredalNet::NodeSpec s;
      s.name = r.name;
      s.states = r.states;
      s.parents = r.parents;
      std::string where = "node '" + r.name + "'";
      if (r.body->contains("cpt")) {
        const json& cpt = (*r.body)["cpt"];
        if (!cpt.is_array())
          throw parse_error(where + ": 'cpt' must be an array of rows");
        for (const auto& row : cpt)
          s.rows.push_back(CredalSet::linear(
              MassFunction(r.states, double_list(row, where.c_str()), 1e-9)));
      } else {
        const json& cr = (*r.body)["credal"];
        if (!cr.is_array())
          throw parse_error(where + ": 'credal' must be an array of rows");
        int idx = 0;
        for (const auto& row : cr) {
          s.rows.push_back(parse_credal_row(
              row, r.states, where + " credal row " + std::to_string(idx)));
          ++idx;
        }
      }
      specs.push_back(std::move(s));
    }
    built.emplace(CredalNet(specs));
  }

  ParsedNetwork pn{1, std::move(net_name), std::move(net_class),
                   std::move(*built)};
  if (pn.default_class) {
    if (pn.is_credal())
      pn.credal().node_index(*pn.default_class);
    else
      pn.bayes().node_index(*pn.default_class);
  }
  return pn;
}

ParsedNetwork load_network_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_network_text(ss.str());
}

namespace {

json credal_row_to_json(const CredalSet& cs) {
  json out;
  if (const auto* lin = std::get_if<LinearRep>(&cs.rep())) {
    out["type"] = "point";
    out["mass"] = lin->mass.probs();
    return out;
  }
  if (const auto* vx = std::get_if<VerticesRep>(&cs.rep())) {
    out["type"] = "vertices";
    json masses = json::array();
    for (const auto& v : vx->vertices) masses.push_back(v.probs());
    out["masses"] = std::move(masses);
    return out;
  }
  if (const auto* iv = std::get_if<IntervalsRep>(&cs.rep())) {
    out["type"] = "intervals";
    out["lower"] = iv->lower;
    out["upper"] = iv->upper;
    return out;
  }
  const auto& po = std::get<PolytopeRep>(cs.rep());
  out["type"] = "polytope";
  json cons = json::array();
  for (const auto& c : po.constraints) {
    json jc;
    jc["coeffs"] = c.coeffs;
    jc["rel"] = rel_text(c.rel);
    jc["rhs"] = c.rhs;
    cons.push_back(std::move(jc));
  }
  out["constraints"] = std::move(cons);
  return out;
}

}  // namespace

std::string serialize_network(const ParsedNetwork& pn) {
  json j;
  j["version"] = pn.version;
  if (!pn.name.empty()) j["name"] = pn.name;
  if (pn.default_class) j["class"] = *pn.default_class;
  json nodes = json::array();
  if (!pn.is_credal()) {
    const BayesNet& net = pn.bayes();
    for (int v = 0; v < net.size(); ++v) {
      const auto& nd = net.node(v);
      json n;
      n["name"] = nd.name;
      n["states"] = nd.states->labels();
      json parents = json::array();
      for (int p : nd.parents) parents.push_back(net.node(p).name);
      n["parents"] = std::move(parents);
      json cpt = json::array();
      for (const auto& r : nd.rows) cpt.push_back(r.probs());
      n["cpt"] = std::move(cpt);
      nodes.push_back(std::move(n));
    }
  } else {
    const CredalNet& net = pn.credal();
    for (int v = 0; v < net.size(); ++v) {
      const auto& nd = net.node(v);
      json n;
      n["name"] = nd.name;
      n["states"] = nd.states->labels();
      json parents = json::array();
      for (int p : nd.parents) parents.push_back(net.node(p).name);
      n["parents"] = std::move(parents);
      json rows = json::array();
      for (const auto& r : nd.rows) rows.push_back(credal_row_to_json(r));
      n["credal"] = std::move(rows);
      nodes.push_back(std::move(n));
    }
  }
  j["nodes"] = std::move(nodes);
  return j.dump(2) + "\n";
}

namespace {

bool rows_equal(const MassFunction& a, const MassFunction& b) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool sets_equal(const CredalSet& a, const CredalSet& b) {
  if (a.rep().index() != b.rep().index()) return false;
  if (const auto* la = std::get_if<LinearRep>(&a.rep()))
    return rows_equal(la->mass, std::get<LinearRep>(b.rep()).mass);
  if (const auto* va = std::get_if<VerticesRep>(&a.rep())) {
    const auto& vb = std::get<VerticesRep>(b.rep());
    if (va->vertices.size() != vb.vertices.size()) return false;
    for (size_t i = 0; i < va->vertices.size(); ++i)
      if (!rows_equal(va->vertices[i], vb.vertices[i])) return false;
    return true;
  }
  if (const auto* ia = std::get_if<IntervalsRep>(&a.rep())) {
    const auto& ib = std::get<IntervalsRep>(b.rep());
    return ia->lower == ib.lower && ia->upper == ib.upper;
  }
  const auto& pa = std::get<PolytopeRep>(a.rep());
  const auto& pb = std::get<PolytopeRep>(b.rep());
  if (pa.constraints.size() != pb.constraints.size()) return false;
  for (size_t i = 0; i < pa.constraints.size(); ++i) {
    const auto& ca = pa.constraints[i];
    const auto& cb = pb.constraints[i];
    if (ca.coeffs != cb.coeffs || ca.rel != cb.rel || ca.rhs != cb.rhs)
      return false;
  }
  return true;
}

}  // namespace

bool network_equal(const ParsedNetwork& a, const ParsedNetwork& b) {
  if (a.version != b.version || a.name != b.name ||
      a.default_class != b.default_class || a.is_credal() != b.is_credal())
    return false;
  if (!a.is_credal()) {
    const BayesNet& na = a.bayes();
    const BayesNet& nb = b.bayes();
    if (na.size() != nb.size()) return false;
    for (int v = 0; v < na.size(); ++v) {
      const auto& x = na.node(v);
      const auto& y = nb.node(v);
      if (x.name != y.name || x.states->labels() != y.states->labels() ||
          x.parents != y.parents || x.rows.size() != y.rows.size())
        return false;
      for (size_t r = 0; r < x.rows.size(); ++r)
        if (!rows_equal(x.rows[r], y.rows[r])) return false;
    }
    return true;
  }
  const CredalNet& na = a.credal();
  const CredalNet& nb = b.credal();
  if (na.size() != nb.size()) return false;
  for (int v = 0; v < na.size(); ++v) {
    const auto& x = na.node(v);
    const auto& y = nb.node(v);
    if (x.name != y.name || x.states->labels() != y.states->labels() ||
        x.parents != y.parents || x.rows.size() != y.rows.size())
      return false;
    for (size_t r = 0; r < x.rows.size(); ++r)
      if (!sets_equal(x.rows[r], y.rows[r])) return false;
  }
  return true;
}

Query parse_query_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("query: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("query: top level must be an object");
  const json& ver = field(j, "version", "query");
  if (!ver.is_number_integer() || ver.get<int>() != 1)
    throw parse_error("query: unsupported version");
  Query q;
  if (j.contains("class")) {
    if (!j["class"].is_string()) throw parse_error("query: 'class' not a string");
    q.class_node = j["class"].get<std::string>();
  }
  if (j.contains("evidence")) {
    const json& ev = j["evidence"];
    if (!ev.is_object()) throw parse_error("query: 'evidence' not an object");
    for (auto it = ev.begin(); it != ev.end(); ++it) {
      if (!it.value().is_string())
        throw parse_error("query: evidence values must be strings");
      q.evidence.emplace_back(it.key(), it.value().get<std::string>());
    }
  }
  if (j.contains("options")) {
    const json& op = j["options"];
    if (!op.is_object()) throw parse_error("query: 'options' not an object");
    if (op.contains("bounds")) {
      if (!op["bounds"].is_boolean())
        throw parse_error("query: 'bounds' not a boolean");
      q.bounds = op["bounds"].get<bool>();
    }
    if (op.contains("naive")) {
      if (!op["naive"].is_boolean())
        throw parse_error("query: 'naive' not a boolean");
      q.naive = op["naive"].get<bool>();
    }
    if (op.contains("cap")) {
      if (!op["cap"].is_number_integer() || op["cap"].get<long long>() <= 0)
        throw parse_error("query: 'cap' must be a positive integer");
      q.cap = op["cap"].get<long long>();
    }
    if (op.contains("pair")) {
      auto pr = string_list(op["pair"], "query pair");
      if (pr.size() != 2) throw parse_error("query: 'pair' needs two labels");
      q.pair = std::make_pair(pr[0], pr[1]);
    }
  }
  return q;
}

Query load_query_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_query_text(ss.str());
}

std::vector<std::pair<std::string, std::string>> parse_evidence_arg(
    const std::string& arg) {
  std::vector<std::pair<std::string, std::string>> out;
  if (arg.empty()) return out;
  size_t pos = 0;
  while (pos <= arg.size()) {
    size_t comma = arg.find(',', pos);
    std::string item = arg.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= item.size())
      throw parse_error("evidence: expected K=V, got '" + item + "'");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

json per_assignment_json(const PairDominance& pd, const DominanceReport& rep) {
  json pa = json::array();
  for (const auto& [digits, v] : pd.per_assignment) {
    json e;
    json states = json::array();
    for (size_t k = 0; k < digits.size(); ++k)
      states.push_back(rep.cutset_states[k][digits[k]]);
    e["cutset_states"] = std::move(states);
    e["product"] = v;
    pa.push_back(std::move(e));
  }
  return pa;
}

json report_to_json_obj(const DominanceReport& rep) {
  json j;
  j["class"] = rep.class_name;
  j["labels"] = rep.class_labels;
  j["test_values"] = rep.value;
  j["dominates"] = rep.dominates;
  const int m = static_cast<int>(rep.class_labels.size());
  if (!rep.detail.empty()) {
    json pairs = json::array();
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) {
        if (i == k) continue;
        const PairDominance& pd = rep.detail[i][k];
        json p;
        p["a"] = rep.class_labels[i];
        p["b"] = rep.class_labels[k];
        p["value"] = pd.value;
        p["dominant"] = pd.dominant;
        if (!pd.per_assignment.empty())
          p["per_assignment"] = per_assignment_json(pd, rep);
        pairs.push_back(std::move(p));
      }
    j["pairs"] = std::move(pairs);
  }
  json und = json::array();
  for (int i : rep.undominated) und.push_back(rep.class_labels[i]);
  j["undominated"] = std::move(und);
  json pairs = json::array();
  for (const auto& [i, k, rel] : rep.survivor_pairs) {
    json p;
    p["a"] = rep.class_labels[i];
    p["b"] = rep.class_labels[k];
    p["relation"] = rel == DominanceReport::PairRelation::Equivalent
                        ? "equivalent"
                        : "incomparable";
    pairs.push_back(std::move(p));
  }
  j["survivor_pairs"] = std::move(pairs);
  j["cutset"] = rep.cutset;
  j["cutset_assignments"] = rep.cutset_assignments;
  if (rep.has_posterior) {
    json b = json::array();
    for (const auto& [lo, hi] : rep.posterior) b.push_back({lo, hi});
    j["posterior_bounds"] = std::move(b);
  }
  if (rep.has_naive) j["naive_posterior"] = rep.naive;
  return j;
}

}  // namespace

std::string render_report(const DominanceReport& rep, bool as_json) {
  if (as_json) return report_to_json_obj(rep).dump(2) + "\n";
  std::ostringstream os;
  os << "class " << rep.class_name << "\n";
  os << "undominated:";
  for (int i : rep.undominated) os << ' ' << rep.class_labels[i];
  os << "\n";
  const int m = static_cast<int>(rep.class_labels.size());
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      if (i == k) continue;
      os << "  " << rep.class_labels[i]
         << (rep.dominates[i][k] ? " dominates " : " vs ")
         << rep.class_labels[k] << "  (test value " << fmt(rep.value[i][k])
         << ")\n";
      if (rep.detail.empty() || rep.cutset.empty()) continue;
      for (const auto& [digits, v] : rep.detail[i][k].per_assignment) {
        os << "   ";
        for (size_t c = 0; c < digits.size(); ++c)
          os << ' ' << rep.cutset[c] << '=' << rep.cutset_states[c][digits[c]];
        os << ": " << fmt(v) << "\n";
      }
    }
  for (const auto& [i, k, rel] : rep.survivor_pairs)
    os << "  " << rep.class_labels[i] << ", " << rep.class_labels[k] << ": "
       << (rel == DominanceReport::PairRelation::Equivalent ? "equivalent"
                                                            : "incomparable")
       << "\n";
  if (!rep.cutset.empty()) {
    os << "cutset:";
    for (const auto& c : rep.cutset) os << ' ' << c;
    os << " (" << rep.cutset_assignments << " assignments)\n";
  }
  if (rep.has_posterior) {
    for (size_t c = 0; c < rep.posterior.size(); ++c)
      os << "posterior " << rep.class_labels[c] << ": ["
         << fmt(rep.posterior[c].first) << ", " << fmt(rep.posterior[c].second)
         << "]\n";
  }
  if (rep.has_naive)
    for (size_t c = 0; c < rep.naive.size(); ++c)
      os << "naive " << rep.class_labels[c] << ": " << fmt(rep.naive[c])
         << "\n";
  return os.str();
}

std::string render_pair(const PairDominance& pd,
                        const std::vector<std::string>& class_labels,
                        const std::vector<std::string>& cutset_names,
                        const std::vector<std::vector<std::string>>&
                            cutset_state_labels,
                        bool as_json) {
  if (as_json) {
    json j;
    j["numerator"] = class_labels[pd.c_num];
    j["denominator"] = class_labels[pd.c_den];
    j["dominant"] = pd.dominant;
    j["value"] = pd.value;
    j["cutset"] = cutset_names;
    j["assignments"] = pd.assignments;
    if (!pd.per_assignment.empty()) {
      json pa = json::array();
      for (const auto& [digits, v] : pd.per_assignment) {
        json e;
        json labels = json::array();
        for (size_t k = 0; k < digits.size(); ++k)
          labels.push_back(cutset_state_labels[k][digits[k]]);
        e["cutset_states"] = std::move(labels);
        e["product"] = v;
        pa.push_back(std::move(e));
      }
      j["per_assignment"] = std::move(pa);
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << class_labels[pd.c_num] << " vs " << class_labels[pd.c_den] << ": "
     << (pd.dominant ? "dominates" : "does not dominate") << " (value "
     << fmt(pd.value) << ")\n";
  for (const auto& [digits, v] : pd.per_assignment) {
    os << " ";
    for (size_t k = 0; k < digits.size(); ++k)
      os << ' ' << cutset_names[k] << '=' << cutset_state_labels[k][digits[k]];
    if (digits.empty()) os << " (no cutset)";
    os << ": " << fmt(v) << "\n";
  }
  return os.str();
}

std::string render_posterior(const std::string& class_name,
                             const std::vector<std::string>& class_labels,
                             const std::vector<std::pair<double, double>>&
                                 bounds,
                             const std::optional<std::vector<double>>& naive,
                             bool as_json) {
  if (as_json) {
    json j;
    j["class"] = class_name;
    j["labels"] = class_labels;
    json b = json::array();
    for (const auto& [lo, hi] : bounds) b.push_back({lo, hi});
    j["posterior_bounds"] = std::move(b);
    if (naive) j["naive_posterior"] = *naive;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "class " << class_name << "\n";
  for (size_t c = 0; c < bounds.size(); ++c) {
    os << "  " << class_labels[c] << ": [" << fmt(bounds[c].first) << ", "
       << fmt(bounds[c].second) << "]";
    if (naive) os << "  naive " << fmt((*naive)[c]);
    os << "\n";
  }
  return os.str();
}

}  // namespace credal
