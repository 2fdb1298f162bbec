#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "credal/demo.hpp"
#include "credal/io.hpp"

namespace {

using namespace credal;

struct CommonArgs {
  std::string net_path;
  std::string class_name;
  std::string evidence;
  std::string query_path;
  std::string output = "table";
  long long cap = 1LL << 20;
  bool bounds = false;
  bool naive = false;
  std::string pair;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_pair) {
  cmd->add_option("--net", a.net_path, "network JSON file")->required();
  cmd->add_option("--class", a.class_name, "class node name");
  cmd->add_option("--evidence", a.evidence, "observed nodes, K=V,K2=V2");
  cmd->add_option("--query", a.query_path, "query JSON file");
  cmd->add_option("--cap", a.cap, "enumeration cap")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--output", a.output, "output format")
      ->check(CLI::IsMember({"table", "json"}));
  cmd->add_flag("--bounds", a.bounds, "include posterior bounds");
  cmd->add_flag("--naive", a.naive, "include the naive posterior");
  if (with_pair)
    cmd->add_option("--pair", a.pair, "class states, NUM,DEN")->required();
}

// Query file values fill in whatever the command line left unset.
void merge_query(const CLI::App* cmd, CommonArgs& a) {
  if (a.query_path.empty()) return;
  Query q = load_query_file(a.query_path);
  if (a.class_name.empty() && q.class_node) a.class_name = *q.class_node;
  if (a.evidence.empty() && !q.evidence.empty()) {
    std::string ev;
    for (const auto& [k, v] : q.evidence) {
      if (!ev.empty()) ev += ',';
      ev += k + "=" + v;
    }
    a.evidence = ev;
  }
  if (cmd->count("--bounds") == 0) a.bounds = a.bounds || q.bounds;
  if (cmd->count("--naive") == 0) a.naive = a.naive || q.naive;
  if (cmd->count("--cap") == 0 && q.cap) a.cap = *q.cap;
  if (a.pair.empty() && q.pair) a.pair = q.pair->first + "," + q.pair->second;
}

std::string resolve_class(const ParsedNetwork& pn, const CommonArgs& a) {
  if (!a.class_name.empty()) return a.class_name;
  if (pn.default_class) return *pn.default_class;
  throw validation_error("no class node given and the network names none");
}

int run_classify(const CLI::App* cmd, CommonArgs& a) {
  ParsedNetwork pn = load_network_file(a.net_path);
  merge_query(cmd, a);
  std::string cls = resolve_class(pn, a);
  auto items = parse_evidence_arg(a.evidence);
  ClassifyOptions opts;
  opts.assignment_cap = a.cap;
  opts.completion_cap = a.cap;
  opts.with_posterior = a.bounds;
  opts.with_naive = a.naive;
  DominanceReport rep;
  if (pn.is_credal()) {
    const CredalNet& net = pn.credal();
    if (a.bounds || a.naive)
      throw validation_error(
          "posterior bounds and naive values need a Bayesian network");
    rep = classify_credal(net, net.node_index(cls),
                          evidence_from_labels(net, items), opts);
  } else {
    const BayesNet& net = pn.bayes();
    rep = classify(net, net.node_index(cls), evidence_from_labels(net, items),
                   opts);
  }
  std::cout << render_report(rep, a.output == "json");
  return 0;
}

int run_dominance(const CLI::App* cmd, CommonArgs& a) {
  ParsedNetwork pn = load_network_file(a.net_path);
  merge_query(cmd, a);
  std::string cls = resolve_class(pn, a);
  auto items = parse_evidence_arg(a.evidence);
  size_t comma = a.pair.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 >= a.pair.size())
    throw parse_error("pair: expected NUM,DEN, got '" + a.pair + "'");
  std::string num_label = a.pair.substr(0, comma);
  std::string den_label = a.pair.substr(comma + 1);

  PairDominance pd;
  std::vector<std::string> class_labels, cutset_names;
  std::vector<std::vector<std::string>> cutset_states;
  if (pn.is_credal()) {
    const CredalNet& net = pn.credal();
    int c = net.node_index(cls);
    const auto& sp = net.node(c).states;
    pd = credal_dominance_credal(net, c, sp->index(num_label),
                                 sp->index(den_label),
                                 evidence_from_labels(net, items), a.cap);
    class_labels = sp->labels();
    for (int v : pd.cutset) {
      cutset_names.push_back(net.node(v).name);
      cutset_states.push_back(net.node(v).states->labels());
    }
  } else {
    const BayesNet& net = pn.bayes();
    int c = net.node_index(cls);
    const auto& sp = net.node(c).states;
    pd = credal_dominance(net, c, sp->index(num_label), sp->index(den_label),
                          evidence_from_labels(net, items), a.cap);
    class_labels = sp->labels();
    for (int v : pd.cutset) {
      cutset_names.push_back(net.node(v).name);
      cutset_states.push_back(net.node(v).states->labels());
    }
  }
  std::cout << render_pair(pd, class_labels, cutset_names, cutset_states,
                           a.output == "json");
  return 0;
}

int run_posterior(const CLI::App* cmd, CommonArgs& a, bool naive_only) {
  ParsedNetwork pn = load_network_file(a.net_path);
  merge_query(cmd, a);
  if (pn.is_credal())
    throw validation_error(
        "posterior bounds and naive values need a Bayesian network");
  const BayesNet& net = pn.bayes();
  std::string cls = resolve_class(pn, a);
  int c = net.node_index(cls);
  Evidence e = evidence_from_labels(net, parse_evidence_arg(a.evidence));
  const auto& sp = net.node(c).states;

  std::vector<double> naive_vals;
  if (naive_only || a.naive)
    for (int s = 0; s < sp->size(); ++s)
      naive_vals.push_back(naive_posterior(net, c, s, e, a.cap));

  if (naive_only) {
    if (a.output == "json") {
      nlohmann::json j;
      j["class"] = cls;
      j["labels"] = sp->labels();
      j["naive_posterior"] = naive_vals;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "class " << cls << "\n";
      char buf[64];
      for (int s = 0; s < sp->size(); ++s) {
        std::snprintf(buf, sizeof buf, "%.9g", naive_vals[s]);
        std::cout << "  " << sp->label(s) << ": " << buf << "\n";
      }
    }
    return 0;
  }

  std::vector<std::pair<double, double>> bounds;
  for (int s = 0; s < sp->size(); ++s)
    bounds.push_back(posterior_bounds(net, c, s, e, a.cap));
  std::optional<std::vector<double>> nv;
  if (a.naive) nv = naive_vals;
  std::cout << render_posterior(cls, sp->labels(), bounds, nv,
                                a.output == "json");
  return 0;
}

int run_validate(const std::string& path, bool echo) {
  ParsedNetwork pn = load_network_file(path);
  if (echo) {
    std::cout << serialize_network(pn);
    return 0;
  }
  int nodes = pn.is_credal() ? pn.credal().size() : pn.bayes().size();
  std::cout << "ok: " << (pn.is_credal() ? "credal" : "bayesian")
            << " network" << (pn.name.empty() ? "" : " '" + pn.name + "'")
            << " with " << nodes << " nodes\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classification with credal networks and incomplete data"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "undominated class states");
  add_common(classify_cmd, args, false);
  CLI::App* dom_cmd =
      app.add_subcommand("dominance", "test one class state against another");
  add_common(dom_cmd, args, true);
  CLI::App* post_cmd = app.add_subcommand(
      "posterior", "posterior probability bounds over completions");
  add_common(post_cmd, args, false);
  CLI::App* naive_cmd = app.add_subcommand(
      "naive", "posterior that marginalizes the missing nodes");
  add_common(naive_cmd, args, false);

  std::string validate_path;
  bool validate_echo = false;
  CLI::App* val_cmd =
      app.add_subcommand("validate", "parse and validate a network file");
  val_cmd->add_option("--net", validate_path, "network JSON file")->required();
  val_cmd->add_flag("--echo", validate_echo, "print the canonical form");

  std::string demo_which;
  CLI::App* demo_cmd = app.add_subcommand("demo", "worked examples");
  demo_cmd->add_option("example", demo_which, "asia or montyhall")
      ->required()
      ->check(CLI::IsMember({"asia", "montyhall"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (classify_cmd->parsed()) return run_classify(classify_cmd, args);
    if (dom_cmd->parsed()) return run_dominance(dom_cmd, args);
    if (post_cmd->parsed()) return run_posterior(post_cmd, args, false);
    if (naive_cmd->parsed()) return run_posterior(naive_cmd, args, true);
    if (val_cmd->parsed()) return run_validate(validate_path, validate_echo);
    if (demo_cmd->parsed()) {
      std::cout << (demo_which == "asia" ? credal::demo_asia_text()
                                         : credal::demo_monty_text());
      return 0;
    }
  } catch (const credal::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const credal::cap_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const credal::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
