#include "credal/credalnet.hpp"

#include <algorithm>
#include <cmath>

namespace credal {

namespace {

void check_strictly_positive(const CredalSet& cs, const std::string& where) {
  const int n = cs.space()->size();
  if (const auto* lin = std::get_if<LinearRep>(&cs.rep())) {
    for (int i = 0; i < n; ++i)
      if (!(lin->mass[i] > 0.0))
        throw validation_error(where + ": zero entry in linear row");
    return;
  }
  if (const auto* vx = std::get_if<VerticesRep>(&cs.rep())) {
    for (const auto& v : vx->vertices)
      for (int i = 0; i < n; ++i)
        if (!(v[i] > 0.0))
          throw validation_error(where + ": zero entry in a vertex");
    return;
  }
  if (const auto* iv = std::get_if<IntervalsRep>(&cs.rep())) {
    for (int i = 0; i < n; ++i)
      if (!(iv->lower[i] > 0.0))
        throw validation_error(where + ": interval lower bound not positive");
    return;
  }
  // Polytope: minimum of every coordinate over the set, with a margin.
  for (int i = 0; i < n; ++i) {
    double lo = cs.eval_lower(Gamble::indicator(cs.space(), {i})).value;
    if (lo < 1e-9)
      throw validation_error(where + ": polytope admits coordinate " +
                             std::to_string(i) + " below the 1e-9 margin");
  }
}

}  // namespace

CredalNet::CredalNet(const std::vector<NodeSpec>& specs) {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> pnames;
  std::vector<SpacePtr> spaces;
  for (const auto& s : specs) {
    names.push_back(s.name);
    pnames.push_back(s.parents);
    if (!s.states) throw validation_error("network: null state space");
    spaces.push_back(s.states);
  }
  // Graph resolution identical to the Bayesian case.
  {
    const int n = static_cast<int>(names.size());
    for (int i = 0; i < n; ++i) {
      if (names[i].empty()) throw validation_error("network: empty node name");
      if (!index_.emplace(names[i], i).second)
        throw validation_error("network: duplicate node '" + names[i] + "'");
    }
    parents_.resize(n);
    for (int i = 0; i < n; ++i) {
      for (const auto& pname : pnames[i]) {
        auto it = index_.find(pname);
        if (it == index_.end())
          throw validation_error("node '" + names[i] + "': unknown parent '" +
                                 pname + "'");
        if (it->second == i)
          throw validation_error("node '" + names[i] + "': self-loop");
        if (std::find(parents_[i].begin(), parents_[i].end(), it->second) !=
            parents_[i].end())
          throw validation_error("node '" + names[i] +
                                 "': duplicate parent '" + pname + "'");
        parents_[i].push_back(it->second);
      }
    }
    topological_order(parents_);
  }

  for (int i = 0; i < static_cast<int>(specs.size()); ++i) {
    const auto& s = specs[i];
    long long rows = 1;
    for (int p : parents_[i]) rows *= spaces[p]->size();
    if (static_cast<long long>(s.rows.size()) != rows)
      throw validation_error("node '" + s.name + "': expected " +
                             std::to_string(rows) + " rows, got " +
                             std::to_string(s.rows.size()));
    Node node;
    node.name = s.name;
    node.states = s.states;
    node.parents = parents_[i];
    for (size_t r = 0; r < s.rows.size(); ++r) {
      require_same_space(s.states, s.rows[r].space(),
                         "credal network row space");
      check_strictly_positive(s.rows[r], "node '" + s.name + "' row " +
                                             std::to_string(r));
    }
    node.rows = s.rows;
    nodes_.push_back(std::move(node));
  }
}

CredalNet CredalNet::from_bayes(const BayesNet& net) {
  std::vector<NodeSpec> specs;
  for (int i = 0; i < net.size(); ++i) {
    const auto& nd = net.node(i);
    NodeSpec s;
    s.name = nd.name;
    s.states = nd.states;
    for (int p : nd.parents) s.parents.push_back(net.node(p).name);
    for (const auto& r : nd.rows) s.rows.push_back(CredalSet::linear(r));
    specs.push_back(std::move(s));
  }
  return CredalNet(specs);
}

int CredalNet::node_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw validation_error("network: unknown node '" + name + "'");
  return it->second;
}

const CredalNet::Node& CredalNet::node(int i) const {
  if (i < 0 || i >= size())
    throw validation_error("network: node index out of range");
  return nodes_[i];
}

int CredalNet::row_count(int node) const {
  return static_cast<int>(nodes_[node].rows.size());
}

int CredalNet::row_index(int node, const std::vector<int>& assignment) const {
  const Node& nd = nodes_[node];
  long long idx = 0;
  for (int p : nd.parents) {
    int v = assignment[p];
    if (v < 0 || v >= nodes_[p].states->size())
      throw validation_error("row_index: parent '" + nodes_[p].name +
                             "' not assigned");
    idx = idx * nodes_[p].states->size() + v;
  }
  return static_cast<int>(idx);
}

const CredalSet& CredalNet::row(int node,
                                const std::vector<int>& assignment) const {
  return nodes_[node].rows[row_index(node, assignment)];
}

Evidence evidence_from_labels(
    const CredalNet& net,
    const std::vector<std::pair<std::string, std::string>>& items) {
  Evidence e;
  for (const auto& [node, label] : items) {
    int v = net.node_index(node);
    if (e.count(v))
      throw validation_error("evidence: node '" + node + "' given twice");
    e[v] = net.node(v).states->index(label);
  }
  return e;
}

std::pair<double, double> local_bounds(const CredalSet& local, int state) {
  return local.element_bounds(state);
}

double min_local_ratio(const CredalSet& local, int c_num, int c_den) {
  const int n = local.space()->size();
  if (c_num < 0 || c_num >= n || c_den < 0 || c_den >= n || c_num == c_den)
    throw validation_error("min_local_ratio: bad states");
  if (const auto* lin = std::get_if<LinearRep>(&local.rep()))
    return lin->mass[c_num] / lin->mass[c_den];
  if (const auto* vx = std::get_if<VerticesRep>(&local.rep())) {
    // A linear-fractional function attains its minimum over a polytope at an
    // extreme point.
    double best = 0.0;
    bool have = false;
    for (const auto& v : vx->vertices) {
      double r = v[c_num] / v[c_den];
      if (!have || r < best) best = r;
      have = true;
    }
    return best;
  }
  if (const auto* iv = std::get_if<IntervalsRep>(&local.rep())) {
    // Reachability lets both bounds be attained by one mass function.
    return iv->lower[c_num] / iv->upper[c_den];
  }
  const auto& po = std::get<PolytopeRep>(local.rep());
  FractionalProgram fp;
  fp.num_vars = n;
  fp.numerator.assign(n, 0.0);
  fp.numerator[c_num] = 1.0;
  fp.denominator.assign(n, 0.0);
  fp.denominator[c_den] = 1.0;
  fp.rows = po.constraints;
  LinearConstraint sum;
  sum.coeffs.assign(n, 1.0);
  sum.rel = Rel::EQ;
  sum.rhs = 1.0;
  fp.rows.push_back(std::move(sum));
  return min_ratio(fp).value;
}

namespace {

struct CredalContext {
  const CredalNet* net;
  int class_node;
  std::vector<int> assignment;
  std::vector<bool> fixed;
};

template <class Ratio>
double min_over_free(CredalContext& ctx, const std::vector<int>& free_nodes,
                     const Ratio& ratio) {
  if (free_nodes.empty()) return ratio(ctx.assignment);
  double best = 0.0;
  bool have = false;
  std::vector<int> digits(free_nodes.size(), 0);
  for (;;) {
    for (size_t k = 0; k < free_nodes.size(); ++k)
      ctx.assignment[free_nodes[k]] = digits[k];
    double v = ratio(ctx.assignment);
    if (!have || v < best) best = v;
    have = true;
    size_t k = free_nodes.size();
    while (k-- > 0) {
      if (++digits[k] < ctx.net->node(free_nodes[k]).states->size()) break;
      digits[k] = 0;
      if (k == 0) {
        for (int fn : free_nodes) ctx.assignment[fn] = -1;
        return best;
      }
    }
  }
}

}  // namespace

double lmu_product(const CredalNet& net, int class_node, int c_num, int c_den,
                   const Evidence& evidence, const Evidence& cutset_values) {
  const int n = net.size();
  if (class_node < 0 || class_node >= n)
    throw validation_error("lmu_product: class node out of range");
  if (c_num == c_den)
    throw validation_error("lmu_product: class states must differ");

  CredalContext ctx;
  ctx.net = &net;
  ctx.class_node = class_node;
  ctx.assignment.assign(n, -1);
  ctx.fixed.assign(n, false);
  auto apply = [&](const Evidence& ev, const char* what) {
    for (const auto& [v, s] : ev) {
      if (v < 0 || v >= n)
        throw validation_error(std::string(what) + ": node out of range");
      if (v == class_node)
        throw validation_error(std::string(what) +
                               ": must not include the class node");
      if (ctx.fixed[v])
        throw validation_error(std::string(what) + ": node '" +
                               net.node(v).name + "' already fixed");
      if (s < 0 || s >= net.node(v).states->size())
        throw validation_error(std::string(what) + ": state out of range");
      ctx.fixed[v] = true;
      ctx.assignment[v] = s;
    }
  };
  apply(evidence, "evidence");
  apply(cutset_values, "cutset");

  ParentLists view = drop_out_arcs(net.parents(), ctx.fixed);
  std::vector<int> bplus = markov_blanket_plus(view, class_node);
  if (!is_singly_connected(view, bplus))
    throw precondition_error(
        "lmu_product: extended blanket is multiply connected; condition on a "
        "loop cutset first");

  double product = 1.0;

  {
    std::vector<int> free_nodes;
    for (int p : net.parents()[class_node])
      if (!ctx.fixed[p]) free_nodes.push_back(p);
    product *= min_over_free(ctx, free_nodes, [&](const std::vector<int>& a) {
      return min_local_ratio(net.row(class_node, a), c_num, c_den);
    });
  }

  for (int ch = 0; ch < n; ++ch) {
    const auto& ps = net.parents()[ch];
    if (std::find(ps.begin(), ps.end(), class_node) == ps.end()) continue;
    std::vector<int> free_nodes;
    if (!ctx.fixed[ch]) free_nodes.push_back(ch);
    for (int p : ps)
      if (!ctx.fixed[p] && p != class_node &&
          std::find(free_nodes.begin(), free_nodes.end(), p) ==
              free_nodes.end())
        free_nodes.push_back(p);
    product *= min_over_free(ctx, free_nodes, [&](std::vector<int>& a) {
      int val = a[ch];
      a[class_node] = c_num;
      double num = local_bounds(net.row(ch, a), val).first;
      a[class_node] = c_den;
      double den = local_bounds(net.row(ch, a), val).second;
      a[class_node] = -1;
      return num / den;
    });
  }

  return product;
}

namespace {

PairDominance credal_dominance_with_cutset(const CredalNet& net,
                                           int class_node, int c_num,
                                           int c_den, const Evidence& evidence,
                                           const std::vector<int>& cutset,
                                           long long assignment_cap) {
  PairDominance out;
  out.c_num = c_num;
  out.c_den = c_den;
  out.cutset = cutset;

  long long total = 1;
  for (int v : cutset) {
    total *= net.node(v).states->size();
    if (total > assignment_cap)
      throw cap_error(
          "credal_dominance_credal: cutset assignments exceed cap " +
          std::to_string(assignment_cap));
  }
  out.assignments = total;
  const bool keep = total <= 4096;

  double best = 0.0;
  bool have = false;
  std::vector<int> radix;
  for (int v : cutset) radix.push_back(net.node(v).states->size());
  for (long long flat = 0; flat < total; ++flat) {
    Evidence cv;
    std::vector<int> digits;
    if (!cutset.empty()) {
      digits = unflatten(static_cast<int>(flat), radix);
      for (size_t k = 0; k < cutset.size(); ++k) cv[cutset[k]] = digits[k];
    }
    double v = lmu_product(net, class_node, c_num, c_den, evidence, cv);
    if (keep) out.per_assignment.push_back({digits, v});
    if (!have || v < best) best = v;
    have = true;
  }
  out.value = best;
  out.dominant = best > 1.0;
  return out;
}

std::vector<int> cutset_for(const CredalNet& net, int class_node,
                            const Evidence& evidence) {
  std::vector<bool> fixed(net.size(), false);
  for (const auto& [v, s] : evidence) {
    (void)s;
    fixed[v] = true;
  }
  ParentLists view = drop_out_arcs(net.parents(), fixed);
  std::vector<int> bplus = markov_blanket_plus(view, class_node);
  if (is_singly_connected(view, bplus)) return {};
  return find_loop_cutset(net.parents(), class_node, fixed);
}

}  // namespace

PairDominance credal_dominance_credal(const CredalNet& net, int class_node,
                                      int c_num, int c_den,
                                      const Evidence& evidence,
                                      long long assignment_cap) {
  return credal_dominance_with_cutset(net, class_node, c_num, c_den, evidence,
                                      cutset_for(net, class_node, evidence),
                                      assignment_cap);
}

DominanceReport classify_credal(const CredalNet& net, int class_node,
                                const Evidence& evidence,
                                const ClassifyOptions& opts) {
  if (evidence.count(class_node))
    throw validation_error("classify_credal: class node cannot be evidence");
  const int m = net.node(class_node).states->size();
  DominanceReport rep;
  rep.class_name = net.node(class_node).name;
  rep.class_labels = net.node(class_node).states->labels();
  rep.value.assign(m, std::vector<double>(m, 1.0));
  rep.dominates.assign(m, std::vector<bool>(m, false));
  rep.detail.assign(m, std::vector<PairDominance>(m));

  std::vector<int> cutset = cutset_for(net, class_node, evidence);
  for (int v : cutset) {
    rep.cutset.push_back(net.node(v).name);
    rep.cutset_states.push_back(net.node(v).states->labels());
  }

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      PairDominance pd = credal_dominance_with_cutset(
          net, class_node, i, j, evidence, cutset, opts.assignment_cap);
      rep.value[i][j] = pd.value;
      rep.dominates[i][j] = pd.dominant;
      rep.cutset_assignments = pd.assignments;
      rep.detail[i][j] = std::move(pd);
    }
  }
  for (int j = 0; j < m; ++j) {
    bool beaten = false;
    for (int i = 0; i < m; ++i)
      if (rep.dominates[i][j]) beaten = true;
    if (!beaten) rep.undominated.push_back(j);
  }
  if (rep.undominated.empty())
    throw error("classify_credal: dominance produced an empty maximal set");
  for (size_t a = 0; a < rep.undominated.size(); ++a) {
    for (size_t b = a + 1; b < rep.undominated.size(); ++b) {
      int i = rep.undominated[a], j = rep.undominated[b];
      bool equiv = std::fabs(rep.value[i][j] - 1.0) <= opts.equivalence_tol &&
                   std::fabs(rep.value[j][i] - 1.0) <= opts.equivalence_tol;
      rep.survivor_pairs.emplace_back(
          i, j,
          equiv ? DominanceReport::PairRelation::Equivalent
                : DominanceReport::PairRelation::Incomparable);
    }
  }
  return rep;
}

}  // namespace credal
