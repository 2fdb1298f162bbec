#include "credal/bayesnet.hpp"

#include <algorithm>
#include <cmath>

namespace credal {

namespace {

// Shared by BayesNet and CredalNet construction: resolve parent names and
// validate the graph shape.  Returns parent lists.
ParentLists resolve_graph(const std::vector<std::string>& names,
                          const std::vector<std::vector<std::string>>& parents,
                          std::map<std::string, int>& index) {
  const int n = static_cast<int>(names.size());
  for (int i = 0; i < n; ++i) {
    if (names[i].empty()) throw validation_error("network: empty node name");
    if (!index.emplace(names[i], i).second)
      throw validation_error("network: duplicate node '" + names[i] + "'");
  }
  ParentLists pl(n);
  for (int i = 0; i < n; ++i) {
    for (const auto& pname : parents[i]) {
      auto it = index.find(pname);
      if (it == index.end())
        throw validation_error("node '" + names[i] + "': unknown parent '" +
                               pname + "'");
      if (it->second == i)
        throw validation_error("node '" + names[i] + "': self-loop");
      if (std::find(pl[i].begin(), pl[i].end(), it->second) != pl[i].end())
        throw validation_error("node '" + names[i] + "': duplicate parent '" +
                               pname + "'");
      pl[i].push_back(it->second);
    }
  }
  topological_order(pl);  // throws on a directed cycle
  return pl;
}

long long row_count_for(const ParentLists& parents,
                        const std::vector<SpacePtr>& spaces, int node) {
  long long rows = 1;
  for (int p : parents[node]) {
    rows *= spaces[p]->size();
    if (rows > (1LL << 30))
      throw validation_error("network: parent configuration overflow");
  }
  return rows;
}

}  // namespace

BayesNet::BayesNet(const std::vector<NodeSpec>& specs, double row_tol) {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> pnames;
  std::vector<SpacePtr> spaces;
  for (const auto& s : specs) {
    names.push_back(s.name);
    pnames.push_back(s.parents);
    if (!s.states) throw validation_error("network: null state space");
    spaces.push_back(s.states);
  }
  parents_ = resolve_graph(names, pnames, index_);

  for (int i = 0; i < static_cast<int>(specs.size()); ++i) {
    const auto& s = specs[i];
    long long rows = row_count_for(parents_, spaces, i);
    if (static_cast<long long>(s.rows.size()) != rows)
      throw validation_error("node '" + s.name + "': expected " +
                             std::to_string(rows) + " rows, got " +
                             std::to_string(s.rows.size()));
    Node node;
    node.name = s.name;
    node.states = s.states;
    node.parents = parents_[i];
    node.rows.reserve(s.rows.size());
    for (size_t r = 0; r < s.rows.size(); ++r) {
      for (double v : s.rows[r])
        if (!(v > 0.0))
          throw validation_error("node '" + s.name + "' row " +
                                 std::to_string(r) +
                                 ": entries must be strictly positive");
      node.rows.emplace_back(s.states, s.rows[r], row_tol);
    }
    nodes_.push_back(std::move(node));
  }
}

int BayesNet::node_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw validation_error("network: unknown node '" + name + "'");
  return it->second;
}

const BayesNet::Node& BayesNet::node(int i) const {
  if (i < 0 || i >= size())
    throw validation_error("network: node index out of range");
  return nodes_[i];
}

int BayesNet::row_count(int node) const {
  return static_cast<int>(nodes_[node].rows.size());
}

int BayesNet::row_index(int node, const std::vector<int>& assignment) const {
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

const MassFunction& BayesNet::row(int node,
                                  const std::vector<int>& assignment) const {
  return nodes_[node].rows[row_index(node, assignment)];
}

double BayesNet::cpt(int node, int state,
                     const std::vector<int>& assignment) const {
  return row(node, assignment)[state];
}

double BayesNet::joint_mass(const std::vector<int>& assignment) const {
  if (static_cast<int>(assignment.size()) != size())
    throw validation_error("joint_mass: need a full assignment");
  double p = 1.0;
  for (int v = 0; v < size(); ++v) p *= cpt(v, assignment[v], assignment);
  return p;
}

Evidence evidence_from_labels(
    const BayesNet& net,
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

namespace {

struct FactorContext {
  const BayesNet* net;
  int class_node;
  std::vector<int> assignment;  // -1 for unassigned
  std::vector<bool> fixed;      // evidence or cutset
};

// Minimum over the joint configurations of the given free nodes of
// ratio(assignment); assignment entries of free nodes are mutated in place.
template <class Ratio>
double min_over_free(FactorContext& ctx, const std::vector<int>& free_nodes,
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
    // increment mixed radix, last digit fastest
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

double mu_product(const BayesNet& net, int class_node, int c_num, int c_den,
                  const Evidence& evidence, const Evidence& cutset_values) {
  const int n = net.size();
  if (class_node < 0 || class_node >= n)
    throw validation_error("mu_product: class node out of range");
  if (c_num == c_den)
    throw validation_error("mu_product: class states must differ");

  FactorContext ctx;
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
        "mu_product: extended blanket is multiply connected; condition on a "
        "loop cutset first");

  double product = 1.0;

  // Class factor: minimize the ratio of the class rows over the class
  // node's free parents.
  {
    std::vector<int> free_nodes;
    for (int p : net.parents()[class_node])
      if (!ctx.fixed[p]) free_nodes.push_back(p);
    double mu = min_over_free(
        ctx, free_nodes, [&](const std::vector<int>& a) {
          const MassFunction& r = net.row(class_node, a);
          return r[c_num] / r[c_den];
        });
    product *= mu;
  }

  // One factor per child of the class node: numerator row sees c_num, the
  // denominator row sees c_den; minimize over the child's own value (if
  // unobserved) and its free co-parents.
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
    double mu = min_over_free(ctx, free_nodes, [&](std::vector<int>& a) {
      int val = a[ch];
      a[class_node] = c_num;
      double num = net.cpt(ch, val, a);
      a[class_node] = c_den;
      double den = net.cpt(ch, val, a);
      a[class_node] = -1;
      return num / den;
    });
    product *= mu;
  }

  return product;
}

namespace {

PairDominance dominance_with_cutset(const BayesNet& net, int class_node,
                                    int c_num, int c_den,
                                    const Evidence& evidence,
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
      throw cap_error("credal_dominance: cutset assignments exceed cap " +
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
    double v = mu_product(net, class_node, c_num, c_den, evidence, cv);
    if (keep) out.per_assignment.push_back({digits, v});
    if (!have || v < best) best = v;
    have = true;
  }
  out.value = best;
  out.dominant = best > 1.0;
  return out;
}

std::vector<int> cutset_for(const BayesNet& net, int class_node,
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

PairDominance credal_dominance(const BayesNet& net, int class_node, int c_num,
                               int c_den, const Evidence& evidence,
                               long long assignment_cap) {
  return dominance_with_cutset(net, class_node, c_num, c_den, evidence,
                               cutset_for(net, class_node, evidence), assignment_cap);
}

DominanceReport classify(const BayesNet& net, int class_node,
                         const Evidence& evidence,
                         const ClassifyOptions& opts) {
  if (evidence.count(class_node))
    throw validation_error("classify: class node cannot be evidence");
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
      PairDominance pd = dominance_with_cutset(net, class_node, i, j,
                                               evidence, cutset,
                                               opts.assignment_cap);
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
    throw error("classify: dominance produced an empty maximal set");
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

  if (opts.with_posterior) {
    rep.has_posterior = true;
    for (int c = 0; c < m; ++c)
      rep.posterior.push_back(posterior_bounds(net, class_node, c, evidence,
                                               opts.completion_cap));
  }
  if (opts.with_naive) {
    rep.has_naive = true;
    for (int c = 0; c < m; ++c)
      rep.naive.push_back(naive_posterior(net, class_node, c, evidence,
                                          opts.completion_cap));
  }
  return rep;
}

namespace {

// Enumerate completions of the non-evidence, non-class nodes and hand each
// full assignment (with the class slot left at -1) to fn.
template <class Fn>
void for_each_completion(const BayesNet& net, int class_node,
                         const Evidence& evidence, long long cap,
                         const char* what, const Fn& fn) {
  const int n = net.size();
  std::vector<int> assignment(n, -1);
  std::vector<int> free_nodes;
  for (const auto& [v, s] : evidence) assignment[v] = s;
  if (evidence.count(class_node))
    throw validation_error(std::string(what) +
                           ": class node cannot be evidence");
  for (int v = 0; v < n; ++v)
    if (v != class_node && !evidence.count(v)) free_nodes.push_back(v);

  long long total = 1;
  for (int v : free_nodes) {
    total *= net.node(v).states->size();
    if (total > cap)
      throw cap_error(std::string(what) + ": completion count exceeds cap " +
                      std::to_string(cap));
  }
  std::vector<int> digits(free_nodes.size(), 0);
  for (long long it = 0; it < total; ++it) {
    for (size_t k = 0; k < free_nodes.size(); ++k)
      assignment[free_nodes[k]] = digits[k];
    fn(assignment);
    size_t k = free_nodes.size();
    while (k-- > 0) {
      if (++digits[k] < net.node(free_nodes[k]).states->size()) break;
      digits[k] = 0;
    }
  }
}

}  // namespace

std::pair<double, double> posterior_bounds(const BayesNet& net, int class_node,
                                           int class_state,
                                           const Evidence& evidence,
                                           long long cap) {
  const int m = net.node(class_node).states->size();
  if (class_state < 0 || class_state >= m)
    throw validation_error("posterior_bounds: class state out of range");
  double lo = 1.0, hi = 0.0;
  bool have = false;
  for_each_completion(
      net, class_node, evidence, cap, "posterior_bounds",
      [&](std::vector<int>& a) {
        double numer = 0.0, denom = 0.0;
        for (int c = 0; c < m; ++c) {
          a[class_node] = c;
          double w = net.joint_mass(a);
          denom += w;
          if (c == class_state) numer = w;
        }
        a[class_node] = -1;
        double ratio = numer / denom;
        lo = have ? std::min(lo, ratio) : ratio;
        hi = have ? std::max(hi, ratio) : ratio;
        have = true;
      });
  return {lo, hi};
}

double naive_posterior(const BayesNet& net, int class_node, int class_state,
                       const Evidence& evidence, long long cap) {
  const int m = net.node(class_node).states->size();
  if (class_state < 0 || class_state >= m)
    throw validation_error("naive_posterior: class state out of range");
  double numer = 0.0, denom = 0.0;
  for_each_completion(net, class_node, evidence, cap, "naive_posterior",
                      [&](std::vector<int>& a) {
                        for (int c = 0; c < m; ++c) {
                          a[class_node] = c;
                          double w = net.joint_mass(a);
                          denom += w;
                          if (c == class_state) numer += w;
                        }
                        a[class_node] = -1;
                      });
  return numer / denom;
}

}  // namespace credal
