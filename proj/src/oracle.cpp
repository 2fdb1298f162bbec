#include "credal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace credal {

double brute_min_ratio(const BayesNet& net, int class_node, int c_num,
                       int c_den, const Evidence& evidence, long long cap) {
  const int n = net.size();
  std::vector<int> free_nodes;
  std::vector<int> assignment(n, -1);
  for (const auto& [v, s] : evidence) {
    if (v == class_node)
      throw validation_error("brute_min_ratio: class node cannot be evidence");
    assignment[v] = s;
  }
  for (int v = 0; v < n; ++v)
    if (v != class_node && !evidence.count(v)) free_nodes.push_back(v);
  long long total = 1;
  for (int v : free_nodes) {
    total *= net.node(v).states->size();
    if (total > cap)
      throw cap_error("brute_min_ratio: enumeration exceeds cap " +
                      std::to_string(cap));
  }
  double best = 0.0;
  bool have = false;
  std::vector<int> digits(free_nodes.size(), 0);
  for (long long it = 0; it < total; ++it) {
    for (size_t k = 0; k < free_nodes.size(); ++k)
      assignment[free_nodes[k]] = digits[k];
    assignment[class_node] = c_num;
    double num = net.joint_mass(assignment);
    assignment[class_node] = c_den;
    double den = net.joint_mass(assignment);
    double r = num / den;
    if (!have || r < best) best = r;
    have = true;
    size_t k = free_nodes.size();
    while (k-- > 0) {
      if (++digits[k] < net.node(free_nodes[k]).states->size()) break;
      digits[k] = 0;
    }
  }
  return best;
}

std::vector<MassFunction> interval_extreme_points(const CredalSet& cs) {
  const auto* iv = std::get_if<IntervalsRep>(&cs.rep());
  if (!iv)
    throw validation_error("interval_extreme_points: not an interval set");
  const int n = cs.space()->size();
  if (n > 7)
    throw cap_error("interval_extreme_points: space too large");
  // Every extreme point is produced by some allocation order: start all at
  // the lower bounds and saturate to the upper bounds in permutation order.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<MassFunction> out;
  do {
    std::vector<double> p = iv->lower;
    double budget = 1.0;
    for (double l : iv->lower) budget -= l;
    for (int idx : perm) {
      if (budget <= 0.0) break;
      double take = std::min(iv->upper[idx] - iv->lower[idx], budget);
      p[idx] += take;
      budget -= take;
    }
    bool dup = false;
    for (const auto& q : out) {
      double d = 0.0;
      for (int i = 0; i < n; ++i) d = std::max(d, std::fabs(q[i] - p[i]));
      if (d < 1e-12) dup = true;
    }
    if (!dup) out.emplace_back(cs.space(), std::move(p), 1e-9);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

// Per-row vertex lists for the whole credal net, flattened node by node.
struct RowChoices {
  std::vector<std::vector<MassFunction>> rows;  // global row order
  std::vector<std::pair<int, int>> owner;       // (node, row index)
};

RowChoices row_choices(const CredalNet& net) {
  RowChoices rc;
  for (int v = 0; v < net.size(); ++v) {
    for (int r = 0; r < net.row_count(v); ++r) {
      const CredalSet& cs = net.node(v).rows[r];
      std::vector<MassFunction> verts;
      if (const auto* lin = std::get_if<LinearRep>(&cs.rep())) {
        verts.push_back(lin->mass);
      } else if (const auto* vx = std::get_if<VerticesRep>(&cs.rep())) {
        verts = vx->vertices;
      } else if (std::holds_alternative<IntervalsRep>(cs.rep())) {
        verts = interval_extreme_points(cs);
      } else {
        throw validation_error(
            "brute_credal_min_ratio: polytope rows have no vertex list");
      }
      rc.rows.push_back(std::move(verts));
      rc.owner.push_back({v, r});
    }
  }
  return rc;
}

}  // namespace

double brute_credal_min_ratio(const CredalNet& net, int class_node, int c_num,
                              int c_den, const Evidence& evidence,
                              long long cap) {
  RowChoices rc = row_choices(net);
  long long combos = 1;
  for (const auto& verts : rc.rows) {
    combos *= static_cast<long long>(verts.size());
    if (combos > cap)
      throw cap_error("brute_credal_min_ratio: vertex selections exceed cap " +
                      std::to_string(cap));
  }

  // Completion count against the cap as well.
  const int n = net.size();
  if (evidence.count(class_node))
    throw validation_error(
        "brute_credal_min_ratio: class node cannot be evidence");
  std::vector<int> free_nodes;
  for (int v = 0; v < n; ++v)
    if (v != class_node && !evidence.count(v)) free_nodes.push_back(v);
  long long completions = 1;
  for (int v : free_nodes) {
    completions *= net.node(v).states->size();
    if (completions > cap)
      throw cap_error("brute_credal_min_ratio: completions exceed cap " +
                      std::to_string(cap));
  }

  // One Bayesian network per vertex selection.
  std::vector<size_t> choice(rc.rows.size(), 0);
  double best = 0.0;
  bool have = false;
  for (;;) {
    std::vector<BayesNet::NodeSpec> specs(net.size());
    for (int v = 0; v < net.size(); ++v) {
      specs[v].name = net.node(v).name;
      specs[v].states = net.node(v).states;
      for (int p : net.node(v).parents)
        specs[v].parents.push_back(net.node(p).name);
    }
    for (size_t g = 0; g < rc.rows.size(); ++g) {
      auto [v, r] = rc.owner[g];
      (void)r;
      specs[v].rows.push_back(rc.rows[g][choice[g]].probs());
    }
    BayesNet bn(specs);
    double val =
        brute_min_ratio(bn, class_node, c_num, c_den, evidence, cap);
    if (!have || val < best) best = val;
    have = true;

    size_t k = rc.rows.size();
    while (k-- > 0) {
      if (++choice[k] < rc.rows[k].size()) break;
      choice[k] = 0;
      if (k == 0) return best;
    }
  }
}

double brute_regular_extension(const CredalSet& prior,
                               const MultiValuedMap& mvm, int o,
                               const Gamble& f, long long cap) {
  require_same_space(prior.space(), mvm.states(), "brute_regular_extension");
  require_same_space(prior.space(), f.space(), "brute_regular_extension");
  std::vector<MassFunction> verts;
  if (const auto* lin = std::get_if<LinearRep>(&prior.rep()))
    verts.push_back(lin->mass);
  else if (const auto* vx = std::get_if<VerticesRep>(&prior.rep()))
    verts = vx->vertices;
  else
    throw validation_error(
        "brute_regular_extension: prior must be linear or vertex form");

  const int nx = prior.space()->size();
  long long selections = 1;
  for (int x = 0; x < nx; ++x) {
    selections *= static_cast<long long>(mvm.image(x).size());
    if (selections > cap)
      throw cap_error("brute_regular_extension: selections exceed cap " +
                      std::to_string(cap));
  }

  double best = 0.0;
  bool have = false;
  std::vector<size_t> pick(nx, 0);
  for (;;) {
    // The event s^{-1}(o) for this selection.
    std::vector<int> event;
    for (int x = 0; x < nx; ++x)
      if (mvm.image(x)[pick[x]] == o) event.push_back(x);
    if (!event.empty()) {
      for (const auto& p : verts) {
        double pb = 0.0, pf = 0.0;
        for (int x : event) {
          pb += p[x];
          pf += p[x] * f[x];
        }
        if (pb > 0.0) {
          double val = pf / pb;
          if (!have || val < best) best = val;
          have = true;
        }
      }
    }
    size_t k = nx;
    bool done = true;
    while (k-- > 0) {
      if (++pick[k] < mvm.image(static_cast<int>(k)).size()) {
        done = false;
        break;
      }
      pick[k] = 0;
    }
    if (done) break;
  }
  if (!have) return f.min_value();  // observation has zero upper probability
  return best;
}

MultiValuedMap materialize_missing_data_map(const MissingnessPattern& pattern,
                                            long long cap) {
  const auto& attrs = pattern.attributes();
  std::vector<SpacePtr> obs_factors;
  long long total = 1;
  for (const auto& a : attrs) {
    std::vector<std::string> labels = a->labels();
    labels.push_back("*");
    obs_factors.push_back(FiniteSpace::make(a->name() + "?", labels));
    total *= static_cast<long long>(labels.size());
    if (total > cap)
      throw cap_error("materialize_missing_data_map: observation space "
                      "exceeds cap " +
                      std::to_string(cap));
  }
  SpacePtr obs = obs_factors.size() == 1 ? obs_factors[0]
                                         : product_space(obs_factors);
  const SpacePtr& states = pattern.attribute_space();

  std::vector<int> sradix, oradix;
  for (const auto& a : attrs) sradix.push_back(a->size());
  for (const auto& a : obs_factors) oradix.push_back(a->size());

  std::vector<std::vector<int>> images(states->size());
  const int k = static_cast<int>(attrs.size());
  for (int x = 0; x < states->size(); ++x) {
    std::vector<int> xs = unflatten(x, sradix);
    // Each coordinate independently shows the value or '*'.
    for (int mask = 0; mask < (1 << k); ++mask) {
      std::vector<int> od(k);
      for (int j = 0; j < k; ++j)
        od[j] = (mask >> j) & 1 ? attrs[j]->size() : xs[j];
      images[x].push_back(flat_index(od, oradix));
    }
  }
  return MultiValuedMap(states, obs, std::move(images));
}

int pattern_observation_index(const MissingnessPattern& pattern) {
  const auto& attrs = pattern.attributes();
  std::vector<int> oradix, od;
  for (size_t j = 0; j < attrs.size(); ++j) {
    oradix.push_back(attrs[j]->size() + 1);
    od.push_back(pattern.is_missing(static_cast<int>(j))
                     ? attrs[j]->size()
                     : *pattern.observed()[j]);
  }
  return flat_index(od, oradix);
}

}  // namespace credal
