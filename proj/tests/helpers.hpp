#pragma once

// Shared fixtures for the test binaries: deterministic random gambles, mass
// functions, Bayesian/credal nets and observation maps.

#include <random>
#include <string>
#include <vector>

#include "credal/bayesnet.hpp"
#include "credal/credalnet.hpp"
#include "credal/observation.hpp"

namespace testutil {

using namespace credal;

inline std::vector<double> random_row(std::mt19937& rng, int n,
                                      double floor = 0.05) {
  std::uniform_real_distribution<double> u(floor, 1.0);
  std::vector<double> p(n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += (p[i] = u(rng));
  for (int i = 0; i < n; ++i) p[i] /= s;
  return p;
}

inline Gamble random_gamble(std::mt19937& rng, const SpacePtr& sp,
                            double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(sp->size());
  for (auto& x : v) x = u(rng);
  return Gamble(sp, std::move(v));
}

inline SpacePtr small_space(const std::string& name, int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(name + std::to_string(i));
  return FiniteSpace::make(name, labels);
}

// A random DAG over n nodes where node i may take parents among 0..i-1
// (at most max_parents of them), with random strictly positive CPTs.
inline BayesNet random_net(std::mt19937& rng, int max_nodes = 7,
                           int max_states = 3, int max_parents = 3) {
  std::uniform_int_distribution<int> nn(2, max_nodes);
  std::uniform_int_distribution<int> ns(2, max_states);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int n = nn(rng);
  std::vector<BayesNet::NodeSpec> specs;
  std::vector<int> card(n);
  for (int i = 0; i < n; ++i) {
    BayesNet::NodeSpec s;
    s.name = "N" + std::to_string(i);
    card[i] = ns(rng);
    s.states = small_space(s.name, card[i]);
    int rows = 1;
    int taken = 0;
    for (int p = 0; p < i && taken < max_parents; ++p)
      if (coin(rng) < 0.4) {
        s.parents.push_back("N" + std::to_string(p));
        rows *= card[p];
        ++taken;
      }
    for (int r = 0; r < rows; ++r) s.rows.push_back(random_row(rng, card[i]));
    specs.push_back(std::move(s));
  }
  return BayesNet(specs);
}

inline Evidence random_evidence(std::mt19937& rng, const BayesNet& net,
                                int class_node, double p_observe = 0.4) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Evidence e;
  for (int v = 0; v < net.size(); ++v) {
    if (v == class_node || coin(rng) >= p_observe) continue;
    std::uniform_int_distribution<int> st(0, net.node(v).states->size() - 1);
    e[v] = st(rng);
  }
  return e;
}

// Does the dominance fast path apply: the class node's extended blanket is
// singly connected once evidence out-arcs are dropped.
inline bool fast_path_ok(const BayesNet& net, int class_node,
                         const Evidence& e) {
  std::vector<bool> fixed(net.size(), false);
  for (const auto& [v, s] : e) fixed[v] = true;
  ParentLists view = drop_out_arcs(net.parents(), fixed);
  return is_singly_connected(view, markov_blanket_plus(view, class_node));
}

inline Evidence random_evidence(std::mt19937& rng, const CredalNet& net,
                                int class_node, double p_observe = 0.4) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Evidence e;
  for (int v = 0; v < net.size(); ++v) {
    if (v == class_node || coin(rng) >= p_observe) continue;
    std::uniform_int_distribution<int> st(0, net.node(v).states->size() - 1);
    e[v] = st(rng);
  }
  return e;
}

inline bool fast_path_ok(const CredalNet& net, int class_node,
                         const Evidence& e) {
  std::vector<bool> fixed(net.size(), false);
  for (const auto& [v, s] : e) fixed[v] = true;
  ParentLists view = drop_out_arcs(net.parents(), fixed);
  return is_singly_connected(view, markov_blanket_plus(view, class_node));
}

// Vertices-representation credal net over the same kind of random DAG.
inline CredalNet random_vertex_net(std::mt19937& rng, int max_nodes = 5,
                                   int max_states = 3, int max_vertices = 3) {
  BayesNet base = random_net(rng, max_nodes, max_states, 2);
  std::uniform_int_distribution<int> nv(1, max_vertices);
  std::vector<CredalNet::NodeSpec> specs;
  for (int i = 0; i < base.size(); ++i) {
    const auto& nd = base.node(i);
    CredalNet::NodeSpec s;
    s.name = nd.name;
    s.states = nd.states;
    for (int p : nd.parents) s.parents.push_back(base.node(p).name);
    for (size_t r = 0; r < nd.rows.size(); ++r) {
      std::vector<MassFunction> vs;
      int k = nv(rng);
      for (int v = 0; v < k; ++v)
        vs.emplace_back(nd.states, random_row(rng, nd.states->size()));
      s.rows.push_back(CredalSet::vertices(std::move(vs)));
    }
    specs.push_back(std::move(s));
  }
  return CredalNet(specs);
}

// A random observation mechanism: every state gets a non-empty random image
// and every observation is made reachable.
inline MultiValuedMap random_mvm(std::mt19937& rng, const SpacePtr& states,
                                 const SpacePtr& obs) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> any_obs(0, obs->size() - 1);
  const int nx = states->size();
  const int no = obs->size();
  std::vector<std::vector<int>> images(nx);
  std::vector<bool> covered(no, false);
  for (int x = 0; x < nx; ++x) {
    for (int o = 0; o < no; ++o)
      if (coin(rng) < 0.5) images[x].push_back(o);
    if (images[x].empty()) images[x].push_back(any_obs(rng));
    for (int o : images[x]) covered[o] = true;
  }
  for (int o = 0; o < no; ++o)
    if (!covered[o]) {
      std::uniform_int_distribution<int> any_state(0, nx - 1);
      images[any_state(rng)].push_back(o);
    }
  return MultiValuedMap(states, obs, images);
}

}  // namespace testutil
