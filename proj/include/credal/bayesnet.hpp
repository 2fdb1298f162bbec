#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "credal/graph.hpp"
#include "credal/space.hpp"

namespace credal {

// node index -> state index
using Evidence = std::map<int, int>;

class BayesNet {
 public:
  struct NodeSpec {
    std::string name;
    SpacePtr states;
    std::vector<std::string> parents;
    // One row per parent configuration; the last-declared parent varies
    // fastest.  Entries must be strictly positive and each row must sum to
    // one within row_tol.
    std::vector<std::vector<double>> rows;
  };

  struct Node {
    std::string name;
    SpacePtr states;
    std::vector<int> parents;
    std::vector<MassFunction> rows;
  };

  explicit BayesNet(const std::vector<NodeSpec>& specs, double row_tol = 1e-9);

  int size() const { return static_cast<int>(nodes_.size()); }
  int node_index(const std::string& name) const;
  const Node& node(int i) const;
  const ParentLists& parents() const { return parents_; }

  // Number of parent configurations of a node.
  int row_count(int node) const;
  // Row index for an assignment that fixes at least the node's parents.
  int row_index(int node, const std::vector<int>& assignment) const;
  const MassFunction& row(int node, const std::vector<int>& assignment) const;
  double cpt(int node, int state, const std::vector<int>& assignment) const;

  // Probability of a full assignment (one value per node).
  double joint_mass(const std::vector<int>& assignment) const;

 private:
  std::vector<Node> nodes_;
  std::map<std::string, int> index_;
  ParentLists parents_;
};

Evidence evidence_from_labels(
    const BayesNet& net,
    const std::vector<std::pair<std::string, std::string>>& items);

// The factorised dominance test value for one cutset assignment: the product
// over the class node and its children of the local minimum ratios, equal to
// the minimum over all completions of the remaining free nodes of
// p(c_num, e, r) / p(c_den, e, r).  Requires the class node's extended
// blanket to be singly connected once evidence and cutset nodes have their
// outgoing arcs removed; throws precondition_error otherwise.
double mu_product(const BayesNet& net, int class_node, int c_num, int c_den,
                  const Evidence& evidence, const Evidence& cutset_values);

struct PairDominance {
  int c_num = 0, c_den = 0;
  double value = 0.0;   // min over cutset assignments of the factor product
  bool dominant = false;  // value strictly greater than 1
  std::vector<int> cutset;  // node indices, sorted; empty if none needed
  long long assignments = 1;
  // Per-assignment products (cutset values in cutset order), carried when
  // the assignment count is at most 4096.
  std::vector<std::pair<std::vector<int>, double>> per_assignment;
};

// Does class state c_num credally dominate c_den given the evidence?
// Multiply connected blankets are handled by conditioning on a loop cutset
// and minimizing over its assignments.
PairDominance credal_dominance(const BayesNet& net, int class_node, int c_num,
                               int c_den, const Evidence& evidence,
                               long long assignment_cap = 1LL << 20);

struct DominanceReport {
  std::string class_name;
  std::vector<std::string> class_labels;
  std::vector<std::vector<double>> value;    // [i][j]; diagonal fixed at 1
  std::vector<std::vector<bool>> dominates;  // strict, irreflexive
  // Full per-pair results ([i][j]; diagonal default-constructed), carrying
  // the per-cutset-assignment products.
  std::vector<std::vector<PairDominance>> detail;
  std::vector<int> undominated;              // ascending; never empty
  enum class PairRelation { Equivalent, Incomparable };
  // One entry per unordered pair of undominated states (i < j).
  std::vector<std::tuple<int, int, PairRelation>> survivor_pairs;
  std::vector<std::string> cutset;  // node names
  std::vector<std::vector<std::string>> cutset_states;  // labels per node
  long long cutset_assignments = 1;
  bool has_posterior = false;
  std::vector<std::pair<double, double>> posterior;  // per class state
  bool has_naive = false;
  std::vector<double> naive;  // per class state
};

struct ClassifyOptions {
  long long assignment_cap = 1LL << 20;
  long long completion_cap = 1LL << 20;
  bool with_posterior = false;
  bool with_naive = false;
  double equivalence_tol = 1e-9;
};

DominanceReport classify(const BayesNet& net, int class_node,
                         const Evidence& evidence,
                         const ClassifyOptions& opts = {});

// Exact posterior bounds for p(class = c | evidence) under an unknown
// missingness process: min/max over completions r of the unobserved
// non-class nodes of p0(c | e, r).  Enumerates completions; throws cap_error
// beyond the cap.
std::pair<double, double> posterior_bounds(const BayesNet& net, int class_node,
                                           int class_state,
                                           const Evidence& evidence,
                                           long long cap = 1LL << 20);

// Posterior p(class = c | e) obtained by ignoring missingness: marginalize
// the unobserved nodes.
double naive_posterior(const BayesNet& net, int class_node, int class_state,
                       const Evidence& evidence, long long cap = 1LL << 20);

}  // namespace credal
