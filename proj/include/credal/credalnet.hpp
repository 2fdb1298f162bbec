#pragma once

#include "credal/bayesnet.hpp"
#include "credal/credal_set.hpp"

namespace credal {

// A network whose local models are credal sets over the node's states, one
// per parent configuration.  Representations may be mixed across nodes and
// rows.  Every member mass function must be strictly positive: linear and
// vertex rows entrywise, interval rows through their lower bounds, polytope
// rows through per-coordinate minima (margin 1e-9).
class CredalNet {
 public:
  struct NodeSpec {
    std::string name;
    SpacePtr states;
    std::vector<std::string> parents;
    std::vector<CredalSet> rows;  // last-declared parent varies fastest
  };

  struct Node {
    std::string name;
    SpacePtr states;
    std::vector<int> parents;
    std::vector<CredalSet> rows;
  };

  explicit CredalNet(const std::vector<NodeSpec>& specs);

  // Point-set network with the same graph and rows as a Bayesian network.
  static CredalNet from_bayes(const BayesNet& net);

  int size() const { return static_cast<int>(nodes_.size()); }
  int node_index(const std::string& name) const;
  const Node& node(int i) const;
  const ParentLists& parents() const { return parents_; }

  int row_count(int node) const;
  int row_index(int node, const std::vector<int>& assignment) const;
  const CredalSet& row(int node, const std::vector<int>& assignment) const;

 private:
  std::vector<Node> nodes_;
  std::map<std::string, int> index_;
  ParentLists parents_;
};

Evidence evidence_from_labels(
    const CredalNet& net,
    const std::vector<std::pair<std::string, std::string>>& items);

// Lower/upper probability of a state under one local credal set.
std::pair<double, double> local_bounds(const CredalSet& local, int state);

// min over the local set of p(c_num) / p(c_den); both states of the same
// row, minimized jointly.
double min_local_ratio(const CredalSet& local, int c_num, int c_den);

// Credal analogue of mu_product over the strong extension: the class factor
// minimizes the row ratio jointly, each child factor divides the lower bound
// of the numerator row by the upper bound of the denominator row (different
// rows, independently specified).
double lmu_product(const CredalNet& net, int class_node, int c_num, int c_den,
                   const Evidence& evidence, const Evidence& cutset_values);

PairDominance credal_dominance_credal(const CredalNet& net, int class_node,
                                      int c_num, int c_den,
                                      const Evidence& evidence,
                                      long long assignment_cap = 1LL << 20);

DominanceReport classify_credal(const CredalNet& net, int class_node,
                                const Evidence& evidence,
                                const ClassifyOptions& opts = {});

}  // namespace credal
