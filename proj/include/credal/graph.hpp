#pragma once

#include <vector>

#include "credal/errors.hpp"

namespace credal {

// Directed acyclic graphs over nodes 0..n-1, given by parent lists.
using ParentLists = std::vector<std::vector<int>>;

// Topological order (parents before children); throws validation_error on a
// directed cycle.
std::vector<int> topological_order(const ParentLists& parents);

std::vector<std::vector<int>> children_lists(const ParentLists& parents);

// Remove all arcs leaving the marked nodes.  Conditioning on a node makes
// its outgoing arcs irrelevant for what lies below.
ParentLists drop_out_arcs(const ParentLists& parents,
                          const std::vector<bool>& fixed);

// The node, its parents, its children and its children's other parents.
// Sorted ascending.
std::vector<int> markov_blanket_plus(const ParentLists& parents, int node);

// Is the undirected skeleton restricted to the given nodes acyclic?
bool is_singly_connected(const ParentLists& parents,
                         const std::vector<int>& subset);

// Greedy loop cutset: repeatedly fix the eligible node of highest undirected
// degree inside the class node's extended blanket until the blanket is
// singly connected.  Eligible nodes are non-class, non-evidence blanket
// members with at least one outgoing arc on an undirected cycle (removing
// out-arcs of other nodes cannot break a loop).  Ties go to the lowest
// index.  Returns the chosen nodes, sorted.
std::vector<int> find_loop_cutset(const ParentLists& parents, int class_node,
                                  const std::vector<bool>& evidence);

}  // namespace credal
