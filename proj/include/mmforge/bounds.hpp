#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mmforge/eiglab.hpp"
#include "mmforge/graph.hpp"
#include "mmforge/rng.hpp"

namespace mmforge {

struct Provenance {
  std::string rule;
  std::string anchor;  // the fact the rule rests on, in words
};

struct BoundResult {
  std::size_t lower = 1;
  std::size_t upper = 0;
  std::vector<Provenance> provenance;
  std::optional<Certificate> witness;  // realizes `lower` when present

  bool exact() const { return lower == upper; }
  /// Tightens upper, recording the rule when it improves or ties.
  void offer_upper(std::size_t value, Provenance why);
};

/// upper = min(floor(n/2), M, floor(n/q)). Graphs without edges get n, since
/// scalar matrices are then allowed.
BoundResult basic_bounds(std::size_t n, std::optional<std::size_t> max_multiplicity = std::nullopt,
                         std::optional<std::size_t> q = std::nullopt, bool has_edges = true);

/// A graph on 2 n_half vertices with mr = n_half and q = 2 has Mm = n_half.
/// Both facts are asserted by the caller; throws ValidationError if either is false.
std::size_t two_value_balance(std::size_t n_half, bool mr_is_half, bool q_is_two);

struct InducedTree {
  std::vector<Vertex> vertices;
  bool exhaustive = false;
};

/// Largest induced tree by subset enumeration for n <= 12, otherwise greedy
/// growth from up to `budget` start vertices.
InducedTree max_induced_tree(const Graph& g, std::size_t budget = 4096);
/// Grows a tree from each of the first `budget` vertices, repeatedly adding
/// any vertex with exactly one neighbour in the tree; keeps the largest.
InducedTree greedy_induced_tree(const Graph& g, std::size_t budget = 4096);

/// An induced tree on n - k vertices gives Mm <= k + 1.
BoundResult induced_tree_bound(const Graph& g, const std::optional<std::vector<Vertex>>& tree_vertices = std::nullopt,
                               std::size_t budget = 4096);

/// Hub, pendant leaves hanging off the hub, and blocks (components of the rest,
/// each with at least two vertices and adjacent to the hub).
struct StarStructure {
  Vertex hub = 0;
  std::vector<std::vector<Vertex>> blocks;
  std::vector<Vertex> leaves;

  std::size_t p() const { return blocks.size(); }
  std::size_t m() const { return leaves.size(); }
};

/// All hubs for which g has the star shape.
std::vector<StarStructure> star_structures(const Graph& g);

/// For each star shape: floor((n - m - p - 1) / s) + 1 with s = ceil((t + 1) / 2),
/// where t = q(G) if given and 2 otherwise. Any matrix with an edge has t >= 2.
BoundResult star_bound(const Graph& g, std::optional<std::size_t> q = std::nullopt);

/// Best of the basic, induced-tree and star rules on an arbitrary graph.
BoundResult graph_bounds(const Graph& g);

/// Exact values for catalogued families, with a witness certificate.
/// Unrecognized cases fall back to graph_bounds.
BoundResult known_mm(const FamilyDescriptor& desc, Seed seed = kDefaultSeed);

/// Any matrix in S(g), with its own clustered spectrum as free target.
Certificate generic_member(const Graph& g, Seed seed);

}  // namespace mmforge
