#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mmforge/matrix.hpp"

namespace mmforge {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices [0, n). Adjacency is stored as a dense
/// symmetric bitmap, which is the right trade-off for the small orders the
/// matrix constructions work with.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}
  /// Throws ValidationError on loops or out-of-range endpoints; duplicates
  /// collapse.
  Graph(std::size_t n, const std::vector<Edge>& edges);

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool adjacent(Vertex u, Vertex v) const { return adj_[u * n_ + v] != 0; }
  std::size_t degree(Vertex v) const;
  std::vector<Vertex> neighbors(Vertex v) const;
  /// Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  void add_edge(Vertex u, Vertex v);

  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  std::size_t n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<unsigned char> adj_;
};

// Named graphs.
Graph empty_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
/// Sides [0, m) and [m, m + n).
Graph complete_bipartite_graph(std::size_t m, std::size_t n);
/// Vertices are s-bit labels, adjacent when they differ in one bit.
Graph hypercube_graph(std::size_t s);

/// Edge-list text: optional first line "n <count>", then one "u v" per line.
/// Blank lines and lines starting with '#' are skipped.
Graph parse_edge_list(const std::string& text);
std::string to_edge_list(const Graph& g);
/// graph6 (single graph, n <= 258047).
Graph parse_graph6(const std::string& text);
std::string to_graph6(const Graph& g);

Graph complement(const Graph& g);

enum class CombineKind { Union, Join };
/// Vertices of h are relabelled to [|g|, |g| + |h|).
Graph combine(const Graph& g, const Graph& h, CombineKind kind);

enum class ProductKind { Cartesian, Tensor, Strong };
/// Vertex (i, j) gets index i * |h| + j.
Graph product(const Graph& g, const Graph& h, ProductKind kind);

bool is_connected(const Graph& g);
/// Connected and |E| = |V| - 1. The empty vertex set is not a tree.
bool is_tree(const Graph& g);
/// Induced subgraph; vertex i of the result is vs[i].
Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vs);
/// Same graph with vertex perm[i] of g renamed to i.
Graph relabel(const Graph& g, const std::vector<Vertex>& perm);

// ---------------------------------------------------------------------------
// Family descriptors

struct FamilyDescriptor;

namespace family {

struct Complete {
  std::size_t n;
};
struct CompleteBipartite {
  std::size_t m, n;
};
struct Hypercube {
  std::size_t s;
};
struct Path {
  std::size_t n;
};
/// Complement of ((K_{p0,0} u K_{p1,q1} u ... u K_{pk,qk}) v K_r).
///
/// Vertex order: the p0 block, then for each pair its p side followed by its
/// q side, then the r vertices of the K_r (isolated once complemented).
struct ComplementForm {
  std::size_t p0 = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t r = 0;

  std::size_t order() const;
  std::size_t non_join_order() const { return order() - r; }
};
/// Base graph on [0, n) with pendant n + i attached to vertex i.
struct Corona {
  std::shared_ptr<const FamilyDescriptor> base;
};
/// Two induced paths [0, n) and [n, 2n) with rung (j, n + j) wherever
/// d[j] != 0. Requires d[j] == -d[n - 1 - j].
struct ParallelPaths {
  std::size_t n;
  std::vector<double> d;
};
struct Custom {
  Graph graph;
};

}  // namespace family

struct FamilyDescriptor {
  std::variant<family::Complete, family::CompleteBipartite, family::Hypercube, family::Path,
               family::ComplementForm, family::Corona, family::ParallelPaths, family::Custom>
      kind;
};

/// Throws ValidationError when descriptor fields are out of range.
void validate(const FamilyDescriptor& desc);
Graph family_graph(const FamilyDescriptor& desc);
std::string describe(const FamilyDescriptor& desc);

// ---------------------------------------------------------------------------
// Pattern membership

enum class Requirement { Zero, Nonzero };

struct PatternViolation {
  std::size_t i, j;  // i < j
  double value;
  Requirement required;
};

struct PatternReport {
  bool is_member = true;
  std::vector<PatternViolation> violations;
  double zero_threshold = kZeroThreshold;
};

/// Off-diagonal (i, j) counts as nonzero iff |a_ij| >= threshold * max(1, max|a|).
/// The diagonal is unconstrained. Throws ValidationError on a size mismatch.
PatternReport pattern_check(const SymMatrix& a, const Graph& g, double zero_threshold = kZeroThreshold);
/// The graph whose S(G) contains `a` under the same threshold rule.
Graph pattern_of(const SymMatrix& a, double zero_threshold = kZeroThreshold);

/// Smallest |a_ij| over edges of g divided by max(1, max|a|); +inf when g has
/// no edges. Constructions compare this against kNonzeroMargin.
double edge_margin(const SymMatrix& a, const Graph& g);

}  // namespace mmforge
