#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mmforge/bounds.hpp"
#include "mmforge/eiglab.hpp"
#include "mmforge/graph.hpp"

namespace mmforge {

struct SearchConfig {
  std::optional<std::vector<std::size_t>> target_partition;
  std::size_t restarts = 6;
  std::size_t max_iterations = 3000;  // simplex iterations per restart
  double initial_step = 0.5;
  double shrink = 0.5;
  double min_step = 1e-9;
  Seed seed = kDefaultSeed;
  double cluster_tol = kClusterTol;

  /// restarts >= 1, 0 < shrink < 1, 0 < min_step <= initial_step, and a
  /// given partition must have positive parts summing to n.
  void validate(std::size_t n) const;
};

struct SearchResult {
  Certificate certificate;      // free target with the achieved cluster sizes
  std::size_t multiplicity = 0;  // min multiplicity of certificate.matrix
  double objective = 0.0;
  std::size_t restart = 0;
  std::vector<std::size_t> partition;  // the partition that produced it
  std::vector<std::string> warnings;
};

/// Numerical lower bound on Mm(g): minimizes the within-group eigenvalue
/// variance (relative to the total variance) for each candidate partition.
/// Edge entries are sign * (0.05 + softplus(x)), so every iterate lies in S(g)
/// with edges too large to vanish inside the cluster tolerance. Spanning-forest
/// edges stay positive; the other edge signs run through every pattern when
/// there are at most `restarts` of them, and are drawn per restart otherwise.
SearchResult search_mm(const Graph& g, const SearchConfig& cfg = {});

/// Relative within-group variance of sorted `values` cut into consecutive
/// groups, minimized over the distinct orderings of `parts`.
double partition_spread(const std::vector<double>& values, const std::vector<std::size_t>& parts);

/// Partitions of n with every part >= min_part and at least `min_parts`
/// parts, ordered by decreasing smallest part, then by fewer parts.
std::vector<std::vector<std::size_t>> candidate_partitions(std::size_t n, std::size_t min_part,
                                                           std::size_t min_parts);

enum class CrossStatus { ConsistentTight, Consistent, SearchUndershoot, HardInconsistency };

struct CrossCheck {
  CrossStatus status;
  std::string message;
};

/// found > upper is a hard inconsistency; found < lower is informational.
CrossCheck cross_check(const Graph& g, const BoundResult& bound, std::size_t found);

std::string to_string(CrossStatus s);

/// Connected graphs on n vertices up to isomorphism (n <= 6), each in its
/// lexicographically smallest labelling.
std::vector<Graph> connected_graph_census(std::size_t n);

}  // namespace mmforge
