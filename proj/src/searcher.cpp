#include "mmforge/searcher.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#include "mmforge/error.hpp"

namespace mmforge {

namespace {

constexpr double kEdgeFloor = 0.05;
constexpr double kEntryCap = 10.0;
constexpr double kTieTol = 1e-12;

double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }

struct Problem {
  std::size_t n;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<double> signs;
  std::vector<std::vector<std::size_t>> orderings;  // distinct orderings of the partition

  std::size_t dim() const { return n + edges.size(); }

  Matrix matrix(const double* x) const {
    Matrix a = Matrix::Zero(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t i = 0; i < n; ++i) a(Eigen::Index(i), Eigen::Index(i)) = x[i];
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const double v = signs[e] * (kEdgeFloor + softplus(x[n + e]));
      a(Eigen::Index(edges[e].first), Eigen::Index(edges[e].second)) = v;
      a(Eigen::Index(edges[e].second), Eigen::Index(edges[e].first)) = v;
    }
    return a;
  }

  double penalty(const Matrix& a) const {
    double p = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = i; j < a.cols(); ++j) {
        const double over = std::abs(a(i, j)) - kEntryCap;
        if (over > 0.0) p += over * over;
      }
    return p;
  }

  double operator()(const double* x) const {
    const Matrix a = matrix(x);
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    double best = std::numeric_limits<double>::infinity();
    for (const auto& parts : orderings) best = std::min(best, spread_for(v, parts));
    return best + penalty(a);
  }

  static double spread_for(const std::vector<double>& v, const std::vector<std::size_t>& parts) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
    double total = 0.0;
    for (double x : v) total += (x - mean) * (x - mean);
    if (!(total > 1e-300)) return 1.0;
    double within = 0.0;
    std::size_t at = 0;
    for (std::size_t part : parts) {
      double m = 0.0;
      for (std::size_t i = at; i < at + part; ++i) m += v[i];
      m /= double(part);
      for (std::size_t i = at; i < at + part; ++i) within += (v[i] - m) * (v[i] - m);
      at += part;
    }
    return within / total;
  }
};

std::vector<std::vector<std::size_t>> orderings_of(std::vector<std::size_t> parts) {
  std::sort(parts.begin(), parts.end());
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(parts);
  while (std::next_permutation(parts.begin(), parts.end()));
  return out;
}

double gsl_objective(const gsl_vector* x, void* params) {
  return (*static_cast<const Problem*>(params))(x->data);
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

struct Descent {
  std::vector<double> x;
  double value;
};

/// Simplex rounds at step h; h shrinks whenever a round fails to cut the
/// objective by 10%.
Descent descend(const Problem& prob, std::vector<double> x, const SearchConfig& cfg) {
  const std::size_t d = prob.dim();
  gsl_multimin_function fn{&gsl_objective, d, const_cast<Problem*>(&prob)};
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> mini(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, d));
  std::unique_ptr<gsl_vector, VectorDeleter> start(gsl_vector_alloc(d)), step(gsl_vector_alloc(d));

  double fx = prob(x.data());
  double h = cfg.initial_step;
  std::size_t used = 0;
  while (h >= cfg.min_step && used < cfg.max_iterations && fx > 0.0) {
    std::copy(x.begin(), x.end(), start->data);
    gsl_vector_set_all(step.get(), h);
    gsl_multimin_fminimizer_set(mini.get(), &fn, start.get(), step.get());
    for (std::size_t it = 0; it < 50 * d && used < cfg.max_iterations; ++it, ++used) {
      if (gsl_multimin_fminimizer_iterate(mini.get()) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(mini.get()), h * 1e-3) == GSL_SUCCESS) break;
    }
    const double fnew = gsl_multimin_fminimizer_minimum(mini.get());
    if (fnew < fx) {
      const bool strong = fnew < 0.9 * fx;
      fx = fnew;
      const gsl_vector* best = gsl_multimin_fminimizer_x(mini.get());
      std::copy(best->data, best->data + d, x.begin());
      if (!strong) h *= cfg.shrink;
    } else {
      h *= cfg.shrink;
    }
  }
  return {std::move(x), fx};
}

std::string join_parts(const std::vector<std::size_t>& parts) {
  std::ostringstream s;
  s << "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s << (i ? "," : "") << parts[i];
  s << ")";
  return s.str();
}

Certificate free_certificate(const Graph& g, SymMatrix a, Seed seed, std::vector<std::string> trace,
                             double cluster_tol) {
  std::vector<std::size_t> mults;
  for (const auto& c : eigen_report(a, cluster_tol).clusters) mults.push_back(c.multiplicity);
  return make_certificate(g, std::move(a), SpectrumSpec::free_multiplicities(mults), seed, std::move(trace),
                          cluster_tol);
}

void collect_partitions(std::size_t left, std::size_t min_part, std::vector<std::size_t>& cur,
                        std::vector<std::vector<std::size_t>>& out) {
  if (left == 0) {
    out.push_back(cur);
    return;
  }
  // Non-increasing parts, so each multiset appears once.
  const std::size_t hi = cur.empty() ? left : std::min(left, cur.back());
  for (std::size_t p = hi; p >= min_part && p > 0; --p) {
    cur.push_back(p);
    collect_partitions(left - p, min_part, cur, out);
    cur.pop_back();
  }
}

std::vector<std::size_t> non_forest_edges(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::size_t a = root(edges[e].first), b = root(edges[e].second);
    if (a == b)
      out.push_back(e);
    else
      parent[a] = b;
  }
  return out;
}

}  // namespace

void SearchConfig::validate(std::size_t n) const {
  if (restarts < 1) throw ValidationError("search needs at least one restart");
  if (!(shrink > 0.0 && shrink < 1.0)) throw ValidationError("search shrink factor must lie in (0, 1)");
  if (!(min_step > 0.0 && min_step <= initial_step)) throw ValidationError("search needs 0 < min_step <= initial_step");
  if (!(cluster_tol > 0.0)) throw ValidationError("cluster tolerance must be positive");
  if (target_partition) {
    std::size_t sum = 0;
    for (std::size_t p : *target_partition) {
      if (p == 0) throw ValidationError("partition parts must be positive");
      sum += p;
    }
    if (sum != n) throw ValidationError("partition does not sum to the graph order");
  }
}

double partition_spread(const std::vector<double>& values, const std::vector<std::size_t>& parts) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& order : orderings_of(parts)) best = std::min(best, Problem::spread_for(values, order));
  return best;
}

std::vector<std::vector<std::size_t>> candidate_partitions(std::size_t n, std::size_t min_part,
                                                           std::size_t min_parts) {
  std::vector<std::vector<std::size_t>> all, out;
  std::vector<std::size_t> cur;
  collect_partitions(n, std::max<std::size_t>(1, min_part), cur, all);
  for (auto& p : all)
    if (p.size() >= min_parts) out.push_back(std::move(p));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.back() != b.back()) return a.back() > b.back();
    return a.size() < b.size();
  });
  return out;
}

SearchResult search_mm(const Graph& g, const SearchConfig& cfg) {
  const std::size_t n = g.order();
  if (n == 0) throw ValidationError("search needs a non-empty graph");
  cfg.validate(n);

  SearchResult best;
  if (n > 12) best.warnings.push_back("graph has more than 12 vertices; the search is unlikely to be useful");
  if (g.edge_count() == 0) {
    best.certificate = free_certificate(g, SymMatrix(n), cfg.seed, {"search_mm", "edgeless: zero matrix"},
                                        cfg.cluster_tol);
    best.multiplicity = n;
    best.partition = {n};
    return best;
  }

  Problem prob{n, g.edges(), {}, {}};
  {
    const Certificate c = generic_member(g, cfg.seed);
    best.certificate = free_certificate(g, c.matrix, cfg.seed, {"search_mm", "generic member"}, cfg.cluster_tol);
    best.multiplicity = best.certificate.eigen.min_multiplicity;
    best.partition = std::vector<std::size_t>(n, 1);
  }

  // Diagonal +-1 similarity fixes the signs on a spanning forest, so only the
  // remaining edges carry sign information. Few enough of them get enumerated.
  const std::vector<std::size_t> cycle_edges = non_forest_edges(n, prob.edges);

  const auto partitions = cfg.target_partition ? std::vector<std::vector<std::size_t>>{*cfg.target_partition}
                                               : candidate_partitions(n, best.multiplicity + 1, 2);
  for (std::size_t pi = 0; pi < partitions.size(); ++pi) {
    const auto& parts = partitions[pi];
    const std::size_t goal = *std::min_element(parts.begin(), parts.end());
    if (!cfg.target_partition && goal <= best.multiplicity) continue;
    prob.orderings = orderings_of(parts);

    std::optional<SearchResult> local;
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
      const Seed seed = derive_seed(derive_seed(cfg.seed, pi + 1), r);
      SeedStream rng(seed);
      std::vector<double> x(prob.dim());
      for (std::size_t i = 0; i < n; ++i) x[i] = rng.normal();
      prob.signs.assign(prob.edges.size(), 1.0);
      const bool enumerate = cycle_edges.size() < 63 && (std::size_t{1} << cycle_edges.size()) <= cfg.restarts;
      for (std::size_t j = 0; j < cycle_edges.size(); ++j) {
        const double drawn = rng.sign();
        prob.signs[cycle_edges[j]] = enumerate ? ((r >> j) & 1 ? -1.0 : 1.0) : drawn;
      }
      for (std::size_t e = 0; e < prob.edges.size(); ++e) x[n + e] = rng.normal();
      const Descent d = descend(prob, std::move(x), cfg);
      SymMatrix a = SymMatrix::from_lower(prob.matrix(d.x.data()));
      std::ostringstream obj;
      obj.precision(6);
      obj << "objective " << d.value;
      Certificate cert = free_certificate(
          g, std::move(a), seed,
          {"search_mm", "partition " + join_parts(parts), "restart " + std::to_string(r), obj.str()}, cfg.cluster_tol);
      const std::size_t mult = cert.eigen.min_multiplicity;
      const bool better = !local || mult > local->multiplicity ||
                          (mult == local->multiplicity && d.value < local->objective - kTieTol);
      if (better) local = SearchResult{std::move(cert), mult, d.value, r, parts, {}};
      if (local->multiplicity >= goal) break;
    }
    if (local && (local->multiplicity > best.multiplicity || cfg.target_partition)) {
      local->warnings = best.warnings;
      if (local->multiplicity >= best.multiplicity) best = std::move(*local);
    }
  }
  return best;
}

std::string to_string(CrossStatus s) {
  switch (s) {
    case CrossStatus::ConsistentTight: return "consistent-tight";
    case CrossStatus::Consistent: return "consistent";
    case CrossStatus::SearchUndershoot: return "search-undershoot";
    case CrossStatus::HardInconsistency: return "hard-inconsistency";
  }
  return "unknown";
}

CrossCheck cross_check(const Graph& g, const BoundResult& bound, std::size_t found) {
  std::ostringstream s;
  s << "n=" << g.order() << " found=" << found << " bounds=[" << bound.lower << "," << bound.upper << "]";
  CrossStatus status = CrossStatus::Consistent;
  if (found > bound.upper) {
    status = CrossStatus::HardInconsistency;
    s << ": search exceeds the upper bound";
  } else if (found == bound.upper) {
    status = CrossStatus::ConsistentTight;
  } else if (found < bound.lower) {
    status = CrossStatus::SearchUndershoot;
    s << ": search stays below the known lower bound";
  }
  return {status, s.str()};
}

std::vector<Graph> connected_graph_census(std::size_t n) {
  if (n == 0 || n > 6) throw ValidationError("census is available for 1 <= n <= 6");
  std::vector<std::pair<Vertex, Vertex>> slots;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::vector<std::vector<std::size_t>> slot_of(n, std::vector<std::size_t>(n, 0));
  for (std::size_t s = 0; s < slots.size(); ++s) {
    slot_of[slots[s].first][slots[s].second] = s;
    slot_of[slots[s].second][slots[s].first] = s;
  }
  std::vector<std::vector<Vertex>> perms;
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  const std::uint32_t total = 1u << slots.size();
  std::vector<char> seen(total, 0);
  std::vector<Graph> out;
  // Masks are visited in increasing order, so the first of each orbit is its minimum.
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (seen[mask]) continue;
    for (const auto& p : perms) {
      std::uint32_t image = 0;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (mask >> s & 1u) image |= 1u << slot_of[p[slots[s].first]][p[slots[s].second]];
      seen[image] = 1;
    }
    Graph g(n);
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1u) g.add_edge(slots[s].first, slots[s].second);
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace mmforge
