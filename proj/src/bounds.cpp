#include "mmforge/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <queue>

#include "mmforge/constructors.hpp"
#include "mmforge/error.hpp"

namespace mmforge {

void BoundResult::offer_upper(std::size_t value, Provenance why) {
  if (upper != 0 && value > upper) return;
  if (upper == 0 || value < upper) {
    upper = value;
    // Only rules that achieve the current value stay on record.
    std::erase_if(provenance, [](const Provenance& p) { return p.rule.rfind("upper:", 0) == 0; });
  }
  why.rule = "upper:" + why.rule;
  provenance.push_back(std::move(why));
}

BoundResult basic_bounds(std::size_t n, std::optional<std::size_t> max_multiplicity, std::optional<std::size_t> q,
                         bool has_edges) {
  if (max_multiplicity && *max_multiplicity > n) throw ValidationError("maximum multiplicity exceeds n");
  if (q && *q < 1) throw ValidationError("q must be at least 1");
  BoundResult r;
  r.lower = n == 0 ? 0 : 1;
  if (!has_edges) {
    r.lower = n;
    r.offer_upper(n, {"edgeless", "without edges every diagonal matrix, including scalars, is allowed"});
    return r;
  }
  r.offer_upper(n / 2, {"half_order", "a graph with an edge has at least two distinct eigenvalues"});
  if (max_multiplicity)
    r.offer_upper(*max_multiplicity, {"max_multiplicity", "Mm(G) <= M(G) = n - mr(G)"});
  if (q) r.offer_upper(n / *q, {"distinct_eigenvalues", "q(G) distinct eigenvalues share n slots"});
  return r;
}

std::size_t two_value_balance(std::size_t n_half, bool mr_is_half, bool q_is_two) {
  if (!mr_is_half || !q_is_two)
    throw ValidationError("two_value_balance needs mr(G) = n/2 and q(G) = 2; no conclusion otherwise");
  return n_half;
}

// ---------------------------------------------------------------------------

namespace {

bool mask_is_tree(const Graph& g, std::uint32_t mask) {
  const int size = std::popcount(mask);
  if (size == 0) return false;
  int edges = 0;
  std::uint32_t seen = 0;
  std::vector<std::uint32_t> nb(g.order(), 0);
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!(mask >> v & 1u)) continue;
    for (Vertex u = 0; u < g.order(); ++u)
      if ((mask >> u & 1u) && g.adjacent(u, v)) nb[v] |= 1u << u;
    edges += std::popcount(nb[v]);
  }
  if (edges / 2 != size - 1) return false;
  std::uint32_t frontier = mask & (~mask + 1u);  // lowest vertex
  while (frontier) {
    seen |= frontier;
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) next |= nb[std::size_t(std::countr_zero(f))];
    frontier = next & ~seen;
  }
  return seen == mask;
}

std::vector<Vertex> grow_tree_from(const Graph& g, Vertex start) {
  std::vector<char> in(g.order(), 0);
  std::vector<Vertex> tree{start};
  in[start] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (Vertex v = 0; v < g.order(); ++v) {
      if (in[v]) continue;
      int hits = 0;
      for (Vertex u : tree) hits += g.adjacent(u, v) ? 1 : 0;
      if (hits == 1) {
        in[v] = 1;
        tree.push_back(v);
        grew = true;
      }
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

}  // namespace

InducedTree max_induced_tree(const Graph& g, std::size_t budget) {
  const std::size_t n = g.order();
  InducedTree best;
  if (n == 0) return best;
  if (n <= 12) {
    best.exhaustive = true;
    std::uint32_t best_mask = 1;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
      if (std::popcount(mask) > std::popcount(best_mask) && mask_is_tree(g, mask)) best_mask = mask;
    for (Vertex v = 0; v < n; ++v)
      if (best_mask >> v & 1u) best.vertices.push_back(v);
    return best;
  }
  return greedy_induced_tree(g, budget);
}

InducedTree greedy_induced_tree(const Graph& g, std::size_t budget) {
  InducedTree best;
  for (Vertex v = 0; v < g.order() && v < budget; ++v) {
    auto t = grow_tree_from(g, v);
    if (t.size() > best.vertices.size()) best.vertices = std::move(t);
  }
  return best;
}

BoundResult induced_tree_bound(const Graph& g, const std::optional<std::vector<Vertex>>& tree_vertices,
                               std::size_t budget) {
  const std::size_t n = g.order();
  BoundResult r = basic_bounds(n, std::nullopt, std::nullopt, g.edge_count() > 0);
  std::vector<Vertex> tree;
  std::string mode;
  if (tree_vertices) {
    tree = *tree_vertices;
    for (Vertex v : tree)
      if (v >= n) throw ValidationError("tree vertex out of range");
    if (!is_tree(induced_subgraph(g, tree))) throw ValidationError("the given vertices do not induce a tree");
    mode = "supplied";
  } else {
    auto found = max_induced_tree(g, budget);
    tree = std::move(found.vertices);
    mode = found.exhaustive ? "exhaustive" : "greedy";
  }
  if (tree.empty()) return r;
  const std::size_t k = n - tree.size();
  r.offer_upper(k + 1, {"induced_tree", "an induced tree on n - k vertices bounds Mm by k + 1 (" + mode + ", " +
                                            std::to_string(tree.size()) + " vertices)"});
  return r;
}

// ---------------------------------------------------------------------------

std::vector<StarStructure> star_structures(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<StarStructure> out;
  for (Vertex h = 0; h < n; ++h) {
    StarStructure s;
    s.hub = h;
    std::vector<char> used(n, 0);
    used[h] = 1;
    for (Vertex v = 0; v < n; ++v)
      if (v != h && g.degree(v) == 1 && g.adjacent(v, h)) {
        s.leaves.push_back(v);
        used[v] = 1;
      }
    bool ok = true;
    for (Vertex v = 0; v < n && ok; ++v) {
      if (used[v]) continue;
      std::vector<Vertex> comp{v};
      used[v] = 1;
      for (std::size_t i = 0; i < comp.size(); ++i)
        for (Vertex u = 0; u < n; ++u)
          if (!used[u] && g.adjacent(comp[i], u)) {
            used[u] = 1;
            comp.push_back(u);
          }
      const bool touches_hub = std::any_of(comp.begin(), comp.end(), [&](Vertex u) { return g.adjacent(u, h); });
      if (comp.size() < 2 || !touches_hub) ok = false;
      std::sort(comp.begin(), comp.end());
      s.blocks.push_back(std::move(comp));
    }
    if (ok && s.m() + s.p() > 0) out.push_back(std::move(s));
  }
  return out;
}

BoundResult star_bound(const Graph& g, std::optional<std::size_t> q) {
  const std::size_t n = g.order();
  BoundResult r = basic_bounds(n, std::nullopt, std::nullopt, g.edge_count() > 0);
  // t >= 2 distinct eigenvalues force s >= ceil((t + 1) / 2) >= 2 in the counting argument.
  const std::size_t t = std::max<std::size_t>(2, q.value_or(2));
  const std::size_t s_min = (t + 2) / 2;
  for (const auto& s : star_structures(g)) {
    const std::size_t rest = n - s.m() - s.p() - 1;
    const std::string shape = "hub " + std::to_string(s.hub) + ", " + std::to_string(s.p()) + " block(s), " +
                              std::to_string(s.m()) + " leaves";
    r.offer_upper(rest / s_min + 1, {"star_structure", "hub with pendant leaves and connected blocks, t = " +
                                                           std::to_string(t) + " distinct eigenvalues (" + shape + ")"});
  }
  return r;
}

BoundResult graph_bounds(const Graph& g) {
  BoundResult r = basic_bounds(g.order(), std::nullopt, std::nullopt, g.edge_count() > 0);
  for (const BoundResult& other : {induced_tree_bound(g), star_bound(g)})
    for (const auto& p : other.provenance)
      if (other.upper <= r.upper && p.rule.rfind("upper:", 0) == 0) r.offer_upper(other.upper, {p.rule.substr(6), p.anchor});
  return r;
}

// ---------------------------------------------------------------------------

Certificate generic_member(const Graph& g, Seed seed) {
  SeedStream rng(seed);
  SymMatrix a(g.order());
  for (Vertex v = 0; v < g.order(); ++v) a.set(v, v, rng.normal());
  for (const auto& [u, v] : g.edges()) a.set(u, v, rng.signed_magnitude(0.5, 1.5));
  const auto clusters = eigen_report(a).clusters;
  std::vector<std::size_t> mults;
  for (const auto& c : clusters) mults.push_back(c.multiplicity);
  return make_certificate(g, std::move(a), SpectrumSpec::free_multiplicities(mults), seed, {"generic_member"});
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Certificate bipartite_witness(std::size_t m, std::size_t n, std::size_t target, Seed seed) {
  const std::size_t a = std::min(m, n), b = std::max(m, n);
  std::vector<double> lambdas(a, 0.0);
  std::size_t ones = target;
  if (a != b && target < a && (a + b) % 3 == 2) ones = target + 1;
  for (std::size_t i = 0; i < ones; ++i) lambdas[i] = 1.0;
  Certificate c = bipartite_matrix(a, b, lambdas, seed);
  if (m <= n) return c;
  // Put the larger side first.
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < m; ++i) perm.push_back(n + i);
  for (std::size_t i = 0; i < n; ++i) perm.push_back(i);
  auto trace = c.trace;
  trace.push_back("swap_sides");
  return make_certificate(complete_bipartite_graph(m, n), c.matrix.permuted(perm), c.target, seed, trace);
}

Certificate k10_witness(const family::ComplementForm& f, Seed seed) {
  const auto [p, q] = f.pairs[0];
  const std::size_t n = f.order();
  std::size_t want[3];
  for (int i = 0; i < 3; ++i) want[i] = n / 3 + (std::size_t(i) < n % 3 ? 1 : 0);
  std::size_t a[3] = {1, 1, 1};
  for (std::size_t left = p + q - 2; left > 0; --left) {
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (want[i] - a[i] > want[best] - a[best]) best = i;
    ++a[best];
  }
  Certificate c = k10_kpq_matrix(p, q, a[0], a[1], a[2], seed);
  const double s3 = std::sqrt(3.0);
  std::vector<double> diag;
  diag.insert(diag.end(), want[0] - a[0], 3.0);
  diag.insert(diag.end(), want[1] - a[1], s3);
  diag.insert(diag.end(), want[2] - a[2], -s3);
  SymMatrix m = diag.empty() ? c.matrix : direct_sum(c.matrix, SymMatrix::diagonal(diag));
  auto trace = c.trace;
  if (!diag.empty()) trace.push_back("isolated_diagonal");
  return make_certificate(family_graph({f}), std::move(m), SpectrumSpec{{{-s3, want[2]}, {s3, want[1]}, {3.0, want[0]}}},
                          seed, std::move(trace));
}

Certificate self_certified(const Graph& g, SymMatrix a, Seed seed, std::vector<std::string> trace) {
  SpectrumSpec target;
  for (const auto& c : eigen_report(a).clusters) target.items.push_back({c.value, c.multiplicity});
  return make_certificate(g, std::move(a), std::move(target), seed, std::move(trace));
}

}  // namespace

BoundResult known_mm(const FamilyDescriptor& desc, Seed seed) {
  validate(desc);
  const Graph g = family_graph(desc);
  const std::size_t n = g.order();
  if (g.edge_count() == 0) {
    BoundResult r = basic_bounds(n, std::nullopt, std::nullopt, false);
    r.witness = make_certificate(g, SymMatrix(n), SpectrumSpec{{{0.0, n}}}, seed, {"zero_matrix"});
    return r;
  }
  BoundResult r = graph_bounds(g);
  auto exact = [&](std::size_t value, Certificate witness, Provenance why) {
    r.offer_upper(value, why);
    r.lower = witness.eigen.min_multiplicity;
    r.witness = std::move(witness);
    r.provenance.push_back({"lower:witness", "constructed matrix with minimal multiplicity " + std::to_string(r.lower)});
  };
  std::visit(
      overloaded{
          [&](const family::Complete& f) {
            const std::size_t h = f.n / 2;
            exact(h, complete_graph_matrix(SpectrumSpec{{{0.0, h}, {1.0, f.n - h}}}, std::nullopt, seed),
                  {"complete", "every split into two values is realizable on K_n"});
          },
          [&](const family::CompleteBipartite& f) {
            const std::size_t a = std::min(f.m, f.n), b = std::max(f.m, f.n);
            if (a == b) {
              exact(a, bipartite_witness(f.m, f.n, a, seed), {"complete_bipartite", "q(K_{m,m}) = 2"});
            } else {
              r.offer_upper((a + b) / 3, {"complete_bipartite", "q(K_{m,n}) = 3 for m != n"});
              const std::size_t v = std::min(a, (a + b) / 3);
              exact(v, bipartite_witness(f.m, f.n, v, seed),
                    {"complete_bipartite", "the smaller side plus the larger side induce a star"});
            }
          },
          [&](const family::Hypercube& f) {
            exact(std::size_t{1} << (f.s - 1), hypercube_matrix(f.s), {"hypercube", "mr(Q_s) = 2^(s-1) and q(Q_s) = 2"});
          },
          [&](const family::Path&) { exact(1, generic_member(g, seed), {"tree", "trees have Mm = 1"}); },
          [&](const family::ComplementForm& f) {
            if (f.p0 == 1 && f.pairs.size() == 1) {
              r.offer_upper(n / 3, {"complement_form", "q = 3 when the complement is (K_{1,0} u K_{p,q}) v K_r"});
              exact(n / 3, k10_witness(f, seed), {"complement_form", "three-value construction"});
            } else if (n >= 4) {
              const std::size_t n1 = (n - 4) / 2;
              exact(n / 2, mr_plus_two_matrix(f, n1, n - 4 - n1, seed),
                    {"complement_form", "two-value construction for mr_+ <= 2"});
            } else {
              exact(1, generic_member(g, seed), {"half_order", "n <= 3"});
            }
          },
          [&](const family::Corona& f) {
            const BoundResult base = known_mm(*f.base, seed);
            if (base.witness) {
              r.lower = std::max<std::size_t>(1, base.lower);
              r.witness = self_certified(g, corona_lift(base.witness->matrix), seed, {"corona_lift"});
              r.lower = r.witness->eigen.min_multiplicity;
              r.provenance.push_back({"lower:corona_lift", "each eigenvalue of the base splits into two of equal "
                                                           "multiplicity"});
            }
          },
          [&](const family::ParallelPaths& f) {
            exact(2, self_certified(g, parallel_paths_matrix(f.n, f.d), seed, {"parallel_paths_matrix"}),
                  {"parallel_paths", "M(G) = 2 for two parallel paths"});
          },
          [&](const family::Custom&) {
            r.witness = generic_member(g, seed);
            r.lower = r.witness->eigen.min_multiplicity;
          },
      },
      desc.kind);
  if (r.lower > r.upper) throw Error("internal: witness exceeds the upper bound for " + describe(desc));
  return r;
}

}  // namespace mmforge
