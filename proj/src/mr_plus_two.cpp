// Two-eigenvalue matrices on complement-form graphs.
//
// Everything is built with eigenvalues exactly {0, 1}. A base matrix covers
// the dominating block (if any) and one vertex on each side of every pair;
// cloning vertices then grows the blocks to their final sizes, and isolated
// vertices take a diagonal 0 or 1.
//
// The paired chain couples 2x2 blocks z I_2 one at a time. A single carried
// eigenvalue y in (0, 1) of multiplicity two travels along the chain; each
// coupling settles the new block at 1 (y decreases) or at 0 (y increases),
// and the last one settles both the block and y.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mmforge/constants.hpp"
#include "mmforge/constructors.hpp"
#include "mmforge/error.hpp"

namespace mmforge {

namespace {

// block 0 is the dominating block, block i >= 1 is pair i, -1 is isolated.
struct Role {
  int block = 0;
  int side = 0;
};

int role_key(const Role& r) { return r.block < 0 ? 1 << 20 : r.block == 0 ? 0 : 2 * r.block - 1 + r.side; }

Graph graph_from_roles(const std::vector<Role>& roles) {
  Graph g(roles.size());
  for (std::size_t i = 0; i < roles.size(); ++i)
    for (std::size_t j = i + 1; j < roles.size(); ++j) {
      const Role a = roles[i], b = roles[j];
      if (a.block < 0 || b.block < 0) continue;
      if (a.block > 0 && a.block == b.block && a.side != b.side) continue;
      g.add_edge(i, j);
    }
  return g;
}

class Steps {
 public:
  explicit Steps(Seed seed) : seed_(seed) {}
  Seed next() { return derive_seed(seed_, counter_++); }

 private:
  Seed seed_;
  std::uint64_t counter_ = 100;
};

struct Work {
  SymMatrix a;
  std::vector<Role> roles;
  std::size_t zeros = 0, ones = 0;
  std::vector<std::string> trace;
};

EigvecTagged pair_block(double z, Seed seed) {
  SeedStream rng(seed);
  const double theta = rng.uniform(0.15, std::numbers::pi / 2 - 0.15) + std::numbers::pi / 2 * double(rng.next_u64() % 4);
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return EigvecTagged::make(SymMatrix::diagonal({z, z}), z, r);
}

std::vector<Role> pair_roles(int pair) { return {{pair, 0}, {pair, 1}}; }

template <class T>
std::vector<T> concat(std::vector<T> a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct ChainPlan {
  bool odd = false;
  std::size_t settle0 = 0, settle1 = 0;
  bool finish = true;

  std::size_t blocks() const { return (odd ? 2 : 1) + settle0 + settle1 + (finish ? 1 : 0); }
};

struct Chain {
  EigvecTagged carried;  // carried.matrix is the whole chain matrix
  std::vector<Role> roles;
  std::size_t zeros = 0, ones = 0;
  std::vector<std::string> trace;
};

Chain build_chain(const ChainPlan& plan, int first_pair, Steps& steps) {
  Chain ch;
  int pair = first_pair;
  if (plan.odd) {
    SeedStream rng(steps.next());
    const double t1 = rng.uniform(0.15, std::numbers::pi / 2 - 0.15), t2 = rng.uniform(0.15, std::numbers::pi / 2 - 0.15);
    Vector u(2), v(2), up(2), vp(2);
    u << std::cos(t1), std::sin(t1);
    v << std::cos(t2), -std::sin(t2);
    up << -u(1), u(0);
    vp << -v(1), v(0);
    const auto a = EigvecTagged::make(SymMatrix::diagonal({0.5, 0.5}), 0.5, u);
    const auto b = EigvecTagged::make(SymMatrix::diagonal({0.5, 0.5}), 0.5, v);
    SymMatrix c = fiedler_join(a, b, 0.5);
    Matrix carried(4, 2);
    carried.col(0) << up, vp;
    carried.col(1) << up, -vp;
    carried /= std::sqrt(2.0);
    ch.carried = EigvecTagged::make(std::move(c), 0.5, carried);
    ch.roles = concat(pair_roles(pair), pair_roles(pair + 1));
    pair += 2;
    ch.zeros = ch.ones = 1;
    ch.trace.push_back("chain_start_odd");
  } else {
    SeedStream rng(steps.next());
    const double x = rng.uniform(0.3, 0.7);
    ch.carried = pair_block(x, steps.next());
    ch.roles = pair_roles(pair++);
    ch.trace.push_back("chain_start_even");
  }

  std::size_t s0 = plan.settle0, s1 = plan.settle1;
  while (s0 + s1 > 0) {
    const double y = ch.carried.tagged_value;
    SeedStream rng(steps.next());
    const double frac = rng.uniform(0.3, 0.6), alpha = rng.uniform(0.0, 2.0 * std::numbers::pi);
    if (s1 > 0 && (y > 0.5 || s0 == 0)) {
      const double tau = y * frac;
      const auto res = one_step_double(pair_block(1.0 - tau, steps.next()), ch.carried, tau, alpha, steps.next());
      ch.carried = res.lower;
      ch.roles = concat(pair_roles(pair++), ch.roles);
      ch.ones += 2;
      --s1;
      ch.trace.push_back("one_step_double:settle_at_1");
    } else {
      const double tau = (1.0 - y) * frac;
      const auto res = one_step_double(ch.carried, pair_block(tau, steps.next()), tau, alpha, steps.next());
      ch.carried = res.upper;
      ch.roles = concat(ch.roles, pair_roles(pair++));
      ch.zeros += 2;
      --s0;
      ch.trace.push_back("one_step_double:settle_at_0");
    }
  }
  if (plan.finish) {
    const double y = ch.carried.tagged_value;
    const double alpha = SeedStream(steps.next()).uniform(0.0, 2.0 * std::numbers::pi);
    const auto res = one_step_double(pair_block(1.0 - y, steps.next()), ch.carried, y, alpha, steps.next());
    ch.carried = res.lower;
    ch.roles = concat(pair_roles(pair++), ch.roles);
    ch.zeros += 2;
    ch.ones += 2;
    ch.trace.push_back("one_step_double:settle_both");
  }
  return ch;
}

// ---------------------------------------------------------------------------
// Base matrices

enum class BaseKind { Pair4, Chain, Dom5, Dom7, DomChain };

struct BaseOption {
  BaseKind kind;
  std::size_t zeros, ones;
  bool flip = false;
  ChainPlan plan{};
};

std::vector<BaseOption> base_options(std::size_t p0, std::size_t k) {
  std::vector<BaseOption> out;
  auto add_flipped = [&](BaseOption o) {
    out.push_back(o);
    std::swap(o.zeros, o.ones);
    o.flip = true;
    out.push_back(o);
  };
  if (p0 >= 2 && k == 1) out.push_back({BaseKind::Pair4, 2, 2});
  if (p0 == 0 && k >= 2) {
    for (std::size_t s0 = 0; s0 + 2 <= k; ++s0)
      out.push_back({BaseKind::Chain, 2 + 2 * s0, 2 + 2 * (k - 2 - s0), false, {false, s0, k - 2 - s0, true}});
    for (std::size_t s0 = 0; k >= 3 && s0 + 3 <= k; ++s0)
      out.push_back({BaseKind::Chain, 3 + 2 * s0, 3 + 2 * (k - 3 - s0), false, {true, s0, k - 3 - s0, true}});
  }
  if (p0 >= 1 && k >= 2) {
    if (k == 2) add_flipped({BaseKind::Dom5, 3, 2});
    if (k == 3) add_flipped({BaseKind::Dom7, 4, 3});
    if (k >= 3) {
      const std::size_t j = k - 2;
      for (std::size_t s0 = 0; s0 + 1 <= j; ++s0)
        add_flipped({BaseKind::DomChain, 2 + 2 * s0, 5 + 2 * (j - 1 - s0), false, {false, s0, j - 1 - s0, false}});
      for (std::size_t s0 = 0; j >= 2 && s0 + 2 <= j; ++s0)
        add_flipped({BaseKind::DomChain, 3 + 2 * s0, 6 + 2 * (j - 2 - s0), false, {true, s0, j - 2 - s0, false}});
    }
  }
  return out;
}

Work build_base(const BaseOption& opt, Steps& steps) {
  Work w;
  switch (opt.kind) {
    case BaseKind::Pair4:
      w.a = constants::base_k20_k11();
      w.roles = {{0, 0}, {0, 0}, {1, 0}, {1, 1}};
      w.zeros = w.ones = 2;
      w.trace.push_back("base_k20_k11");
      break;
    case BaseKind::Dom5:
      w.a = constants::base_k10_2k11();
      w.roles = {{1, 0}, {1, 1}, {2, 0}, {2, 1}, {0, 0}};
      w.zeros = 3;
      w.ones = 2;
      w.trace.push_back("base_k10_2k11");
      break;
    case BaseKind::Dom7:
      w.a = constants::base_k10_3k11();
      w.roles = {{0, 0}, {1, 0}, {1, 1}, {2, 0}, {2, 1}, {3, 0}, {3, 1}};
      w.zeros = 4;
      w.ones = 3;
      w.trace.push_back("base_k10_3k11");
      break;
    case BaseKind::Chain: {
      Chain ch = build_chain(opt.plan, 1, steps);
      w.a = ch.carried.matrix;
      w.roles = ch.roles;
      w.zeros = ch.zeros;
      w.ones = ch.ones;
      w.trace = ch.trace;
      break;
    }
    case BaseKind::DomChain: {
      Chain ch = build_chain(opt.plan, 3, steps);
      const double c = 1.0 - ch.carried.tagged_value;
      // Eigenvalues 0 -> 1 and 1 -> c.
      const SymMatrix b1 = (constants::base_k10_2k11() * (c - 1.0)).shifted(1.0);
      const EigvecTagged t1 = tag_eigenspace(b1, c, 2, steps.next());
      const double alpha = SeedStream(steps.next()).uniform(0.0, 2.0 * std::numbers::pi);
      const auto res = one_step_double(ch.carried, t1, c, alpha, steps.next());
      w.a = res.upper.matrix;
      w.roles = concat(ch.roles, std::vector<Role>{{1, 0}, {1, 1}, {2, 0}, {2, 1}, {0, 0}});
      w.zeros = ch.zeros + 2;
      w.ones = ch.ones + 5;
      w.trace = ch.trace;
      w.trace.push_back("base_k10_2k11:affine");
      w.trace.push_back("one_step_double:settle_both");
      break;
    }
  }
  if (opt.flip) {
    w.a = (w.a * -1.0).shifted(1.0);
    std::swap(w.zeros, w.ones);
    w.trace.push_back("affine:1-x");
  } else {
    w.trace.push_back("affine:x");
  }
  if (w.zeros != opt.zeros || w.ones != opt.ones) throw Error("internal: base multiplicities do not match plan");
  return w;
}

// ---------------------------------------------------------------------------
// Growth

SymMatrix grow_matrix(const SymMatrix& a, std::size_t pivot, std::size_t t, std::size_t s, Seed seed) {
  const double d = a(pivot, pivot);
  const bool at0 = std::abs(d) <= 1e-6, at1 = std::abs(d - 1.0) <= 1e-6;
  if ((at0 || at1) && (t == 0 || s == 0)) {
    std::ostringstream m;
    m << "cannot grow at vertex " << pivot << ": diagonal entry " << d << " sits on an eigenvalue and t or s is 0";
    throw ValidationError(m.str());
  }
  SpectrumSpec spec;
  if (at0) {
    spec.items = {{d, t + 1}, {1.0, s}};
  } else if (at1) {
    spec.items = {{d, s + 1}, {0.0, t}};
  } else {
    spec.items = {{d, 1}};
    if (t > 0) spec.items.push_back({0.0, t});
    if (s > 0) spec.items.push_back({1.0, s});
  }
  const EigvecTagged b = complete_graph_realization(spec, std::nullopt, seed);
  if (!b.every_vector_nonzero()) throw GenericPositionError("grow_block: eigenvector has a small entry", {seed});
  return diagonal_join(a, pivot, b);
}

void grow(Work& w, std::size_t pivot, std::size_t t, std::size_t s, Steps& steps) {
  if (t + s == 0) return;
  const Graph g = clone_vertex(graph_from_roles(w.roles), pivot, t + s);
  std::vector<Seed> trail;
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const Seed sd = steps.next();
    trail.push_back(sd);
    SymMatrix c = grow_matrix(w.a, pivot, t, s, sd);
    if (edge_margin(c, g) < kNonzeroMargin) continue;
    w.a = std::move(c);
    w.roles.insert(w.roles.begin() + std::ptrdiff_t(pivot), t + s, w.roles[pivot]);
    w.zeros += t;
    w.ones += s;
    w.trace.push_back("grow_block@" + std::to_string(pivot) + "(" + std::to_string(t) + "," + std::to_string(s) + ")");
    return;
  }
  throw GenericPositionError("grow_block: join kept a small entry", trail);
}

std::size_t find_role(const std::vector<Role>& roles, int block, int side) {
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i].block == block && roles[i].side == side) return i;
  throw Error("internal: role not present");
}

// Diagonal-only piece for isolated vertices: zeros first, then ones.
void add_isolated(Work& w, std::size_t zeros, std::size_t ones) {
  if (zeros + ones == 0) return;
  std::vector<double> d(zeros, 0.0);
  d.insert(d.end(), ones, 1.0);
  w.a = w.a.size() == 0 ? SymMatrix::diagonal(d) : direct_sum(w.a, SymMatrix::diagonal(d));
  w.roles.insert(w.roles.end(), zeros + ones, Role{-1, 0});
  w.zeros += zeros;
  w.ones += ones;
}

// S(K_m) block with z zeros and m - z ones (z in [1, m-1] when m >= 2).
SymMatrix clique_block(std::size_t m, std::size_t z, Seed seed) {
  if (m == 1) return SymMatrix::diagonal({z == 1 ? 0.0 : 1.0});
  return complete_graph_realization(SpectrumSpec{{{0.0, z}, {1.0, m - z}}}, std::nullopt, seed).matrix;
}

std::pair<std::size_t, std::size_t> clique_range(std::size_t m) {
  return m == 1 ? std::pair<std::size_t, std::size_t>{0, 1} : std::pair<std::size_t, std::size_t>{1, m - 1};
}

}  // namespace

Certificate grow_block(const Certificate& cert, Vertex pivot, std::size_t t, std::size_t s, Seed seed) {
  const auto& items = cert.target.items;
  std::size_t m0 = 0, m1 = 0;
  bool ok = items.size() == 2;
  for (const auto& it : items) {
    if (!it.value) ok = false;
    else if (*it.value == 0.0) m0 = it.multiplicity;
    else if (*it.value == 1.0) m1 = it.multiplicity;
    else ok = false;
  }
  if (!ok) throw ValidationError("grow_block needs a certificate with target values 0 and 1");
  if (pivot >= cert.matrix.size()) throw ValidationError("grow_block: pivot out of range");
  if (t + s == 0) return cert;

  const Graph g = clone_vertex(cert.graph, pivot, t + s);
  std::vector<Seed> trail;
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const Seed sd = derive_seed(seed, std::uint64_t(attempt));
    trail.push_back(sd);
    SymMatrix c = grow_matrix(cert.matrix, pivot, t, s, sd);
    if (edge_margin(c, g) < kNonzeroMargin) continue;
    auto trace = cert.trace;
    trace.push_back("grow_block@" + std::to_string(pivot) + "(" + std::to_string(t) + "," + std::to_string(s) + ")");
    return make_certificate(g, std::move(c), SpectrumSpec{{{0.0, m0 + t}, {1.0, m1 + s}}}, cert.seed,
                            std::move(trace));
  }
  throw GenericPositionError("grow_block: join kept a small entry", trail);
}

Certificate mr_plus_two_matrix(const family::ComplementForm& desc, std::size_t n1, std::size_t n2, Seed seed) {
  validate(FamilyDescriptor{desc});
  const std::size_t k = desc.pairs.size(), p0 = desc.p0, r = desc.r;
  const std::size_t n = desc.order();
  if (p0 == 1 && k == 1)
    throw ValidationError("(K_{1,0} u K_{p,q}) v K_r complements have no two-eigenvalue matrix; use k10_kpq_matrix");
  if (n < 4 || n1 + n2 + 4 != n) {
    std::ostringstream m;
    m << "split (" << n1 << ", " << n2 << ") needs n1 + n2 = n - 4 = " << (n < 4 ? 0 : n - 4) << " and n >= 4";
    throw ValidationError(m.str());
  }
  const std::size_t Z = 2 + n1, O = 2 + n2;
  Steps steps(seed);
  Work w;

  if (k == 0 && p0 <= 1) {
    // Edgeless.
    w.roles.assign(p0, Role{0, 0});
    std::vector<double> d(Z, 0.0);
    d.insert(d.end(), O, 1.0);
    w.a = SymMatrix::diagonal(d);
    w.roles.insert(w.roles.end(), r, Role{-1, 0});
    w.zeros = Z;
    w.ones = O;
    w.trace.push_back("diagonal");
  } else if (k == 0) {
    const std::size_t z = std::max<std::size_t>(1, Z > r ? Z - r : 0);
    w.a = clique_block(p0, z, steps.next());
    w.roles.assign(p0, Role{0, 0});
    w.zeros = z;
    w.ones = p0 - z;
    w.trace.push_back("complete_graph_matrix");
  } else if (p0 == 0 && k == 1) {
    const auto [p, q] = desc.pairs[0];
    const auto [plo, phi] = clique_range(p);
    const auto [qlo, qhi] = clique_range(q);
    bool found = false;
    for (std::size_t zp = plo; zp <= phi && !found; ++zp)
      for (std::size_t zq = qlo; zq <= qhi && !found; ++zq) {
        if (zp + zq > Z || Z - zp - zq > r || (p - zp) + (q - zq) > O) continue;
        w.a = direct_sum(clique_block(p, zp, steps.next()), clique_block(q, zq, steps.next()));
        w.roles.assign(p, Role{1, 0});
        w.roles.insert(w.roles.end(), q, Role{1, 1});
        w.zeros = zp + zq;
        w.ones = p + q - zp - zq;
        w.trace.push_back("complete_graph_matrix(+)complete_graph_matrix");
        found = true;
      }
    if (!found) throw ValidationError("no distribution of the split over K_p u K_q and the isolated vertices");
  } else {
    const auto options = base_options(p0, k);
    const auto it = std::find_if(options.begin(), options.end(),
                                 [&](const BaseOption& o) { return o.zeros <= Z && o.ones <= O; });
    if (it == options.end()) throw ValidationError("no base matrix fits the requested split");
    w = build_base(*it, steps);

    std::size_t ez = Z - w.zeros, eo = O - w.ones;
    auto grow_role = [&](int block, int side, std::size_t extra) {
      if (extra == 0) return;
      const std::size_t t = std::min(ez, extra), s = extra - t;
      if (s > eo) throw Error("internal: growth exceeds the split");
      ez -= t;
      eo -= s;
      grow(w, find_role(w.roles, block, side), t, s, steps);
    };
    const std::size_t base_p0 = std::size_t(std::count_if(w.roles.begin(), w.roles.end(),
                                                          [](const Role& x) { return x.block == 0; }));
    grow_role(0, 0, p0 - base_p0);
    for (std::size_t i = 0; i < k; ++i) {
      grow_role(int(i + 1), 0, desc.pairs[i].first - 1);
      grow_role(int(i + 1), 1, desc.pairs[i].second - 1);
    }
  }

  if (k != 0 || p0 > 1) add_isolated(w, Z - w.zeros, O - w.ones);
  if (w.zeros != Z || w.ones != O || w.a.size() != n) throw Error("internal: multiplicity bookkeeping is off");

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t x, std::size_t y) { return role_key(w.roles[x]) < role_key(w.roles[y]); });
  SymMatrix a = w.a.permuted(perm);
  const Graph g = family_graph(FamilyDescriptor{desc});
  if (!(graph_from_roles([&] {
          std::vector<Role> sorted;
          for (auto i : perm) sorted.push_back(w.roles[i]);
          return sorted;
        }()) == g))
    throw Error("internal: role layout does not reproduce the family graph");

  w.trace.insert(w.trace.begin(), "vertex order: dominating block, each pair (p side, q side), isolated");
  return make_certificate(g, std::move(a), SpectrumSpec{{{0.0, Z}, {1.0, O}}}, seed, std::move(w.trace));
}

}  // namespace mmforge
