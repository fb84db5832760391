#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mmforge/constants.hpp"
#include "mmforge/constructors.hpp"
#include "mmforge/error.hpp"

namespace mmforge {

namespace {

double off_diagonal_min(const Matrix& a) {
  double m = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = j + 1; i < a.rows(); ++i) m = std::min(m, std::abs(a(i, j)));
  return m;
}

// Groups a multiset of values into spectrum items, ascending.
SpectrumSpec spec_from_values(std::vector<double> vals) {
  std::sort(vals.begin(), vals.end());
  SpectrumSpec spec;
  for (const auto& c : cluster_spectrum(vals, kClusterTol)) spec.items.push_back({c.value, c.multiplicity});
  return spec;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

EigvecTagged complete_graph_realization(const SpectrumSpec& spec, const std::optional<std::vector<bool>>& pattern,
                                        Seed seed) {
  spec.validate();
  for (const auto& it : spec.items)
    if (!it.value) throw ValidationError("complete_graph_matrix needs every eigenvalue to be given");
  const std::size_t n = spec.dimension();
  if (n == 0) throw ValidationError("empty spectrum");
  const double lambda1 = *spec.items[0].value;
  if (n == 1) return EigvecTagged::make(SymMatrix::diagonal({lambda1}), lambda1, Matrix::Ones(1, 1));
  if (spec.items.size() < 2)
    throw ValidationError("a matrix in S(K_n) with n >= 2 needs at least two distinct eigenvalues");

  std::vector<bool> support(n, true);
  if (pattern) {
    if (pattern->size() != n) throw ValidationError("eigenvector pattern has the wrong length");
    support = *pattern;
    const auto nz = std::count(support.begin(), support.end(), true);
    if (nz < 2) throw ValidationError("eigenvector pattern needs at least two nonzero entries");
    // A = mu I + (lambda1 - mu) u u^T would vanish where u does.
    if (std::size_t(nz) < n && spec.items.size() == 2 && spec.items[0].multiplicity == 1)
      throw ValidationError("with two distinct eigenvalues and a simple lambda1, the eigenvector cannot have zeros");
  }

  std::vector<double> rest;
  for (std::size_t k = 1; k < spec.items[0].multiplicity; ++k) rest.push_back(lambda1);
  for (std::size_t i = 1; i < spec.items.size(); ++i)
    for (std::size_t k = 0; k < spec.items[i].multiplicity; ++k) rest.push_back(*spec.items[i].value);

  std::vector<Seed> trail;
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const Seed s = derive_seed(seed, std::uint64_t(attempt));
    trail.push_back(s);
    SeedStream rng(s);
    Vector u = Vector::Zero(Eigen::Index(n));
    for (std::size_t i = 0; i < n; ++i)
      if (support[i]) u(Eigen::Index(i)) = rng.signed_magnitude(0.2, 1.0);
    u.normalize();
    const Matrix w = orthonormal_complement(u, derive_seed(s, 1));
    Vector d(Eigen::Index(rest.size()));
    for (std::size_t i = 0; i < rest.size(); ++i) d(Eigen::Index(i)) = rest[i];
    const Matrix a = lambda1 * u * u.transpose() + w * d.asDiagonal() * w.transpose();
    const SymMatrix sym = SymMatrix::from_dense(a, 1e-10);
    if (off_diagonal_min(sym.dense()) < kNonzeroMargin * sym.scale()) continue;
    return EigvecTagged::make(sym, lambda1, u);
  }
  throw GenericPositionError("complete_graph_matrix: no seed gave an entrywise nonzero matrix", trail);
}

Certificate complete_graph_matrix(const SpectrumSpec& spec, const std::optional<std::vector<bool>>& pattern,
                                  Seed seed) {
  EigvecTagged t = complete_graph_realization(spec, pattern, seed);
  const std::size_t n = t.matrix.size();
  return make_certificate(complete_graph(n), std::move(t.matrix), spec, seed, {"complete_graph_matrix"});
}

Certificate bipartite_matrix(std::size_t m, std::size_t n, const std::vector<double>& lambdas, Seed seed) {
  if (m < 1 || m > n) throw ValidationError("bipartite_matrix needs 1 <= m <= n");
  if (lambdas.size() != m) throw ValidationError("bipartite_matrix needs exactly m values");
  for (double l : lambdas)
    if (!std::isfinite(l) || l < 0.0) throw ValidationError("bipartite_matrix needs nonnegative values");
  if (!(lambdas[0] > 0.0)) throw ValidationError("bipartite_matrix needs lambda_1 > 0");

  std::vector<double> vals(n - m, 0.0);
  for (double l : lambdas) {
    vals.push_back(l);
    vals.push_back(-l);
  }
  const SpectrumSpec target = spec_from_values(vals);

  Vector sv(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) sv(Eigen::Index(i)) = lambdas[i];
  std::vector<Seed> trail;
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const Seed s = derive_seed(seed, std::uint64_t(attempt));
    trail.push_back(s);
    const Matrix u = random_orthogonal(m, derive_seed(s, 0)).dense();
    const Matrix v = random_orthogonal(n, derive_seed(s, 1)).dense();
    const Matrix b = u * sv.asDiagonal() * v.topRows(Eigen::Index(m));
    Matrix a = Matrix::Zero(Eigen::Index(m + n), Eigen::Index(m + n));
    a.bottomLeftCorner(Eigen::Index(n), Eigen::Index(m)) = b.transpose();
    SymMatrix sym = SymMatrix::from_lower(a);
    if (b.cwiseAbs().minCoeff() < kNonzeroMargin * sym.scale()) continue;
    return make_certificate(complete_bipartite_graph(m, n), std::move(sym), target, seed,
                            {"bipartite_matrix(" + std::to_string(m) + "," + std::to_string(n) + ")"});
  }
  throw GenericPositionError("bipartite_matrix: no seed gave an entrywise nonzero block", trail);
}

Certificate k10_kpq_matrix(std::size_t p, std::size_t q, std::size_t n1, std::size_t n2, std::size_t n3,
                           Seed seed) {
  if (p < 1 || q < 1) throw ValidationError("k10_kpq_matrix needs p, q >= 1");
  if (n1 < 1 || n2 < 1 || n3 < 1 || n1 + n2 + n3 != p + q + 1)
    throw ValidationError("k10_kpq_matrix needs n1, n2, n3 >= 1 with n1 + n2 + n3 = p + q + 1");
  const double s3 = std::sqrt(3.0);
  const double values[3] = {3.0, s3, -s3};
  std::size_t extra[3] = {n1 - 1, n2 - 1, n3 - 1};

  // Hand the extra copies out to the p block first, then the q block.
  auto block_spec = [&](double pivot_value, std::size_t slots) {
    SpectrumSpec spec{{{pivot_value, 1}}};
    for (int v = 0; v < 3 && slots > 0; ++v) {
      const std::size_t take = std::min(slots, extra[v]);
      if (take > 0) spec.items.push_back({values[v], take});
      extra[v] -= take;
      slots -= take;
    }
    return spec;
  };
  const SpectrumSpec spec1 = block_spec(1.0, p - 1);
  const SpectrumSpec spec2 = block_spec(2.0, q - 1);

  const EigvecTagged b1 = complete_graph_realization(spec1, std::nullopt, derive_seed(seed, 1));
  const EigvecTagged b2 = complete_graph_realization(spec2, std::nullopt, derive_seed(seed, 2));
  SymMatrix c = diagonal_join(constants::k10_k11_seed(), 1, b1);
  c = diagonal_join(c, p + 1, b2);

  const Graph g = family_graph({family::ComplementForm{1, {{p, q}}, 0}});
  if (edge_margin(c, g) < kNonzeroMargin)
    throw GenericPositionError("k10_kpq_matrix: join produced a small entry", {seed});
  SpectrumSpec target{{{-s3, n3}, {s3, n2}, {3.0, n1}}};
  return make_certificate(g, std::move(c), target, seed,
                          {"k10_k11_seed", "diagonal_join@1:K_" + std::to_string(p),
                           "diagonal_join@" + std::to_string(p + 1) + ":K_" + std::to_string(q)});
}

Certificate join_self_matrix(const Graph& g, Seed seed) {
  if (!is_connected(g)) throw ValidationError("join_self_matrix needs a connected graph");
  const auto n = Eigen::Index(g.order());
  const Graph joined = combine(g, g, CombineKind::Join);
  std::vector<Seed> trail;
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const Seed s = derive_seed(seed, std::uint64_t(attempt));
    trail.push_back(s);
    SeedStream rng(s);
    SymMatrix m(g.order());
    for (Vertex v = 0; v < g.order(); ++v) m.set(v, v, rng.normal());
    for (const auto& [u, v] : g.edges()) m.set(u, v, rng.signed_magnitude(0.5, 1.5));

    const Eigensystem es = eigh(m);
    const double lo = es.values.front(), width = es.values.back() - lo;
    Vector mu(n);
    for (Eigen::Index i = 0; i < n; ++i)
      mu(i) = width < 1e-9 ? 0.5 : 0.1 + 0.8 * (es.values[std::size_t(i)] - lo) / width;
    const Matrix& v = es.vectors.dense();
    const Matrix mm = v * mu.asDiagonal() * v.transpose();
    const Matrix nn = v * (1.0 - mu.array().square()).sqrt().matrix().asDiagonal() * v.transpose();

    Matrix q(2 * n, 2 * n);
    q << mm, nn, nn, -mm;
    SymMatrix sym = SymMatrix::from_dense(q, 1e-10);
    if (nn.cwiseAbs().minCoeff() < kNonzeroMargin * sym.scale()) continue;
    if (edge_margin(sym, joined) < kNonzeroMargin || !pattern_check(sym, joined).is_member) continue;
    const SpectrumSpec target{{{-1.0, g.order()}, {1.0, g.order()}}};
    return make_certificate(joined, std::move(sym), target, seed, {"join_self_matrix"});
  }
  throw GenericPositionError("join_self_matrix: sqrt(I - M^2) kept a small entry", trail);
}

SymMatrix cartesian_k2_lift(const SymMatrix& a) {
  const auto n = Eigen::Index(a.size());
  const Matrix& d = a.dense();
  const double defect = n == 0 ? 0.0 : (d * d - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-8) throw ValidationError("cartesian_k2_lift needs A^2 = I");
  if (std::abs(d.trace()) > double(n) - 0.5) throw ValidationError("cartesian_k2_lift needs both eigenvalues +1 and -1");
  Matrix b(2 * n, 2 * n);
  b << d, Matrix::Identity(n, n), Matrix::Identity(n, n), -d;
  return SymMatrix::from_lower(b);
}

Certificate hypercube_matrix(std::size_t s) {
  if (s < 1) throw ValidationError("hypercube_matrix needs s >= 1");
  SymMatrix a = SymMatrix::from_rows({{0, 1}, {1, 0}});
  std::vector<std::string> trace{"k2_exchange"};
  for (std::size_t level = 2; level <= s; ++level) {
    if (level > 2) a = a * (1.0 / std::sqrt(2.0));
    a = cartesian_k2_lift(a);
    trace.push_back("cartesian_k2_lift");
  }
  const double v = s == 1 ? 1.0 : std::sqrt(2.0);
  const std::size_t half = std::size_t{1} << (s - 1);
  return make_certificate(hypercube_graph(s), std::move(a), SpectrumSpec{{{-v, half}, {v, half}}}, kDefaultSeed,
                          std::move(trace));
}

SymMatrix corona_lift(const SymMatrix& a) {
  const auto n = Eigen::Index(a.size());
  Matrix b = Matrix::Zero(2 * n, 2 * n);
  b.topLeftCorner(n, n) = a.dense();
  b.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return SymMatrix::from_lower(b);
}

namespace {

void require_two_values(const SymMatrix& m, double x, double y, const char* what) {
  const auto clusters = eigen_report(m).clusters;
  auto near = [](double v, double t) { return std::abs(v - t) <= kVerifyValueTol * std::max(1.0, std::abs(t)); };
  const bool ok = clusters.size() == 2 && ((near(clusters[0].value, x) && near(clusters[1].value, y)) ||
                                           (near(clusters[0].value, y) && near(clusters[1].value, x)));
  if (!ok) throw ValidationError(std::string(what) + " does not have exactly the two given eigenvalues");
}

}  // namespace

SymMatrix union_align(const SymMatrix& a, double lambda1, double lambda2, const SymMatrix& b, double mu1,
                      double mu2) {
  if (lambda1 == lambda2 || mu1 == mu2) throw ValidationError("union_align needs two distinct values on each side");
  require_two_values(a, lambda1, lambda2, "A");
  require_two_values(b, mu1, mu2, "B");
  const double k = (lambda1 - lambda2) / (mu1 - mu2);
  const double c = (mu1 * lambda2 - mu2 * lambda1) / (lambda1 - lambda2);
  return direct_sum(a, b.shifted(c) * k);
}

SymMatrix product_matrix(const SymMatrix& a, const SymMatrix& b, ProductKind kind, Seed seed) {
  const auto na = Eigen::Index(a.size()), nb = Eigen::Index(b.size());
  const auto ca = cluster_spectrum(eigh(a).values), cb = cluster_spectrum(eigh(b).values);
  const Graph target = product(pattern_of(a), pattern_of(b), kind);
  const Matrix ia = Matrix::Identity(na, na), ib = Matrix::Identity(nb, nb);

  std::vector<Seed> trail;
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const Seed sd = derive_seed(seed, std::uint64_t(attempt));
    trail.push_back(sd);
    SeedStream rng(sd);
    const double s = rng.uniform(0.5, 2.0);
    const double c = kind == ProductKind::Tensor ? 0.0 : rng.uniform(-1.0, 1.0);

    if (kind != ProductKind::Tensor) {
      std::vector<double> combined;
      for (const auto& x : ca) {
        // (x + 1) = 0 sends every y to -1 for all (s, c); that is structural, not a collision.
        const bool pinned = kind == ProductKind::Strong && std::abs(x.value + 1.0) <= 1e-5 * std::max(1.0, std::abs(x.value));
        if (pinned) {
          combined.push_back(-1.0);
          continue;
        }
        for (const auto& y : cb) {
          const double by = s * y.value + c;
          combined.push_back(kind == ProductKind::Cartesian ? x.value + by : (x.value + 1.0) * (by + 1.0) - 1.0);
        }
      }
      std::sort(combined.begin(), combined.end());
      bool collision = false;
      for (std::size_t i = 1; i < combined.size(); ++i)
        collision = collision ||
                    std::abs(combined[i] - combined[i - 1]) <= 1e-5 * std::max(1.0, std::abs(combined[i]));
      if (collision) continue;
    }

    const Matrix bp = s * b.dense() + c * ib;
    Matrix out;
    switch (kind) {
      case ProductKind::Cartesian: out = kron(a.dense(), ib) + kron(ia, bp); break;
      case ProductKind::Tensor: out = kron(a.dense(), bp); break;
      case ProductKind::Strong:
        out = kron(a.dense() + ia, bp + ib) - Matrix::Identity(na * nb, na * nb);
        break;
    }
    SymMatrix sym = SymMatrix::from_lower(out);
    if (edge_margin(sym, target) < kNonzeroMargin) continue;
    return sym;
  }
  throw GenericPositionError("product_matrix: eigenvalue collision or accidental zero on every seed", trail);
}

SymMatrix parallel_paths_matrix(std::size_t n, const std::vector<double>& d) {
  if (n < 1 || d.size() != n) throw ValidationError("parallel_paths_matrix needs n >= 1 and |d| = n");
  for (std::size_t j = 0; j < n; ++j)
    if (!std::isfinite(d[j]) || std::abs(d[j] + d[n - 1 - j]) > 1e-12 * std::max(1.0, std::abs(d[j])))
      throw ValidationError("parallel_paths_matrix needs d[j] = -d[n-1-j] (violated at j = " + std::to_string(j) +
                            ")");
  SymMatrix m(2 * n);
  for (std::size_t half = 0; half < 2; ++half)
    for (std::size_t j = 0; j < n; ++j) {
      m.set(half * n + j, half * n + j, 1.0);
      if (j + 1 < n) m.set(half * n + j, half * n + j + 1, 1.0);
    }
  for (std::size_t j = 0; j < n; ++j) m.set(j, n + j, d[j]);
  return m;
}

}  // namespace mmforge
