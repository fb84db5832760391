#include "mmforge/eiglab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mmforge/error.hpp"

namespace mmforge {

std::size_t SpectrumSpec::dimension() const {
  std::size_t n = 0;
  for (const auto& it : items) n += it.multiplicity;
  return n;
}

std::vector<std::size_t> SpectrumSpec::multiplicities() const {
  std::vector<std::size_t> out;
  for (const auto& it : items) out.push_back(it.multiplicity);
  return out;
}

void SpectrumSpec::validate() const {
  double scale = 1.0;
  for (const auto& it : items) {
    if (it.multiplicity == 0) throw ValidationError("spectrum item with multiplicity 0");
    if (it.value) {
      if (!std::isfinite(*it.value)) throw ValidationError("spectrum value is not finite");
      scale = std::max(scale, std::abs(*it.value));
    }
  }
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j)
      if (items[i].value && items[j].value && std::abs(*items[i].value - *items[j].value) < 1e-6 * scale)
        throw ValidationError("spectrum values " + std::to_string(*items[i].value) + " and " +
                              std::to_string(*items[j].value) + " are not separated");
}

SpectrumSpec SpectrumSpec::free_multiplicities(const std::vector<std::size_t>& mults) {
  SpectrumSpec s;
  for (auto m : mults) s.items.push_back({std::nullopt, m});
  return s;
}

// ---------------------------------------------------------------------------

namespace {

double off_diagonal_max(const Matrix& a) {
  double m = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j + 1; i < n; ++i) m = std::max(m, std::abs(a(i, j)));
  return m;
}

}  // namespace

Eigensystem eigh(const SymMatrix& sym) {
  Matrix a = sym.dense();
  const Eigen::Index n = a.rows();
  if (!a.allFinite()) throw ValidationError("eigh: non-finite entries");
  Matrix v = Matrix::Identity(n, n);

  const double fro = a.norm();
  const double target = 1e-14 * fro;
  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diagonal_max(a) > target; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation already below the noise floor of both diagonal entries.
        const double app = a(p, p), aqq = a(q, q);
        if (sweep > 3 && std::abs(apq) * 1e17 < std::abs(app) && std::abs(apq) * 1e17 < std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  if (off_diagonal_max(a) > 1e-12 * std::max(1.0, fro))
    throw Error("eigh: Jacobi did not converge in " + std::to_string(kMaxSweeps) + " sweeps");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });

  Eigensystem out;
  Matrix q(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[std::size_t(j)];
    out.values.push_back(a(src, src));
    Vector col = v.col(src);
    Eigen::Index big = 0;
    col.cwiseAbs().maxCoeff(&big);
    if (col(big) < 0.0) col = -col;
    q.col(j) = col;
  }
  out.vectors = OrthMatrix(std::move(q));
  return out;
}

std::vector<Cluster> cluster_spectrum(const std::vector<double>& values, double tol) {
  if (!(tol > 0.0)) throw ValidationError("cluster tolerance must be positive");
  std::vector<Cluster> out;
  double sum = 0.0, lo = 0.0, hi = 0.0;
  std::size_t count = 0;
  auto flush = [&] {
    if (count > 0) out.push_back({sum / double(count), count, hi - lo});
  };
  for (double x : values) {
    if (count > 0) {
      const double mean = sum / double(count);
      if (std::abs(x - mean) <= tol * std::max(1.0, std::abs(mean))) {
        sum += x;
        hi = x;
        ++count;
        continue;
      }
      flush();
    }
    sum = lo = hi = x;
    count = 1;
  }
  flush();
  return out;
}

EigenReport eigen_report(const SymMatrix& a, double cluster_tol) {
  const Eigensystem es = eigh(a);
  EigenReport r;
  r.eigenvalues = es.values;
  r.clusters = cluster_spectrum(es.values, cluster_tol);
  r.min_multiplicity = 0;
  for (const auto& c : r.clusters)
    r.min_multiplicity = r.min_multiplicity == 0 ? c.multiplicity : std::min(r.min_multiplicity, c.multiplicity);
  const double scale = std::max(1.0, a.dense().norm());
  for (std::size_t j = 0; j < es.values.size(); ++j) {
    const Vector col = es.vectors.column(j);
    r.residual = std::max(r.residual, (a.dense() * col - es.values[j] * col).norm() / scale);
  }
  return r;
}

std::size_t min_multiplicity(const SymMatrix& a, double tol) { return eigen_report(a, tol).min_multiplicity; }

OrthMatrix random_orthogonal(std::size_t n, Seed seed) {
  if (n == 0) throw ValidationError("random_orthogonal needs n >= 1");
  SeedStream rng(seed);
  const auto k = Eigen::Index(n);
  Matrix g(k, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < k; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(k, k);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < k; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return OrthMatrix(std::move(q));
}

Matrix orthonormal_complement(const Matrix& basis, Seed seed) {
  const Eigen::Index n = basis.rows(), k = basis.cols();
  if (k > n) throw ValidationError("basis has more columns than rows");
  SeedStream rng(seed);
  Matrix out(n, n - k);
  for (Eigen::Index j = 0; j < n - k; ++j) {
    for (int attempt = 0;; ++attempt) {
      Vector x(n);
      for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.normal();
      // Two passes of Gram-Schmidt keep the result orthogonal to rounding.
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index c = 0; c < k; ++c) x -= basis.col(c).dot(x) * basis.col(c);
        for (Eigen::Index c = 0; c < j; ++c) x -= out.col(c).dot(x) * out.col(c);
      }
      const double nx = x.norm();
      if (nx > 1e-6) {
        out.col(j) = x / nx;
        break;
      }
      if (attempt > 16) throw Error("orthonormal_complement: basis is not orthonormal");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Certificate make_certificate(Graph graph, SymMatrix matrix, SpectrumSpec target, Seed seed,
                             std::vector<std::string> trace, double cluster_tol) {
  Certificate c;
  c.eigen = eigen_report(matrix, cluster_tol);
  c.pattern = pattern_check(matrix, graph);
  c.graph = std::move(graph);
  c.matrix = std::move(matrix);
  c.target = std::move(target);
  c.seed = seed;
  c.trace = std::move(trace);
  return c;
}

bool spectrum_matches(const std::vector<Cluster>& clusters, const SpectrumSpec& target, double value_tol,
                      std::vector<std::string>* why) {
  auto note = [&](const std::string& s) {
    if (why) why->push_back(s);
  };
  bool ok = true;
  if (clusters.size() != target.items.size()) {
    note("found " + std::to_string(clusters.size()) + " eigenvalue clusters, target has " +
         std::to_string(target.items.size()));
    ok = false;
  }
  std::vector<char> used(clusters.size(), 0);
  for (const auto& item : target.items) {
    if (!item.value) continue;
    const double t = *item.value;
    std::size_t best = clusters.size();
    for (std::size_t i = 0; i < clusters.size(); ++i)
      if (!used[i] && std::abs(clusters[i].value - t) <= value_tol * std::max(1.0, std::abs(t))) {
        if (best == clusters.size() || std::abs(clusters[i].value - t) < std::abs(clusters[best].value - t))
          best = i;
      }
    std::ostringstream s;
    s.precision(12);
    if (best == clusters.size()) {
      s << "no cluster near target value " << t;
      note(s.str());
      ok = false;
      continue;
    }
    used[best] = 1;
    if (clusters[best].multiplicity != item.multiplicity) {
      s << "cluster at " << clusters[best].value << " has multiplicity " << clusters[best].multiplicity
        << ", target " << item.multiplicity;
      note(s.str());
      ok = false;
    }
  }
  std::vector<std::size_t> want, have;
  for (const auto& item : target.items)
    if (!item.value) want.push_back(item.multiplicity);
  for (std::size_t i = 0; i < clusters.size(); ++i)
    if (!used[i]) have.push_back(clusters[i].multiplicity);
  std::sort(want.begin(), want.end());
  std::sort(have.begin(), have.end());
  if (ok && want != have) {
    std::ostringstream s;
    s << "free multiplicities {";
    for (std::size_t i = 0; i < have.size(); ++i) s << (i ? "," : "") << have[i];
    s << "} differ from target {";
    for (std::size_t i = 0; i < want.size(); ++i) s << (i ? "," : "") << want[i];
    s << "}";
    note(s.str());
    ok = false;
  }
  return ok;
}

VerifyResult verify_certificate(const Certificate& c, const VerifyOptions& opts) {
  VerifyResult r;
  const std::size_t n = c.matrix.size();
  if (n != c.graph.order()) {
    r.diagnostics.push_back("matrix dimension " + std::to_string(n) + " does not match graph order " +
                            std::to_string(c.graph.order()));
    return r;
  }
  if (c.target.dimension() != n) {
    r.diagnostics.push_back("target multiplicities sum to " + std::to_string(c.target.dimension()) +
                            ", matrix dimension is " + std::to_string(n));
    return r;
  }
  r.pattern = pattern_check(c.matrix, c.graph, opts.zero_threshold);
  r.eigen = eigen_report(c.matrix, opts.cluster_tol);
  for (const auto& v : r.pattern.violations) {
    std::ostringstream s;
    s.precision(6);
    s << "entry (" << v.i << "," << v.j << ") = " << v.value << " should be "
      << (v.required == Requirement::Zero ? "zero" : "nonzero");
    r.diagnostics.push_back(s.str());
  }
  spectrum_matches(r.eigen.clusters, c.target, opts.value_tol, &r.diagnostics);
  if (r.eigen.residual > opts.value_tol) r.diagnostics.push_back("eigensolver residual too large");
  r.pass = r.diagnostics.empty();
  return r;
}

}  // namespace mmforge
