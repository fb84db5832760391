#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mmforge/constructors.hpp"
#include "mmforge/error.hpp"

namespace mmforge {

namespace {

constexpr double kVectorResidualTol = 1e-9;
constexpr double kEntryFloor = 1e-6;

bool entries_clear(const Vector& v, double floor) { return v.size() == 0 || v.cwiseAbs().minCoeff() >= floor; }

}  // namespace

EigvecTagged EigvecTagged::make(SymMatrix a, double value, Matrix vectors) {
  if (vectors.rows() != Eigen::Index(a.size())) throw ValidationError("tagged vectors have the wrong length");
  const double scale = std::max(1.0, a.dense().norm());
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    const double res = (a.dense() * vectors.col(j) - value * vectors.col(j)).norm() / scale;
    if (res > kVectorResidualTol) {
      std::ostringstream s;
      s << "tagged vector " << j << " is not an eigenvector for " << value << " (residual " << res << ")";
      throw ValidationError(s.str());
    }
  }
  if (orthonormality_defect(vectors) > kOrthTol) throw ValidationError("tagged vectors are not orthonormal");
  EigvecTagged out;
  out.matrix = std::move(a);
  out.tagged_value = value;
  for (Eigen::Index j = 0; j < vectors.cols(); ++j)
    out.all_nonzero.push_back(entries_clear(vectors.col(j), kEntryFloor));
  out.tagged_vectors = std::move(vectors);
  return out;
}

bool EigvecTagged::every_vector_nonzero() const {
  return std::all_of(all_nonzero.begin(), all_nonzero.end(), [](bool b) { return b; });
}

EigvecTagged tag_eigenspace(const SymMatrix& a, double value, std::size_t count, Seed seed) {
  const Eigensystem es = eigh(a);
  std::vector<Eigen::Index> cols;
  for (std::size_t j = 0; j < es.values.size(); ++j)
    if (std::abs(es.values[j] - value) <= kClusterTol * std::max(1.0, std::abs(value)))
      cols.push_back(Eigen::Index(j));
  const auto d = Eigen::Index(cols.size());
  if (d < Eigen::Index(count)) {
    std::ostringstream s;
    s << "eigenvalue " << value << " has multiplicity " << d << ", need " << count;
    throw ValidationError(s.str());
  }
  Matrix basis(Eigen::Index(a.size()), d);
  for (Eigen::Index j = 0; j < d; ++j) basis.col(j) = es.vectors.dense().col(cols[std::size_t(j)]);

  std::vector<Seed> trail;
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const Seed s = derive_seed(seed, std::uint64_t(attempt));
    trail.push_back(s);
    const Matrix rot = random_orthogonal(std::size_t(d), s).dense();
    const Matrix x = basis * rot.leftCols(Eigen::Index(count));
    bool ok = true;
    for (Eigen::Index j = 0; j < x.cols(); ++j) ok = ok && entries_clear(x.col(j), kEntryFloor);
    if (ok) return EigvecTagged::make(a, value, x);
  }
  throw GenericPositionError("no rotation of the eigenspace gives entrywise nonzero vectors", trail);
}

SymMatrix fiedler_join(const EigvecTagged& a, const EigvecTagged& b, double rho) {
  if (a.count() < 1 || b.count() < 1) throw ValidationError("fiedler_join needs one tagged vector on each side");
  const Vector u = a.tagged_vectors.col(0), v = b.tagged_vectors.col(0);
  if (std::abs(u.norm() - 1.0) > kOrthTol || std::abs(v.norm() - 1.0) > kOrthTol)
    throw ValidationError("fiedler_join needs unit vectors");
  const Eigen::Index n = u.size(), m = v.size();
  Matrix c = Matrix::Zero(n + m, n + m);
  c.topLeftCorner(n, n) = a.matrix.dense();
  c.bottomRightCorner(m, m) = b.matrix.dense();
  c.bottomLeftCorner(m, n) = rho * v * u.transpose();
  return SymMatrix::from_lower(c);
}

SymMatrix gen_fiedler_join(const SymMatrix& a, const SymMatrix& b, const Matrix& u1, const Matrix& v1,
                           const Matrix& r) {
  constexpr double tol = 1e-8;
  if (u1.rows() != Eigen::Index(a.size()) || v1.rows() != Eigen::Index(b.size()))
    throw ValidationError("gen_fiedler_join: column blocks do not match the matrices");
  if (r.rows() != u1.cols() || r.cols() != v1.cols())
    throw ValidationError("gen_fiedler_join: coupling block has the wrong shape");
  if (orthonormality_defect(u1) > tol || orthonormality_defect(v1) > tol)
    throw ValidationError("gen_fiedler_join: U1 or V1 does not have orthonormal columns");
  // U1 spans an invariant subspace iff A U1 = U1 (U1^T A U1).
  const double sa = std::max(1.0, a.dense().norm()), sb = std::max(1.0, b.dense().norm());
  const Matrix au = a.dense() * u1, bv = b.dense() * v1;
  if ((au - u1 * (u1.transpose() * au)).cwiseAbs().maxCoeff() > tol * sa ||
      (bv - v1 * (v1.transpose() * bv)).cwiseAbs().maxCoeff() > tol * sb)
    throw ValidationError("gen_fiedler_join: U1 or V1 does not span an invariant subspace");
  const Eigen::Index n = u1.rows(), m = v1.rows();
  Matrix c = Matrix::Zero(n + m, n + m);
  c.topLeftCorner(n, n) = a.dense();
  c.bottomRightCorner(m, m) = b.dense();
  c.bottomLeftCorner(m, n) = v1 * r.transpose() * u1.transpose();
  return SymMatrix::from_lower(c);
}

double DoubleStepParams::b() const { return std::sqrt(t * (a1 - a2 + t)); }

void DoubleStepParams::validate() const {
  if (!(t > 0.0)) throw ValidationError("double step needs t > 0");
  if (!(a1 > a2 - t)) throw ValidationError("double step needs a1 > a2 - t");
  if (!std::isfinite(alpha)) throw ValidationError("double step angle is not finite");
}

D0Block d0_block(const DoubleStepParams& p) {
  p.validate();
  const double b = p.b(), c = std::cos(p.alpha), s = std::sin(p.alpha), st = std::sqrt(p.t);
  SymMatrix d0 = SymMatrix::from_rows({{p.a1, 0, b * c, b * s},
                                       {0, p.a1, -b * s, b * c},
                                       {b * c, -b * s, p.a2, 0},
                                       {b * s, b * c, 0, p.a2}});
  Matrix u(4, 4);
  u << b * s / st, b * c / st, -st * s, -st * c,  //
      b * c / st, -b * s / st, -st * c, st * s,   //
      0, st, 0, b / st,                           //
      st, 0, b / st, 0;
  u /= std::sqrt(p.a1 - p.a2 + 2.0 * p.t);
  return {std::move(d0), OrthMatrix(std::move(u))};
}

DoubleStepResult one_step_double(const EigvecTagged& b1, const EigvecTagged& b2, double t, double alpha,
                                 Seed seed) {
  if (b1.count() < 2 || b2.count() < 2) throw ValidationError("one_step_double needs two tagged vectors per side");
  const Matrix u1 = b1.tagged_vectors.leftCols(2), v1 = b2.tagged_vectors.leftCols(2);
  DoubleStepParams p{b1.tagged_value, b2.tagged_value, t, alpha};
  p.validate();

  const Eigen::Index n = u1.rows(), m = v1.rows();
  std::vector<Seed> trail;
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    if (attempt > 0) {
      const Seed s = derive_seed(seed, std::uint64_t(attempt));
      trail.push_back(s);
      p.alpha = SeedStream(s).uniform(0.0, 2.0 * std::numbers::pi);
    }
    const D0Block blk = d0_block(p);
    const Matrix r = blk.d0.dense().topRightCorner(2, 2);
    const SymMatrix c = gen_fiedler_join(b1.matrix, b2.matrix, u1, v1, r);
    const Matrix coupling = c.dense().bottomLeftCorner(m, n);
    if (coupling.cwiseAbs().minCoeff() < kNonzeroMargin * c.scale()) continue;

    Matrix vecs(n + m, 4);
    for (Eigen::Index j = 0; j < 4; ++j) {
      const Vector x = blk.u0.dense().col(j);
      vecs.col(j).head(n) = u1 * x.head(2);
      vecs.col(j).tail(m) = v1 * x.tail(2);
    }
    bool ok = true;
    for (Eigen::Index j = 0; j < 4; ++j) ok = ok && entries_clear(vecs.col(j), kEntryFloor);
    if (!ok) continue;
    DoubleStepResult out{EigvecTagged::make(c, p.a1 + t, vecs.leftCols(2)),
                         EigvecTagged::make(c, p.a2 - t, vecs.rightCols(2)), p.alpha, trail};
    return out;
  }
  throw GenericPositionError("one_step_double: no angle gave an entrywise nonzero coupling", trail);
}

SymMatrix diagonal_join(const SymMatrix& a, std::size_t pivot, const EigvecTagged& b) {
  const std::size_t n = a.size(), m = b.matrix.size();
  if (pivot >= n) throw ValidationError("diagonal_join: pivot out of range");
  if (b.count() < 1) throw ValidationError("diagonal_join: B needs a tagged vector");
  const double mu = b.tagged_value;
  if (std::abs(a(pivot, pivot) - mu) > 1e-9 * std::max(1.0, std::abs(mu))) {
    std::ostringstream s;
    s << "diagonal_join: a(" << pivot << "," << pivot << ") = " << a(pivot, pivot) << " differs from " << mu;
    throw ValidationError(s.str());
  }
  const Vector u = b.tagged_vectors.col(0);
  if (std::abs(u.norm() - 1.0) > kOrthTol) throw ValidationError("diagonal_join: tagged vector is not a unit vector");

  auto place = [&](std::size_t i) { return i < pivot ? i : i + m - 1; };
  SymMatrix c(n + m - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == pivot) continue;
    for (std::size_t j = i; j < n; ++j)
      if (j != pivot) c.set(place(i), place(j), a(i, j));
    for (std::size_t k = 0; k < m; ++k) c.set(place(i), pivot + k, a(i, pivot) * u(Eigen::Index(k)));
  }
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = k; l < m; ++l) c.set(pivot + k, pivot + l, b.matrix(k, l));
  return c;
}

Vector lift_through_join(const Vector& w, std::size_t pivot, const Vector& u) {
  const Eigen::Index n = w.size(), m = u.size(), p = Eigen::Index(pivot);
  Vector out(n + m - 1);
  out.head(p) = w.head(p);
  out.segment(p, m) = w(p) * u;
  out.tail(n - p - 1) = w.tail(n - p - 1);
  return out;
}

Vector embed_through_join(std::size_t n_a, std::size_t pivot, const Vector& ub) {
  const Eigen::Index m = ub.size();
  Vector out = Vector::Zero(Eigen::Index(n_a) + m - 1);
  out.segment(Eigen::Index(pivot), m) = ub;
  return out;
}

Graph clone_vertex(const Graph& g, Vertex x, std::size_t r) {
  const std::size_t n = g.order();
  if (x >= n) throw ValidationError("clone_vertex: vertex out of range");
  auto place = [&](Vertex i) { return i < x ? i : i + r; };
  Graph out(n + r);
  for (const auto& [u, v] : g.edges()) {
    if (u != x && v != x) {
      out.add_edge(place(u), place(v));
      continue;
    }
    const Vertex other = u == x ? v : u;
    for (std::size_t k = 0; k <= r; ++k) out.add_edge(place(other), x + k);
  }
  for (std::size_t k = 0; k <= r; ++k)
    for (std::size_t l = k + 1; l <= r; ++l) out.add_edge(x + k, x + l);
  return out;
}

}  // namespace mmforge
