#include "mmforge/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "mmforge/error.hpp"

namespace mmforge {

SymMatrix SymMatrix::from_lower(const Matrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("symmetric matrix must be square");
  if (!m.allFinite()) throw ValidationError("matrix has non-finite entries");
  Matrix out = m;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i) out(i, j) = m(j, i);
  return SymMatrix(std::move(out));
}

SymMatrix SymMatrix::from_dense(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw ValidationError("symmetric matrix must be square");
  if (!m.allFinite()) throw ValidationError("matrix has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = m.rows() == 0 ? 0.0 : (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) throw ValidationError("matrix is not symmetric");
  return from_lower(m);
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[std::size_t(i)].size()) != n)
      throw ValidationError("row " + std::to_string(i) + " has the wrong length");
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[std::size_t(i)][std::size_t(j)];
  }
  return from_dense(m);
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

SymMatrix SymMatrix::identity(std::size_t n) {
  return SymMatrix(Matrix::Identity(Eigen::Index(n), Eigen::Index(n)));
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
  SymMatrix out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out.set(i, i, d[i]);
  return out;
}

void SymMatrix::set(std::size_t i, std::size_t j, double v) {
  m_(Eigen::Index(i), Eigen::Index(j)) = v;
  m_(Eigen::Index(j), Eigen::Index(i)) = v;
}

double SymMatrix::max_abs() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

double SymMatrix::scale() const { return std::max(1.0, max_abs()); }

SymMatrix SymMatrix::shifted(double s) const {
  Matrix m = m_;
  m.diagonal().array() += s;
  return SymMatrix(std::move(m));
}

SymMatrix SymMatrix::principal(const std::vector<std::size_t>& idx) const {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Matrix out(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      out(i, j) = m_(Eigen::Index(idx[std::size_t(i)]), Eigen::Index(idx[std::size_t(j)]));
  return SymMatrix(std::move(out));
}

SymMatrix direct_sum(const SymMatrix& a, const SymMatrix& b) {
  const auto n = Eigen::Index(a.size()), m = Eigen::Index(b.size());
  Matrix out = Matrix::Zero(n + m, n + m);
  out.topLeftCorner(n, n) = a.dense();
  out.bottomRightCorner(m, m) = b.dense();
  return SymMatrix::from_lower(out);
}

double orthonormality_defect(const Matrix& q) {
  if (q.cols() == 0) return 0.0;
  const Matrix gram = q.transpose() * q;
  return (gram - Matrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
}

OrthMatrix::OrthMatrix(Matrix q, double tol) : q_(std::move(q)) {
  if (q_.rows() != q_.cols()) throw ValidationError("orthogonal matrix must be square");
  const double defect = orthonormality_defect(q_);
  if (!(defect <= tol))
    throw ValidationError("matrix is not orthogonal (defect " + std::to_string(defect) + ")");
}

}  // namespace mmforge
