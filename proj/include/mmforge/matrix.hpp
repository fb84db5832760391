#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace mmforge {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Default tolerances. Every call site that uses one of these also accepts an
// override.
inline constexpr double kClusterTol = 1e-6;      // relative gap inside a cluster
inline constexpr double kVerifyValueTol = 1e-6;  // cluster value vs target value
inline constexpr double kOrthTol = 1e-10;        // ||Q^T Q - I||_max
inline constexpr double kZeroThreshold = 1e-9;   // structural zero, relative to max(1, max|a|)
inline constexpr double kNonzeroMargin = 1e-6;   // what constructions must clear, same scale

/// Dense real symmetric matrix. The lower triangle is authoritative: every
/// constructor mirrors it into the upper triangle, so a(i,j) == a(j,i)
/// bit-for-bit.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : m_(Matrix::Zero(Eigen::Index(n), Eigen::Index(n))) {}

  /// Mirrors the lower triangle of `m`. Throws ValidationError when `m` is
  /// not square or has non-finite entries.
  static SymMatrix from_lower(const Matrix& m);
  /// Like from_lower, but first checks |m - m^T|_max <= tol * max(1, |m|_max).
  static SymMatrix from_dense(const Matrix& m, double tol = 1e-12);
  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(const std::vector<double>& d);

  std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  double operator()(std::size_t i, std::size_t j) const { return m_(Eigen::Index(i), Eigen::Index(j)); }
  void set(std::size_t i, std::size_t j, double v);

  const Matrix& dense() const noexcept { return m_; }
  double max_abs() const;
  /// max(1, max|a_ij|): the scale for relative zero thresholds.
  double scale() const;
  double trace() const { return m_.trace(); }

  SymMatrix operator+(const SymMatrix& o) const { return from_lower(m_ + o.m_); }
  SymMatrix operator-(const SymMatrix& o) const { return from_lower(m_ - o.m_); }
  SymMatrix operator*(double s) const { return from_lower(m_ * s); }
  /// a + s I
  SymMatrix shifted(double s) const;
  /// Principal submatrix on `idx` in the given order.
  SymMatrix principal(const std::vector<std::size_t>& idx) const;
  /// P A P^T where row i of the result is row perm[i] of A.
  SymMatrix permuted(const std::vector<std::size_t>& perm) const { return principal(perm); }

  bool operator==(const SymMatrix& o) const { return m_.rows() == o.m_.rows() && m_ == o.m_; }

 private:
  explicit SymMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Block diagonal A (+) B.
SymMatrix direct_sum(const SymMatrix& a, const SymMatrix& b);

/// Square matrix with orthonormal columns, checked on construction.
class OrthMatrix {
 public:
  OrthMatrix() = default;
  /// Throws ValidationError when ||Q^T Q - I||_max > tol.
  explicit OrthMatrix(Matrix q, double tol = kOrthTol);

  std::size_t size() const noexcept { return static_cast<std::size_t>(q_.rows()); }
  const Matrix& dense() const noexcept { return q_; }
  double operator()(std::size_t i, std::size_t j) const { return q_(Eigen::Index(i), Eigen::Index(j)); }
  auto column(std::size_t j) const { return q_.col(Eigen::Index(j)); }

 private:
  Matrix q_;
};

/// ||Q^T Q - I||_max for a matrix with orthonormal columns.
double orthonormality_defect(const Matrix& q);

}  // namespace mmforge
