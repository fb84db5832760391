#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mmforge/graph.hpp"
#include "mmforge/matrix.hpp"
#include "mmforge/rng.hpp"

namespace mmforge {

/// One entry of a target spectrum. A missing value means "free": only the
/// multiplicity is checked.
struct SpectrumItem {
  std::optional<double> value;
  std::size_t multiplicity = 1;

  bool operator==(const SpectrumItem&) const = default;
};

struct SpectrumSpec {
  std::vector<SpectrumItem> items;

  std::size_t dimension() const;
  std::vector<std::size_t> multiplicities() const;
  /// Throws ValidationError on zero multiplicities or on valued items closer
  /// than 1e-6 * max(1, max|value|).
  void validate() const;

  static SpectrumSpec free_multiplicities(const std::vector<std::size_t>& mults);

  bool operator==(const SpectrumSpec&) const = default;
};

struct Cluster {
  double value;  // mean of the members
  std::size_t multiplicity;
  double spread;  // max - min inside the cluster
};

struct EigenReport {
  std::vector<double> eigenvalues;  // ascending
  std::vector<Cluster> clusters;
  std::size_t min_multiplicity = 0;
  /// max_i ||A v_i - lambda_i v_i|| / max(1, ||A||_F)
  double residual = 0.0;
};

struct Eigensystem {
  std::vector<double> values;  // ascending
  OrthMatrix vectors;          // column j pairs with values[j]
};

/// Cyclic Jacobi. Sweeps until every off-diagonal entry is below
/// 1e-14 * ||A||_F. Eigenvector signs are fixed so the entry of largest
/// magnitude in each column is positive.
Eigensystem eigh(const SymMatrix& a);

/// Greedy left-to-right clustering of ascending values: v joins the current
/// cluster when |v - mean| <= tol * max(1, |mean|).
std::vector<Cluster> cluster_spectrum(const std::vector<double>& sorted_values, double tol = kClusterTol);

EigenReport eigen_report(const SymMatrix& a, double cluster_tol = kClusterTol);

std::size_t min_multiplicity(const SymMatrix& a, double tol = kClusterTol);

/// QR of a seeded Gaussian matrix with R's diagonal made positive.
OrthMatrix random_orthogonal(std::size_t n, Seed seed);

/// n x (n - k) orthonormal basis of the complement of the k orthonormal
/// columns of `basis`, from a seeded Gaussian sample.
Matrix orthonormal_complement(const Matrix& basis, Seed seed);

// ---------------------------------------------------------------------------

struct Certificate {
  Graph graph;
  SymMatrix matrix;
  SpectrumSpec target;
  EigenReport eigen;
  PatternReport pattern;
  Seed seed = kDefaultSeed;
  std::vector<std::string> trace;
};

/// Fills in eigen and pattern from the matrix.
Certificate make_certificate(Graph graph, SymMatrix matrix, SpectrumSpec target, Seed seed,
                             std::vector<std::string> trace, double cluster_tol = kClusterTol);

struct VerifyOptions {
  double cluster_tol = kClusterTol;
  double value_tol = kVerifyValueTol;
  double zero_threshold = kZeroThreshold;
};

struct VerifyResult {
  bool pass = false;
  std::vector<std::string> diagnostics;  // empty when pass
  EigenReport eigen;
  PatternReport pattern;
};

/// Recomputes pattern and spectrum from the certificate's matrix. Stored
/// eigen/pattern fields are ignored.
VerifyResult verify_certificate(const Certificate& c, const VerifyOptions& opts = {});

/// Does the clustered spectrum match the target? Appends reasons to `why`.
bool spectrum_matches(const std::vector<Cluster>& clusters, const SpectrumSpec& target, double value_tol,
                      std::vector<std::string>* why = nullptr);

}  // namespace mmforge
