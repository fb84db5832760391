#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mmforge/eiglab.hpp"
#include "mmforge/graph.hpp"
#include "mmforge/matrix.hpp"
#include "mmforge/rng.hpp"

namespace mmforge {

/// A matrix together with orthonormal eigenvectors (columns) for one
/// designated eigenvalue.
struct EigvecTagged {
  SymMatrix matrix;
  double tagged_value = 0.0;
  Matrix tagged_vectors;  // n x k
  std::vector<bool> all_nonzero;

  /// Validates residuals (1e-9 relative) and orthonormality (1e-10), and
  /// computes the all_nonzero flags (min |entry| >= 1e-6).
  static EigvecTagged make(SymMatrix a, double value, Matrix vectors);

  std::size_t count() const { return static_cast<std::size_t>(tagged_vectors.cols()); }
  bool every_vector_nonzero() const;
};

/// Picks `count` orthonormal vectors from the eigenspace of `value`, rotated
/// by a seeded random orthogonal matrix until each has no small entry.
/// Throws ValidationError if the eigenspace is too small and
/// GenericPositionError if no rotation clears the margin.
EigvecTagged tag_eigenspace(const SymMatrix& a, double value, std::size_t count, Seed seed);

/// [[A, rho u v^T], [rho v u^T, B]] with u, v the first tagged vectors.
SymMatrix fiedler_join(const EigvecTagged& a, const EigvecTagged& b, double rho);

/// [[A, U1 R V1^T], [V1 R^T U1^T, B]]. U1 and V1 must have orthonormal columns
/// spanning invariant subspaces of A and B.
SymMatrix gen_fiedler_join(const SymMatrix& a, const SymMatrix& b, const Matrix& u1, const Matrix& v1,
                           const Matrix& r);

struct DoubleStepParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double t = 1.0;
  double alpha = 0.0;

  /// sqrt(t (a1 - a2 + t))
  double b() const;
  /// Throws ValidationError unless t > 0 and a1 > a2 - t.
  void validate() const;
};

struct D0Block {
  SymMatrix d0;
  OrthMatrix u0;  // u0^T d0 u0 = diag(a1 + t, a1 + t, a2 - t, a2 - t)
};

D0Block d0_block(const DoubleStepParams& p);

struct DoubleStepResult {
  EigvecTagged upper;  // value lambda1 + t
  EigvecTagged lower;  // value lambda2 - t, same matrix
  double alpha = 0.0;  // angle that was used
  std::vector<Seed> seed_trail;
};

/// Couples b1 (two tagged vectors for lambda1) and b2 (two for lambda2) so
/// that the pair lambda1 moves to lambda1 + t and lambda2 to lambda2 - t.
/// The coupling block and all four output vectors must be entrywise nonzero;
/// otherwise alpha is redrawn from the seed, up to kRetryBudget times.
DoubleStepResult one_step_double(const EigvecTagged& b1, const EigvecTagged& b2, double t, double alpha,
                                 Seed seed);

/// Inserts B in place of vertex `pivot` of A. Requires a(pivot, pivot) to
/// equal the tagged value of b within 1e-9 relative. The result has rows
/// [0, pivot) of A, then B's rows, then the remaining rows of A.
SymMatrix diagonal_join(const SymMatrix& a, std::size_t pivot, const EigvecTagged& b);

/// Eigenvector of A (for the same value) lifted through diagonal_join.
Vector lift_through_join(const Vector& w, std::size_t pivot, const Vector& u);
/// Eigenvector of B orthogonal to u, lifted through diagonal_join.
Vector embed_through_join(std::size_t n_a, std::size_t pivot, const Vector& ub);

/// Graph with vertex x replaced by a clique of r + 1 copies of itself,
/// using the same index layout as diagonal_join.
Graph clone_vertex(const Graph& g, Vertex x, std::size_t r);

// ---------------------------------------------------------------------------
// Families

/// Matrix in S(K_n) with the given spectrum (all values required), plus a
/// unit eigenvector for items[0].value. If `pattern` is given, the vector is
/// zero exactly where pattern[i] is false.
EigvecTagged complete_graph_realization(const SpectrumSpec& spec, const std::optional<std::vector<bool>>& pattern,
                                        Seed seed);
Certificate complete_graph_matrix(const SpectrumSpec& spec, const std::optional<std::vector<bool>>& pattern,
                                  Seed seed);

/// [[0, B], [B^T, 0]] on K_{m,n} with side A = [0, m). B has singular values
/// lambdas. Requires m <= n, lambdas[0] > 0, all lambdas >= 0.
Certificate bipartite_matrix(std::size_t m, std::size_t n, const std::vector<double>& lambdas, Seed seed);

/// Two eigenvalues {0, 1} with multiplicities 2 + n1 and 2 + n2 on the full
/// ComplementForm graph, including its isolated vertices, so that
/// n1 + n2 = order - 4. Rejects (p0, k) = (1, 1).
Certificate mr_plus_two_matrix(const family::ComplementForm& desc, std::size_t n1, std::size_t n2, Seed seed);

/// Clones vertex `pivot` r = t + s times (a clique with the same neighbours)
/// and adds t eigenvalues 0 and s eigenvalues 1. `cert` must have spectrum
/// {0, 1} as valued targets.
Certificate grow_block(const Certificate& cert, Vertex pivot, std::size_t t, std::size_t s, Seed seed);

/// Three eigenvalues 3, sqrt3, -sqrt3 with multiplicities n1, n2, n3 on
/// (K_{1,0} u K_{p,q})^c in its canonical order.
Certificate k10_kpq_matrix(std::size_t p, std::size_t q, std::size_t n1, std::size_t n2, std::size_t n3,
                           Seed seed);

/// Q = [[M, N], [N, -M]] on g v g with Q^2 = I, eigenvalues +-1 each |g| times.
Certificate join_self_matrix(const Graph& g, Seed seed);

/// [[A, I], [I, -A]] for A with A^2 = I. The new coordinate is the major one,
/// so the graph is product(K_2, G, Cartesian).
SymMatrix cartesian_k2_lift(const SymMatrix& a);
/// Iterated lift giving a matrix on Q_s with eigenvalues +-sqrt2 (s >= 2) or
/// +-1 (s = 1), each of multiplicity 2^(s-1).
Certificate hypercube_matrix(std::size_t s);

/// [[A, I], [I, 0]]; pendant n + i hangs off vertex i.
SymMatrix corona_lift(const SymMatrix& a);

/// A (+) k (B + c I), with k, c chosen so B's eigenvalues mu1, mu2 land on
/// lambda1, lambda2.
SymMatrix union_align(const SymMatrix& a, double lambda1, double lambda2, const SymMatrix& b, double mu1,
                      double mu2);

/// Cartesian: A (x) I + I (x) B'. Tensor: A (x) B'. Strong: (A + I) (x) (B' + I) - I.
/// B' = s B + c I with (s, c) drawn from the seed; for the tensor product c = 0.
SymMatrix product_matrix(const SymMatrix& a, const SymMatrix& b, ProductKind kind, Seed seed);

/// [[T, D], [D, T]] with T tridiagonal (all ones) and D = diag(d).
/// Requires d[j] = -d[n-1-j].
SymMatrix parallel_paths_matrix(std::size_t n, const std::vector<double>& d);

}  // namespace mmforge
