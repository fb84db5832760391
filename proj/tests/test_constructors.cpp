#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mmforge/constants.hpp"
#include "mmforge/constructors.hpp"
#include "mmforge/error.hpp"
#include "oracle.hpp"

using namespace mmforge;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

SymMatrix random_symmetric(std::size_t n, Seed seed) {
  SeedStream rng(seed);
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = rng.normal();
  return SymMatrix::from_lower(m);
}

/// Q diag(values) Q^T with a seeded orthogonal Q; column k of Q pairs with values[k].
std::pair<SymMatrix, Matrix> with_spectrum(const std::vector<double>& values, Seed seed) {
  const Matrix q = random_orthogonal(values.size(), seed).dense();
  Vector d(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) d(static_cast<Eigen::Index>(i)) = values[i];
  return {SymMatrix::from_lower(q * d.asDiagonal() * q.transpose()), q};
}

EigvecTagged tag_column(const SymMatrix& a, double value, const Matrix& q, Eigen::Index col) {
  return EigvecTagged::make(a, value, q.col(col));
}

double residual(const SymMatrix& a, double value, const Vector& v) {
  return (a.dense() * v - value * v).norm() / std::max(1.0, a.dense().norm());
}

std::vector<std::size_t> mults(const Certificate& c) {
  std::vector<std::size_t> out;
  for (const auto& cl : c.eigen.clusters) out.push_back(cl.multiplicity);
  return out;
}

}  // namespace

TEST_CASE("fiedler join examples") {
  const auto [a, qa] = with_spectrum({-1.0, 1.0}, 3);
  const auto [b, qb] = with_spectrum({-2.0, 2.0}, 4);
  const EigvecTagged ta = tag_column(a, 1.0, qa, 1), tb = tag_column(b, 2.0, qb, 1);
  CHECK(oracle::close(oracle::eigenvalues(fiedler_join(ta, tb, 0.0)), {-2, -1, 1, 2}, 1e-10));

  const SymMatrix x = SymMatrix::from_rows({{0, 1}, {1, 0}}), y = SymMatrix::from_rows({{0, 2}, {2, 0}});
  Vector u(2);
  u << 1 / kSqrt2, 1 / kSqrt2;
  const SymMatrix c = fiedler_join(EigvecTagged::make(x, 1.0, u), EigvecTagged::make(y, 2.0, u), 1.0);
  CHECK(oracle::close(oracle::eigenvalues(c), {-2.0, -1.0, 0.38196601125010515, 2.618033988749894}, 1e-12));

  Vector one(1);
  one << 1.0;
  const SymMatrix s = fiedler_join(EigvecTagged::make(SymMatrix::diagonal({1}), 1.0, one),
                                   EigvecTagged::make(SymMatrix::diagonal({1}), 1.0, one), 1.0);
  CHECK(oracle::close(oracle::eigenvalues(s), {0.0, 2.0}, 1e-12));
}

TEST_CASE("fiedler join spectrum identity") {
  for (Seed s = 1; s <= 25; ++s) {
    const std::size_t n = 1 + s % 6, m = 1 + (s / 2) % 6;
    const SymMatrix a = random_symmetric(n, s), b = random_symmetric(m, s + 500);
    const Eigensystem ea = eigh(a), eb = eigh(b);
    const double rho = SeedStream(s).normal();
    const SymMatrix c = fiedler_join(EigvecTagged::make(a, ea.values[0], ea.vectors.dense().col(0)),
                                     EigvecTagged::make(b, eb.values[0], eb.vectors.dense().col(0)), rho);
    std::vector<double> expect(ea.values.begin() + 1, ea.values.end());
    expect.insert(expect.end(), eb.values.begin() + 1, eb.values.end());
    const double al = ea.values[0], be = eb.values[0];
    const double mid = (al + be) / 2, rad = std::sqrt((al - be) * (al - be) / 4 + rho * rho);
    expect.push_back(mid - rad);
    expect.push_back(mid + rad);
    CHECK(oracle::close(oracle::eigenvalues(c), expect, 1e-8));
  }
}

TEST_CASE("generalized join") {
  const auto [a, qa] = with_spectrum({0.0, 1.0, 3.0}, 5);
  const auto [b, qb] = with_spectrum({-1.0, 2.0}, 6);
  const Matrix zero = Matrix::Zero(1, 1);
  CHECK(oracle::close(oracle::eigenvalues(gen_fiedler_join(a, b, qa.col(1), qb.col(0), zero)), {-1, 0, 1, 2, 3},
                      1e-10));
  Matrix r(1, 1);
  r << 0.7;
  const SymMatrix g = gen_fiedler_join(a, b, qa.col(1), qb.col(0), r);
  const SymMatrix f = fiedler_join(tag_column(a, 1.0, qa, 1), tag_column(b, -1.0, qb, 0), 0.7);
  CHECK(oracle::close(oracle::eigenvalues(g), oracle::eigenvalues(f), 1e-10));
  Matrix bad(3, 1);
  bad << 1, 0, 0;
  CHECK_THROWS_AS(gen_fiedler_join(a, b, bad, qb.col(0), r), ValidationError);
}

TEST_CASE("d0 block") {
  const D0Block x = d0_block({1.0, 0.0, 1.0, std::numbers::pi / 6});
  CHECK(DoubleStepParams{1.0, 0.0, 1.0, 0.0}.b() == doctest::Approx(kSqrt2));
  CHECK(oracle::close(oracle::eigenvalues(x.d0), {-1, -1, 2, 2}, 1e-12));
  const D0Block y = d0_block({1.0, 0.0, 1.0, 0.0});
  CHECK(y.d0(0, 3) == 0.0);
  CHECK(y.d0(1, 2) == 0.0);
  CHECK(oracle::close(oracle::eigenvalues(y.d0), {-1, -1, 2, 2}, 1e-12));
  CHECK(DoubleStepParams{0.0, 0.0, 2.0, 0.0}.b() == doctest::Approx(2.0));
  CHECK(oracle::close(oracle::eigenvalues(d0_block({0.0, 0.0, 2.0, 0.3}).d0), {-2, -2, 2, 2}, 1e-12));
  CHECK_THROWS_AS(d0_block({0.0, 0.0, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(d0_block({0.0, 5.0, 1.0, 0.0}), ValidationError);

  for (Seed s = 1; s <= 30; ++s) {
    SeedStream rng(s);
    const double a2 = rng.normal(), a1 = a2 + rng.uniform(-0.5, 2.0), t = rng.uniform(0.6, 2.0);
    const DoubleStepParams p{a1, a2, t, rng.uniform(0.0, 2 * std::numbers::pi)};
    const D0Block blk = d0_block(p);
    const Matrix& u = blk.u0.dense();
    CHECK(orthonormality_defect(u) <= 1e-10);
    Vector d(4);
    d << a1 + t, a1 + t, a2 - t, a2 - t;
    CHECK((u.transpose() * blk.d0.dense() * u - Matrix(d.asDiagonal())).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("one step doubling") {
  const EigvecTagged b1 = tag_eigenspace(SymMatrix::identity(2), 1.0, 2, 1);
  const EigvecTagged b2 = tag_eigenspace(SymMatrix(2), 0.0, 2, 2);
  const DoubleStepResult r = one_step_double(b1, b2, 1.0, 0.4, 3);
  CHECK(oracle::close(oracle::eigenvalues(r.upper.matrix), {-1, -1, 2, 2}, 1e-10));
  CHECK(r.upper.tagged_value == doctest::Approx(2.0));
  CHECK(r.lower.tagged_value == doctest::Approx(-1.0));

  const EigvecTagged c1 = tag_eigenspace(SymMatrix::identity(2) * 2.0, 2.0, 2, 4);
  const DoubleStepResult r2 = one_step_double(c1, b2, 1.0, 0.4, 5);
  CHECK(oracle::close(oracle::eigenvalues(r2.upper.matrix), {-1, -1, 3, 3}, 1e-10));

  // A spectator eigenvalue of B2 survives the coupling.
  const auto [b7, q7] = with_spectrum({0.0, 0.0, 7.0}, 6);
  const EigvecTagged t7 = tag_eigenspace(b7, 0.0, 2, 7);
  const DoubleStepResult r3 = one_step_double(b1, t7, 0.5, 0.4, 8);
  CHECK(oracle::close(oracle::eigenvalues(r3.upper.matrix), {-0.5, -0.5, 1.5, 1.5, 7.0}, 1e-9));
}

TEST_CASE("one step doubling invariants") {
  for (Seed s = 1; s <= 20; ++s) {
    SeedStream rng(s);
    // l1 > l2 - t keeps the coupling real.
    const double l2 = rng.uniform(-1.0, 1.0), l1 = l2 + rng.uniform(-0.4, 1.0), t = rng.uniform(0.5, 1.5);
    const double extra1 = rng.uniform(5.0, 6.0), extra2 = rng.uniform(-6.0, -5.0);
    const auto [m1, q1] = with_spectrum({l1, l1, extra1}, s + 10);
    const auto [m2, q2] = with_spectrum({l2, l2, extra2}, s + 20);
    const DoubleStepResult r =
        one_step_double(tag_eigenspace(m1, l1, 2, s), tag_eigenspace(m2, l2, 2, s + 1), t, rng.uniform(0.0, 6.0), s);
    CHECK(oracle::close(oracle::eigenvalues(r.upper.matrix), {l1 + t, l1 + t, l2 - t, l2 - t, extra1, extra2}, 1e-8));
    for (const EigvecTagged* e : {&r.upper, &r.lower}) {
      CHECK(orthonormality_defect(e->tagged_vectors) <= 1e-10);
      for (Eigen::Index j = 0; j < 2; ++j) {
        CHECK(residual(e->matrix, e->tagged_value, e->tagged_vectors.col(j)) <= 1e-9);
        CHECK(e->tagged_vectors.col(j).cwiseAbs().minCoeff() >= 1e-6);
      }
    }
  }
}

TEST_CASE("diagonal join examples") {
  const auto [b, qb] = with_spectrum({1.5, -0.5, 2.5}, 9);
  const SymMatrix c = diagonal_join(SymMatrix::diagonal({1.5}), 0, tag_column(b, 1.5, qb, 0));
  CHECK(oracle::close(oracle::eigenvalues(c), oracle::eigenvalues(b), 1e-12));

  const SymMatrix a = SymMatrix::from_rows({{1, 1}, {1, 0}});
  Vector e1(2);
  e1 << 1, 0;
  const SymMatrix d = diagonal_join(a, 1, EigvecTagged::make(SymMatrix::diagonal({0, 5}), 0.0, e1));
  CHECK(oracle::close(oracle::eigenvalues(d), {-0.6180339887498948, 1.618033988749895, 5.0}, 1e-12));
  CHECK_THROWS_AS(diagonal_join(SymMatrix::diagonal({3}), 0, EigvecTagged::make(SymMatrix::diagonal({0, 5}), 0.0, e1)),
                  ValidationError);
}

TEST_CASE("diagonal join spectrum and eigenvectors") {
  for (Seed s = 1; s <= 25; ++s) {
    SeedStream rng(s);
    const std::size_t n = 2 + s % 4, m = 2 + (s / 3) % 4, pivot = s % n;
    const double mu = rng.normal();
    std::vector<double> bvals{mu};
    for (std::size_t i = 1; i < m; ++i) bvals.push_back(rng.normal() + 3.0 * double(i));
    const auto [b, qb] = with_spectrum(bvals, s + 40);
    SymMatrix a = random_symmetric(n, s + 80);
    a.set(pivot, pivot, mu);
    const EigvecTagged tb = tag_column(b, mu, qb, 0);
    const SymMatrix c = diagonal_join(a, pivot, tb);

    const Eigensystem ea = eigh(a);
    std::vector<double> expect = ea.values;
    expect.insert(expect.end(), bvals.begin() + 1, bvals.end());
    CHECK(oracle::close(oracle::eigenvalues(c), expect, 1e-8));

    for (std::size_t k = 0; k < n; ++k) {
      const Vector w = lift_through_join(ea.vectors.dense().col(static_cast<Eigen::Index>(k)), pivot, qb.col(0));
      CHECK(residual(c, ea.values[k], w) <= 1e-9);
    }
    for (std::size_t k = 1; k < m; ++k) {
      const Vector w = embed_through_join(n, pivot, qb.col(static_cast<Eigen::Index>(k)));
      CHECK(residual(c, bvals[k], w) <= 1e-9);
    }
    CHECK(pattern_of(c, 1e-12) == clone_vertex(pattern_of(a, 1e-12), pivot, m - 1));
  }
}

TEST_CASE("complete graph realizations") {
  const Certificate c = complete_graph_matrix(SpectrumSpec{{{2.0, 1}, {1.0, 2}}}, std::nullopt, 1);
  CHECK(verify_certificate(c).pass);
  CHECK(c.graph == complete_graph(3));
  CHECK(oracle::close(oracle::eigenvalues(c.matrix), {1, 1, 2}, 1e-9));
  CHECK_THROWS_AS(complete_graph_matrix(SpectrumSpec{{{1.0, 3}}}, std::nullopt, 1), ValidationError);
  for (std::size_t n = 2; n <= 8; ++n) {
    const Certificate k = complete_graph_matrix(SpectrumSpec{{{-1.0, n / 2}, {2.0, n - n / 2}}}, std::nullopt, n);
    CHECK(verify_certificate(k).pass);
    CHECK(oracle::runs(k.matrix) == std::vector<std::size_t>{n / 2, n - n / 2});
  }
  const EigvecTagged e =
      complete_graph_realization(SpectrumSpec{{{5.0, 1}, {0.0, 2}, {1.0, 1}}}, std::vector<bool>{true, false, true, true}, 3);
  CHECK(std::abs(e.tagged_vectors(1, 0)) <= 1e-12);
  CHECK(residual(e.matrix, 5.0, e.tagged_vectors.col(0)) <= 1e-9);
}

TEST_CASE("complete bipartite matrices") {
  const Certificate k11 = bipartite_matrix(1, 1, {1.0}, 1);
  CHECK(k11.matrix(0, 0) == 0.0);
  CHECK(std::abs(k11.matrix(0, 1)) == doctest::Approx(1.0));
  CHECK(oracle::close(oracle::eigenvalues(k11.matrix), {-1, 1}, 1e-12));
  CHECK(oracle::close(oracle::eigenvalues(bipartite_matrix(1, 2, {1.0}, 2).matrix), {-1, 0, 1}, 1e-12));
  const Certificate k33 = bipartite_matrix(3, 3, {1.0, 1.0, 1.0}, 3);
  CHECK(verify_certificate(k33).pass);
  CHECK(oracle::runs(k33.matrix) == std::vector<std::size_t>{3, 3});
  CHECK_THROWS_AS(bipartite_matrix(2, 3, {0.0, 1.0}, 1), ValidationError);

  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = m; n <= 6; ++n) {
      std::vector<double> lam;
      for (std::size_t i = 0; i < m; ++i) lam.push_back(i == 0 ? 2.0 : double(i % 2));
      const Certificate c = bipartite_matrix(m, n, lam, m * 10 + n);
      CHECK(verify_certificate(c).pass);
      const auto v = oracle::eigenvalues(c.matrix);
      std::vector<double> neg;
      for (double x : v) neg.push_back(-x);
      CHECK(oracle::close(v, neg, 1e-9));
      std::size_t zeros = 0;
      for (double x : v) zeros += std::abs(x) <= 1e-9 ? 1 : 0;
      std::size_t zero_lams = 0;
      for (double l : lam) zero_lams += l == 0.0 ? 1 : 0;
      CHECK(zeros == n - m + 2 * zero_lams);
    }
}

TEST_CASE("golden base matrices") {
  const auto b4 = oracle::eigenvalues(constants::base_k20_k11());
  CHECK(oracle::runs(b4) == std::vector<std::size_t>{2, 2});
  CHECK(oracle::close(b4, {0, 0, 1, 1}, 1e-12));
  CHECK(oracle::close(oracle::eigenvalues(constants::base_k10_2k11()), {0, 0, 0, 1, 1}, 1e-12));
  CHECK(oracle::close(oracle::eigenvalues(constants::base_k10_3k11()), {0, 0, 0, 0, 1, 1, 1}, 1e-12));
  CHECK(oracle::close(oracle::eigenvalues(constants::k10_k11_seed()), {-kSqrt3, kSqrt3, 3.0}, 1e-12));
  CHECK(oracle::close(oracle::eigenvalues(constants::odd_chain_start(0.5)), {0, 1, 1.5, 1.5}, 1e-12));
  const SymMatrix p = constants::base_k10_3k11();
  CHECK((p.dense() * p.dense() - p.dense()).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(pattern_check(constants::base_k20_k11(), family_graph({family::ComplementForm{2, {{1, 1}}, 0}})).is_member);
}

TEST_CASE("two-value pipeline examples") {
  const family::ComplementForm f4{2, {{1, 1}}, 0};
  const Certificate c4 = mr_plus_two_matrix(f4, 0, 0, 1);
  CHECK(verify_certificate(c4).pass);
  CHECK(oracle::runs(c4.matrix) == std::vector<std::size_t>{2, 2});
  CHECK(c4.matrix == constants::base_k20_k11());

  const Certificate c5 = mr_plus_two_matrix({1, {{1, 1}, {1, 1}}, 0}, 1, 0, 1);
  CHECK(verify_certificate(c5).pass);
  CHECK(oracle::close(oracle::eigenvalues(c5.matrix), {0, 0, 0, 1, 1}, 1e-9));

  const Certificate c7 = mr_plus_two_matrix({1, {{1, 1}, {1, 1}, {1, 1}}, 0}, 2, 1, 1);
  CHECK(verify_certificate(c7).pass);
  CHECK(oracle::close(oracle::eigenvalues(c7.matrix), {0, 0, 0, 0, 1, 1, 1}, 1e-9));

  const Certificate c6 = mr_plus_two_matrix({4, {{1, 1}}, 0}, 2, 0, 1);
  CHECK(verify_certificate(c6).pass);
  CHECK(mults(c6) == std::vector<std::size_t>{4, 2});

  CHECK_THROWS_AS(mr_plus_two_matrix({1, {{2, 2}}, 0}, 0, 1, 1), ValidationError);
  CHECK_THROWS_AS(mr_plus_two_matrix(f4, 1, 0, 1), ValidationError);
}

TEST_CASE("two-value pipeline with isolated vertices and larger pairs") {
  const family::ComplementForm f{0, {{2, 3}, {1, 1}}, 2};
  const std::size_t n = f.order();
  for (std::size_t n1 = 0; n1 + 4 <= n; ++n1) {
    const Certificate c = mr_plus_two_matrix(f, n1, n - 4 - n1, 17);
    CHECK(verify_certificate(c).pass);
    CHECK(c.graph == family_graph({f}));
    CHECK(oracle::runs(c.matrix) == std::vector<std::size_t>{2 + n1, n - 2 - n1});
  }
}

TEST_CASE("block growth") {
  const Certificate base = mr_plus_two_matrix({2, {{1, 1}}, 0}, 0, 0, 1);
  CHECK(grow_block(base, 0, 0, 0, 1).matrix == base.matrix);
  const Certificate g = grow_block(base, 0, 1, 0, 2);
  CHECK(g.matrix.size() == 5);
  CHECK(verify_certificate(g).pass);
  CHECK(mults(g) == std::vector<std::size_t>{3, 2});
  CHECK(g.graph == clone_vertex(base.graph, 0, 1));
  const Certificate gg = grow_block(g, 0, 1, 0, 3);
  CHECK(verify_certificate(gg).pass);
  CHECK(mults(gg) == std::vector<std::size_t>{4, 2});
  CHECK(gg.graph == family_graph({family::ComplementForm{4, {{1, 1}}, 0}}));
}

TEST_CASE("three-value construction") {
  const Certificate c = k10_kpq_matrix(1, 1, 1, 1, 1, 1);
  CHECK(verify_certificate(c).pass);
  CHECK(oracle::close(oracle::eigenvalues(c.matrix), {-kSqrt3, kSqrt3, 3.0}, 1e-9));
  const Certificate d = k10_kpq_matrix(2, 1, 2, 1, 1, 2);
  CHECK(d.matrix.size() == 4);
  CHECK(verify_certificate(d).pass);
  CHECK(oracle::close(oracle::eigenvalues(d.matrix), {-kSqrt3, kSqrt3, 3.0, 3.0}, 1e-9));
  const Certificate e = k10_kpq_matrix(4, 4, 3, 3, 3, 3);
  CHECK(verify_certificate(e).pass);
  CHECK(e.eigen.min_multiplicity == 3);
  CHECK(e.graph == family_graph({family::ComplementForm{1, {{4, 4}}, 0}}));
  CHECK_THROWS_AS(k10_kpq_matrix(1, 1, 2, 1, 1, 1), ValidationError);
}

TEST_CASE("join with itself") {
  const Certificate k1 = join_self_matrix(complete_graph(1), 1);
  CHECK(oracle::close(oracle::eigenvalues(k1.matrix), {-1, 1}, 1e-10));
  const Certificate k2 = join_self_matrix(complete_graph(2), 2);
  CHECK(k2.graph == complete_graph(4));
  CHECK(oracle::runs(k2.matrix) == std::vector<std::size_t>{2, 2});
  const Certificate p3 = join_self_matrix(path_graph(3), 3);
  CHECK(verify_certificate(p3).pass);
  CHECK(oracle::runs(p3.matrix) == std::vector<std::size_t>{3, 3});
  const Matrix& q = p3.matrix.dense();
  CHECK((q * q - Matrix::Identity(6, 6)).norm() <= 1e-8);
  CHECK(std::abs(q.trace()) <= 1e-9);
  CHECK_THROWS_AS(join_self_matrix(empty_graph(2), 1), ValidationError);
}

TEST_CASE("cartesian lift and hypercubes") {
  const SymMatrix b = cartesian_k2_lift(SymMatrix::from_rows({{0, 1}, {1, 0}}));
  CHECK(oracle::close(oracle::eigenvalues(b), {-kSqrt2, -kSqrt2, kSqrt2, kSqrt2}, 1e-12));
  CHECK(pattern_of(b) == hypercube_graph(2));
  const SymMatrix d = cartesian_k2_lift(SymMatrix::diagonal({1, -1}));
  CHECK(pattern_of(d) == Graph(4, {{0, 2}, {1, 3}}));
  CHECK((d.dense() * d.dense() - 2 * Matrix::Identity(4, 4)).norm() <= 1e-8);
  CHECK_THROWS_AS(cartesian_k2_lift(SymMatrix::diagonal({2, -1})), ValidationError);

  for (std::size_t s = 1; s <= 5; ++s) {
    const Certificate q = hypercube_matrix(s);
    CHECK(verify_certificate(q).pass);
    CHECK(q.eigen.min_multiplicity == (std::size_t{1} << (s - 1)));
  }
}

TEST_CASE("corona lift") {
  CHECK(oracle::close(oracle::eigenvalues(corona_lift(SymMatrix(1))), {-1, 1}, 1e-12));
  CHECK(oracle::close(oracle::eigenvalues(corona_lift(SymMatrix::identity(2))),
                      {-0.6180339887498948, -0.6180339887498948, 1.618033988749895, 1.618033988749895}, 1e-12));
  const Certificate k4 = complete_graph_matrix(SpectrumSpec{{{1.0, 2}, {0.0, 2}}}, std::nullopt, 4);
  const SymMatrix c = corona_lift(k4.matrix);
  CHECK(oracle::runs(c) == std::vector<std::size_t>{2, 2, 2, 2});
  for (double lam : {0.0, 1.0}) {
    const double r = std::sqrt(lam * lam + 4);
    std::size_t hits = 0;
    for (double v : oracle::eigenvalues(c))
      hits += (std::abs(v - (lam + r) / 2) <= 1e-9 || std::abs(v - (lam - r) / 2) <= 1e-9) ? 1 : 0;
    CHECK(hits == 4);
  }
}

TEST_CASE("union alignment") {
  const auto [a, qa] = with_spectrum({1, 1, -1, -1}, 1);
  const SymMatrix same = union_align(a, 1, -1, a, 1, -1);
  CHECK(same == direct_sum(a, a));
  const auto [b, qb] = with_spectrum({3, 0, 0, 0}, 2);
  const SymMatrix u = union_align(a, 1, -1, b, 3, 0);
  CHECK(oracle::close(oracle::eigenvalues(u), {-1, -1, -1, -1, -1, 1, 1, 1}, 1e-9));
  const SymMatrix k2 = SymMatrix::from_rows({{0, 1}, {1, 0}});
  const SymMatrix k2b = SymMatrix::from_rows({{1, 2}, {2, 1}});
  CHECK(min_multiplicity(union_align(k2, -1, 1, k2b, -1, 3)) == 2);
}

TEST_CASE("product matrices") {
  const SymMatrix a = random_symmetric(3, 5);
  const SymMatrix c = product_matrix(a, SymMatrix(1), ProductKind::Cartesian, 1);
  const Matrix diff = c.dense() - a.dense();
  CHECK((diff - diff(0, 0) * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);

  const SymMatrix q2 = hypercube_matrix(2).matrix * (1.0 / kSqrt2);
  const SymMatrix t = product_matrix(q2, q2, ProductKind::Tensor, 2);
  CHECK(t.size() == 16);
  CHECK(min_multiplicity(t) >= 4);
  CHECK(pattern_check(t, product(hypercube_graph(2), hypercube_graph(2), ProductKind::Tensor)).is_member);

  const SymMatrix k2 = SymMatrix::from_rows({{0, 1}, {1, 0}});
  const SymMatrix st = product_matrix(k2, k2, ProductKind::Strong, 3);
  CHECK(min_multiplicity(st) >= 1);
  CHECK(edge_margin(st, complete_graph(4)) >= kNonzeroMargin);
}

TEST_CASE("parallel paths") {
  const SymMatrix m2 = parallel_paths_matrix(2, {1, -1});
  CHECK(oracle::close(oracle::eigenvalues(m2), {1 - kSqrt2, 1 - kSqrt2, 1 + kSqrt2, 1 + kSqrt2}, 1e-12));
  const SymMatrix m3 = parallel_paths_matrix(3, {1, 0, -1});
  CHECK(oracle::close(oracle::eigenvalues(m3), {1 - kSqrt3, 1 - kSqrt3, 1, 1, 1 + kSqrt3, 1 + kSqrt3}, 1e-12));
  const SymMatrix z = parallel_paths_matrix(3, {0, 0, 0});
  CHECK(z == direct_sum(z.principal({0, 1, 2}), z.principal({0, 1, 2})));
  CHECK_THROWS_AS(parallel_paths_matrix(2, {1, 1}), ValidationError);
}
