#include "mmforge/constants.hpp"

#include <cmath>

namespace mmforge::constants {

namespace {

using LD = long double;

SymMatrix from_upper(const LD (&u)[7][7], int n) {
  SymMatrix m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(std::size_t(i), std::size_t(j), static_cast<double>(u[i][j]));
  return m;
}

}  // namespace

SymMatrix base_k20_k11() {
  const LD s3 = std::sqrt(3.0L);
  const LD c = std::sqrt(21.0L + 26.0L * s3) / 23.0L;
  LD u[7][7] = {};
  u[0][0] = u[1][1] = 2.0L / (2.0L + 3.0L * s3);
  u[0][1] = (9.0L - 2.0L * s3) / 23.0L;
  u[0][2] = u[1][2] = c;
  u[0][3] = std::pow(3.0L, 0.25L) * (-11.0L + 5.0L * s3) / 23.0L;
  u[1][3] = std::sqrt(-330.0L + 196.0L * s3) / 23.0L;
  u[2][2] = -2.0L * (-9.0L + 2.0L * s3) / 23.0L;
  u[3][3] = -4.0L * (-9.0L + 2.0L * s3) / 23.0L;
  return from_upper(u, 4);
}

SymMatrix base_k10_2k11() {
  const LD s2 = std::sqrt(2.0L), s3 = std::sqrt(3.0L), s6 = std::sqrt(6.0L);
  LD u[7][7] = {};
  u[0][0] = (3.0L + s3) / 7.0L;
  u[0][2] = s3 / 7.0L;
  u[0][3] = (1.0L + s3) / 7.0L;
  u[0][4] = s6 / (7.0L * (3.0L + s3));
  u[1][1] = (3.0L - s3) / 7.0L;
  u[1][2] = s3 / 7.0L;
  u[1][3] = (1.0L - s3) / 7.0L;
  u[1][4] = -s6 * (2.0L + s3) / (7.0L * (3.0L + s3));
  u[2][2] = 3.0L / 7.0L;
  u[2][4] = -s6 / 7.0L;
  u[3][3] = 2.0L / 7.0L;
  u[3][4] = s2 / 7.0L;
  u[4][4] = 3.0L / 7.0L;
  return from_upper(u, 5);
}

SymMatrix base_k10_3k11() {
  const LD s3 = std::sqrt(3.0L), s7 = std::sqrt(7.0L);
  const LD r57 = std::sqrt(5.0L / 7.0L), r37 = std::sqrt(3.0L / 7.0L), r157 = std::sqrt(15.0L / 7.0L);
  LD u[7][7] = {};
  u[0][0] = 32.0L / 63.0L;
  u[0][1] = 0.3333577426387795561905013216509644980805L;
  u[0][2] = 0.2623714576387862324949719988340985858443L;
  u[1][1] = 0.7267356579179050550081455084413686050681L;
  u[2][2] = 0.1938992627170155799124894121935520298525L;

  u[0][3] = 2.0L / (7.0L * s7 * (1.0L + s3));
  u[0][4] = -2.0L * (2.0L + s3) / (7.0L * s7 * (1.0L + s3));
  u[0][5] = -2.0L * r37 / 7.0L;
  u[0][6] = 2.0L / (7.0L * s7);
  u[1][3] = -r57 / (7.0L * (1.0L + s3));
  u[1][4] = r57 * (2.0L + s3) / (7.0L * (1.0L + s3));
  u[1][5] = r157 / 7.0L;
  u[1][6] = -r57 / 7.0L;
  u[2][3] = r57 / (7.0L + 7.0L * s3);
  u[2][4] = -r57 * (2.0L + s3) / (7.0L * (1.0L + s3));
  u[2][5] = -r157 / 7.0L;
  u[2][6] = r57 / 7.0L;

  u[3][3] = (3.0L + s3) / 7.0L;
  u[3][5] = s3 / 7.0L;
  u[3][6] = (1.0L + s3) / 7.0L;
  u[4][4] = (3.0L - s3) / 7.0L;
  u[4][5] = s3 / 7.0L;
  u[4][6] = (1.0L - s3) / 7.0L;
  u[5][5] = 3.0L / 7.0L;
  u[6][6] = 2.0L / 7.0L;
  return from_upper(u, 7);
}

SymMatrix odd_chain_start(double a_in) {
  const LD a = a_in;
  const LD r = std::sqrt(a * a + 1.5L * a) / 3.0L;
  LD u[7][7] = {};
  u[0][0] = u[1][1] = 2.0L * a / 3.0L + 1.0L;
  u[0][2] = u[1][2] = -a / 3.0L;
  u[0][3] = r;
  u[1][3] = -r;
  u[2][2] = (a + 3.0L) / 3.0L;
  u[3][3] = a / 3.0L;
  return from_upper(u, 4);
}

SymMatrix k10_k11_seed() { return SymMatrix::from_rows({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}); }

}  // namespace mmforge::constants
