#include "koblab/complex_linalg.hpp"

#include <algorithm>

namespace koblab {

std::vector<double> hermitian_eigenvalues(CMat m) {
  m = m.hermitized();
  const int n = m.n;
  if (n == 0) return {};
  if (n == 1) return {m(0, 0).real()};

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (int p = 0; p < n; ++p) {
      diag += std::norm(m(p, p));
      for (int q = p + 1; q < n; ++q) off += std::norm(m(p, q));
    }
    if (off <= 1e-30 * (1.0 + diag)) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex b = m(p, q);
        const double ab = std::abs(b);
        if (ab <= 1e-300) continue;
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        // 2x2 Hermitian block [[app, b],[conj(b), aqq]]: unitary [[c, -s u],[s conj(u), c]]
        // with u = b/|b| diagonalizes it.
        const Complex u = b / ab;
        const double theta = 0.5 * std::atan2(2.0 * ab, app - aqq);
        const double c = std::cos(theta);
        const double s = std::sin(theta);

        // Columns: M <- M J.
        for (int i = 0; i < n; ++i) {
          const Complex mip = m(i, p);
          const Complex miq = m(i, q);
          m(i, p) = c * mip + s * std::conj(u) * miq;
          m(i, q) = -s * u * mip + c * miq;
        }
        // Rows: M <- J^dagger M.
        for (int i = 0; i < n; ++i) {
          const Complex mpi = m(p, i);
          const Complex mqi = m(q, i);
          m(p, i) = c * mpi + s * u * mqi;
          m(q, i) = -s * std::conj(u) * mpi + c * mqi;
        }
        m(p, q) = 0.5 * (m(p, q) + std::conj(m(q, p)));
        m(q, p) = std::conj(m(p, q));
      }
    }
  }

  std::vector<double> ev(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = m(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace koblab
