#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "koblab/errors.hpp"

namespace koblab {

using Complex = std::complex<double>;

/// Point or tangent vector in C^n, n <= 4 in this project.
using CVec = std::vector<Complex>;

inline double norm2(const CVec& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

inline double norm(const CVec& v) { return std::sqrt(norm2(v)); }

inline double sup_norm(const CVec& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

/// Hermitian inner product <u, v> = sum u_j conj(v_j).
inline Complex hdot(const CVec& u, const CVec& v) {
  Complex s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * std::conj(v[j]);
  return s;
}

inline double dist(const CVec& a, const CVec& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a[j] - b[j]);
  return std::sqrt(s);
}

inline CVec operator+(const CVec& a, const CVec& b) {
  CVec r = a;
  for (std::size_t j = 0; j < r.size(); ++j) r[j] += b[j];
  return r;
}

inline CVec operator-(const CVec& a, const CVec& b) {
  CVec r = a;
  for (std::size_t j = 0; j < r.size(); ++j) r[j] -= b[j];
  return r;
}

inline CVec operator*(Complex c, const CVec& a) {
  CVec r = a;
  for (auto& x : r) x *= c;
  return r;
}

inline CVec conj(const CVec& a) {
  CVec r = a;
  for (auto& x : r) x = std::conj(x);
  return r;
}

/// Small dense complex matrix, row-major, n <= 4. Used for complex Hessians
/// H_{jk} ~ d^2 u / dz_j dzbar_k.
struct CMat {
  int n = 0;
  std::array<Complex, 16> a{};

  CMat() = default;
  explicit CMat(int dim) : n(dim) {
    if (dim < 0 || dim > 4) fail("domain-error", "CMat supports n <= 4");
  }

  Complex& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  const Complex& operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i * n + j)];
  }

  static CMat identity(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMat zero(int dim) { return CMat(dim); }

  CMat& operator+=(const CMat& o) {
    for (int i = 0; i < n * n; ++i) a[static_cast<std::size_t>(i)] += o.a[static_cast<std::size_t>(i)];
    return *this;
  }

  CMat& scale(Complex c) {
    for (int i = 0; i < n * n; ++i) a[static_cast<std::size_t>(i)] *= c;
    return *this;
  }

  /// (H + H^dagger)/2.
  CMat hermitized() const {
    CMat m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return m;
  }

  double frobenius() const {
    double s = 0.0;
    for (int i = 0; i < n * n; ++i) s += std::norm(a[static_cast<std::size_t>(i)]);
    return std::sqrt(s);
  }

  double hermitian_defect() const {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    return std::sqrt(s);
  }

  /// Quadratic form sum_jk H_jk X_j conj(X_k); real for Hermitian H.
  Complex quad_form(const CVec& x) const {
    Complex s = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s += (*this)(j, k) * x[static_cast<std::size_t>(j)] * std::conj(x[static_cast<std::size_t>(k)]);
    return s;
  }
};

inline CMat operator+(CMat lhs, const CMat& rhs) {
  lhs += rhs;
  return lhs;
}

inline CMat scaled(CMat m, Complex c) {
  m.scale(c);
  return m;
}

/// Hermitian rank-one-pair builder: u v^dagger + v u^dagger.
inline CMat sym_outer(const CVec& u, const CVec& v) {
  const int n = static_cast<int>(u.size());
  CMat m(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      m(j, k) = u[static_cast<std::size_t>(j)] * std::conj(v[static_cast<std::size_t>(k)]) +
                v[static_cast<std::size_t>(j)] * std::conj(u[static_cast<std::size_t>(k)]);
  return m;
}

/// u u^dagger.
inline CMat outer_self(const CVec& u) {
  const int n = static_cast<int>(u.size());
  CMat m(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      m(j, k) = u[static_cast<std::size_t>(j)] * std::conj(u[static_cast<std::size_t>(k)]);
  return m;
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
/// Dimension is tiny so robustness beats speed.
std::vector<double> hermitian_eigenvalues(CMat m);

}  // namespace koblab
