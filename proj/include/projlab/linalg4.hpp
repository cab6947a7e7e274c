#pragma once

// Fixed-size 4x4 complex/real matrices, the 6-dimensional exterior square
// of R^4, and the constant matrices used throughout the library.

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace projlab::la {

using cplx = std::complex<double>;

template <class T>
struct Mat4 {
  std::array<T, 16> a{};

  T& operator()(int r, int c) { return a[static_cast<std::size_t>(4 * r + c)]; }
  const T& operator()(int r, int c) const { return a[static_cast<std::size_t>(4 * r + c)]; }

  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = T(1);
    return m;
  }
  static Mat4 zero() { return Mat4{}; }
  static Mat4 diag(T d0, T d1, T d2, T d3) {
    Mat4 m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    m(3, 3) = d3;
    return m;
  }
  /// Anti-diagonal matrix with entries (0,3), (1,2), (2,1), (3,0).
  static Mat4 offdiag(T d0, T d1, T d2, T d3) {
    Mat4 m;
    m(0, 3) = d0;
    m(1, 2) = d1;
    m(2, 1) = d2;
    m(3, 0) = d3;
    return m;
  }

  Mat4& operator+=(const Mat4& o) {
    for (std::size_t i = 0; i < 16; ++i) a[i] += o.a[i];
    return *this;
  }
  Mat4& operator-=(const Mat4& o) {
    for (std::size_t i = 0; i < 16; ++i) a[i] -= o.a[i];
    return *this;
  }
  Mat4& operator*=(T s) {
    for (auto& x : a) x *= s;
    return *this;
  }
  friend Mat4 operator+(Mat4 x, const Mat4& y) { return x += y; }
  friend Mat4 operator-(Mat4 x, const Mat4& y) { return x -= y; }
  friend Mat4 operator-(Mat4 x) {
    for (auto& v : x.a) v = -v;
    return x;
  }
  friend Mat4 operator*(Mat4 x, T s) { return x *= s; }
  friend Mat4 operator*(T s, Mat4 x) { return x *= s; }
  friend Mat4 operator*(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        const T xik = x(i, k);
        for (int j = 0; j < 4; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }
  friend bool operator==(const Mat4&, const Mat4&) = default;
};

using Mat4C = Mat4<cplx>;
using Mat4R = Mat4<double>;
using Vec4R = std::array<double, 4>;
using Vec4C = std::array<cplx, 4>;

/// Components (p01, p02, p03, p23, p31, p12) of a bivector in R^4.
using Wedge6 = std::array<double, 6>;

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSymmetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NearSingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
Mat4<T> transpose(const Mat4<T>& m) {
  Mat4<T> r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = m(j, i);
  return r;
}

template <class T>
T trace(const Mat4<T>& m) {
  return m(0, 0) + m(1, 1) + m(2, 2) + m(3, 3);
}

Mat4C conj(const Mat4C& m);
Mat4C to_complex(const Mat4R& m);
Mat4R real_part(const Mat4C& m);
double max_abs_imag(const Mat4C& m);
double max_abs(const Mat4C& m);
double max_abs(const Mat4R& m);
double frobenius(const Mat4C& m);
double frobenius(const Mat4R& m);
double one_norm(const Mat4C& m);
Mat4C commutator(const Mat4C& x, const Mat4C& y);

/// LU with partial pivoting.
cplx det(const Mat4C& m);
double det(const Mat4R& m);
/// Throws SingularMatrixError when a pivot vanishes.
Mat4C inverse(const Mat4C& m);
Mat4R inverse(const Mat4R& m);

/// Matrix exponential by scaling and squaring around a degree-18 Taylor
/// core (the scaled matrix has 1-norm at most 1/2).
Mat4C mat_exp(const Mat4C& m);

/// Eigenvalues of a real symmetric N x N matrix (cyclic Jacobi), ascending.
template <std::size_t N>
std::array<double, N> symmetric_eigenvalues(std::array<std::array<double, N>, N> a);

struct Signature {
  int pos = 0;
  int neg = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Counts of positive and negative eigenvalues. Throws NotSymmetricError if
/// |Q - Q^T| > 1e-10 entrywise and NearSingularError if some |mu| < 1e-8.
Signature signature(const Mat4R& q);

Wedge6 wedge(const Vec4R& a, const Vec4R& b);

/// The bilinear form Omega(x ^ y) with Omega = e^0 ^ e^1 ^ e^2 ^ e^3; in the
/// component order above it pairs p01 <-> p23, p02 <-> p31, p03 <-> p12.
double pl_inner(const Wedge6& x, const Wedge6& y);

/// Gram matrix of pl_inner in the component order above.
std::array<std::array<double, 6>, 6> pl_gram();

/// Induced action of g on bivectors: wedge(g a, g b) = wedge_square(g) * wedge(a, b).
std::array<std::array<double, 6>, 6> wedge_square(const Mat4R& g);
Wedge6 apply(const std::array<std::array<double, 6>, 6>& m, const Wedge6& x);

Vec4R operator*(const Mat4R& m, const Vec4R& v);

/// The constant matrices of the moving-frame construction.
namespace constants {

/// Realification matrix: L F L^{-1} is real for frames satisfying the
/// reality condition conj(F) = Cswap F Cswap.
Mat4C L();
Mat4C L_inv();
/// offdiag(1, 1, 1, 1).
Mat4C J1();
/// L J1 L^T (real).
Mat4R J1_hat();
/// offdiag(1, -1, -1, 1).
Mat4C J2();
/// -L J2 L^T (real).
Mat4R J2_hat();
/// Primitive cube root of unity e^{2 pi i / 3}.
cplx epsilon();
/// diag(1, eps^2, eps, 1).
Mat4C E();
/// diag(1, lambda, 1/lambda, 1).
Mat4C D(cplx lambda);
/// Permutation exchanging indices 1 and 2.
Mat4C Cswap();

}  // namespace constants

}  // namespace projlab::la
