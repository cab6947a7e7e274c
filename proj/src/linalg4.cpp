#include "projlab/linalg4.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace projlab::la {

Mat4C conj(const Mat4C& m) {
  Mat4C r;
  for (std::size_t i = 0; i < 16; ++i) r.a[i] = std::conj(m.a[i]);
  return r;
}

Mat4C to_complex(const Mat4R& m) {
  Mat4C r;
  for (std::size_t i = 0; i < 16; ++i) r.a[i] = m.a[i];
  return r;
}

Mat4R real_part(const Mat4C& m) {
  Mat4R r;
  for (std::size_t i = 0; i < 16; ++i) r.a[i] = m.a[i].real();
  return r;
}

double max_abs_imag(const Mat4C& m) {
  double r = 0.0;
  for (const auto& x : m.a) r = std::max(r, std::abs(x.imag()));
  return r;
}

double max_abs(const Mat4C& m) {
  double r = 0.0;
  for (const auto& x : m.a) r = std::max(r, std::abs(x));
  return r;
}

double max_abs(const Mat4R& m) {
  double r = 0.0;
  for (double x : m.a) r = std::max(r, std::abs(x));
  return r;
}

double frobenius(const Mat4C& m) {
  double s = 0.0;
  for (const auto& x : m.a) s += std::norm(x);
  return std::sqrt(s);
}

double frobenius(const Mat4R& m) {
  double s = 0.0;
  for (double x : m.a) s += x * x;
  return std::sqrt(s);
}

double one_norm(const Mat4C& m) {
  double best = 0.0;
  for (int c = 0; c < 4; ++c) {
    double s = 0.0;
    for (int r = 0; r < 4; ++r) s += std::abs(m(r, c));
    best = std::max(best, s);
  }
  return best;
}

Mat4C commutator(const Mat4C& x, const Mat4C& y) { return x * y - y * x; }

namespace {

template <class T>
T lu_det(Mat4<T> m) {
  T d = T(1);
  for (int k = 0; k < 4; ++k) {
    int piv = k;
    for (int r = k + 1; r < 4; ++r)
      if (std::abs(m(r, k)) > std::abs(m(piv, k))) piv = r;
    if (m(piv, k) == T(0)) return T(0);
    if (piv != k) {
      for (int c = 0; c < 4; ++c) std::swap(m(k, c), m(piv, c));
      d = -d;
    }
    d *= m(k, k);
    for (int r = k + 1; r < 4; ++r) {
      const T f = m(r, k) / m(k, k);
      for (int c = k; c < 4; ++c) m(r, c) -= f * m(k, c);
    }
  }
  return d;
}

template <class T>
Mat4<T> gauss_jordan_inverse(Mat4<T> m) {
  Mat4<T> inv = Mat4<T>::identity();
  double scale = 0.0;
  for (const auto& x : m.a) scale = std::max(scale, static_cast<double>(std::abs(x)));
  for (int k = 0; k < 4; ++k) {
    int piv = k;
    for (int r = k + 1; r < 4; ++r)
      if (std::abs(m(r, k)) > std::abs(m(piv, k))) piv = r;
    if (std::abs(m(piv, k)) <= 1e-14 * scale) throw SingularMatrixError("matrix is singular");
    if (piv != k)
      for (int c = 0; c < 4; ++c) {
        std::swap(m(k, c), m(piv, c));
        std::swap(inv(k, c), inv(piv, c));
      }
    const T p = m(k, k);
    for (int c = 0; c < 4; ++c) {
      m(k, c) /= p;
      inv(k, c) /= p;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == k) continue;
      const T f = m(r, k);
      if (f == T(0)) continue;
      for (int c = 0; c < 4; ++c) {
        m(r, c) -= f * m(k, c);
        inv(r, c) -= f * inv(k, c);
      }
    }
  }
  return inv;
}

}  // namespace

cplx det(const Mat4C& m) { return lu_det(m); }
double det(const Mat4R& m) { return lu_det(m); }
Mat4C inverse(const Mat4C& m) { return gauss_jordan_inverse(m); }
Mat4R inverse(const Mat4R& m) { return gauss_jordan_inverse(m); }

Mat4C mat_exp(const Mat4C& m) {
  const double norm = one_norm(m);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat4C x = m * cplx(std::ldexp(1.0, -squarings));

  // Horner form of sum_{k=0}^{18} x^k / k!.
  constexpr int kDegree = 18;
  Mat4C r = Mat4C::identity();
  for (int k = kDegree; k >= 1; --k) r = Mat4C::identity() + (x * r) * cplx(1.0 / k);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

template <std::size_t N>
std::array<double, N> symmetric_eigenvalues(std::array<std::array<double, N>, N> a) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        total += a[i][j] * a[i][j];
        if (i != j) off += a[i][j] * a[i][j];
      }
    if (off <= 1e-30 * total || off == 0.0) break;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::array<double, N> ev{};
  for (std::size_t i = 0; i < N; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

template std::array<double, 4> symmetric_eigenvalues<4>(std::array<std::array<double, 4>, 4>);
template std::array<double, 6> symmetric_eigenvalues<6>(std::array<std::array<double, 6>, 6>);

Signature signature(const Mat4R& q) {
  std::array<std::array<double, 4>, 4> a{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (std::abs(q(i, j) - q(j, i)) > 1e-10) throw NotSymmetricError("signature: matrix is not symmetric");
      a[i][j] = 0.5 * (q(i, j) + q(j, i));
    }
  Signature s;
  for (double mu : symmetric_eigenvalues<4>(a)) {
    if (std::abs(mu) < 1e-8) throw NearSingularError("signature: eigenvalue below 1e-8 in modulus");
    (mu > 0 ? s.pos : s.neg) += 1;
  }
  return s;
}

namespace {

// Index pairs (i, j) of the components p_ij in storage order.
constexpr std::array<std::pair<int, int>, 6> kPairs = {{{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}}};

}  // namespace

Wedge6 wedge(const Vec4R& a, const Vec4R& b) {
  Wedge6 p{};
  for (std::size_t k = 0; k < 6; ++k) {
    const auto [i, j] = kPairs[k];
    p[k] = a[i] * b[j] - a[j] * b[i];
  }
  return p;
}

double pl_inner(const Wedge6& x, const Wedge6& y) {
  return x[0] * y[3] + x[1] * y[4] + x[2] * y[5] + x[3] * y[0] + x[4] * y[1] + x[5] * y[2];
}

std::array<std::array<double, 6>, 6> pl_gram() {
  std::array<std::array<double, 6>, 6> g{};
  for (std::size_t k = 0; k < 3; ++k) {
    g[k][k + 3] = 1.0;
    g[k + 3][k] = 1.0;
  }
  return g;
}

Vec4R operator*(const Mat4R& m, const Vec4R& v) {
  Vec4R r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += m(i, j) * v[j];
  return r;
}

std::array<std::array<double, 6>, 6> wedge_square(const Mat4R& g) {
  std::array<std::array<double, 6>, 6> m{};
  for (std::size_t k = 0; k < 6; ++k) {
    const auto [i, j] = kPairs[k];
    Vec4R gi{}, gj{};
    for (int r = 0; r < 4; ++r) {
      gi[r] = g(r, i);
      gj[r] = g(r, j);
    }
    const Wedge6 col = wedge(gi, gj);
    for (std::size_t r = 0; r < 6; ++r) m[r][k] = col[r];
  }
  return m;
}

Wedge6 apply(const std::array<std::array<double, 6>, 6>& m, const Wedge6& x) {
  Wedge6 r{};
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) r[i] += m[i][j] * x[j];
  return r;
}

namespace constants {

Mat4C L() {
  const double s = 1.0 / std::numbers::sqrt2;
  Mat4C m;
  m(0, 0) = 1.0;
  m(1, 1) = cplx(0.0, s);
  m(1, 2) = cplx(0.0, -s);
  m(2, 1) = s;
  m(2, 2) = s;
  m(3, 3) = 1.0;
  return m;
}

Mat4C L_inv() {
  // L is unitary.
  return conj(transpose(L()));
}

Mat4C J1() { return Mat4C::offdiag(1.0, 1.0, 1.0, 1.0); }

Mat4R J1_hat() { return real_part(L() * J1() * transpose(L())); }

Mat4C J2() { return Mat4C::offdiag(1.0, -1.0, -1.0, 1.0); }

Mat4R J2_hat() { return real_part(-(L() * J2() * transpose(L()))); }

cplx epsilon() { return std::polar(1.0, 2.0 * std::numbers::pi / 3.0); }

Mat4C E() {
  const cplx e = epsilon();
  return Mat4C::diag(1.0, e * e, e, 1.0);
}

Mat4C D(cplx lambda) { return Mat4C::diag(1.0, lambda, 1.0 / lambda, 1.0); }

Mat4C Cswap() {
  Mat4C m;
  m(0, 0) = 1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 3) = 1.0;
  return m;
}

}  // namespace constants

}  // namespace projlab::la
