#include "conekit/torus_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace conekit {

namespace {

// Axis order (x1, y1, x2, y2); strides in the row-major layout.
inline std::array<std::size_t, 4> strides(const Grid4& g) {
  const auto n = static_cast<std::size_t>(g.N);
  return {n * n * n, n * n, n, 1};
}

}  // namespace

HermitianField2 complex_hessian(const Grid4& g, const Field& u) {
  if (u.size() != g.size()) throw std::invalid_argument("complex_hessian: field size");
  const int N = g.N;
  const double ih2 = 1.0 / (g.h * g.h);
  HermitianField2 out(g.size());
  const auto st = strides(g);

  auto second = [&](std::size_t p, int axis, int i_ax) {
    // central second difference with periodic wrap along one axis
    const std::size_t s = st[static_cast<std::size_t>(axis)];
    const std::size_t up = (i_ax + 1 < N) ? p + s : p + s - s * static_cast<std::size_t>(N);
    const std::size_t dn = (i_ax > 0) ? p - s : p - s + s * static_cast<std::size_t>(N);
    return (u[up] - 2.0 * u[p] + u[dn]) * ih2;
  };
  auto shift = [&](std::size_t p, int axis, int i_ax, int dir) {
    const std::size_t s = st[static_cast<std::size_t>(axis)];
    if (dir > 0) return (i_ax + 1 < N) ? p + s : p + s - s * static_cast<std::size_t>(N);
    return (i_ax > 0) ? p - s : p - s + s * static_cast<std::size_t>(N);
  };
  auto cross = [&](std::size_t p, int ax_a, int ia, int ax_b, int ib) {
    const std::size_t pp = shift(shift(p, ax_a, ia, +1), ax_b, ib, +1);
    const std::size_t pm = shift(shift(p, ax_a, ia, +1), ax_b, ib, -1);
    const std::size_t mp = shift(shift(p, ax_a, ia, -1), ax_b, ib, +1);
    const std::size_t mm = shift(shift(p, ax_a, ia, -1), ax_b, ib, -1);
    return (u[pp] - u[pm] - u[mp] + u[mm]) * 0.25 * ih2;
  };

  std::size_t p = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l, ++p) {
          const int ix[4] = {i, j, k, l};
          const double uxx1 = second(p, 0, ix[0]);
          const double uyy1 = second(p, 1, ix[1]);
          const double uxx2 = second(p, 2, ix[2]);
          const double uyy2 = second(p, 3, ix[3]);
          out.h11[p] = 0.25 * (uxx1 + uyy1);
          out.h22[p] = 0.25 * (uxx2 + uyy2);
          const double ux1x2 = cross(p, 0, i, 2, k);
          const double uy1y2 = cross(p, 1, j, 3, l);
          const double ux1y2 = cross(p, 0, i, 3, l);
          const double uy1x2 = cross(p, 1, j, 2, k);
          out.re12[p] = 0.25 * (ux1x2 + uy1y2);
          out.im12[p] = 0.25 * (ux1y2 - uy1x2);
        }
  return out;
}

ComplexGradient2 complex_gradient(const Grid4& g, const Field& u) {
  const int N = g.N;
  const double i2h = 1.0 / (2.0 * g.h);
  ComplexGradient2 out{Field(g.size()), Field(g.size()), Field(g.size()),
                       Field(g.size())};
  const auto st = strides(g);
  auto diff = [&](std::size_t p, int axis, int i_ax) {
    const std::size_t s = st[static_cast<std::size_t>(axis)];
    const std::size_t up = (i_ax + 1 < N) ? p + s : p + s - s * static_cast<std::size_t>(N);
    const std::size_t dn = (i_ax > 0) ? p - s : p - s + s * static_cast<std::size_t>(N);
    return (u[up] - u[dn]) * i2h;
  };
  std::size_t p = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l, ++p) {
          out.re1[p] = 0.5 * diff(p, 0, i);
          out.im1[p] = -0.5 * diff(p, 1, j);
          out.re2[p] = 0.5 * diff(p, 2, k);
          out.im2[p] = -0.5 * diff(p, 3, l);
        }
  return out;
}

Field complex_laplacian(const Grid4& g, const Field& u) {
  const auto hess = complex_hessian(g, u);
  Field out(g.size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = hess.h11[p] + hess.h22[p];
  return out;
}

double hermitian_pair(double w11, double w22, std::complex<double> w12,
                      double h11, double h22, double re12, double im12) {
  return w11 * h11 + w22 * h22 +
         2.0 * (w12.real() * re12 + w12.imag() * im12);
}

SpectralSolver::SpectralSolver(const Grid4& g) : grid_(g), symbol_(g.size(), 0.0) {
  buf_ = fftw_alloc_complex(g.size());
  const int n = g.N;
  int dims[4] = {n, n, n, n};
  fwd_ = fftw_plan_dft(4, dims, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft(4, dims, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

SpectralSolver::~SpectralSolver() {
  if (fwd_) fftw_destroy_plan(fwd_);
  if (bwd_) fftw_destroy_plan(bwd_);
  if (buf_) fftw_free(buf_);
}

void SpectralSolver::set_model(double w11, double w22, std::complex<double> w12,
                               double mass) {
  const int N = grid_.N;
  const double ih2 = 1.0 / (grid_.h * grid_.h);
  const double two_pi = 6.283185307179586;
  std::vector<double> s(static_cast<std::size_t>(N));   // second-difference symbol
  std::vector<double> sn(static_cast<std::size_t>(N));  // central first-difference sine
  for (int k = 0; k < N; ++k) {
    const double th = two_pi * k / N;
    s[static_cast<std::size_t>(k)] = -(2.0 - 2.0 * std::cos(th)) * ih2;
    sn[static_cast<std::size_t>(k)] = std::sin(th);
  }
  std::size_t p = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l, ++p) {
          const double h11 = 0.25 * (s[static_cast<std::size_t>(i)] +
                                     s[static_cast<std::size_t>(j)]);
          const double h22 = 0.25 * (s[static_cast<std::size_t>(k)] +
                                     s[static_cast<std::size_t>(l)]);
          const double cx1x2 = -sn[static_cast<std::size_t>(i)] *
                               sn[static_cast<std::size_t>(k)] * ih2;
          const double cy1y2 = -sn[static_cast<std::size_t>(j)] *
                               sn[static_cast<std::size_t>(l)] * ih2;
          const double cx1y2 = -sn[static_cast<std::size_t>(i)] *
                               sn[static_cast<std::size_t>(l)] * ih2;
          const double cy1x2 = -sn[static_cast<std::size_t>(j)] *
                               sn[static_cast<std::size_t>(k)] * ih2;
          const double re12 = 0.25 * (cx1x2 + cy1y2);
          const double im12 = 0.25 * (cx1y2 - cy1x2);
          symbol_[p] = hermitian_pair(w11, w22, w12, h11, h22, re12, im12) - mass;
        }
}

void SpectralSolver::solve(const Field& rhs, Field& out) {
  const std::size_t n = grid_.size();
  for (std::size_t p = 0; p < n; ++p) {
    buf_[p][0] = rhs[p];
    buf_[p][1] = 0.0;
  }
  fftw_execute(fwd_);
  for (std::size_t p = 0; p < n; ++p) {
    buf_[p][0] /= symbol_[p];
    buf_[p][1] /= symbol_[p];
  }
  fftw_execute(bwd_);
  out.resize(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t p = 0; p < n; ++p) out[p] = buf_[p][0] * scale;
}

}  // namespace conekit
