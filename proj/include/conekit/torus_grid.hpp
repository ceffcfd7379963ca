#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include <fftw3.h>

namespace conekit {

/// Flat periodic grid for the complex 2-torus: N points per real coordinate
/// (x1, y1, x2, y2), spacing h = 1/N, row-major in that order.
struct Grid4 {
  int N = 0;
  double h = 0.0;

  explicit Grid4(int n_points) : N(n_points), h(1.0 / n_points) {}
  std::size_t size() const {
    const auto n = static_cast<std::size_t>(N);
    return n * n * n * n;
  }
  std::size_t index(int i, int j, int k, int l) const {
    const auto n = static_cast<std::size_t>(N);
    return ((static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n +
            static_cast<std::size_t>(k)) * n + static_cast<std::size_t>(l);
  }
  int wrap(int i) const { return (i % N + N) % N; }
};

using Field = std::vector<double>;

/// Pointwise 2x2 Hermitian form field: diag entries real, one complex
/// off-diagonal.
struct HermitianField2 {
  Field h11, h22, re12, im12;

  explicit HermitianField2(std::size_t n = 0)
      : h11(n, 0.0), h22(n, 0.0), re12(n, 0.0), im12(n, 0.0) {}

  void add_scaled(const HermitianField2& other, double c) {
    for (std::size_t p = 0; p < h11.size(); ++p) {
      h11[p] += c * other.h11[p];
      h22[p] += c * other.h22[p];
      re12[p] += c * other.re12[p];
      im12[p] += c * other.im12[p];
    }
  }
};

/// Ascending eigenvalues of the Hermitian 2x2 [[a, c],[conj c, b]].
inline std::array<double, 2> eig2(double a, double b, double re_c, double im_c) {
  const double mean = 0.5 * (a + b);
  const double rad =
      std::sqrt(0.25 * (a - b) * (a - b) + re_c * re_c + im_c * im_c);
  return {mean - rad, mean + rad};
}

/// Discrete complex Hessian u_{i jbar} of a real field on the flat torus:
/// second-order central differences combined by
///   u_{i jbar} = ((u_{x_i x_j} + u_{y_i y_j}) + i (u_{x_i y_j} - u_{y_i x_j})) / 4.
HermitianField2 complex_hessian(const Grid4& g, const Field& u);

/// Complex first derivatives u_i = (u_{x_i} - i u_{y_i}) / 2, central stencils.
struct ComplexGradient2 {
  Field re1, im1, re2, im2;
};
ComplexGradient2 complex_gradient(const Grid4& g, const Field& u);

/// Complex Laplacian tr(delta^{-1} u_{i jbar}) = u_{1 1bar} + u_{2 2bar}.
Field complex_laplacian(const Grid4& g, const Field& u);

/// Pointwise pairing Re tr(H W) for 2x2 Hermitian fields W given as constant
/// (w11, w22, w12) against a Hessian field.
double hermitian_pair(double w11, double w22, std::complex<double> w12,
                      double h11, double h22, double re12, double im12);

/// FFT workspace solving the constant-coefficient model problem
///   tr(H(v) Wbar) - m v = rhs
/// exactly on the periodic grid (the Newton preconditioner). Wbar is a
/// Hermitian 2x2 with nonnegative eigenvalues, m > 0.
class SpectralSolver {
 public:
  explicit SpectralSolver(const Grid4& g);
  ~SpectralSolver();
  SpectralSolver(const SpectralSolver&) = delete;
  SpectralSolver& operator=(const SpectralSolver&) = delete;

  void set_model(double w11, double w22, std::complex<double> w12, double mass);
  void solve(const Field& rhs, Field& out);

 private:
  Grid4 grid_;
  fftw_complex* buf_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
  std::vector<double> symbol_;  // tr(H_hat(k) Wbar) - mass, per mode
};

}  // namespace conekit
