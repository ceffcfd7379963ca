#include "conekit/sym_poly.hpp"

#include <stdexcept>

namespace conekit {

std::vector<double> elementary_symmetric(std::span<const double> lam, int k) {
  const int n = static_cast<int>(lam.size());
  if (k < 0 || k > n) throw std::invalid_argument("elementary_symmetric: bad degree");
  std::vector<long double> e(static_cast<std::size_t>(k) + 1, 0.0L);
  e[0] = 1.0L;
  for (int m = 0; m < n; ++m) {
    const long double x = lam[static_cast<std::size_t>(m)];
    for (int j = std::min(k, m + 1); j >= 1; --j)
      e[static_cast<std::size_t>(j)] += x * e[static_cast<std::size_t>(j - 1)];
  }
  std::vector<double> out(e.size());
  for (std::size_t j = 0; j < e.size(); ++j) out[j] = static_cast<double>(e[j]);
  return out;
}

double sigma_k(std::span<const double> lam, int k) {
  if (k == 0) return 1.0;
  return elementary_symmetric(lam, k).back();
}

std::vector<double> sigma_k_gradient(std::span<const double> lam, int k) {
  const int n = static_cast<int>(lam.size());
  std::vector<double> grad(static_cast<std::size_t>(n), 0.0);
  if (k == 0) return grad;
  // d e_k / d lam_i = e_{k-1}(lam | i); recompute per i, O(n^2 k).
  std::vector<double> reduced(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    int m = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) reduced[static_cast<std::size_t>(m++)] = lam[static_cast<std::size_t>(j)];
    grad[static_cast<std::size_t>(i)] = sigma_k(reduced, k - 1);
  }
  return grad;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  long double r = 1.0L;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return static_cast<double>(r);
}

}  // namespace conekit
