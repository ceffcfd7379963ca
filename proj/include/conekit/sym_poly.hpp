#pragma once

#include <span>
#include <vector>

namespace conekit {

/// Elementary symmetric polynomials e_0..e_k of the given values, evaluated by
/// the one-element-at-a-time recurrence with extended-precision accumulation.
/// Avoids the cancellation a naive expansion suffers near the cone boundary.
std::vector<double> elementary_symmetric(std::span<const double> lam, int k);

/// e_k(lam) alone.
double sigma_k(std::span<const double> lam, int k);

/// e_{k-1}(lam with entry i removed), for all i: the gradient of e_k.
std::vector<double> sigma_k_gradient(std::span<const double> lam, int k);

/// Binomial coefficient as a double.
double binomial(int n, int k);

}  // namespace conekit
