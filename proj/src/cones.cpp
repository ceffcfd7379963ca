#include "conekit/cones.hpp"

#include <cmath>

#include "conekit/sym_poly.hpp"

namespace conekit {

namespace {

double norm2(std::span<const double> v) {
  long double s = 0.0L;
  for (double x : v) s += static_cast<long double>(x) * x;
  return std::sqrt(static_cast<double>(s));
}

}  // namespace

Cone Cone::garding(int k, int n, double tol) {
  if (n < 1 || k < 1 || k > n)
    throw std::invalid_argument("Cone::garding: need 1 <= k <= n");
  if (tol < 0.0) throw std::invalid_argument("Cone::garding: tol must be >= 0");
  Cone c;
  c.k_ = k;
  c.n_ = n;
  c.tol_ = tol;
  return c;
}

Cone Cone::linear_image(Cone base, double rho) {
  const int n = base.dim();
  if (rho == 0.0 || rho == static_cast<double>(n))
    throw std::invalid_argument("Cone::linear_image: rho must differ from 0 and n");
  Cone c;
  c.n_ = n;
  c.tol_ = base.tol();
  c.rho_ = rho;
  c.base_ = std::make_shared<Cone>(std::move(base));
  return c;
}

const Cone& Cone::base() const {
  if (!base_) throw std::logic_error("Cone::base: not a linear image");
  return *base_;
}

Cone Cone::with_tol(double tol) const {
  if (is_garding()) return garding(k_, n_, tol);
  return linear_image(base_->with_tol(tol), rho_);
}

std::string Cone::describe() const {
  if (is_garding())
    return "Garding(k=" + std::to_string(k_) + ", n=" + std::to_string(n_) + ")";
  return "LinearImage(" + base_->describe() + ", rho=" + std::to_string(rho_) + ")";
}

int violated_degree(const Cone& cone, std::span<const double> lam) {
  if (static_cast<int>(lam.size()) != cone.dim())
    throw std::invalid_argument("contains: dimension mismatch");
  if (!cone.is_garding()) {
    const auto mu = project_p(lam, cone.rho());
    return violated_degree(cone.base(), mu);
  }
  const double nrm = norm2(lam);
  if (!(nrm > 0.0)) return 1;
  const auto e = elementary_symmetric(lam, cone.degree());
  double scale = 1.0;
  for (int j = 1; j <= cone.degree(); ++j) {
    scale *= nrm;
    if (!(e[static_cast<std::size_t>(j)] > cone.tol() * scale)) return j;
  }
  return 0;
}

bool contains(const Cone& cone, std::span<const double> lam) {
  return violated_degree(cone, lam) == 0;
}

bool contains(const Cone& cone, const Spectrum& lam) {
  return contains(cone, std::span<const double>(lam.values()));
}

double cone_margin(const Cone& cone, std::span<const double> lam) {
  if (!cone.is_garding())
    return cone_margin(cone.base(), project_p(lam, cone.rho()));
  const double nrm = norm2(lam);
  if (!(nrm > 0.0)) return -1.0;
  const auto e = elementary_symmetric(lam, cone.degree());
  double margin = 1.0;
  double scale = 1.0;
  for (int j = 1; j <= cone.degree(); ++j) {
    scale *= nrm;
    const double m =
        e[static_cast<std::size_t>(j)] / (binomial(cone.dim(), j) * scale) -
        cone.tol();
    margin = std::min(margin, m);
  }
  return margin;
}

int kappa(const Cone& cone) {
  const int n = cone.dim();
  // Probe (0,...,0,1,...,1) with m zeros, largest m first. Zeros stay exact:
  // the strict tolerance test already decides open membership, and nudging
  // them inward would misclassify probe points lying on the boundary.
  std::vector<double> probe(static_cast<std::size_t>(n));
  for (int m = n - 1; m >= 1; --m) {
    for (int i = 0; i < n; ++i)
      probe[static_cast<std::size_t>(i)] = (i < m) ? 0.0 : 1.0;
    if (contains(cone, probe)) return m;
  }
  return 0;
}

double varrho_bisect(const Cone& cone) {
  const int n = cone.dim();
  // Boundary location wants the exact cone, not the safety-margin one.
  const Cone sharp = cone.with_tol(0.0);
  std::vector<double> v(static_cast<std::size_t>(n), 1.0);
  auto member_at = [&](double t) {
    v.back() = 1.0 - t;
    return contains(sharp, v);
  };
  double lo = 0.0, hi = static_cast<double>(n);
  // (1,...,1,1-t) is in the cone for t < varrho and outside for t > varrho;
  // at t = n the trace vanishes, which no representable cone admits.
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (member_at(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double varrho(const Cone& cone) {
  if (cone.is_garding())
    return static_cast<double>(cone.dim()) / static_cast<double>(cone.degree());
  return varrho_bisect(cone);
}

ConeType cone_type(const Cone& cone) {
  return kappa(cone) == cone.dim() - 1 ? ConeType::Type2 : ConeType::Type1;
}

GammaInftyProbe gamma_infty_probe(const Cone& cone,
                                  std::span<const double> lam_prime) {
  const int n = cone.dim();
  if (static_cast<int>(lam_prime.size()) != n - 1)
    throw std::invalid_argument("gamma_infty: lam' must have length n-1");
  std::vector<double> v(lam_prime.begin(), lam_prime.end());
  v.push_back(0.0);
  GammaInftyProbe out;
  double R = 1.0;
  const double cap = std::ldexp(1.0, 60);
  while (R <= cap) {
    v.back() = R;
    if (contains(cone, v)) {
      out.member = true;
      out.R = R;
      return out;
    }
    R *= 2.0;
  }
  out.hit_cap = true;
  return out;
}

bool gamma_infty_contains(const Cone& cone, std::span<const double> lam_prime) {
  return gamma_infty_probe(cone, lam_prime).member;
}

std::vector<double> project_p(std::span<const double> lam, double rho) {
  const int n = static_cast<int>(lam.size());
  if (std::abs(static_cast<double>(n) - rho) < 1e-14)
    throw std::invalid_argument("project_p: rho = n makes the map singular");
  long double sum = 0.0L;
  for (double x : lam) sum += x;
  std::vector<double> mu(lam.size());
  for (int i = 0; i < n; ++i)
    mu[static_cast<std::size_t>(i)] = static_cast<double>(
        (sum - static_cast<long double>(rho) * lam[static_cast<std::size_t>(i)]) /
        (static_cast<long double>(n) - rho));
  return mu;
}

Spectrum project_p(const Spectrum& lam, double rho) {
  return Spectrum(project_p(std::span<const double>(lam.values()), rho));
}

std::vector<double> map1_forward(std::span<const double> mu, double rho) {
  const int n = static_cast<int>(mu.size());
  if (rho == 0.0) throw std::invalid_argument("map1_forward: rho must be nonzero");
  long double sum = 0.0L;
  for (double x : mu) sum += x;
  std::vector<double> lam(mu.size());
  for (int i = 0; i < n; ++i)
    lam[static_cast<std::size_t>(i)] = static_cast<double>(
        (sum - (static_cast<long double>(n) - rho) * mu[static_cast<std::size_t>(i)]) /
        rho);
  return lam;
}

Cone transform_cone(const Cone& cone, double rho) {
  if (rho == 0.0)
    throw std::invalid_argument("transform_cone: rho must be nonzero");
  const double vr = varrho(cone);
  if (rho > vr + 1e-12)
    throw std::invalid_argument("transform_cone: rho exceeds varrho of the cone");
  if (cone.is_garding() && cone.degree() == 1 &&
      rho >= static_cast<double>(cone.dim()))
    throw std::invalid_argument("transform_cone: rho must be below n for the half-space cone");
  return Cone::linear_image(cone, rho);
}

bool boundary_admissible(std::span<const double> kappa_prime, const Cone& cone,
                         double rho) {
  const int n = cone.dim();
  if (static_cast<int>(kappa_prime.size()) != n - 1)
    throw std::invalid_argument("boundary_admissible: kappa' must have length n-1");
  const double vr = varrho(cone);
  if (rho < vr - 1e-9) return true;  // any smooth boundary qualifies
  long double sum = 0.0L;
  for (double x : kappa_prime) sum += x;
  std::vector<double> v(static_cast<std::size_t>(n));
  double t = 1.0;
  const double cap = std::ldexp(1.0, 40);
  while (t <= cap) {
    for (int i = 0; i < n - 1; ++i)
      v[static_cast<std::size_t>(i)] = static_cast<double>(sum) -
                                       rho * kappa_prime[static_cast<std::size_t>(i)] + t;
    v.back() = static_cast<double>(sum) + t * (1.0 - rho);
    if (contains(cone, v)) return true;
    t *= 2.0;
  }
  return false;
}

namespace detail {

bool gamma_infty_closed_form(int k, int n, std::span<const double> lam_prime,
                             double tol) {
  if (k == 1) return true;
  if (static_cast<int>(lam_prime.size()) != n - 1)
    throw std::invalid_argument("gamma_infty_closed_form: bad length");
  return contains(Cone::garding(k - 1, n - 1, tol), lam_prime);
}

}  // namespace detail

}  // namespace conekit
