#include "conekit/localization.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "conekit/rng.hpp"

namespace conekit {

namespace {

double sum_abs2(const std::vector<std::complex<double>>& a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return s;
}

std::vector<int> sorted_d_order(const std::vector<double>& d) {
  std::vector<int> idx(d.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
    return d[static_cast<std::size_t>(i)] < d[static_cast<std::size_t>(j)];
  });
  return idx;
}

}  // namespace

double growth_threshold(const std::vector<double>& d,
                        const std::vector<std::complex<double>>& a, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("growth_threshold: eps must be positive");
  const int n = static_cast<int>(d.size()) + 1;
  if (a.size() != d.size())
    throw std::invalid_argument("growth_threshold: d and a lengths differ");
  if (n < 2) throw std::invalid_argument("growth_threshold: need n >= 2");
  if (n == 2) return std::norm(a[0]) / eps + d[0];
  double abs_d = 0.0;
  for (double x : d) abs_d += std::abs(x);
  const double m = 2.0 * n - 3.0;
  return m / eps * sum_abs2(a) + (n - 1) * abs_d + (n - 2) * eps / m;
}

double growth_threshold_refined(const std::vector<double>& d,
                                const std::vector<std::complex<double>>& a,
                                double eps) {
  if (!(eps > 0.0))
    throw std::invalid_argument("growth_threshold_refined: eps must be positive");
  const int n = static_cast<int>(d.size()) + 1;
  double dsum = 0.0;
  for (double x : d) dsum += x + (n - 2) * std::abs(x);
  return sum_abs2(a) / eps + dsum + (n - 2) * eps;
}

static LocalizationResult make_result(const BorderedHermitian& m, double eps,
                                      double threshold, bool refined) {
  LocalizationResult res;
  res.eps = eps;
  res.refined = refined;
  res.threshold = threshold;
  res.satisfied = m.corner >= threshold;
  if (!res.satisfied) return res;
  const int n = m.n();
  res.permutation = sorted_d_order(m.d);
  res.alpha_intervals.reserve(m.d.size());
  for (int i : res.permutation) {
    const double c = m.d[static_cast<std::size_t>(i)];
    res.alpha_intervals.push_back({c - eps, c + eps});
  }
  res.top_interval = {m.corner, m.corner + (n - 1) * eps};
  return res;
}

LocalizationResult localize(const BorderedHermitian& m, double eps) {
  return make_result(m, eps, growth_threshold(m.d, m.a, eps), false);
}

LocalizationResult localize_refined(const BorderedHermitian& m, double eps) {
  return make_result(m, eps, growth_threshold_refined(m.d, m.a, eps), true);
}

std::vector<double> bordered_eigenvalues(const BorderedHermitian& m) {
  const int n = m.n();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n - 1; ++i) {
    A(i, i) = m.d[static_cast<std::size_t>(i)];
    A(i, n - 1) = m.a[static_cast<std::size_t>(i)];
    A(n - 1, i) = std::conj(m.a[static_cast<std::size_t>(i)]);
  }
  A(n - 1, n - 1) = m.corner;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
  std::vector<double> lam(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) lam[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return lam;
}

VerifyReport verify_against_eigensolver(int n, double eps, std::int64_t trials,
                                        std::uint64_t seed, double margin,
                                        bool refined, bool keep_records) {
  if (n < 2) throw std::invalid_argument("verify: need n >= 2");
  VerifyReport rep;
  rep.trials = trials;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (std::int64_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    BorderedHermitian m;
    m.d.resize(static_cast<std::size_t>(n - 1));
    m.a.resize(static_cast<std::size_t>(n - 1));
    for (auto& x : m.d) x = rng.uniform(-2.0, 2.0);
    for (auto& z : m.a) {
      double re, im;
      do {
        re = rng.uniform(-2.0, 2.0);
        im = rng.uniform(-2.0, 2.0);
      } while (re * re + im * im > 4.0);
      z = {re, im};
    }
    const double threshold = refined ? growth_threshold_refined(m.d, m.a, eps)
                                     : growth_threshold(m.d, m.a, eps);
    m.corner = threshold + margin * std::abs(rng.uniform());
    const auto res = refined ? localize_refined(m, eps) : localize(m, eps);
    if (!res.satisfied) continue;
    rep.satisfied++;

    const auto lam = bordered_eigenvalues(m);
    const double scale = 1.0 + std::abs(m.corner);
    const double slack = 1e-10 * scale;
    double worst = std::numeric_limits<double>::infinity();
    bool bad = false;

    double perm_sum = 0.0;  // sum of d_alpha - d_{match(alpha)} for the top bound
    for (int al = 0; al < n - 1; ++al) {
      const double x = lam[static_cast<std::size_t>(al)];
      if (!refined) {
        const auto& iv = res.alpha_intervals[static_cast<std::size_t>(al)];
        worst = std::min({worst, x - iv.lo, iv.hi - x});
        if (!iv.contains(x, slack)) bad = true;
      } else {
        double best = std::numeric_limits<double>::infinity();
        double dmatch = 0.0;
        for (double dv : m.d)
          if (std::abs(x - dv) < best) {
            best = std::abs(x - dv);
            dmatch = dv;
          }
        worst = std::min(worst, eps - best);
        if (!(best < eps + slack)) bad = true;
        perm_sum += m.d[static_cast<std::size_t>(
                        res.permutation[static_cast<std::size_t>(al)])] -
                    dmatch;
      }
    }
    const double top = lam.back();
    double top_hi = m.corner + (n - 1) * eps;
    if (refined) top_hi += std::abs(perm_sum);
    worst = std::min({worst, top - m.corner, top_hi - top});
    if (!(top >= m.corner - slack && top < top_hi + slack)) bad = true;

    if (bad) rep.violations++;
    rep.worst_margin = std::min(rep.worst_margin, worst);
    if (keep_records)
      rep.records.push_back({threshold, m.corner, worst, bad});
  }
  return rep;
}

}  // namespace conekit
