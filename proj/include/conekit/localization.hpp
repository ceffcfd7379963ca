#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace conekit {

/// Hermitian matrix that is diagonal except for its last row and column:
/// diag d_1..d_{n-1}, border a_1..a_{n-1}, and the (n,n) corner entry.
struct BorderedHermitian {
  std::vector<double> d;                 // length n-1
  std::vector<std::complex<double>> a;   // length n-1
  double corner = 0.0;

  int n() const { return static_cast<int>(d.size()) + 1; }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x, double slack = 0.0) const {
    return x > lo - slack && x < hi + slack;
  }
};

struct LocalizationResult {
  bool satisfied = false;        // growth condition held, intervals valid
  bool refined = false;          // relaxed (nearest-match) variant
  double eps = 0.0;
  double threshold = 0.0;        // corner value required by the condition
  std::vector<Interval> alpha_intervals;  // centers sorted by d
  Interval top_interval;         // [corner, corner + (n-1) eps)
  std::vector<int> permutation;  // sorted-eigenvalue slot -> original d index
};

/// Corner size required for the localization conclusion:
///   n = 2:  |a_1|^2 / eps + d_1
///   n >= 3: (2n-3)/eps sum|a_i|^2 + (n-1) sum|d_i| + (n-2) eps/(2n-3)
double growth_threshold(const std::vector<double>& d,
                        const std::vector<std::complex<double>>& a, double eps);

/// Relaxed quadratic growth condition:
///   sum|a_i|^2 / eps + sum[d_i + (n-2)|d_i|] + (n-2) eps
double growth_threshold_refined(const std::vector<double>& d,
                                const std::vector<std::complex<double>>& a,
                                double eps);

/// Localization intervals under the strict growth condition: the n-1 smallest
/// eigenvalues land within eps of the sorted d-entries (slot alpha to sorted d
/// position alpha, ties by original index) and the top eigenvalue in
/// [corner, corner + (n-1) eps). When the condition fails, satisfied=false
/// and no claim is made.
LocalizationResult localize(const BorderedHermitian& m, double eps);

/// Relaxed variant: each of the n-1 smallest eigenvalues lies within eps of
/// SOME d-entry (nearest match) and the top eigenvalue obeys
/// 0 <= lambda_n - corner < (n-1) eps + |sum(d_alpha - d_match_alpha)|.
LocalizationResult localize_refined(const BorderedHermitian& m, double eps);

/// Exact eigenvalues, ascending (dense Hermitian solve).
std::vector<double> bordered_eigenvalues(const BorderedHermitian& m);

struct TrialRecord {
  double threshold = 0.0;
  double corner = 0.0;
  double worst_margin = 0.0;  // min slack of all interval memberships
  bool violation = false;
};

struct VerifyReport {
  std::int64_t trials = 0;
  std::int64_t satisfied = 0;
  std::int64_t violations = 0;
  double worst_margin = 0.0;
  std::vector<TrialRecord> records;  // filled when keep_records
};

/// Randomized check of the localization conclusions against the dense
/// eigensolver: entries in [-2,2] (border moduli <= 2), corner set at the
/// growth threshold plus margin * |uniform|. Counts interval violations,
/// which must be zero for satisfied instances.
VerifyReport verify_against_eigensolver(int n, double eps, std::int64_t trials,
                                        std::uint64_t seed, double margin = 0.0,
                                        bool refined = false,
                                        bool keep_records = false);

}  // namespace conekit
