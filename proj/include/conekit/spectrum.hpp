#pragma once

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace conekit {

/// Eigenvalue n-tuple, stored in ascending order.
class Spectrum {
 public:
  Spectrum() = default;

  explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
  }

  Spectrum(std::initializer_list<double> values)
      : Spectrum(std::vector<double>(values)) {}

  int n() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

 private:
  std::vector<double> values_;
};

inline void require_dim(const Spectrum& s, int n, const char* where) {
  if (s.n() != n)
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

}  // namespace conekit
