#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <exception>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace hlq {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Neumaier's variant of Kahan summation.
template <typename T>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(T init) : sum_(init) {}

  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }

  T value() const { return sum_ + carry_; }
  T head() const { return sum_; }
  T carry() const { return carry_; }

 private:
  T sum_{0};
  T carry_{0};
};

/// Pairwise (cascade) summation with a fixed split, so the rounding pattern
/// depends only on the length of the input.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendreRule(int n);
  int size() const { return static_cast<int>(nodes.size()); }
};

inline GaussLegendreRule::GaussLegendreRule(int n) : nodes(n), weights(n) {
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    long double z = std::cos(kPi * (i - 0.25) / (n + 0.5));
    long double pp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      long double p1 = 1, p2 = 0;
      for (int j = 1; j <= n; ++j) {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2.0L * j - 1.0L) * z * p2 - (j - 1.0L) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0L);
      const long double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-19L) break;
    }
    nodes[i - 1] = static_cast<double>(-z);
    nodes[n - i] = static_cast<double>(z);
    const long double w = 2.0L / ((1.0L - z * z) * pp * pp);
    weights[i - 1] = static_cast<double>(w);
    weights[n - i] = static_cast<double>(w);
  }
}

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Work is split into
/// contiguous chunks; callers write results by index, so the outcome does not
/// depend on the thread count.
inline void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(jobs, n);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t lo = n * w / workers;
        const std::size_t hi = n * (w + 1) / workers;
        try {
          for (std::size_t i = lo; i < hi; ++i) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Round-trip safe text for a double: 17 significant digits.
inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace hlq
