#include "rs_coefficients.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "hlq/error.hpp"
#include "hlq/zfun.hpp"

namespace hlq::detail {
namespace {

using cld = std::complex<long double>;

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr int kDegree = 72;

// Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p), rewritten in z = 1 - 2p:
//   Psi = -cos(pi z^2 / 2 - 5 pi / 8) / cos(pi z).
// The zeros of the denominator at half-integers are all cancelled by the
// numerator, so Psi is entire and its Taylor series at z = 0 converges on
// the whole range |z| <= 1 we need.
cld psi_z(cld z) {
  return -std::cos(kPiL * z * z / 2.0L - 5.0L * kPiL / 8.0L) / std::cos(kPiL * z);
}

// Taylor coefficients of Psi at z = 0 by the trapezoid rule on |z| = 2.
std::vector<long double> psi_taylor() {
  constexpr int kPoints = 512;
  constexpr long double kRadius = 2.0L;
  std::vector<cld> samples(kPoints);
  for (int m = 0; m < kPoints; ++m) {
    const long double ang = 2.0L * kPiL * m / kPoints;
    samples[m] = psi_z(std::polar(kRadius, ang));
  }
  std::vector<long double> a(kDegree + 1);
  for (int j = 0; j <= kDegree; ++j) {
    cld acc = 0;
    for (int m = 0; m < kPoints; ++m) {
      const long double ang = -2.0L * kPiL * static_cast<long double>(j) * m / kPoints;
      acc += samples[m] * std::polar(1.0L, ang);
    }
    a[j] = acc.real() / kPoints / std::pow(kRadius, static_cast<long double>(j));
  }
  // Psi is even in z.
  for (int j = 1; j <= kDegree; j += 2) a[j] = 0;
  return a;
}

// Series (in z) of the k-th derivative of Psi with respect to p.
std::vector<long double> psi_p_derivative(const std::vector<long double>& a, int k) {
  std::vector<long double> out(kDegree + 1 - k, 0.0L);
  const long double scale = std::pow(-2.0L, static_cast<long double>(k));
  for (int j = k; j <= kDegree; ++j) {
    long double falling = 1;
    for (int i = 0; i < k; ++i) falling *= static_cast<long double>(j - i);
    out[j - k] = scale * a[j] * falling;
  }
  return out;
}

struct Term {
  int derivative;
  long double coefficient;
};

struct CorrectionSeries {
  std::array<std::vector<double>, kMaxCorrectionDepth + 1> coeffs;
};

CorrectionSeries build_series() {
  const auto a = psi_taylor();
  const long double pi2 = kPiL * kPiL;
  const long double pi4 = pi2 * pi2;
  const long double pi6 = pi4 * pi2;
  const long double pi8 = pi4 * pi4;
  // C_k as linear combinations of derivatives of Psi in p.
  const std::array<std::vector<Term>, kMaxCorrectionDepth + 1> recipe = {{
      {{0, 1.0L}},
      {{3, -1.0L / (96.0L * pi2)}},
      {{6, 1.0L / (18432.0L * pi4)}, {2, 1.0L / (64.0L * pi2)}},
      {{9, -1.0L / (5308416.0L * pi6)}, {5, -1.0L / (3840.0L * pi4)}, {1, -1.0L / (64.0L * pi2)}},
      {{12, 1.0L / (2038431744.0L * pi8)},
       {8, 11.0L / (5898240.0L * pi6)},
       {4, 19.0L / (24576.0L * pi4)},
       {0, 1.0L / (128.0L * pi2)}},
  }};
  CorrectionSeries s;
  for (int k = 0; k <= kMaxCorrectionDepth; ++k) {
    std::vector<long double> acc(kDegree + 1, 0.0L);
    for (const auto& term : recipe[k]) {
      const auto d = psi_p_derivative(a, term.derivative);
      for (std::size_t j = 0; j < d.size(); ++j) acc[j] += term.coefficient * d[j];
    }
    // Drop the negligible tail so Horner stays short.
    std::size_t last = acc.size();
    while (last > 1 && std::abs(acc[last - 1]) < 1e-24L) --last;
    s.coeffs[k].assign(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(last));
  }
  return s;
}

const CorrectionSeries& series() {
  static const CorrectionSeries s = build_series();
  return s;
}

double horner(const std::vector<double>& c, double z) {
  double r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
  return r;
}

}  // namespace

void rs_corrections(double p, int depth, std::array<double, kMaxCorrectionDepth + 1>& out) {
  const auto& s = series();
  const double z = 1.0 - 2.0 * p;
  for (int k = 0; k <= depth; ++k) out[k] = horner(s.coeffs[k], z);
}

}  // namespace hlq::detail

namespace hlq {

double rs_correction(int k, double p) {
  if (k < 0 || k > detail::kMaxCorrectionDepth) fail(ErrorKind::domain_error, "correction index out of range");
  std::array<double, detail::kMaxCorrectionDepth + 1> out{};
  detail::rs_corrections(p, k, out);
  return out[k];
}

}  // namespace hlq
