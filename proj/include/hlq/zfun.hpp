#pragma once

#include <complex>
#include <string_view>

namespace hlq {

enum class ZMethod { riemann_siegel, reference };

constexpr std::string_view method_name(ZMethod m) {
  return m == ZMethod::riemann_siegel ? "riemann_siegel" : "reference";
}

struct ZConfig {
  int correction_depth = 4;  // Riemann-Siegel terms C_0..C_depth, 0..4
  double t_switch = 10.0;    // below this height Z always goes through the reference sum

  bool operator==(const ZConfig&) const = default;
  void validate() const;
};

struct ZSample {
  double t = 0;
  double z = 0;
  double abs_err = 0;
  ZMethod method = ZMethod::reference;
};

/// Largest height at which the Euler-Maclaurin reference is certified.
inline constexpr double kReferenceMaxT = 1.0e4;

/// Riemann-Siegel theta. Exact log-Gamma form below t_switch, asymptotic
/// series above it.
double theta(double t, double t_switch = 10.0);

/// theta via the log-Gamma definition at any t >= 0. Exposed for checks.
double theta_exact(double t);

/// d theta / dt.
double theta_prime(double t);

/// Hardy Z with a certified absolute error. Throws precision_unreachable when
/// neither route can certify target_abs_err at t.
ZSample z_eval(double t, double target_abs_err = 1e-9, const ZConfig& cfg = {});

/// Riemann-Siegel evaluation with no fallback; abs_err is the
/// remainder envelope plus rounding (infinite below t = 200, where the
/// envelope is not established).
ZSample z_riemann_siegel(double t, int correction_depth = 4);

struct ZetaValue {
  std::complex<double> value;
  double abs_err = 0;
};

/// zeta(1/2 + it) by Euler-Maclaurin summation with a rigorous remainder bound.
ZetaValue zeta_reference(double t);

/// Riemann-Siegel correction C_k(p) for p in [0, 1), k in 0..4. Exposed for tests.
double rs_correction(int k, double p);

}  // namespace hlq
