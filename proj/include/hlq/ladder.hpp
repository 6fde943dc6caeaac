#pragma once

#include "hlq/hlmass.hpp"
#include "hlq/numeric.hpp"

namespace hlq {

/// Constants of the almost-exact formula. c is taken to be Euler's gamma;
/// c0 is the undetermined additive constant (0 by default).
struct LadderConstants {
  double c = kEulerGamma;
  double a = std::log(kTwoPi) - 1.0 - kEulerGamma;
  double c0 = 0.0;

  LadderConstants() = default;
  explicit LadderConstants(double c0_, double c_ = kEulerGamma)
      : c(c_), a(std::log(kTwoPi) - 1.0 - c_), c0(c0_) {}
};

struct LadderPoint {
  double T = 0;
  double phi = 0;
  double mass = 0;
  double ratio = 0;  // phi / T
};

inline constexpr double kDefaultYMin = 10.0;
inline constexpr double kMinLadderT = 100.0;

/// F(y) = (y/2) ln(y/2) + (c - ln 2pi) y/2 + c0.
double F_of(double y, const LadderConstants& k = {});

/// F'(y) = ln(y/2)/2 - a/2.
double F_prime(double y, const LadderConstants& k = {});

/// The y >= y_min with F(y) = v.
double F_inverse(double v, const LadderConstants& k = {}, double y_min = kDefaultYMin);

/// Jacob's ladder at T: phi(T) = F^{-1}(I(T)).
LadderPoint phi_at(double T, const QuadratureConfig& cfg, MassCheckpoint& ckpt, const LadderConstants& k = {});

/// Builds the ladder point for an already known mass.
LadderPoint ladder_point(double T, double mass, const LadderConstants& k = {});

/// Slope of the chord of y = phi(T)/2 between two ladder points.
double chord_tan_alpha(const LadderPoint& p1, const LadderPoint& p2);

}  // namespace hlq
