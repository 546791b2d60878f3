#pragma once

// Shared helpers for the test and acceptance suites: deterministic samplers
// for designs and tilts, and the independent oracles (finite differences,
// exhaustive bracket enumeration) the implementation is checked against.

#include <cmath>
#include <random>
#include <vector>

#include "mechopt/mechanism.hpp"
#include "mechopt/workspace.hpp"

namespace mechopt::testing {

inline constexpr double kPi = 3.141592653589793;

inline double deg(double value) { return value * kPi / 180.0; }

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Symmetric design with healthy proportions plus a mild full-13 jitter.
inline DesignParameters random_design(Rng& rng, double jitter = 0.003) {
  ReducedDesignParameters r;
  r.r_a = uniform(rng, 0.04, 0.12);
  r.r_b = uniform(rng, 0.02, 0.06);
  r.gamma = uniform(rng, deg(25.0), deg(65.0));
  r.h = uniform(rng, 0.06, 0.16);
  DesignParameters d = expand_reduced(r);
  if (jitter > 0.0) {
    for (Vec3* p : {&d.a1, &d.a2, &d.b1, &d.b2}) {
      for (int k = 0; k < 3; ++k) {
        (*p)(k) += uniform(rng, -jitter, jitter);
      }
    }
  }
  return d;
}

inline TiltOrientation random_tilt(Rng& rng, double limit) {
  return TiltOrientation{uniform(rng, -limit, limit), uniform(rng, -limit, limit)};
}

/// True when the pose and a ring around it keep a dexterity margin, so no
/// singular curve (where assembly modes meet) passes nearby. Round-trip
/// well-posedness filter, independent of the FK solver.
inline bool pose_is_well_conditioned(const DesignParameters& d, const TiltOrientation& q,
                                     double margin = 0.2, double ring = deg(7.0)) {
  if (dexterity(d, q) < margin) {
    return false;
  }
  for (int k = 0; k < 8; ++k) {
    const double phi = 2.0 * kPi * k / 8.0;
    const TiltOrientation probe{q.alpha + ring * std::cos(phi), q.beta + ring * std::sin(phi)};
    if (!tilt_in_range(probe) || dexterity(d, probe) < margin) {
      return false;
    }
  }
  return true;
}

/// Draws until the (design, tilt) pair passes the well-posedness filter.
inline std::pair<DesignParameters, TiltOrientation> random_well_posed(Rng& rng, double tilt_limit) {
  while (true) {
    const DesignParameters d = random_design(rng);
    const TiltOrientation q = random_tilt(rng, tilt_limit);
    if (pose_is_well_conditioned(d, q)) {
      return {d, q};
    }
  }
}

/// Central finite differences of inverse_kinematics, the Jacobian oracle.
inline Mat2 finite_difference_jacobian(const DesignParameters& d, const TiltOrientation& q,
                                       double step = 1e-6) {
  Mat2 j;
  const LegLengths ap = inverse_kinematics(d, {q.alpha + step, q.beta});
  const LegLengths am = inverse_kinematics(d, {q.alpha - step, q.beta});
  const LegLengths bp = inverse_kinematics(d, {q.alpha, q.beta + step});
  const LegLengths bm = inverse_kinematics(d, {q.alpha, q.beta - step});
  j(0, 0) = (ap.rho1 - am.rho1) / (2.0 * step);
  j(1, 0) = (ap.rho2 - am.rho2) / (2.0 * step);
  j(0, 1) = (bp.rho1 - bm.rho1) / (2.0 * step);
  j(1, 1) = (bp.rho2 - bm.rho2) / (2.0 * step);
  return j;
}

inline double max_relative_deviation(const Mat2& a, const Mat2& b) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      const double scale = std::max(std::abs(a(i, k)), std::abs(b(i, k)));
      if (scale > 0.0) {
        worst = std::max(worst, std::abs(a(i, k) - b(i, k)) / scale);
      }
    }
  }
  return worst;
}

/// Independent exhaustive enumeration of candidate actuator windows; the
/// bracket-search oracle. Scans every start index up to the span's low end.
inline std::vector<ActuatorWindow> brute_force_brackets(const std::vector<LegLengths>& lengths,
                                                        const ActuatorModel& act) {
  double lo = lengths.front().rho1, hi = lengths.front().rho1;
  for (const LegLengths& l : lengths) {
    lo = std::min({lo, l.rho1, l.rho2});
    hi = std::max({hi, l.rho1, l.rho2});
  }
  std::vector<ActuatorWindow> out;
  const double slack = 1e-12;
  // Conservative scan bound; the per-candidate predicate below decides
  // membership, so overshooting the bound is harmless.
  const long k_max = 2 + static_cast<long>(std::floor(
      std::max(0.0, (lo + slack - act.min_closed_length) / act.search_step)));
  for (long k = 0; k <= k_max; ++k) {
    const double start = act.min_closed_length + static_cast<double>(k) * act.search_step;
    if (start <= lo + slack && hi <= start + act.stroke + slack) {
      out.push_back(ActuatorWindow{start, start + act.stroke});
    }
  }
  return out;
}

} // namespace mechopt::testing
