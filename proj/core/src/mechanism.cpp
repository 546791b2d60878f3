#include "mechopt/mechanism.hpp"

#include <algorithm>
#include <cmath>

namespace mechopt {

namespace {

Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return r;
}

Mat3 rot_y(double b) {
  const double c = std::cos(b), s = std::sin(b);
  Mat3 r;
  r << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return r;
}

void check_tilt(const TiltOrientation& q) {
  if (!tilt_in_range(q)) {
    throw DomainError("tilt out of U-joint range: |alpha|, |beta| must be <= pi/2");
  }
}

// Squared-length residual and its Jacobian for the FK Newton iteration.
struct FkSystem {
  Eigen::Vector2d residual;
  Mat2 jac;
};

FkSystem fk_system(const DesignParameters& d, const TiltOrientation& q,
                   double t1_sq, double t2_sq) {
  const Mat3 r = rot_x(q.alpha) * rot_y(q.beta);
  Mat3 dr_a, dr_b;
  rotation_tilt_derivatives(q, dr_a, dr_b);
  const Vec3 u(0.0, 0.0, d.h);

  FkSystem s;
  const Vec3 diff1 = u + r * d.b1 - d.a1;
  const Vec3 diff2 = u + r * d.b2 - d.a2;
  s.residual << diff1.squaredNorm() - t1_sq, diff2.squaredNorm() - t2_sq;
  s.jac << 2.0 * diff1.dot(dr_a * d.b1), 2.0 * diff1.dot(dr_b * d.b1),
           2.0 * diff2.dot(dr_a * d.b2), 2.0 * diff2.dot(dr_b * d.b2);
  return s;
}

} // namespace

bool tilt_in_range(const TiltOrientation& q) noexcept {
  return std::isfinite(q.alpha) && std::isfinite(q.beta) &&
         std::abs(q.alpha) <= kTiltLimit && std::abs(q.beta) <= kTiltLimit;
}

Mat3 rotation_from_tilt(const TiltOrientation& q) {
  check_tilt(q);
  return rot_x(q.alpha) * rot_y(q.beta);
}

void rotation_tilt_derivatives(const TiltOrientation& q, Mat3& d_alpha, Mat3& d_beta) {
  const double ca = std::cos(q.alpha), sa = std::sin(q.alpha);
  const double cb = std::cos(q.beta), sb = std::sin(q.beta);
  Mat3 drx, dry;
  drx << 0, 0, 0,
         0, -sa, -ca,
         0, ca, -sa;
  dry << -sb, 0, cb,
         0, 0, 0,
         -cb, 0, -sb;
  d_alpha = drx * rot_y(q.beta);
  d_beta = rot_x(q.alpha) * dry;
}

void validate_design(const DesignParameters& d) {
  if (!d.a1.allFinite() || !d.a2.allFinite() || !d.b1.allFinite() || !d.b2.allFinite() ||
      !std::isfinite(d.h)) {
    throw DomainError("design parameters must be finite");
  }
  if (d.h <= 0.0) {
    throw DomainError("universal joint height h must be positive");
  }
  const Vec3 u(0.0, 0.0, d.h);
  if ((u + d.b1 - d.a1).norm() <= kDegenerateLegLength ||
      (u + d.b2 - d.a2).norm() <= kDegenerateLegLength) {
    throw DomainError("degenerate design: coincident attachment pair at zero tilt");
  }
}

void validate_reduced(const ReducedDesignParameters& r) {
  if (!std::isfinite(r.r_a) || !std::isfinite(r.r_b) || !std::isfinite(r.gamma) ||
      !std::isfinite(r.h)) {
    throw DomainError("reduced design parameters must be finite");
  }
  if (r.r_a <= 0.0 || r.r_b <= 0.0 || r.h <= 0.0) {
    throw DomainError("reduced design radii and height must be positive");
  }
  if (r.gamma <= 0.0 || r.gamma >= kTiltLimit) {
    throw DomainError("leg half-angle gamma must lie in (0, pi/2)");
  }
}

DesignParameters expand_reduced(const ReducedDesignParameters& r) {
  validate_reduced(r);
  const double cg = std::cos(r.gamma), sg = std::sin(r.gamma);
  DesignParameters d;
  d.a1 = Vec3(r.r_a * cg, r.r_a * sg, 0.0);
  d.a2 = Vec3(r.r_a * cg, -r.r_a * sg, 0.0);
  d.b1 = Vec3(r.r_b * cg, r.r_b * sg, 0.0);
  d.b2 = Vec3(r.r_b * cg, -r.r_b * sg, 0.0);
  d.h = r.h;
  return d;
}

DesignParameters scale_design(const DesignParameters& d, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError("scale factor must be positive and finite");
  }
  DesignParameters out;
  out.a1 = s * d.a1;
  out.a2 = s * d.a2;
  out.b1 = s * d.b1;
  out.b2 = s * d.b2;
  out.h = s * d.h;
  return out;
}

LegLengths inverse_kinematics(const DesignParameters& d, const TiltOrientation& q) {
  const Mat3 r = rotation_from_tilt(q);
  const Vec3 u(0.0, 0.0, d.h);
  LegLengths lengths;
  lengths.rho1 = (u + r * d.b1 - d.a1).norm();
  lengths.rho2 = (u + r * d.b2 - d.a2).norm();
  if (lengths.rho1 < kDegenerateLegLength || lengths.rho2 < kDegenerateLegLength) {
    throw DomainError("degenerate leg: spherical joint coincides with its base attachment");
  }
  return lengths;
}

Mat2 jacobian(const DesignParameters& d, const TiltOrientation& q) {
  const Mat3 r = rotation_from_tilt(q);
  Mat3 dr_a, dr_b;
  rotation_tilt_derivatives(q, dr_a, dr_b);
  const Vec3 u(0.0, 0.0, d.h);

  Mat2 j;
  const Vec3* base[2] = {&d.a1, &d.a2};
  const Vec3* plat[2] = {&d.b1, &d.b2};
  for (int i = 0; i < 2; ++i) {
    const Vec3 diff = u + r * (*plat[i]) - (*base[i]);
    const double rho = diff.norm();
    if (rho < kDegenerateLegLength) {
      throw DomainError("degenerate leg: Jacobian undefined at zero length");
    }
    j(i, 0) = diff.dot(dr_a * (*plat[i])) / rho;
    j(i, 1) = diff.dot(dr_b * (*plat[i])) / rho;
  }
  return j;
}

double inverse_condition_number(const Mat2& j) noexcept {
  // Closed-form 2x2 singular values: sigma = Q +/- R with
  // Q = hypot((a+d)/2, (c-b)/2), R = hypot((a-d)/2, (c+b)/2).
  const double e = 0.5 * (j(0, 0) + j(1, 1));
  const double f = 0.5 * (j(0, 0) - j(1, 1));
  const double g = 0.5 * (j(1, 0) + j(0, 1));
  const double hh = 0.5 * (j(1, 0) - j(0, 1));
  const double q = std::hypot(e, hh);
  const double r = std::hypot(f, g);
  const double s_max = q + r;
  const double s_min = std::abs(q - r);
  if (s_max <= 0.0) {
    return 0.0;
  }
  return std::clamp(s_min / s_max, 0.0, 1.0);
}

double dexterity(const DesignParameters& d, const TiltOrientation& q) {
  return inverse_condition_number(jacobian(d, q));
}

TiltOrientation forward_kinematics(const DesignParameters& d, const LegLengths& lengths,
                                   const TiltOrientation& seed, int max_iterations) {
  if (!(lengths.rho1 > 0.0) || !(lengths.rho2 > 0.0) ||
      !std::isfinite(lengths.rho1) || !std::isfinite(lengths.rho2)) {
    throw DomainError("target leg lengths must be positive and finite");
  }
  if (max_iterations < 1) {
    throw DomainError("forward kinematics requires at least one iteration");
  }
  check_tilt(seed);

  const double t1_sq = lengths.rho1 * lengths.rho1;
  const double t2_sq = lengths.rho2 * lengths.rho2;
  // Residual tolerance scaled to the squared-length magnitude; the extra
  // step-size exit polishes the root to machine-level tilt accuracy.
  const double res_tol = 1e-10 * std::max(t1_sq, t2_sq);
  constexpr double kStepCap = 0.3;   // rad, keeps the iteration near the seed's mode
  constexpr double kStepDone = 1e-12;

  TiltOrientation q = seed;
  for (int it = 0; it < max_iterations; ++it) {
    const FkSystem s = fk_system(d, q, t1_sq, t2_sq);
    const bool residual_ok = s.residual.cwiseAbs().maxCoeff() <= res_tol;

    const double det = s.jac(0, 0) * s.jac(1, 1) - s.jac(0, 1) * s.jac(1, 0);
    const double det_scale = std::abs(s.jac(0, 0) * s.jac(1, 1)) +
                             std::abs(s.jac(0, 1) * s.jac(1, 0));
    if (std::abs(det) <= 1e-14 * det_scale + 1e-300) {
      if (residual_ok) {
        break;
      }
      throw SingularStepError("forward kinematics: singular Newton step");
    }

    Eigen::Vector2d step;
    step << (-s.residual(0) * s.jac(1, 1) + s.residual(1) * s.jac(0, 1)) / det,
            (-s.residual(1) * s.jac(0, 0) + s.residual(0) * s.jac(1, 0)) / det;
    const double step_norm = step.cwiseAbs().maxCoeff();
    if (residual_ok && step_norm < kStepDone) {
      break;
    }
    if (it + 1 == max_iterations) {
      if (residual_ok) {
        break;
      }
      throw ConvergenceError("forward kinematics: no convergence within iteration budget");
    }
    if (step_norm > kStepCap) {
      step *= kStepCap / step_norm;
    }
    q.alpha += step(0);
    q.beta += step(1);
  }

  if (!tilt_in_range(q)) {
    throw ConvergenceError("forward kinematics: solution left the U-joint tilt range");
  }
  return q;
}

} // namespace mechopt
