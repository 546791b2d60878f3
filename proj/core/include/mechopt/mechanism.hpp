#pragma once

#include <Eigen/Dense>

#include "mechopt/errors.hpp"

// Geometric model of a 2UPS + 1U parallel wrist: two actuated UPS legs drive
// the tilt of a platform that pivots about a passive central universal joint
// sitting at height h above the base plane. The platform has exactly the two
// rotational freedoms (alpha, beta) of the U joint, so the tool axis turns
// about a fixed point (remote center of motion).
//
// Frames: base frame has z up, base plane z = 0. Platform frame origin is the
// U-joint center; platform attachments b_i are expressed there. The U-joint
// orientation map is R(alpha, beta) = Rot(x, alpha) * Rot(y, beta), first
// axis base-fixed along x, second axis platform-following along y. That axis
// convention is the single source of truth for every module in this library.

namespace mechopt {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2 = Eigen::Matrix2d;

/// Tilt configuration of the mechanism: rotations about the two U-joint axes.
struct TiltOrientation {
  double alpha{0.0}; ///< rad, about the base-fixed x axis
  double beta{0.0};  ///< rad, about the platform-following y axis
};

/// Prismatic joint lengths of the two UPS legs, meters.
struct LegLengths {
  double rho1{0.0};
  double rho2{0.0};
};

/// Full geometric description of one mechanism instance: 13 scalars.
struct DesignParameters {
  Vec3 a1{Vec3::Zero()}; ///< base attachment of leg 1, base frame, z = 0 plane not required
  Vec3 a2{Vec3::Zero()};
  Vec3 b1{Vec3::Zero()}; ///< platform attachment of leg 1, platform frame
  Vec3 b2{Vec3::Zero()};
  double h{0.0};         ///< U-joint center height above the base plane, m
};

/// Mirror-symmetric 4-parameter design: attachment radii, half-angle between
/// the legs about z, and the U-joint height.
struct ReducedDesignParameters {
  double r_a{0.0};   ///< base attachment radius, m
  double r_b{0.0};   ///< platform attachment radius, m
  double gamma{0.0}; ///< half-angle between the legs about z, rad
  double h{0.0};     ///< U-joint height, m
};

/// U-joint non-flip range: |alpha|, |beta| <= pi/2. The closed boundary is
/// accepted so that quarter-turn poses remain representable.
inline constexpr double kTiltLimit = 1.5707963267948966;

/// Leg lengths below this are treated as degenerate (S joint collapsing onto
/// the attachment), meters.
inline constexpr double kDegenerateLegLength = 1e-9;

[[nodiscard]] bool tilt_in_range(const TiltOrientation& q) noexcept;

/// U-joint orientation map R(alpha, beta) = Rot(x, alpha) * Rot(y, beta).
/// Throws DomainError for tilts outside the non-flip range.
[[nodiscard]] Mat3 rotation_from_tilt(const TiltOrientation& q);

/// Partial derivatives of rotation_from_tilt with respect to alpha and beta.
void rotation_tilt_derivatives(const TiltOrientation& q, Mat3& d_alpha, Mat3& d_beta);

/// Checks finiteness, h > 0 and non-coincident attachment pairs at zero tilt.
/// Throws DomainError with a description of the first violated invariant.
void validate_design(const DesignParameters& d);

/// Throws DomainError unless r_a, r_b, h > 0 and 0 < gamma < pi/2.
void validate_reduced(const ReducedDesignParameters& r);

/// Expands the 4-parameter symmetric design into the full 13-scalar form.
/// The result is mirror-symmetric about the xz plane: leg 2 is the y-negated
/// copy of leg 1.
[[nodiscard]] DesignParameters expand_reduced(const ReducedDesignParameters& r);

/// Uniform geometric scaling of all attachment points and the joint height.
/// Throws DomainError for s <= 0.
[[nodiscard]] DesignParameters scale_design(const DesignParameters& d, double s);

/// Leg lengths rho_i = | (0,0,h) + R(q) b_i - a_i |.
/// Throws DomainError if a computed length falls below kDegenerateLegLength.
[[nodiscard]] LegLengths inverse_kinematics(const DesignParameters& d, const TiltOrientation& q);

/// Analytic 2x2 Jacobian J(i,j) = d rho_i / d q_j with q = (alpha, beta).
/// Throws DomainError at degenerate legs.
[[nodiscard]] Mat2 jacobian(const DesignParameters& d, const TiltOrientation& q);

/// sigma_min / sigma_max of a 2x2 matrix via the closed-form singular values.
/// In [0, 1]; 0 for singular input, including the zero matrix.
[[nodiscard]] double inverse_condition_number(const Mat2& j) noexcept;

/// Dexterity index: inverse condition number of the tilt Jacobian. In [0, 1]
/// and invariant under uniform geometric scaling of the design.
[[nodiscard]] double dexterity(const DesignParameters& d, const TiltOrientation& q);

/// Solves the tilt that realizes the given leg lengths by Newton iteration on
/// the squared-length residuals r_i(q) = rho_i(q)^2 - target_i^2. Of the
/// multiple assembly modes it returns the one the iteration reaches from
/// `seed`. Throws ConvergenceError when the iteration budget is exhausted
/// (e.g. unreachable lengths) or the solution leaves the tilt range, and
/// SingularStepError when the Newton system degenerates away from a solution.
[[nodiscard]] TiltOrientation forward_kinematics(const DesignParameters& d,
                                                 const LegLengths& lengths,
                                                 const TiltOrientation& seed,
                                                 int max_iterations = 100);

} // namespace mechopt
