#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "mechopt/mechanism.hpp"
#include "test_support.hpp"

using namespace mechopt;
using namespace mechopt::testing;

namespace {

DesignParameters spec_example_design() {
  // the worked inverse-kinematics example: a1 = (0.06, 0.04, 0),
  // b1 = (0.03, 0.02, 0), h = 0.10, mirrored second leg
  DesignParameters d;
  d.a1 = Vec3(0.06, 0.04, 0.0);
  d.a2 = Vec3(0.06, -0.04, 0.0);
  d.b1 = Vec3(0.03, 0.02, 0.0);
  d.b2 = Vec3(0.03, -0.02, 0.0);
  d.h = 0.10;
  return d;
}

ReducedDesignParameters reference_reduced() {
  return ReducedDesignParameters{0.06, 0.03, deg(30.0), 0.10};
}

} // namespace

TEST_CASE("rotation_from_tilt basics") {
  CHECK((rotation_from_tilt({0.0, 0.0}) - Mat3::Identity()).norm() == doctest::Approx(0.0));

  // quarter turn about x maps z to -y
  const Vec3 mapped = rotation_from_tilt({kPi / 2.0, 0.0}) * Vec3(0.0, 0.0, 1.0);
  CHECK(mapped.x() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(mapped.y() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(mapped.z() == doctest::Approx(0.0).epsilon(1e-12));

  const Mat3 r = rotation_from_tilt({0.3, 0.2});
  CHECK((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(r.determinant() - 1.0) < 1e-12);

  CHECK_THROWS_AS((void)rotation_from_tilt({1.8, 0.0}), DomainError);
  CHECK_THROWS_AS((void)rotation_from_tilt({0.0, -2.0}), DomainError);
}

TEST_CASE("rotation validity over sampled tilts") {
  Rng rng(42);
  for (int i = 0; i < 500; ++i) {
    const TiltOrientation q = random_tilt(rng, kTiltLimit * 0.999);
    const Mat3 r = rotation_from_tilt(q);
    CHECK((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("inverse kinematics worked examples") {
  const DesignParameters d = spec_example_design();

  const LegLengths at_home = inverse_kinematics(d, {0.0, 0.0});
  CHECK(at_home.rho1 == doctest::Approx(0.1063014581273465).epsilon(1e-12));

  const LegLengths tilted = inverse_kinematics(d, {deg(30.0), 0.0});
  CHECK(tilted.rho1 == doctest::Approx(0.11625127678414933).epsilon(1e-10));

  // attachment vertically above its base point: length equals h
  DesignParameters vertical;
  vertical.a1 = Vec3(0.07, 0.0, 0.0);
  vertical.b1 = Vec3(0.07, 0.0, 0.0);
  vertical.a2 = Vec3(0.0, 0.05, 0.0);
  vertical.b2 = Vec3(0.0, 0.03, 0.0);
  vertical.h = 0.10;
  CHECK(inverse_kinematics(vertical, {0.0, 0.0}).rho1 == doctest::Approx(0.10).epsilon(1e-14));

  // coincident pair at zero tilt is a degenerate leg
  DesignParameters degenerate = spec_example_design();
  degenerate.a1 = Vec3(0.03, 0.02, 0.10);
  degenerate.b1 = Vec3(0.03, 0.02, 0.0);
  CHECK_THROWS_AS((void)inverse_kinematics(degenerate, {0.0, 0.0}), DomainError);
}

TEST_CASE("IK homogeneity and dexterity scale invariance") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const DesignParameters d = random_design(rng);
    const TiltOrientation q = random_tilt(rng, deg(45.0));
    const LegLengths base = inverse_kinematics(d, q);
    const double dex = dexterity(d, q);
    for (double s : {0.1, 1.0, 10.0}) {
      const DesignParameters ds = scale_design(d, s);
      const LegLengths scaled = inverse_kinematics(ds, q);
      CHECK(scaled.rho1 == doctest::Approx(s * base.rho1).epsilon(1e-12));
      CHECK(scaled.rho2 == doctest::Approx(s * base.rho2).epsilon(1e-12));
      CHECK(std::abs(dexterity(ds, q) - dex) < 1e-10);
    }
  }
}

TEST_CASE("scale_design composition and validation") {
  const DesignParameters d = spec_example_design();
  const DesignParameters twice = scale_design(d, 2.0);
  const DesignParameters back = scale_design(twice, 0.5);
  CHECK((back.a1 - d.a1).norm() == doctest::Approx(0.0));
  CHECK((back.b2 - d.b2).norm() == doctest::Approx(0.0));
  CHECK(back.h == doctest::Approx(d.h));
  CHECK_THROWS_AS((void)scale_design(d, 0.0), DomainError);
  CHECK_THROWS_AS((void)scale_design(d, -1.0), DomainError);
}

TEST_CASE("jacobian matches central finite differences") {
  Rng rng(1234);
  int checked = 0;
  while (checked < 1000) {
    const DesignParameters d = random_design(rng);
    const TiltOrientation q = random_tilt(rng, deg(45.0));
    const Mat2 j = jacobian(d, q);
    if (std::abs(j.determinant()) <= 1e-8) {
      continue; // stay away from singularities, the FD quotient degrades there
    }
    const Mat2 fd = finite_difference_jacobian(d, q);
    CHECK(max_relative_deviation(j, fd) < 1e-5);
    ++checked;
  }
}

TEST_CASE("jacobian degenerate cases") {
  DesignParameters d = spec_example_design();
  d.b1 = Vec3::Zero();
  d.b2 = Vec3::Zero();
  const Mat2 j = jacobian(d, {0.2, -0.1});
  CHECK(j.cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  // home pose of the reference symmetric design is away from singularity
  const DesignParameters sym = expand_reduced(reference_reduced());
  CHECK(std::abs(jacobian(sym, {0.0, 0.0}).determinant()) > 1e-6);
  CHECK(dexterity(sym, {0.0, 0.0}) == doctest::Approx(0.5773502691896257).epsilon(1e-9));
}

TEST_CASE("inverse_condition_number closed form") {
  Mat2 m;
  m << 2.0, 0.0, 0.0, 1.0;
  CHECK(inverse_condition_number(m) == doctest::Approx(0.5));
  m << 3.0, 0.0, 0.0, 3.0;
  CHECK(inverse_condition_number(m) == doctest::Approx(1.0));
  m << 1.0, 1.0, 1.0, 1.0;
  CHECK(inverse_condition_number(m) == doctest::Approx(0.0));
  m << 0.0, 0.0, 0.0, 0.0;
  CHECK(inverse_condition_number(m) == 0.0);

  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        m(r, c) = uniform(rng, -3.0, 3.0);
      }
    }
    const double icn = inverse_condition_number(m);
    CHECK(icn >= 0.0);
    CHECK(icn <= 1.0);
    // cross-check against Eigen's SVD
    const Eigen::JacobiSVD<Mat2> svd(m);
    const double ref = svd.singularValues()(1) / svd.singularValues()(0);
    CHECK(icn == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("expand_reduced reference values and invariants") {
  const DesignParameters d = expand_reduced(reference_reduced());
  CHECK(d.a1.x() == doctest::Approx(0.0519615242270663).epsilon(1e-12));
  CHECK(d.a1.y() == doctest::Approx(0.03).epsilon(1e-12));
  CHECK(d.a2.x() == doctest::Approx(0.0519615242270663).epsilon(1e-12));
  CHECK(d.a2.y() == doctest::Approx(-0.03).epsilon(1e-12));
  CHECK(d.b1.x() == doctest::Approx(0.0259807621135332).epsilon(1e-12));
  CHECK(d.b1.y() == doctest::Approx(0.015).epsilon(1e-12));
  CHECK(d.b2.y() == doctest::Approx(-0.015).epsilon(1e-12));
  CHECK(d.h == doctest::Approx(0.10));
  CHECK(d.a1.z() == 0.0);
  CHECK(d.b1.z() == 0.0);
  CHECK_NOTHROW(validate_design(d));

  CHECK_THROWS_AS((void)expand_reduced({-0.06, 0.03, 0.5, 0.1}), DomainError);
  CHECK_THROWS_AS((void)expand_reduced({0.06, 0.03, 0.5, -0.1}), DomainError);
  CHECK_THROWS_AS((void)expand_reduced({0.06, 0.03, 1.6, 0.1}), DomainError);

  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    ReducedDesignParameters r;
    r.r_a = uniform(rng, 0.01, 0.3);
    r.r_b = uniform(rng, 0.01, 0.3);
    r.gamma = uniform(rng, 0.05, 1.5);
    r.h = uniform(rng, 0.01, 0.3);
    CHECK_NOTHROW(validate_design(expand_reduced(r)));
  }
}

TEST_CASE("mirror symmetry swaps legs with alpha negation") {
  // The naive pairing rho1 == rho2 under a pure-alpha tilt does not hold;
  // the verified relation is rho2(alpha, beta) == rho1(-alpha, beta).
  const DesignParameters ref = expand_reduced(reference_reduced());
  const LegLengths pure_alpha = inverse_kinematics(ref, {deg(20.0), 0.0});
  CHECK(std::abs(pure_alpha.rho1 - pure_alpha.rho2) > 1e-4);

  Rng rng(77);
  for (int i = 0; i < 100; ++i) {
    ReducedDesignParameters r;
    r.r_a = uniform(rng, 0.02, 0.15);
    r.r_b = uniform(rng, 0.01, 0.08);
    r.gamma = uniform(rng, 0.2, 1.3);
    r.h = uniform(rng, 0.04, 0.2);
    const DesignParameters d = expand_reduced(r);
    const TiltOrientation q = random_tilt(rng, deg(40.0));
    const LegLengths fwd = inverse_kinematics(d, q);
    const LegLengths mir = inverse_kinematics(d, {-q.alpha, q.beta});
    CHECK(fwd.rho2 == doctest::Approx(mir.rho1).epsilon(1e-13));
    CHECK(fwd.rho1 == doctest::Approx(mir.rho2).epsilon(1e-13));
  }
}

TEST_CASE("forward kinematics round trip") {
  const DesignParameters d = spec_example_design();

  const LegLengths home = inverse_kinematics(d, {0.0, 0.0});
  const TiltOrientation back = forward_kinematics(d, home, {0.0, 0.0});
  CHECK(std::abs(back.alpha) < 1e-10);
  CHECK(std::abs(back.beta) < 1e-10);

  const TiltOrientation target{deg(30.0), 0.0};
  const LegLengths tilted = inverse_kinematics(d, target);
  const TiltOrientation solved = forward_kinematics(d, tilted, {0.0, 0.0});
  CHECK(std::abs(solved.alpha - target.alpha) < 1e-8);
  CHECK(std::abs(solved.beta - target.beta) < 1e-8);
}

TEST_CASE("forward kinematics round trip with perturbed seeds") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const auto [d, q] = random_well_posed(rng, deg(45.0));
    const LegLengths target = inverse_kinematics(d, q);
    TiltOrientation seed = q;
    seed.alpha += uniform(rng, -deg(5.0), deg(5.0));
    seed.beta += uniform(rng, -deg(5.0), deg(5.0));
    if (!tilt_in_range(seed)) {
      seed = q;
    }
    const TiltOrientation solved = forward_kinematics(d, target, seed);
    CHECK(std::abs(solved.alpha - q.alpha) < 1e-8);
    CHECK(std::abs(solved.beta - q.beta) < 1e-8);
  }
}

TEST_CASE("forward kinematics failure modes") {
  const DesignParameters d = spec_example_design();

  // unreachable lengths: ten times the joint height
  CHECK_THROWS_AS((void)forward_kinematics(d, LegLengths{1.0, 1.0}, {0.0, 0.0}),
                  ConvergenceError);

  // zero platform levers make the Newton system singular for any off target
  DesignParameters frozen = d;
  frozen.b1 = Vec3::Zero();
  frozen.b2 = Vec3::Zero();
  const LegLengths fixed = inverse_kinematics(frozen, {0.0, 0.0});
  CHECK_THROWS_AS(
      (void)forward_kinematics(frozen, LegLengths{fixed.rho1 * 1.2, fixed.rho2}, {0.0, 0.0}),
      SingularStepError);
  // ... but an exact fixed point is accepted without a step
  const TiltOrientation still = forward_kinematics(frozen, fixed, {0.0, 0.0});
  CHECK(still.alpha == 0.0);
  CHECK(still.beta == 0.0);

  CHECK_THROWS_AS((void)forward_kinematics(d, LegLengths{-0.1, 0.1}, {0.0, 0.0}), DomainError);
  CHECK_THROWS_AS((void)forward_kinematics(d, LegLengths{0.1, 0.1}, {2.0, 0.0}), DomainError);
}

TEST_CASE("design validation") {
  DesignParameters d = spec_example_design();
  CHECK_NOTHROW(validate_design(d));
  d.h = -0.1;
  CHECK_THROWS_AS(validate_design(d), DomainError);
  d.h = 0.0;
  CHECK_THROWS_AS(validate_design(d), DomainError);
  d = spec_example_design();
  d.a1.x() = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate_design(d), DomainError);
}
