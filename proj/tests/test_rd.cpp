#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "lsc/info.hpp"
#include "lsc/prob.hpp"
#include "lsc/rd.hpp"

using namespace lsc;

TEST_CASE("distortion measure construction") {
  DistortionMeasure h = DistortionMeasure::hamming(Alphabet{3});
  CHECK(h(0, 0) == 0.0);
  CHECK(h(0, 2) == 1.0);
  CHECK(h.d_max == 1.0);

  DistortionMeasure custom(Alphabet{2}, Alphabet{3}, {0, 1, 4, 2, 0.5, 0});
  CHECK(custom(1, 1) == 0.5);
  CHECK(custom.d_max == 4.0);

  CHECK_THROWS_AS(DistortionMeasure(Alphabet{2}, Alphabet{2}, {0, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DistortionMeasure(Alphabet{2}, Alphabet{2}, {0, -1, 1, 0}),
                  std::invalid_argument);
}

TEST_CASE("expected distortion") {
  Pmf p(Alphabet{2}, {0.25, 0.75});
  DistortionMeasure d = DistortionMeasure::hamming(Alphabet{2});
  ConditionalPmf c(Alphabet{2}, Alphabet{2}, {0.9, 0.1, 0.2, 0.8});
  CHECK(expected_distortion(p, c, d) ==
        doctest::Approx(0.25 * 0.1 + 0.75 * 0.2).epsilon(1e-14));

  JointPmf j = JointPmf::from_product(p, c);
  CHECK(joint_expected_distortion(j, d) ==
        doctest::Approx(expected_distortion(p, c, d)).epsilon(1e-14));
}

TEST_CASE("zero rate optimum") {
  DistortionMeasure d = DistortionMeasure::hamming(Alphabet{2});
  RdPoint pt = solve_distortion_at_rate(Pmf(Alphabet{2}, {0.7, 0.3}), d, 0.0);
  CHECK(pt.rate == 0.0);
  CHECK(pt.distortion == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(pt.achiever(0, 0) == 1.0);
  CHECK(pt.achiever(1, 0) == 1.0);

  // exact tie between reconstruction letters: lowest index wins
  RdPoint tie = solve_distortion_at_rate(Pmf::uniform(Alphabet{2}), d, 0.0);
  CHECK(tie.achiever(0, 0) == 1.0);
  CHECK(tie.achiever(1, 0) == 1.0);
}

TEST_CASE("binary hamming anchors") {
  DistortionMeasure d = DistortionMeasure::hamming(Alphabet{2});
  // frozen from an independent closed-form inversion of the binary
  // rate-distortion formula
  CHECK(solve_distortion_at_rate(Pmf::uniform(Alphabet{2}), d, 0.5).distortion ==
        doctest::Approx(0.11002786443835955).epsilon(2e-5));
  CHECK(solve_distortion_at_rate(Pmf(Alphabet{2}, {0.7, 0.3}), d, 0.4).distortion ==
        doctest::Approx(0.1039170909599981).epsilon(2e-5));
  CHECK(solve_distortion_at_rate(Pmf::uniform(Alphabet{2}), d, 0.42).distortion ==
        doctest::Approx(0.1383874276218403).epsilon(2e-5));
}

TEST_CASE("solver hits the rate constraint") {
  Pmf p(Alphabet{2}, {0.7, 0.3});
  DistortionMeasure d = DistortionMeasure::hamming(Alphabet{2});
  RdPoint pt = solve_distortion_at_rate(p, d, 0.4);
  CHECK(pt.rate == 0.4);
  CHECK(pt.achieved_mutual_info == doctest::Approx(0.4).epsilon(1e-5));
  JointPmf j = JointPmf::from_product(p, pt.achiever);
  CHECK(mutual_information(j) == doctest::Approx(0.4).epsilon(1e-5));
  CHECK(expected_distortion(p, pt.achiever, d) ==
        doctest::Approx(pt.distortion).epsilon(1e-9));
  Pmf back = j.marginal_a();
  CHECK(back(0) == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("saturation above the source entropy") {
  DistortionMeasure d = DistortionMeasure::hamming(Alphabet{2});
  RdPoint pt = solve_distortion_at_rate(Pmf::uniform(Alphabet{2}), d, 1.2);
  CHECK(pt.distortion == 0.0);
  CHECK(pt.achieved_mutual_info <= 1.0 + 1e-9);

  RdPoint pt2 = solve_distortion_at_rate(Pmf(Alphabet{2}, {0.7, 0.3}), d, 1.0);
  CHECK(pt2.distortion == 0.0);
}

TEST_CASE("monotone in rate") {
  Pmf p(Alphabet{2}, {0.7, 0.3});
  DistortionMeasure d = DistortionMeasure::hamming(Alphabet{2});
  const double d2 = solve_distortion_at_rate(p, d, 0.2).distortion;
  const double d4 = solve_distortion_at_rate(p, d, 0.4).distortion;
  const double d6 = solve_distortion_at_rate(p, d, 0.6).distortion;
  CHECK(d2 > d4);
  CHECK(d4 > d6);
  CHECK(d6 > 0.0);
}

TEST_CASE("curve by slope") {
  Pmf p(Alphabet{2}, {0.7, 0.3});
  DistortionMeasure d = DistortionMeasure::hamming(Alphabet{2});
  auto pts = blahut_arimoto_curve(p, d, {0.0, 1.0, 2.0, 4.0, 8.0});
  CHECK(pts.size() == 5);
  CHECK(pts[0].rate == 0.0);
  CHECK(pts[0].distortion == doctest::Approx(0.3).epsilon(1e-12));
  for (size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].achieved_mutual_info >= pts[i - 1].achieved_mutual_info - 1e-9);
    CHECK(pts[i].distortion <= pts[i - 1].distortion + 1e-9);
  }
  CHECK_THROWS_AS(blahut_arimoto_curve(p, d, {-1.0}), std::invalid_argument);
}

TEST_CASE("zero mass source symbols are reattached deterministically") {
  // ternary source with a dead symbol behaves like the binary one
  Pmf p(Alphabet{3}, {0.5, 0.5, 0.0});
  DistortionMeasure d = DistortionMeasure::hamming(Alphabet{3});
  RdPoint pt = solve_distortion_at_rate(p, d, 0.5);
  CHECK(pt.distortion == doctest::Approx(0.11002786443835955).epsilon(5e-4));
  // the dead row maps to its cheapest reconstruction
  CHECK(pt.achiever(2, 2) == 1.0);
}

TEST_CASE("degenerate distortion column") {
  // one reconstruction letter is free for both source letters
  Pmf p(Alphabet{2}, {0.6, 0.4});
  DistortionMeasure d(Alphabet{2}, Alphabet{2}, {0.0, 1.0, 0.0, 1.0});
  RdPoint pt = solve_distortion_at_rate(p, d, 0.3);
  CHECK(pt.distortion == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("rd target") {
  Pmf p(Alphabet{2}, {0.6, 0.4});
  DistortionMeasure d = DistortionMeasure::hamming(Alphabet{2});
  RdTarget t = build_rd_target(p, d, 0.5, 0.08);
  CHECK(t.subset_rate == 0.5);
  CHECK(t.backoff == 0.08);
  Pmf ma = t.target_joint.marginal_a();
  CHECK(ma(0) == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(mutual_information(t.target_joint) == doctest::Approx(0.42).epsilon(1e-4));
  const double d_target = solve_distortion_at_rate(p, d, 0.42).distortion;
  CHECK(joint_expected_distortion(t.target_joint, d) ==
        doctest::Approx(d_target).epsilon(1e-5));

  CHECK_THROWS_AS(build_rd_target(p, d, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(build_rd_target(p, d, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("solver input validation") {
  Pmf p(Alphabet{2}, {0.6, 0.4});
  DistortionMeasure d = DistortionMeasure::hamming(Alphabet{2});
  CHECK_THROWS_AS(solve_distortion_at_rate(p, d, -0.1), std::invalid_argument);
  DistortionMeasure d3 = DistortionMeasure::hamming(Alphabet{3});
  CHECK_THROWS_AS(solve_distortion_at_rate(p, d3, 0.5), std::invalid_argument);
}
