#pragma once

#include <vector>

#include "lsc/prob.hpp"

namespace lsc {

// Single-letter distortion d: S x Shat -> [0, inf), row-major.
struct DistortionMeasure {
  Alphabet source;
  Alphabet recon;
  std::vector<double> d;
  double d_max = 0.0;

  DistortionMeasure(Alphabet source, Alphabet recon, std::vector<double> d);

  static DistortionMeasure hamming(Alphabet a);

  double operator()(int s, int shat) const {
    return d[static_cast<size_t>(s) * static_cast<size_t>(recon.size) +
             static_cast<size_t>(shat)];
  }
};

double expected_distortion(const Pmf& p_s, const ConditionalPmf& shat_given_s,
                           const DistortionMeasure& d);

struct RdPoint {
  double rate = 0.0;        // rate constraint the point was solved for (bits)
  double distortion = 0.0;  // expected distortion of the achiever
  ConditionalPmf achiever;  // test channel P(shat|s)
  double achieved_mutual_info = 0.0;
};

// One point per slope (bits per unit distortion, >= 0); each returned point
// sits on the lower convex envelope of the distortion-rate region.
// slope 0 maps to the exact zero-rate optimum.
std::vector<RdPoint> blahut_arimoto_curve(const Pmf& p_s, const DistortionMeasure& d,
                                          const std::vector<double>& slopes);

// Distortion-rate function at a rate constraint (bits): bisects the slope
// until the achieved mutual information matches the rate within 1e-6, or
// returns the saturated point when the rate exceeds what any test channel
// needs (distortion floor, 0 for distortion measures with a zero per row).
RdPoint solve_distortion_at_rate(const Pmf& p_s, const DistortionMeasure& d,
                                 double rate);

// Target joint for typicality encoding: source pmf times the achiever of the
// backed-off problem at rate subset_rate - backoff.
struct RdTarget {
  double subset_rate = 0.0;
  double backoff = 0.0;
  JointPmf target_joint;
};

RdTarget build_rd_target(const Pmf& p_s, const DistortionMeasure& d,
                         double subset_rate, double backoff);

double joint_expected_distortion(const JointPmf& j, const DistortionMeasure& d);

}  // namespace lsc
