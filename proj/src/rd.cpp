#include "lsc/rd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lsc/errors.hpp"
#include "lsc/info.hpp"

namespace lsc {

namespace {

constexpr double kIterTolerance = 1e-9;
constexpr int kMaxIterations = 10000;
constexpr double kRateTolerance = 1e-6;
constexpr int kMaxBisectionSteps = 200;

// Blahut-Arimoto working state over the positive-mass source symbols only;
// zero-mass symbols are reattached afterwards with deterministic rows.
struct Reduced {
  std::vector<int> live;          // indices of source symbols with mass > 0
  std::vector<double> p;          // their masses
  std::vector<double> dist;       // |live| x |recon| distortion slice
  std::vector<double> dist_off;   // per-row minimum, subtracted for stability
  int nr = 0;                     // recon alphabet size
};

Reduced reduce(const Pmf& p_s, const DistortionMeasure& d) {
  Reduced r;
  r.nr = d.recon.size;
  for (int s = 0; s < p_s.size(); ++s) {
    if (p_s(s) <= 0.0) continue;
    r.live.push_back(s);
    r.p.push_back(p_s(s));
    double row_min = d(s, 0);
    for (int t = 1; t < r.nr; ++t) row_min = std::min(row_min, d(s, t));
    r.dist_off.push_back(row_min);
    for (int t = 0; t < r.nr; ++t) r.dist.push_back(d(s, t) - row_min);
  }
  return r;
}

struct BaResult {
  double rate = 0.0;
  double distortion = 0.0;
  std::vector<double> cond;  // |live| x nr rows
};

// Fixed point of the alternating minimization at slope beta (bits per unit
// distortion): P(t|s) proportional to q(t) * 2^(-beta * d(s,t)).
BaResult blahut_arimoto_fixed_slope(const Reduced& r, double beta,
                                    std::vector<double>& q) {
  const size_t ns = r.live.size();
  const size_t nr = static_cast<size_t>(r.nr);
  BaResult out;
  out.cond.assign(ns * nr, 0.0);
  std::vector<double> q_next(nr, 0.0);

  double prev_rate = -1.0, prev_dist = -1.0;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    // conditional update
    for (size_t s = 0; s < ns; ++s) {
      double norm = 0.0;
      for (size_t t = 0; t < nr; ++t) {
        const double w = q[t] * std::exp2(-beta * r.dist[s * nr + t]);
        out.cond[s * nr + t] = w;
        norm += w;
      }
      for (size_t t = 0; t < nr; ++t) out.cond[s * nr + t] /= norm;
    }
    // marginal update
    std::fill(q_next.begin(), q_next.end(), 0.0);
    for (size_t s = 0; s < ns; ++s)
      for (size_t t = 0; t < nr; ++t) q_next[t] += r.p[s] * out.cond[s * nr + t];

    // rate and distortion of the current pair
    double rate = 0.0, dist = 0.0;
    for (size_t s = 0; s < ns; ++s) {
      for (size_t t = 0; t < nr; ++t) {
        const double c = out.cond[s * nr + t];
        if (c > 0.0) {
          rate += r.p[s] * c * std::log2(c / q_next[t]);
          dist += r.p[s] * c * (r.dist[s * nr + t] + r.dist_off[s]);
        }
      }
    }
    q = q_next;
    if (iter > 0 && std::fabs(rate - prev_rate) < kIterTolerance &&
        std::fabs(dist - prev_dist) < kIterTolerance) {
      out.rate = std::max(rate, 0.0);
      out.distortion = dist;
      return out;
    }
    prev_rate = rate;
    prev_dist = dist;
  }
  throw ConvergenceError("blahut_arimoto: iteration cap reached");
}

ConditionalPmf assemble_achiever(const Pmf& p_s, const DistortionMeasure& d,
                                 const Reduced& r, const std::vector<double>& cond) {
  const int ns = p_s.size();
  const int nr = d.recon.size;
  std::vector<double> rows(static_cast<size_t>(ns) * nr, 0.0);
  for (size_t i = 0; i < r.live.size(); ++i)
    for (int t = 0; t < nr; ++t)
      rows[static_cast<size_t>(r.live[i]) * nr + t] = cond[i * static_cast<size_t>(nr) + t];
  // zero-mass source rows: deterministic on the cheapest reconstruction
  for (int s = 0; s < ns; ++s) {
    if (p_s(s) > 0.0) continue;
    int best = 0;
    for (int t = 1; t < nr; ++t)
      if (d(s, t) < d(s, best)) best = t;
    rows[static_cast<size_t>(s) * nr + best] = 1.0;
  }
  // normalize away accumulated rounding so the invariant check stays clean
  for (int s = 0; s < ns; ++s) {
    double sum = 0.0;
    for (int t = 0; t < nr; ++t) sum += rows[static_cast<size_t>(s) * nr + t];
    for (int t = 0; t < nr; ++t) rows[static_cast<size_t>(s) * nr + t] /= sum;
  }
  return ConditionalPmf(p_s.alphabet(), d.recon, std::move(rows));
}

// Exact optimum at rate 0: a single reconstruction letter, ties to the
// lowest index.
RdPoint zero_rate_point(const Pmf& p_s, const DistortionMeasure& d) {
  int best = 0;
  double best_d = 0.0;
  for (int t = 0; t < d.recon.size; ++t) {
    double avg = 0.0;
    for (int s = 0; s < p_s.size(); ++s) avg += p_s(s) * d(s, t);
    if (t == 0 || avg < best_d) {
      best = t;
      best_d = avg;
    }
  }
  std::vector<double> rows(static_cast<size_t>(p_s.size()) * d.recon.size, 0.0);
  for (int s = 0; s < p_s.size(); ++s)
    rows[static_cast<size_t>(s) * d.recon.size + best] = 1.0;
  RdPoint pt{0.0, best_d, ConditionalPmf(p_s.alphabet(), d.recon, std::move(rows)),
             0.0};
  return pt;
}

void check_pair(const Pmf& p_s, const DistortionMeasure& d) {
  if (!(p_s.alphabet() == d.source))
    throw std::invalid_argument("rd: source alphabet mismatch");
}

}  // namespace

DistortionMeasure::DistortionMeasure(Alphabet source_, Alphabet recon_,
                                     std::vector<double> d_)
    : source(source_), recon(recon_), d(std::move(d_)) {
  if (source.size <= 0 || recon.size <= 0)
    throw std::invalid_argument("DistortionMeasure: empty alphabet");
  if (d.size() != static_cast<size_t>(source.size) * static_cast<size_t>(recon.size))
    throw std::invalid_argument("DistortionMeasure: wrong matrix size");
  for (double v : d) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("DistortionMeasure: entries must be finite and >= 0");
    d_max = std::max(d_max, v);
  }
}

DistortionMeasure DistortionMeasure::hamming(Alphabet a) {
  std::vector<double> m(static_cast<size_t>(a.size) * a.size, 1.0);
  for (int s = 0; s < a.size; ++s) m[static_cast<size_t>(s) * a.size + s] = 0.0;
  return DistortionMeasure(a, a, std::move(m));
}

double expected_distortion(const Pmf& p_s, const ConditionalPmf& shat_given_s,
                           const DistortionMeasure& d) {
  check_pair(p_s, d);
  if (!(shat_given_s.from() == d.source) || !(shat_given_s.to() == d.recon))
    throw std::invalid_argument("expected_distortion: alphabet mismatch");
  double acc = 0.0;
  for (int s = 0; s < p_s.size(); ++s)
    for (int t = 0; t < d.recon.size; ++t)
      acc += p_s(s) * shat_given_s(s, t) * d(s, t);
  return acc;
}

double joint_expected_distortion(const JointPmf& j, const DistortionMeasure& d) {
  if (!(j.a() == d.source) || !(j.b() == d.recon))
    throw std::invalid_argument("joint_expected_distortion: alphabet mismatch");
  double acc = 0.0;
  for (int s = 0; s < j.a().size; ++s)
    for (int t = 0; t < j.b().size; ++t) acc += j(s, t) * d(s, t);
  return acc;
}

std::vector<RdPoint> blahut_arimoto_curve(const Pmf& p_s, const DistortionMeasure& d,
                                          const std::vector<double>& slopes) {
  check_pair(p_s, d);
  for (double b : slopes)
    if (!(b >= 0.0) || !std::isfinite(b))
      throw std::invalid_argument("blahut_arimoto_curve: slopes must be >= 0");

  const Reduced r = reduce(p_s, d);
  std::vector<RdPoint> points;
  points.reserve(slopes.size());
  for (double beta : slopes) {
    if (beta == 0.0) {
      points.push_back(zero_rate_point(p_s, d));
      continue;
    }
    std::vector<double> q(static_cast<size_t>(r.nr), 1.0 / r.nr);
    BaResult res = blahut_arimoto_fixed_slope(r, beta, q);
    ConditionalPmf achiever = assemble_achiever(p_s, d, r, res.cond);
    points.push_back(RdPoint{res.rate, res.distortion, achiever, res.rate});
  }
  return points;
}

RdPoint solve_distortion_at_rate(const Pmf& p_s, const DistortionMeasure& d,
                                 double rate) {
  check_pair(p_s, d);
  if (!(rate >= 0.0) || !std::isfinite(rate))
    throw std::invalid_argument("solve_distortion_at_rate: rate must be >= 0");
  if (rate == 0.0) return zero_rate_point(p_s, d);

  const Reduced r = reduce(p_s, d);
  std::vector<double> q(static_cast<size_t>(r.nr), 1.0 / r.nr);

  // bracket the slope; R(beta) is nondecreasing
  double lo = 0.0, hi = 1.0;
  BaResult at_hi = blahut_arimoto_fixed_slope(r, hi, q);
  while (at_hi.rate < rate && hi < 1e9) {
    lo = hi;
    hi *= 2.0;
    at_hi = blahut_arimoto_fixed_slope(r, hi, q);
  }
  if (at_hi.rate < rate) {
    // saturated: the constraint is slack, distortion is at its floor
    ConditionalPmf achiever = assemble_achiever(p_s, d, r, at_hi.cond);
    double dist = at_hi.distortion;
    if (dist < 1e-12) dist = 0.0;
    return RdPoint{rate, dist, achiever, at_hi.rate};
  }

  BaResult best = at_hi;
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    if (std::fabs(best.rate - rate) <= kRateTolerance) {
      ConditionalPmf achiever = assemble_achiever(p_s, d, r, best.cond);
      return RdPoint{rate, best.distortion, achiever, best.rate};
    }
    const double mid = 0.5 * (lo + hi);
    BaResult at_mid = blahut_arimoto_fixed_slope(r, mid, q);
    if (at_mid.rate < rate)
      lo = mid;
    else
      hi = mid;
    best = at_mid;
  }
  throw ConvergenceError("solve_distortion_at_rate: bisection did not converge");
}

RdTarget build_rd_target(const Pmf& p_s, const DistortionMeasure& d,
                         double subset_rate, double backoff) {
  if (!(backoff > 0.0) || !(subset_rate - backoff > 0.0))
    throw std::invalid_argument(
        "build_rd_target: need 0 < backoff < subset_rate");
  RdPoint pt = solve_distortion_at_rate(p_s, d, subset_rate - backoff);
  return RdTarget{subset_rate, backoff, JointPmf::from_product(p_s, pt.achiever)};
}

}  // namespace lsc
