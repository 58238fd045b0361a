#include "lsc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lsc/errors.hpp"

namespace lsc {

SimplexSample sample_uniform_simplex(int k, RngStream& rng) {
  if (k < 2) throw std::invalid_argument("sample_uniform_simplex: need k >= 2");
  std::vector<double> e(static_cast<size_t>(k));
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    e[static_cast<size_t>(i)] = rng.next_exponential();
    sum += e[static_cast<size_t>(i)];
  }
  for (double& v : e) v /= sum;
  return SimplexSample{Pmf(Alphabet{k}, std::move(e)), rng.path()};
}

RateGrid build_rate_grid(double full_rate, double resolution) {
  if (!(resolution > 0.0) || !(resolution < full_rate))
    throw std::invalid_argument("build_rate_grid: need 0 < resolution < full_rate");
  RateGrid g{full_rate, resolution, {}};
  const int jmax = static_cast<int>(std::floor(full_rate / resolution));
  for (int j = 1; j <= jmax; ++j) {
    const double point = j * resolution;
    if (std::fabs(point - full_rate) <= 1e-12) continue;  // interval is open at full_rate
    g.points.push_back(point);
  }
  return g;
}

MassGrid build_mass_grid(double resolution, double p_min, int alphabet_size) {
  if (alphabet_size < 2)
    throw std::invalid_argument("build_mass_grid: alphabet size must be >= 2");
  if (!(resolution > 0.0) || !(p_min > 0.0) || !(p_min < 1.0))
    throw std::invalid_argument("build_mass_grid: need resolution > 0, 0 < p_min < 1");
  const double ratio = 1.0 + resolution / alphabet_size;
  const int kmax = static_cast<int>(
      std::floor(-std::log(p_min) / std::log(ratio) + 1e-9));
  MassGrid g{resolution, p_min, alphabet_size, {}};
  g.points.reserve(static_cast<size_t>(kmax) + 1);
  double v = p_min;
  for (int k = 0; k <= kmax; ++k) {
    g.points.push_back(v);
    v *= ratio;
  }
  return g;
}

QuantizedSimplex enumerate_quantized_simplex(const MassGrid& grid) {
  const int ns = grid.alphabet_size;
  if (ns < 2 || grid.points.empty())
    throw std::invalid_argument("enumerate_quantized_simplex: malformed grid");
  const size_t gn = grid.points.size();
  double candidates = 1.0;
  for (int i = 0; i < ns - 1; ++i) candidates *= static_cast<double>(gn);
  if (candidates > 1e6)
    throw GuardError("enumerate_quantized_simplex: |grid|^(|S|-1) exceeds 1e6");

  std::vector<Pmf> out;
  std::vector<size_t> idx(static_cast<size_t>(ns) - 1, 0);
  std::vector<double> v(static_cast<size_t>(ns));
  // one free coordinate position at a time; the rest walk the grid odometer
  for (int free = 0; free < ns; ++free) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      double sum = 0.0;
      int at = 0;
      for (int pos = 0; pos < ns; ++pos) {
        if (pos == free) continue;
        const double g = grid.points[idx[static_cast<size_t>(at++)]];
        v[static_cast<size_t>(pos)] = g;
        sum += g;
      }
      const double closing = 1.0 - sum;
      if (closing >= -1e-12 && closing <= 1.0 + 1e-12) {
        v[static_cast<size_t>(free)] = std::clamp(closing, 0.0, 1.0);
        out.emplace_back(Alphabet{ns}, v);
      }
      // odometer
      int carry = 0;
      while (carry < ns - 1) {
        if (++idx[static_cast<size_t>(carry)] < gn) break;
        idx[static_cast<size_t>(carry)] = 0;
        ++carry;
      }
      if (carry == ns - 1) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const Pmf& a, const Pmf& b) {
    return a.mass() < b.mass();
  });
  auto close = [](const Pmf& a, const Pmf& b) {
    for (int i = 0; i < a.size(); ++i)
      if (std::fabs(a(i) - b(i)) > 1e-12) return false;
    return true;
  };
  out.erase(std::unique(out.begin(), out.end(), close), out.end());
  return QuantizedSimplex{grid, std::move(out)};
}

namespace {

// Nearest grid point in ratio distance; at the geometric midpoint the tie
// snaps downward.
double snap_to_grid(double x, const std::vector<double>& points) {
  auto it = std::lower_bound(points.begin(), points.end(), x);
  if (it == points.begin()) return points.front();
  if (it == points.end()) return points.back();
  const double hi = *it;
  const double lo = *(it - 1);
  return (x * x <= lo * hi) ? lo : hi;
}

}  // namespace

std::optional<Pmf> quantize_pmf(const Pmf& p, const MassGrid& grid) {
  if (p.size() != grid.alphabet_size)
    throw std::invalid_argument("quantize_pmf: alphabet mismatch with grid");
  const double floor_mass = (1.0 - grid.resolution / grid.alphabet_size) * grid.p_min;
  if (p.min_mass() <= floor_mass) return std::nullopt;

  int greatest = 0;
  for (int s = 1; s < p.size(); ++s)
    if (p(s) >= p(greatest)) greatest = s;  // ties: highest index wins

  std::vector<double> v(static_cast<size_t>(p.size()));
  double sum = 0.0;
  for (int s = 0; s < p.size(); ++s) {
    if (s == greatest) continue;
    v[static_cast<size_t>(s)] = snap_to_grid(p(s), grid.points);
    sum += v[static_cast<size_t>(s)];
  }
  v[static_cast<size_t>(greatest)] = 1.0 - sum;
  return Pmf(p.alphabet(), std::move(v));
}

PerturbationBox::PerturbationBox(Pmf base_, double xi_)
    : base(std::move(base_)), xi(xi_) {
  const int k = base.size();
  if (k < 2) throw std::invalid_argument("PerturbationBox: need |Z| >= 2");
  for (int i = 1; i < k; ++i)
    if (base(i) < base(i - 1))
      throw std::invalid_argument("PerturbationBox: base must be sorted ascending");
  if (!(xi > 0.0) || !(xi < 1.0 / (static_cast<double>(k) * k)))
    throw std::invalid_argument("PerturbationBox: need 0 < xi < 1/|Z|^2");
}

double perturbation_kl_bound(const PerturbationBox& box) {
  const double k = static_cast<double>(box.base.size());
  return std::log2(1.0 / (1.0 - box.xi * k * k));
}

Pmf sample_perturbation(const PerturbationBox& box, RngStream& rng) {
  const int k = box.base.size();
  std::vector<double> v(box.base.mass());
  double total = 0.0;
  for (int i = 0; i < k - 1; ++i) {
    const double u = box.xi * rng.next_double();
    v[static_cast<size_t>(i)] += u;
    total += u;
  }
  v[static_cast<size_t>(k) - 1] -= total;
  return Pmf(box.base.alphabet(), std::move(v));
}

double simplex_measure_constant(int k) {
  if (k < 2) throw std::invalid_argument("simplex_measure_constant: need k >= 2");
  double fact = 1.0;
  for (int i = 2; i <= k - 1; ++i) fact *= i;
  return 1.0 / fact;
}

}  // namespace lsc
