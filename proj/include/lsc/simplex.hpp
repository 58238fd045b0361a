#pragma once

#include <optional>
#include <vector>

#include "lsc/prob.hpp"
#include "lsc/rng.hpp"

namespace lsc {

struct SimplexSample {
  Pmf theta;
  std::vector<uint64_t> seed_path;  // stream ids that produced the draw
};

// Uniform over the k-simplex: k unit-rate exponentials, normalized.
SimplexSample sample_uniform_simplex(int k, RngStream& rng);

// { j * resolution : j = 1 .. floor(full_rate/resolution) }, excluding any
// point equal to full_rate (within 1e-12).
struct RateGrid {
  double full_rate = 0.0;
  double resolution = 0.0;
  std::vector<double> points;
};

RateGrid build_rate_grid(double full_rate, double resolution);

// Geometric mass grid p_min * (1 + resolution/|S|)^k, k = 0 .. floor(
// -log(p_min) / log(1 + resolution/|S|)).
struct MassGrid {
  double resolution = 0.0;
  double p_min = 0.0;
  int alphabet_size = 0;
  std::vector<double> points;
};

MassGrid build_mass_grid(double resolution, double p_min, int alphabet_size);

// All pmfs with at least |S|-1 coordinates on the grid (the remaining
// coordinate closes the sum to 1), duplicates removed.
// Guard: |grid|^(|S|-1) <= 1e6 enumeration candidates.
struct QuantizedSimplex {
  MassGrid grid;
  std::vector<Pmf> pmfs;
};

QuantizedSimplex enumerate_quantized_simplex(const MassGrid& grid);

// Snaps all but the greatest entry (ties: highest index) to the nearest grid
// point under ratio distance (ties snap downward), closes the sum with the
// remaining entry.  Returns nullopt when min_s p(s) <= (1 - res/|S|) * p_min
// (the low-mass case the grid cannot represent within its guarantee).
std::optional<Pmf> quantize_pmf(const Pmf& p, const MassGrid& grid);

// Axis-aligned box of pmfs around a base sorted ascending: coordinates
// i < |Z| gain u_i in [0, xi), the last coordinate absorbs -sum(u).
struct PerturbationBox {
  Pmf base;  // sorted ascending, so the last coordinate is the largest
  double xi = 0.0;

  PerturbationBox(Pmf base, double xi);
};

// Every pmf in the box satisfies D(base || theta) <= this bound.
double perturbation_kl_bound(const PerturbationBox& box);

Pmf sample_perturbation(const PerturbationBox& box, RngStream& rng);

// Normalizing constant of the uniform density on the k-simplex with respect
// to Lebesgue measure on the first k-1 coordinates: c_k = 1/(k-1)!.
double simplex_measure_constant(int k);

}  // namespace lsc
