#include "lsc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace lsc {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(uint64_t master_seed, std::initializer_list<uint64_t> path)
    : path_(path) {
  seed_from(master_seed);
}

RngStream::RngStream(uint64_t master_seed, const std::vector<uint64_t>& path)
    : path_(path) {
  seed_from(master_seed);
}

void RngStream::seed_from(uint64_t master_seed) {
  uint64_t state = splitmix64(master_seed);
  for (uint64_t id : path_) state = splitmix64(state ^ id);
  engine_.seed(state);
}

uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::next_double() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

uint64_t RngStream::next_below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("next_below: zero bound");
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double RngStream::next_exponential() {
  // next_double() < 1, so the log argument is in (0,1].
  return -std::log(1.0 - next_double());
}

int RngStream::next_categorical(const Pmf& p) {
  const double u = next_double();
  double cum = 0.0;
  int last_positive = 0;
  for (int s = 0; s < p.size(); ++s) {
    if (p(s) > 0.0) last_positive = s;
    cum += p(s);
    if (u < cum) return s;
  }
  return last_positive;  // guards the u ~ 1 edge under rounding
}

Sequence sample_iid(const Pmf& p, int n, RngStream& rng) {
  std::vector<int32_t> sym(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) sym[static_cast<size_t>(i)] = rng.next_categorical(p);
  return Sequence(p.alphabet(), std::move(sym));
}

}  // namespace lsc
