#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "lsc/prob.hpp"

namespace lsc {

// Every random quantity in the toolkit is drawn from a stream derived from
// (master seed, id path).  Derivation: state = splitmix64(master), then
// state = splitmix64(state ^ id) for each path element; the final state seeds
// a std::mt19937_64.  Same master + path => same draws, on any platform and
// under any thread count.
uint64_t splitmix64(uint64_t x);

// Path tags, so independent uses of the same master seed never collide.
namespace stream_tag {
inline constexpr uint64_t kCodebookWord = 1;
inline constexpr uint64_t kSubset = 2;
inline constexpr uint64_t kSourceWord = 3;
inline constexpr uint64_t kChannel = 4;
inline constexpr uint64_t kPerturbation = 5;
inline constexpr uint64_t kSimplex = 6;
inline constexpr uint64_t kMonteCarlo = 7;
}  // namespace stream_tag

class RngStream {
 public:
  RngStream(uint64_t master_seed, std::initializer_list<uint64_t> path);
  RngStream(uint64_t master_seed, const std::vector<uint64_t>& path);

  uint64_t next_u64();
  // Uniform on [0,1), 53-bit resolution.
  double next_double();
  // Uniform on {0,...,bound-1}, unbiased via rejection.
  uint64_t next_below(uint64_t bound);
  // Unit-rate exponential.
  double next_exponential();
  // CDF inversion over the pmf's mass vector.
  int next_categorical(const Pmf& p);

  const std::vector<uint64_t>& path() const { return path_; }

 private:
  void seed_from(uint64_t master_seed);

  std::mt19937_64 engine_;
  std::vector<uint64_t> path_;
};

Sequence sample_iid(const Pmf& p, int n, RngStream& rng);

}  // namespace lsc
