#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lsc/errors.hpp"
#include "lsc/info.hpp"
#include "lsc/prob.hpp"

using namespace lsc;

namespace {

const JointPmf kBinaryJoint(Alphabet{2}, Alphabet{2}, {0.4, 0.1, 0.1, 0.4});
const JointPmf kTernaryJoint(Alphabet{2}, Alphabet{3},
                             {0.25, 0.15, 0.1, 0.1, 0.15, 0.25});

// reference enumeration: all |B|^n sequences, filtered one by one
uint64_t brute_force_conditional_count(const Sequence& y, const JointPmf& j,
                                       double eps) {
  const int nb = j.b().size;
  const int n = y.n();
  uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<uint64_t>(nb);
  uint64_t count = 0;
  for (uint64_t r = 0; r < total; ++r) {
    std::vector<int32_t> z(static_cast<size_t>(n));
    uint64_t v = r;
    for (int i = n - 1; i >= 0; --i) {
      z[static_cast<size_t>(i)] = static_cast<int32_t>(v % nb);
      v /= static_cast<uint64_t>(nb);
    }
    if (is_jointly_typical(y, Sequence(j.b(), std::move(z)), j, eps)) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("entropy anchors") {
  CHECK(entropy(Pmf(Alphabet{2}, {0.25, 0.75})) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-14));
  CHECK(entropy(Pmf(Alphabet{2}, {0.3, 0.7})) ==
        doctest::Approx(0.8812908992306927).epsilon(1e-14));
  CHECK(entropy(Pmf::uniform(Alphabet{4})) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(entropy(Pmf::point_mass(Alphabet{5}, 3)) == 0.0);
}

TEST_CASE("conditional entropy and mutual information") {
  CHECK(conditional_entropy(kBinaryJoint) ==
        doctest::Approx(0.7219280948873623).epsilon(1e-14));
  CHECK(mutual_information(kBinaryJoint) ==
        doctest::Approx(0.2780719051126377).epsilon(1e-14));

  // independent joint has zero mutual information
  Pmf pa(Alphabet{2}, {0.3, 0.7});
  Pmf pb(Alphabet{3}, {0.2, 0.3, 0.5});
  std::vector<double> m;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b) m.push_back(pa(a) * pb(b));
  JointPmf indep(Alphabet{2}, Alphabet{3}, std::move(m));
  CHECK(mutual_information(indep) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(conditional_entropy(indep) == doctest::Approx(entropy(pb)).epsilon(1e-12));
}

TEST_CASE("kl divergence") {
  Pmf u = Pmf::uniform(Alphabet{2});
  Pmf q(Alphabet{2}, {0.25, 0.75});
  CHECK(kl_divergence(u, q) == doctest::Approx(0.20751874963942185).epsilon(1e-14));
  CHECK(kl_divergence(q, u) == doctest::Approx(0.18872187554086717).epsilon(1e-14));
  CHECK(kl_divergence(u, u) == doctest::Approx(0.0).epsilon(1e-14));
  // support violation
  Pmf point = Pmf::point_mass(Alphabet{2}, 0);
  CHECK(std::isinf(kl_divergence(u, point)));
  CHECK(kl_divergence(point, u) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(kl_divergence(u, Pmf::uniform(Alphabet{3})),
                  std::invalid_argument);
}

TEST_CASE("empirical distributions") {
  Sequence x(Alphabet{3}, {0, 2, 2, 1, 2, 0, 2, 2});
  Pmf e = empirical_pmf(x);
  CHECK(e(0) == doctest::Approx(0.25));
  CHECK(e(1) == doctest::Approx(0.125));
  CHECK(e(2) == doctest::Approx(0.625));

  Sequence y(Alphabet{2}, {0, 1, 1, 0, 1, 0, 1, 1});
  JointPmf je = joint_empirical_pmf(x, y);
  CHECK(je(2, 1) == doctest::Approx(0.625));
  CHECK(je(0, 0) == doctest::Approx(0.25));
  CHECK_THROWS_AS(empirical_pmf(Sequence(Alphabet{2}, {})), std::invalid_argument);
}

TEST_CASE("robust typicality") {
  Pmf p(Alphabet{2}, {0.25, 0.75});
  Sequence exact(Alphabet{2}, {0, 0, 1, 1, 1, 1, 1, 1});  // counts (2,6)
  CHECK(is_typical(exact, p, 0.01));

  Sequence off(Alphabet{2}, {0, 0, 0, 1, 1, 1, 1, 1});  // counts (3,5)
  // worst relative deviation is |3/8 - 1/4| / (1/4) = 0.5
  CHECK(min_typicality_eps(off, p) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(is_typical(off, p, 0.5));  // boundary is inclusive via the slack
  CHECK_FALSE(is_typical(off, p, 0.49));

  // zero-mass symbols force zero counts
  Pmf point = Pmf::point_mass(Alphabet{2}, 0);
  Sequence has_one(Alphabet{2}, {0, 0, 0, 1});
  CHECK_FALSE(is_typical(has_one, point, 0.9));
  CHECK(std::isinf(min_typicality_eps(has_one, point)));
  Sequence zeros(Alphabet{2}, {0, 0, 0, 0});
  CHECK(is_typical(zeros, point, 0.01));
  CHECK(min_typicality_eps(zeros, point) == 0.0);

  CHECK_THROWS_AS(is_typical(zeros, Pmf::uniform(Alphabet{3}), 0.1),
                  std::invalid_argument);
}

TEST_CASE("joint typicality") {
  // diagonal target admits only the matching word
  JointPmf diag(Alphabet{2}, Alphabet{2}, {0.5, 0.0, 0.0, 0.5});
  Sequence x(Alphabet{2}, {0, 1, 0, 1});
  CHECK(is_jointly_typical(x, x, diag, 0.1));
  Sequence flipped(Alphabet{2}, {1, 0, 1, 0});
  CHECK_FALSE(is_jointly_typical(x, flipped, diag, 0.1));

  // joint typicality at eps implies marginal typicality at eps
  Sequence y(Alphabet{2}, {0, 0, 1, 1, 0, 1, 0, 1, 1, 0});
  Sequence z(Alphabet{2}, {0, 1, 1, 1, 0, 1, 0, 0, 1, 0});
  if (is_jointly_typical(y, z, kBinaryJoint, 0.35)) {
    CHECK(is_typical(y, kBinaryJoint.marginal_a(), 0.35));
    CHECK(is_typical(z, kBinaryJoint.marginal_b(), 0.35));
  }
}

TEST_CASE("typicality params validation") {
  TypicalityParams ok{0.3, 0.2};
  CHECK_NOTHROW(ok.validate());
  CHECK_THROWS_AS((TypicalityParams{0.2, 0.3}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((TypicalityParams{1.2, 0.2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((TypicalityParams{0.3, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("conditional typical set enumeration matches brute force") {
  Sequence y6(Alphabet{2}, {0, 0, 1, 0, 1, 1});
  for (double eps : {0.2, 0.35, 0.6}) {
    const uint64_t fast = conditional_typical_set_size(y6, kBinaryJoint, eps);
    CHECK(fast == brute_force_conditional_count(y6, kBinaryJoint, eps));
    const ConditionalTypicalScan scan =
        scan_conditional_typical(y6, kBinaryJoint, eps);
    CHECK(scan.member_count == fast);
  }

  Sequence y6t(Alphabet{2}, {0, 1, 0, 1, 0, 1});
  const uint64_t fast_t = conditional_typical_set_size(y6t, kTernaryJoint, 0.3);
  CHECK(fast_t == brute_force_conditional_count(y6t, kTernaryJoint, 0.3));
}

TEST_CASE("conditional typical set frozen counts") {
  // balanced conditioning word, eps = 0.35
  std::vector<int32_t> s12(12, 1);
  for (int i = 0; i < 6; ++i) s12[static_cast<size_t>(i)] = 0;
  Sequence y12(Alphabet{2}, s12);
  CHECK(conditional_typical_set_size(y12, kBinaryJoint, 0.35) == 36);

  std::vector<int32_t> s8(8, 1);
  for (int i = 0; i < 4; ++i) s8[static_cast<size_t>(i)] = 0;
  Sequence y8(Alphabet{2}, s8);
  CHECK(conditional_typical_set_size(y8, kBinaryJoint, 0.35) == 16);
  CHECK(conditional_typical_set_size(y8, kTernaryJoint, 0.3) == 144);

  const ConditionalTypicalScan scan = scan_conditional_typical(y12, kBinaryJoint, 0.35);
  CHECK(scan.member_count == 36);
  CHECK(scan.marginal_violations == 0);
}

TEST_CASE("enumeration guard") {
  std::vector<int32_t> s(25, 0);
  Sequence y(Alphabet{2}, s);
  CHECK_THROWS_AS(conditional_typical_set_size(y, kBinaryJoint, 0.3), GuardError);
  CHECK_THROWS_AS(scan_conditional_typical(y, kBinaryJoint, 0.3), GuardError);
}
