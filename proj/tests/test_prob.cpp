#include <doctest.h>

#include <stdexcept>

#include <json.hpp>

#include "lsc/errors.hpp"
#include "lsc/prob.hpp"

using namespace lsc;

TEST_CASE("pmf basics") {
  Pmf p(Alphabet{2}, {0.25, 0.75});
  CHECK(p.size() == 2);
  CHECK(p(0) == 0.25);
  CHECK(p(1) == 0.75);
  CHECK(p.min_mass() == 0.25);

  Pmf u = Pmf::uniform(Alphabet{4});
  for (int s = 0; s < 4; ++s) CHECK(u(s) == doctest::Approx(0.25));

  Pmf pt = Pmf::point_mass(Alphabet{3}, 1);
  CHECK(pt(0) == 0.0);
  CHECK(pt(1) == 1.0);
  CHECK(pt(2) == 0.0);
}

TEST_CASE("pmf validation") {
  CHECK_THROWS_AS(Pmf(Alphabet{2}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Pmf(Alphabet{2}, {-0.1, 1.1}), std::invalid_argument);
  CHECK_THROWS_AS(Pmf(Alphabet{2}, {0.6, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(Pmf(Alphabet{0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Pmf::point_mass(Alphabet{2}, 2), std::invalid_argument);
  // inside the mass tolerance
  CHECK_NOTHROW(Pmf(Alphabet{2}, {0.5 + 5e-13, 0.5}));
}

TEST_CASE("conditional pmf rows") {
  ConditionalPmf c(Alphabet{2}, Alphabet{3}, {0.2, 0.3, 0.5, 1.0, 0.0, 0.0});
  CHECK(c(0, 2) == 0.5);
  CHECK(c(1, 0) == 1.0);
  Pmf row = c.row(0);
  CHECK(row(1) == 0.3);
  CHECK_THROWS_AS(c.row(2), std::invalid_argument);
  CHECK_THROWS_AS(ConditionalPmf(Alphabet{2}, Alphabet{2}, {0.5, 0.4, 1.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ConditionalPmf(Alphabet{2}, Alphabet{2}, {0.5, 0.5, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("joint pmf marginals and product") {
  JointPmf j(Alphabet{2}, Alphabet{2}, {0.4, 0.1, 0.1, 0.4});
  Pmf ma = j.marginal_a();
  Pmf mb = j.marginal_b();
  CHECK(ma(0) == doctest::Approx(0.5));
  CHECK(mb(1) == doctest::Approx(0.5));

  Pmf p(Alphabet{2}, {0.25, 0.75});
  ConditionalPmf c(Alphabet{2}, Alphabet{2}, {0.8, 0.2, 0.4, 0.6});
  JointPmf prod = JointPmf::from_product(p, c);
  CHECK(prod(0, 0) == doctest::Approx(0.25 * 0.8));
  CHECK(prod(1, 1) == doctest::Approx(0.75 * 0.6));
  Pmf back = prod.marginal_a();
  CHECK(back(0) == doctest::Approx(0.25));
  CHECK(back(1) == doctest::Approx(0.75));

  CHECK_THROWS_AS(JointPmf(Alphabet{2}, Alphabet{2}, {0.5, 0.5, 0.5, 0.5}),
                  std::invalid_argument);
  ConditionalPmf wide(Alphabet{3}, Alphabet{2}, {1, 0, 0, 1, 0.5, 0.5});
  CHECK_THROWS_AS(JointPmf::from_product(p, wide), std::invalid_argument);
}

TEST_CASE("sequences and counts") {
  Sequence x(Alphabet{3}, {0, 2, 2, 1, 2});
  CHECK(x.n() == 5);
  CHECK(x[1] == 2);
  auto c = symbol_counts(x);
  CHECK(c == std::vector<int64_t>{1, 1, 3});
  CHECK_THROWS_AS(Sequence(Alphabet{2}, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Sequence(Alphabet{2}, {-1}), std::invalid_argument);

  Sequence y(Alphabet{2}, {1, 0, 1, 1, 0});
  auto jc = joint_symbol_counts(x, y);
  // row-major 3x2: pairs (0,1) (2,0) (2,1) (1,1) (2,0)
  CHECK(jc == std::vector<int64_t>{0, 1, 0, 1, 2, 1});
  Sequence z(Alphabet{2}, {0, 1});
  CHECK_THROWS_AS(joint_symbol_counts(x, z), std::invalid_argument);
}

TEST_CASE("json round trips") {
  Pmf p(Alphabet{3}, {0.2, 0.3, 0.5});
  Pmf p2 = pmf_from_json(to_json(p));
  CHECK(p2 == p);

  JointPmf j(Alphabet{2}, Alphabet{3}, {0.25, 0.15, 0.1, 0.1, 0.15, 0.25});
  JointPmf j2 = joint_from_json(to_json(j));
  CHECK(j2.a().size == 2);
  CHECK(j2.b().size == 3);
  CHECK(j2.mass() == j.mass());

  ConditionalPmf c(Alphabet{2}, Alphabet{2}, {0.8, 0.2, 0.4, 0.6});
  ConditionalPmf c2 = conditional_from_json(to_json(c));
  CHECK(c2.rows() == c.rows());

  CHECK_THROWS_AS(pmf_from_json(nlohmann::json::array()), ConfigError);
  CHECK_THROWS_AS(pmf_from_json(nlohmann::json::object()), ConfigError);
  CHECK_THROWS_AS(joint_from_json(nlohmann::json::parse("[[0.5],[0.25,0.25]]")),
                  ConfigError);
}
