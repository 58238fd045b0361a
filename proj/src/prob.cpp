#include "lsc/prob.hpp"

#include <cmath>
#include <stdexcept>

#include "lsc/errors.hpp"

namespace lsc {

namespace {

void check_mass_vector(const std::vector<double>& mass, size_t expected,
                       const char* what) {
  if (mass.size() != expected)
    throw std::invalid_argument(std::string(what) + ": wrong length");
  double sum = 0.0;
  for (double m : mass) {
    if (!(m >= 0.0) || !std::isfinite(m))
      throw std::invalid_argument(std::string(what) + ": negative or non-finite entry");
    sum += m;
  }
  if (std::fabs(sum - 1.0) > kMassTolerance)
    throw std::invalid_argument(std::string(what) + ": mass does not sum to 1");
}

}  // namespace

Pmf::Pmf(Alphabet alphabet, std::vector<double> mass)
    : alphabet_(alphabet), mass_(std::move(mass)) {
  if (alphabet_.size <= 0) throw std::invalid_argument("Pmf: empty alphabet");
  check_mass_vector(mass_, static_cast<size_t>(alphabet_.size), "Pmf");
}

Pmf Pmf::uniform(Alphabet alphabet) {
  if (alphabet.size <= 0) throw std::invalid_argument("Pmf::uniform: empty alphabet");
  return Pmf(alphabet, std::vector<double>(static_cast<size_t>(alphabet.size),
                                           1.0 / alphabet.size));
}

Pmf Pmf::point_mass(Alphabet alphabet, int symbol) {
  if (symbol < 0 || symbol >= alphabet.size)
    throw std::invalid_argument("Pmf::point_mass: symbol out of range");
  std::vector<double> m(static_cast<size_t>(alphabet.size), 0.0);
  m[static_cast<size_t>(symbol)] = 1.0;
  return Pmf(alphabet, std::move(m));
}

double Pmf::min_mass() const {
  double lo = mass_[0];
  for (double m : mass_) lo = std::min(lo, m);
  return lo;
}

ConditionalPmf::ConditionalPmf(Alphabet from, Alphabet to, std::vector<double> rows)
    : from_(from), to_(to), rows_(std::move(rows)) {
  if (from_.size <= 0 || to_.size <= 0)
    throw std::invalid_argument("ConditionalPmf: empty alphabet");
  if (rows_.size() != static_cast<size_t>(from_.size) * static_cast<size_t>(to_.size))
    throw std::invalid_argument("ConditionalPmf: wrong matrix size");
  for (int s = 0; s < from_.size; ++s) {
    double sum = 0.0;
    for (int t = 0; t < to_.size; ++t) {
      double m = (*this)(s, t);
      if (!(m >= 0.0) || !std::isfinite(m))
        throw std::invalid_argument("ConditionalPmf: negative or non-finite entry");
      sum += m;
    }
    if (std::fabs(sum - 1.0) > kMassTolerance)
      throw std::invalid_argument("ConditionalPmf: row does not sum to 1");
  }
}

Pmf ConditionalPmf::row(int from_symbol) const {
  if (from_symbol < 0 || from_symbol >= from_.size)
    throw std::invalid_argument("ConditionalPmf::row: symbol out of range");
  std::vector<double> m(rows_.begin() + static_cast<ptrdiff_t>(from_symbol) * to_.size,
                        rows_.begin() + (static_cast<ptrdiff_t>(from_symbol) + 1) * to_.size);
  return Pmf(to_, std::move(m));
}

JointPmf::JointPmf(Alphabet a, Alphabet b, std::vector<double> mass)
    : a_(a), b_(b), mass_(std::move(mass)) {
  if (a_.size <= 0 || b_.size <= 0)
    throw std::invalid_argument("JointPmf: empty alphabet");
  check_mass_vector(mass_, static_cast<size_t>(a_.size) * static_cast<size_t>(b_.size),
                    "JointPmf");
}

JointPmf JointPmf::from_product(const Pmf& marginal_a, const ConditionalPmf& b_given_a) {
  if (!(marginal_a.alphabet() == b_given_a.from()))
    throw std::invalid_argument("JointPmf::from_product: alphabet mismatch");
  const int na = marginal_a.size(), nb = b_given_a.to().size;
  std::vector<double> m(static_cast<size_t>(na) * nb);
  for (int s = 0; s < na; ++s)
    for (int t = 0; t < nb; ++t)
      m[static_cast<size_t>(s) * nb + t] = marginal_a(s) * b_given_a(s, t);
  return JointPmf(marginal_a.alphabet(), b_given_a.to(), std::move(m));
}

Pmf JointPmf::marginal_a() const {
  std::vector<double> m(static_cast<size_t>(a_.size), 0.0);
  for (int s = 0; s < a_.size; ++s)
    for (int t = 0; t < b_.size; ++t) m[static_cast<size_t>(s)] += (*this)(s, t);
  return Pmf(a_, std::move(m));
}

Pmf JointPmf::marginal_b() const {
  std::vector<double> m(static_cast<size_t>(b_.size), 0.0);
  for (int s = 0; s < a_.size; ++s)
    for (int t = 0; t < b_.size; ++t) m[static_cast<size_t>(t)] += (*this)(s, t);
  return Pmf(b_, std::move(m));
}

Sequence::Sequence(Alphabet alphabet, std::vector<int32_t> symbols)
    : alphabet_(alphabet), symbols_(std::move(symbols)) {
  if (alphabet_.size <= 0) throw std::invalid_argument("Sequence: empty alphabet");
  for (int32_t s : symbols_)
    if (s < 0 || s >= alphabet_.size)
      throw std::invalid_argument("Sequence: symbol out of range");
}

std::vector<int64_t> symbol_counts(const Sequence& x) {
  std::vector<int64_t> c(static_cast<size_t>(x.alphabet().size), 0);
  for (int32_t s : x.symbols()) ++c[static_cast<size_t>(s)];
  return c;
}

std::vector<int64_t> joint_symbol_counts(const Sequence& x, const Sequence& y) {
  if (x.n() != y.n())
    throw std::invalid_argument("joint_symbol_counts: length mismatch");
  const int nb = y.alphabet().size;
  std::vector<int64_t> c(static_cast<size_t>(x.alphabet().size) * nb, 0);
  for (int i = 0; i < x.n(); ++i)
    ++c[static_cast<size_t>(x[i]) * nb + static_cast<size_t>(y[i])];
  return c;
}

nlohmann::json to_json(const Pmf& p) { return nlohmann::json(p.mass()); }

nlohmann::json to_json(const JointPmf& j) {
  nlohmann::json rows = nlohmann::json::array();
  for (int s = 0; s < j.a().size; ++s) {
    nlohmann::json row = nlohmann::json::array();
    for (int t = 0; t < j.b().size; ++t) row.push_back(j(s, t));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const ConditionalPmf& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (int s = 0; s < c.from().size; ++s) {
    nlohmann::json row = nlohmann::json::array();
    for (int t = 0; t < c.to().size; ++t) row.push_back(c(s, t));
    rows.push_back(std::move(row));
  }
  return rows;
}

Pmf pmf_from_json(const nlohmann::json& v) {
  if (!v.is_array() || v.empty())
    throw ConfigError("pmf: expected a non-empty JSON array");
  std::vector<double> m;
  for (const auto& e : v) m.push_back(e.get<double>());
  const Alphabet a{static_cast<int>(m.size())};
  return Pmf(a, std::move(m));
}

static std::vector<double> matrix_from_json(const nlohmann::json& v, int& na, int& nb) {
  if (!v.is_array() || v.empty() || !v[0].is_array() || v[0].empty())
    throw ConfigError("matrix: expected a JSON array of rows");
  na = static_cast<int>(v.size());
  nb = static_cast<int>(v[0].size());
  std::vector<double> m;
  for (const auto& row : v) {
    if (static_cast<int>(row.size()) != nb) throw ConfigError("matrix: ragged rows");
    for (const auto& e : row) m.push_back(e.get<double>());
  }
  return m;
}

JointPmf joint_from_json(const nlohmann::json& v) {
  int na = 0, nb = 0;
  auto m = matrix_from_json(v, na, nb);
  return JointPmf(Alphabet{na}, Alphabet{nb}, std::move(m));
}

ConditionalPmf conditional_from_json(const nlohmann::json& v) {
  int na = 0, nb = 0;
  auto m = matrix_from_json(v, na, nb);
  return ConditionalPmf(Alphabet{na}, Alphabet{nb}, std::move(m));
}

}  // namespace lsc
