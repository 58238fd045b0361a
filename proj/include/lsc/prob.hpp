#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace lsc {

// All probability masses are plain doubles; distributions must sum to 1
// within kMassTolerance and have no negative entries.
inline constexpr double kMassTolerance = 1e-12;

struct Alphabet {
  int size = 0;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

class Pmf {
 public:
  Pmf(Alphabet alphabet, std::vector<double> mass);

  static Pmf uniform(Alphabet alphabet);
  static Pmf point_mass(Alphabet alphabet, int symbol);

  Alphabet alphabet() const { return alphabet_; }
  int size() const { return alphabet_.size; }
  double operator()(int symbol) const { return mass_[static_cast<size_t>(symbol)]; }
  const std::vector<double>& mass() const { return mass_; }
  double min_mass() const;

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  Alphabet alphabet_;
  std::vector<double> mass_;
};

// Row-stochastic matrix: rows indexed by the "from" alphabet.
class ConditionalPmf {
 public:
  ConditionalPmf(Alphabet from, Alphabet to, std::vector<double> rows);

  Alphabet from() const { return from_; }
  Alphabet to() const { return to_; }
  double operator()(int from_symbol, int to_symbol) const {
    return rows_[static_cast<size_t>(from_symbol) * static_cast<size_t>(to_.size) +
                 static_cast<size_t>(to_symbol)];
  }
  Pmf row(int from_symbol) const;
  const std::vector<double>& rows() const { return rows_; }

 private:
  Alphabet from_;
  Alphabet to_;
  std::vector<double> rows_;
};

class JointPmf {
 public:
  JointPmf(Alphabet a, Alphabet b, std::vector<double> mass);

  static JointPmf from_product(const Pmf& marginal_a, const ConditionalPmf& b_given_a);

  Alphabet a() const { return a_; }
  Alphabet b() const { return b_; }
  double operator()(int sa, int sb) const {
    return mass_[static_cast<size_t>(sa) * static_cast<size_t>(b_.size) +
                 static_cast<size_t>(sb)];
  }
  const std::vector<double>& mass() const { return mass_; }
  Pmf marginal_a() const;
  Pmf marginal_b() const;

 private:
  Alphabet a_;
  Alphabet b_;
  std::vector<double> mass_;
};

class Sequence {
 public:
  Sequence(Alphabet alphabet, std::vector<int32_t> symbols);

  Alphabet alphabet() const { return alphabet_; }
  int n() const { return static_cast<int>(symbols_.size()); }
  int32_t operator[](int i) const { return symbols_[static_cast<size_t>(i)]; }
  const std::vector<int32_t>& symbols() const { return symbols_; }

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  Alphabet alphabet_;
  std::vector<int32_t> symbols_;
};

std::vector<int64_t> symbol_counts(const Sequence& x);
// Row-major |A| x |B| pair counts; lengths must match.
std::vector<int64_t> joint_symbol_counts(const Sequence& x, const Sequence& y);

// JSON forms: pmfs are arrays of decimals, joints arrays of rows,
// sequences arrays of symbol indices (alphabet size passed separately).
nlohmann::json to_json(const Pmf& p);
nlohmann::json to_json(const JointPmf& j);
nlohmann::json to_json(const ConditionalPmf& c);
Pmf pmf_from_json(const nlohmann::json& v);
JointPmf joint_from_json(const nlohmann::json& v);
ConditionalPmf conditional_from_json(const nlohmann::json& v);

}  // namespace lsc
