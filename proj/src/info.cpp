#include "lsc/info.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lsc/errors.hpp"

namespace lsc {

namespace {

constexpr double kTypicalitySlack = 1e-12;

double log2_safe(double x) { return std::log2(x); }

bool counts_typical(const int64_t* counts, const double* p, int size, int n,
                    double eps) {
  const double dn = static_cast<double>(n);
  for (int a = 0; a < size; ++a) {
    const double pa = p[a];
    const double freq = static_cast<double>(counts[a]) / dn;
    if (pa == 0.0) {
      if (counts[a] != 0) return false;
    } else if (std::fabs(freq - pa) > eps * pa + kTypicalitySlack) {
      return false;
    }
  }
  return true;
}

// Visits every z^n over alphabet size nb, maintaining joint pair counts with
// y; calls leaf(joint_counts, z_counts) at depth n.
template <typename Leaf>
void enumerate_paired(const Sequence& y, int nb, Leaf&& leaf) {
  const int n = y.n();
  std::vector<int64_t> joint(static_cast<size_t>(y.alphabet().size) * nb, 0);
  std::vector<int64_t> zc(static_cast<size_t>(nb), 0);
  std::vector<int32_t> z(static_cast<size_t>(n), 0);
  int depth = 0;
  // iterative depth-first odometer
  while (true) {
    if (depth == n) {
      leaf(joint.data(), zc.data());
      --depth;
      if (depth < 0) break;
      // fall through to advance position `depth`
    } else {
      // descend with symbol z[depth] (already set to the next candidate)
      const int32_t s = z[static_cast<size_t>(depth)];
      ++joint[static_cast<size_t>(y[depth]) * nb + s];
      ++zc[static_cast<size_t>(s)];
      ++depth;
      if (depth <= n - 1) z[static_cast<size_t>(depth)] = 0;
      continue;
    }
    // backtrack/advance loop
    while (true) {
      const int32_t s = z[static_cast<size_t>(depth)];
      --joint[static_cast<size_t>(y[depth]) * nb + s];
      --zc[static_cast<size_t>(s)];
      if (s + 1 < nb) {
        z[static_cast<size_t>(depth)] = s + 1;
        break;
      }
      --depth;
      if (depth < 0) return;
    }
  }
}

void guard_enumeration(const Sequence& y, const JointPmf& j) {
  if (!(y.alphabet() == j.a()))
    throw std::invalid_argument("conditional enumeration: alphabet mismatch");
  const double total = std::pow(static_cast<double>(j.b().size), y.n());
  if (total > static_cast<double>(1u << 24))
    throw GuardError("conditional enumeration: |B|^n exceeds 2^24");
}

}  // namespace

void TypicalityParams::validate() const {
  if (!(0.0 < eps_prime && eps_prime < eps && eps < 1.0))
    throw std::invalid_argument("TypicalityParams: need 0 < eps_prime < eps < 1");
}

double entropy(const Pmf& p) {
  double h = 0.0;
  for (int s = 0; s < p.size(); ++s)
    if (p(s) > 0.0) h -= p(s) * log2_safe(p(s));
  return h;
}

double conditional_entropy(const JointPmf& j) {
  // -sum_{a,b} P(a,b) log2( P(a,b) / P(a) )
  const Pmf pa = j.marginal_a();
  double h = 0.0;
  for (int a = 0; a < j.a().size; ++a) {
    if (pa(a) == 0.0) continue;
    for (int b = 0; b < j.b().size; ++b) {
      const double m = j(a, b);
      if (m > 0.0) h -= m * log2_safe(m / pa(a));
    }
  }
  return h;
}

double mutual_information(const JointPmf& j) {
  const double mi = entropy(j.marginal_b()) - conditional_entropy(j);
  if (mi < 0.0 && mi >= -1e-12) return 0.0;
  return mi;
}

double kl_divergence(const Pmf& p, const Pmf& q) {
  if (!(p.alphabet() == q.alphabet()))
    throw std::invalid_argument("kl_divergence: alphabet mismatch");
  double d = 0.0;
  for (int s = 0; s < p.size(); ++s) {
    if (p(s) == 0.0) continue;
    if (q(s) == 0.0) return std::numeric_limits<double>::infinity();
    d += p(s) * log2_safe(p(s) / q(s));
  }
  return d;
}

Pmf empirical_pmf(const Sequence& x) {
  if (x.n() == 0) throw std::invalid_argument("empirical_pmf: empty sequence");
  const auto counts = symbol_counts(x);
  std::vector<double> m(counts.size());
  for (size_t s = 0; s < counts.size(); ++s)
    m[s] = static_cast<double>(counts[s]) / static_cast<double>(x.n());
  return Pmf(x.alphabet(), std::move(m));
}

JointPmf joint_empirical_pmf(const Sequence& x, const Sequence& y) {
  if (x.n() == 0) throw std::invalid_argument("joint_empirical_pmf: empty sequence");
  const auto counts = joint_symbol_counts(x, y);
  std::vector<double> m(counts.size());
  for (size_t c = 0; c < counts.size(); ++c)
    m[c] = static_cast<double>(counts[c]) / static_cast<double>(x.n());
  return JointPmf(x.alphabet(), y.alphabet(), std::move(m));
}

bool is_typical(const Sequence& x, const Pmf& p, double eps) {
  if (!(x.alphabet() == p.alphabet()))
    throw std::invalid_argument("is_typical: alphabet mismatch");
  if (x.n() == 0) throw std::invalid_argument("is_typical: empty sequence");
  const auto counts = symbol_counts(x);
  return counts_typical(counts.data(), p.mass().data(), p.size(), x.n(), eps);
}

bool is_jointly_typical(const Sequence& x, const Sequence& y, const JointPmf& j,
                        double eps) {
  if (!(x.alphabet() == j.a()) || !(y.alphabet() == j.b()))
    throw std::invalid_argument("is_jointly_typical: alphabet mismatch");
  if (x.n() == 0) throw std::invalid_argument("is_jointly_typical: empty sequence");
  const auto counts = joint_symbol_counts(x, y);
  return counts_typical(counts.data(), j.mass().data(),
                        j.a().size * j.b().size, x.n(), eps);
}

double min_typicality_eps(const Sequence& x, const Pmf& p) {
  if (!(x.alphabet() == p.alphabet()))
    throw std::invalid_argument("min_typicality_eps: alphabet mismatch");
  const auto counts = symbol_counts(x);
  const double dn = static_cast<double>(x.n());
  double eps = 0.0;
  for (int s = 0; s < p.size(); ++s) {
    const double freq = static_cast<double>(counts[static_cast<size_t>(s)]) / dn;
    if (p(s) == 0.0) {
      if (counts[static_cast<size_t>(s)] != 0)
        return std::numeric_limits<double>::infinity();
    } else {
      eps = std::max(eps, std::fabs(freq - p(s)) / p(s));
    }
  }
  return eps;
}

uint64_t conditional_typical_set_size(const Sequence& y, const JointPmf& j,
                                      double eps) {
  guard_enumeration(y, j);
  const int nb = j.b().size;
  const int cells = j.a().size * nb;
  uint64_t count = 0;
  enumerate_paired(y, nb, [&](const int64_t* joint, const int64_t*) {
    if (counts_typical(joint, j.mass().data(), cells, y.n(), eps)) ++count;
  });
  return count;
}

ConditionalTypicalScan scan_conditional_typical(const Sequence& y, const JointPmf& j,
                                                double eps) {
  guard_enumeration(y, j);
  const int nb = j.b().size;
  const int cells = j.a().size * nb;
  const Pmf pz = j.marginal_b();
  ConditionalTypicalScan scan;
  enumerate_paired(y, nb, [&](const int64_t* joint, const int64_t* zc) {
    if (!counts_typical(joint, j.mass().data(), cells, y.n(), eps)) return;
    ++scan.member_count;
    if (!counts_typical(zc, pz.mass().data(), nb, y.n(), eps))
      ++scan.marginal_violations;
  });
  return scan;
}

}  // namespace lsc
