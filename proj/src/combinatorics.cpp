#include "orthoprob/combinatorics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orthoprob {

namespace {

// Maclaurin series for erf; alternating, accurate near the origin which is
// all normal_cdf needs (|x| <= 8 after scaling).
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;  // (-1)^n x^(2n+1) / n!
  double sum = 0.0;
  for (int n = 0; n < 400; ++n) {
    const double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs(add) <= 1e-18 * std::fabs(sum)) break;
    term *= -x2 / (n + 1);
  }
  return sum * (2.0 / std::sqrt(std::numbers::pi));
}

void divexact_ui(BigCount& b, unsigned long d) {
  mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), d);
}

}  // namespace

double normal_cdf(double x) {
  if (x >= 8.0) return 1.0;
  if (x <= -8.0) return 0.0;
  return 0.5 * (1.0 + erf_series(x * std::numbers::sqrt2 / 2.0));
}

bool verify_normal_constant() {
  const double recomputed = normal_cdf(1.0) - normal_cdf(-1.0);
  return std::fabs(recomputed - kNormalCentralMass) < 1e-12;
}

std::int64_t p_star(std::int64_t p) {
  if (p < 2) throw std::invalid_argument("p_star: p must be >= 2");
  // Integer sqrt: float seed, then fix up by exact comparison.
  std::int64_t s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(p)));
  while (s > 0 && s * s > p) --s;
  while ((s + 1) * (s + 1) <= p) ++s;
  const auto ok = [p](std::int64_t m) {
    const std::int64_t d = p - 2 * m;  // want d <= sqrt(p)
    return d <= 0 || d * d <= p;
  };
  std::int64_t m = (p - s) / 2;
  while (m > 0 && ok(m - 1)) --m;
  while (!ok(m)) ++m;
  return m;
}

DyadicProbability exact_probability(std::int64_t p) {
  if (p < 2) throw std::invalid_argument("exact_probability: p must be >= 2");
  const std::int64_t m = p_star(p);
  const std::int64_t half = p / 2;
  BigCount b = binomial(p, m);
  BigCount doubled(0), central(0);
  for (std::int64_t j = m; j <= half; ++j) {
    if (p % 2 == 0 && j == half)
      central = b;
    else
      doubled += b;
    if (j < half) {
      b *= static_cast<unsigned long>(p - j);
      divexact_ui(b, static_cast<unsigned long>(j + 1));
    }
  }
  doubled *= 2;
  return DyadicProbability(doubled + central, static_cast<std::uint64_t>(p));
}

SequenceRow sequence_row(std::int64_t p) {
  const DyadicProbability prob = exact_probability(p);
  SequenceRow row;
  row.p = p;
  row.p_star = p_star(p);
  row.total_terms = p / 2;
  row.summed_terms = row.total_terms - row.p_star + 1;
  row.left_terms = row.total_terms - row.summed_terms;
  row.d_scaled = prob.numerator - pow2(static_cast<std::uint64_t>(p - 1));
  return row;
}

ExactSweep::ExactSweep(std::int64_t p_begin) : p_(p_begin) {
  if (p_begin < 2) throw std::invalid_argument("ExactSweep: p_begin must be >= 2");
  m_ = p_star(p_);
  anchor_ = binomial(p_, m_);
}

ExactSweep::Point ExactSweep::next() {
  const std::int64_t p = p_;
  const std::int64_t m = m_;
  const std::int64_t half = p / 2;

  Point pt;
  BigCount b = anchor_;
  BigCount doubled(0), central(0);
  for (std::int64_t j = m; j <= half; ++j) {
    if (p % 2 == 0 && j == half)
      central = b;
    else
      doubled += b;
    if (j < half) {
      b *= static_cast<unsigned long>(p - j);
      divexact_ui(b, static_cast<unsigned long>(j + 1));
    }
  }
  doubled *= 2;
  pt.prob = DyadicProbability(doubled + central, static_cast<std::uint64_t>(p));
  pt.row.p = p;
  pt.row.p_star = m;
  pt.row.total_terms = half;
  pt.row.summed_terms = half - m + 1;
  pt.row.left_terms = pt.row.total_terms - pt.row.summed_terms;
  pt.row.d_scaled = pt.prob.numerator - pow2(static_cast<std::uint64_t>(p - 1));
  pt.binom_at_pstar = anchor_;
  pt.binom_below_pstar = anchor_ * static_cast<unsigned long>(m);
  divexact_ui(pt.binom_below_pstar, static_cast<unsigned long>(p - m + 1));

  // Carry the anchor to (p+1, p_star(p+1)) by exact ratio steps.
  anchor_ *= static_cast<unsigned long>(p + 1);
  divexact_ui(anchor_, static_cast<unsigned long>(p + 1 - m));
  ++p_;
  const std::int64_t m_next = p_star(p_);
  while (m_ < m_next) {
    anchor_ *= static_cast<unsigned long>(p_ - m_);
    divexact_ui(anchor_, static_cast<unsigned long>(m_ + 1));
    ++m_;
  }
  return pt;
}

bool PropertyReport::all_hold() const {
  for (const auto& v : violations)
    if (!v.empty()) return false;
  return minima_violations.empty();
}

PropertyReport check_lemma_properties(std::int64_t p_min, std::int64_t p_max) {
  if (p_min < 2 || p_max < p_min)
    throw std::invalid_argument("check_lemma_properties: need 2 <= p_min <= p_max");

  PropertyReport rep;
  rep.p_min = p_min;
  rep.p_max = p_max;

  const std::size_t count = static_cast<std::size_t>(p_max - p_min + 1);
  std::vector<SequenceRow> rows;
  rows.reserve(count);
  ExactSweep sweep(p_min);
  for (std::size_t i = 0; i < count; ++i) rows.push_back(sweep.next().row);

  const auto at = [&](std::int64_t p) -> const SequenceRow& {
    return rows[static_cast<std::size_t>(p - p_min)];
  };

  for (std::int64_t p = p_min; p <= p_max; ++p) {
    const SequenceRow& r = at(p);
    if (p % 2 == 0 && r.total_terms != p / 2) rep.violations[0].push_back(p);
    if (p + 1 <= p_max) {
      const SequenceRow& r1 = at(p + 1);
      if (p % 2 == 0 && r1.total_terms != r.total_terms)
        rep.violations[1].push_back(p);
      const std::int64_t dl = r1.left_terms - r.left_terms;
      if (dl < 0 || dl > 1) rep.violations[3].push_back(p);
      const std::int64_t dr = r1.summed_terms - r.summed_terms;
      if (dr < -1 || dr > 1) rep.violations[4].push_back(p);
    }
    if (p + 2 <= p_max) {
      const SequenceRow& r2 = at(p + 2);
      if (r2.total_terms != r.total_terms + 1) rep.violations[2].push_back(p);
      const std::int64_t dr2 = r2.summed_terms - r.summed_terms;
      if (dr2 < 0 || dr2 > 1) rep.violations[5].push_back(p);
      const std::int64_t dl2 = r2.left_terms - r.left_terms;
      if (dl2 < 0 || dl2 > 1) rep.violations[6].push_back(p);
    }
  }

  // Classes: maximal runs of constant left_terms.
  struct ClassRun {
    std::int64_t label, first, last;
  };
  std::vector<ClassRun> runs;
  for (std::int64_t p = p_min; p <= p_max; ++p) {
    const std::int64_t l = at(p).left_terms;
    if (runs.empty() || runs.back().label != l)
      runs.push_back({l, p, p});
    else
      runs.back().last = p;
  }
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const ClassRun& run = runs[i];
    const bool complete_below = (run.first > p_min) || (p_min == 2);
    const bool complete_above = run.last < p_max;
    if (!complete_below || !complete_above) {
      rep.truncated_classes.push_back(run.label);
      continue;
    }
    const std::int64_t size = run.last - run.first + 1;
    if (size < 2 || size > 3) rep.violations[7].push_back(run.label);
    if (run.label >= 1 && run.first - 2 >= p_min &&
        at(run.first).d_scaled <= at(run.first - 2).d_scaled)
      rep.minima_violations.push_back(run.label);
  }
  // Strict growth of d_scaled inside a run holds on any observed stretch.
  for (const ClassRun& run : runs)
    for (std::int64_t p = run.first; p < run.last; ++p)
      if (at(p + 1).d_scaled <= at(p).d_scaled) rep.violations[8].push_back(p + 1);

  if (p_min == 2)
    rep.base_case_note =
        "d_scaled(2) = 0: the probability at p = 2 is exactly 1/2, so the "
        "chain of class minima starts at 0, not at the nominal base value 1; "
        "the minima still increase strictly from there, which keeps d_scaled "
        ">= 0 everywhere and > 0 for p > 2.";
  return rep;
}

RecurrenceCheck check_recurrence(std::int64_t p) {
  if (p < 2) throw std::invalid_argument("check_recurrence: p must be >= 2");
  const SequenceRow row_p = sequence_row(p);
  const SequenceRow row_p2 = sequence_row(p + 2);
  const std::int64_t m = row_p.p_star;
  RecurrenceCheck chk;
  chk.p = p;
  chk.lhs = row_p2.d_scaled;
  chk.rhs = 4 * row_p.d_scaled - 2 * (binomial(p, m) - binomial(p, m - 1));
  chk.identity_holds = (chk.lhs == chk.rhs);
  chk.summed_terms_stable = (row_p2.summed_terms == row_p.summed_terms);
  return chk;
}

double limit_gap(std::int64_t p) {
  return exact_probability(p).to_double() - kNormalCentralMass;
}

double max_abs_gap(std::int64_t lo, std::int64_t hi) {
  if (lo < 2 || hi < lo)
    throw std::invalid_argument("max_abs_gap: need 2 <= lo <= hi");
  ExactSweep sweep(lo);
  double worst = 0.0;
  for (std::int64_t p = lo; p <= hi; ++p)
    worst = std::max(worst,
                     std::fabs(sweep.next().prob.to_double() - kNormalCentralMass));
  return worst;
}

ThresholdReport threshold_scan(std::int64_t p_max) {
  if (p_max < 2) throw std::invalid_argument("threshold_scan: p_max must be >= 2");
  ThresholdReport rep;
  rep.p_max = p_max;
  ExactSweep sweep(2);
  for (std::int64_t p = 2; p <= p_max; ++p) {
    const DyadicProbability prob = sweep.next().prob;
    if (dyadic_compare_fraction(prob, 2, 3) <= 0) {
      rep.last_at_or_below = p;
      ++rep.count_at_or_below;
    }
  }
  rep.first_stable_p = rep.last_at_or_below + 1;
  rep.stable_from_reference =
      p_max >= rep.reference_p && rep.last_at_or_below < rep.reference_p;
  return rep;
}

AggregateReport uk_aggregate(std::int64_t p) {
  if (p < 2) throw std::invalid_argument("uk_aggregate: p must be >= 2");
  AggregateReport rep;
  rep.p = p;
  rep.prob = exact_probability(p);
  rep.all_beat = dyadic_pow(rep.prob, static_cast<std::uint64_t>(p));
  rep.none_beat = dyadic_pow(dyadic_one_minus(rep.prob), static_cast<std::uint64_t>(p));

  const BigCount& n = rep.prob.numerator;
  const BigCount c = pow2(static_cast<std::uint64_t>(p)) - n;
  if (c == 0) {
    rep.ratio_infinite = true;
    rep.ratio_num = 1;
    rep.ratio_den = 0;
    rep.ratio_vs_pow2 = 1;
    return rep;
  }
  BigCount g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), c.get_mpz_t());
  BigCount num = n / g, den = c / g;
  mpz_pow_ui(rep.ratio_num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(p));
  mpz_pow_ui(rep.ratio_den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(p));
  // ratio vs 2^p reduces to n vs 2c: x -> x^p is monotone on nonnegatives.
  const int s = cmp(n, BigCount(2 * c));
  rep.ratio_vs_pow2 = s < 0 ? -1 : (s == 0 ? 0 : 1);
  return rep;
}

std::vector<std::pair<std::int64_t, double>> probability_series(std::int64_t p_min,
                                                                std::int64_t p_max) {
  if (p_min < 2 || p_max < p_min)
    throw std::invalid_argument("probability_series: need 2 <= p_min <= p_max");
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(static_cast<std::size_t>(p_max - p_min + 1));
  ExactSweep sweep(p_min);
  for (std::int64_t p = p_min; p <= p_max; ++p)
    out.emplace_back(p, sweep.next().prob.to_double());
  return out;
}

}  // namespace orthoprob
