#include <doctest.h>

#include <cmath>

#include "orthoprob/combinatorics.hpp"

using namespace orthoprob;

namespace {

DyadicProbability dy(long num, std::uint64_t k) {
  return DyadicProbability(BigCount(num), k);
}

}  // namespace

TEST_CASE("binomial basics") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(10, 10) == 1);
  CHECK(binomial(10, 11) == 0);
  CHECK(binomial(10, -1) == 0);
  CHECK(binomial(100, 50) == BigCount("100891344545564193334812497256"));
  CHECK_THROWS_AS(binomial(-1, 0), std::invalid_argument);
}

TEST_CASE("p_star small values and growth") {
  CHECK(p_star(2) == 1);
  CHECK(p_star(3) == 1);
  CHECK(p_star(4) == 1);
  CHECK(p_star(5) == 2);
  CHECK(p_star(9) == 3);
  CHECK(p_star(100) == 45);
  CHECK_THROWS_AS(p_star(1), std::invalid_argument);
  // Defining property: minimal m with p - 2m <= sqrt(p), checked exactly.
  for (std::int64_t p = 2; p <= 3000; ++p) {
    const std::int64_t m = p_star(p);
    const std::int64_t d = p - 2 * m;
    CHECK((d <= 0 || d * d <= p));
    const std::int64_t d1 = p - 2 * (m - 1);
    CHECK((m == 0 || (d1 > 0 && d1 * d1 > p)));
  }
  // Nondecreasing with unit steps.
  for (std::int64_t p = 2; p < 3000; ++p) {
    const std::int64_t step = p_star(p + 1) - p_star(p);
    CHECK(step >= 0);
    CHECK(step <= 1);
  }
}

TEST_CASE("exact probability frozen values") {
  CHECK(exact_probability(2) == dy(1, 1));
  CHECK(exact_probability(3) == dy(3, 2));
  CHECK(exact_probability(4) == dy(7, 3));
  CHECK(exact_probability(5) == dy(5, 3));
  CHECK(exact_probability(6) == dy(25, 5));
  CHECK(exact_probability(7) == dy(35, 6));
  CHECK(exact_probability(8) == dy(91, 7));
  CHECK(exact_probability(9) == dy(105, 7));
  CHECK(exact_probability(100).numerator ==
        BigCount("923796541447310445480620479776"));
  CHECK(exact_probability(100).log2_den == 100);
  CHECK(exact_probability(100).to_double() ==
        doctest::Approx(0.7287469759261652).epsilon(1e-14));
  CHECK(exact_probability(993).to_double() ==
        doctest::Approx(0.6901285731591063).epsilon(1e-12));
  CHECK_THROWS_AS(exact_probability(1), std::invalid_argument);
}

TEST_CASE("sequence rows") {
  const SequenceRow r2 = sequence_row(2);
  CHECK(r2.p_star == 1);
  CHECK(r2.total_terms == 1);
  CHECK(r2.summed_terms == 1);
  CHECK(r2.left_terms == 0);
  CHECK(r2.d_scaled == 0);

  const SequenceRow r4 = sequence_row(4);
  CHECK(r4.p_star == 1);
  CHECK(r4.total_terms == 2);
  CHECK(r4.summed_terms == 2);
  CHECK(r4.left_terms == 0);
  CHECK(r4.d_scaled == 6);

  const SequenceRow r5 = sequence_row(5);
  CHECK(r5.p_star == 2);
  CHECK(r5.total_terms == 2);
  CHECK(r5.summed_terms == 1);
  CHECK(r5.left_terms == 1);
  CHECK(r5.d_scaled == 4);

  const long d_scaled_2_to_9[] = {0, 2, 6, 4, 18, 6, 54, 164};
  for (std::int64_t p = 2; p <= 9; ++p)
    CHECK(sequence_row(p).d_scaled == d_scaled_2_to_9[p - 2]);

  const SequenceRow r100 = sequence_row(100);
  CHECK(r100.total_terms == 50);
  CHECK(r100.summed_terms == 6);
  CHECK(r100.left_terms == 44);
  CHECK(r100.d_scaled == BigInt("289971241333195744732268877088"));
}

TEST_CASE("sweep agrees with per-p computation") {
  ExactSweep sweep(2);
  for (std::int64_t p = 2; p <= 300; ++p) {
    const ExactSweep::Point pt = sweep.next();
    CHECK(pt.row.p == p);
    CHECK(pt.prob == exact_probability(p));
    CHECK(pt.row.d_scaled == sequence_row(p).d_scaled);
    CHECK(pt.binom_at_pstar == binomial(p, p_star(p)));
    CHECK(pt.binom_below_pstar == binomial(p, p_star(p) - 1));
  }
  ExactSweep from_50(50);
  CHECK(from_50.next().prob == exact_probability(50));
  CHECK_THROWS_AS(ExactSweep(1), std::invalid_argument);
}

TEST_CASE("structural properties hold on 2..2000") {
  const PropertyReport rep = check_lemma_properties(2, 2000);
  for (const auto& v : rep.violations) CHECK(v.empty());
  CHECK(rep.minima_violations.empty());
  CHECK(rep.all_hold());
  CHECK(!rep.base_case_note.empty());
  CHECK(rep.base_case_note.find("d_scaled(2) = 0") != std::string::npos);
  // Only the class at the top of the range is truncated when starting at 2.
  CHECK(rep.truncated_classes.size() == 1);
}

TEST_CASE("property report respects range truncation") {
  const PropertyReport rep = check_lemma_properties(10, 200);
  CHECK(rep.base_case_note.empty());
  // Both the entry and exit classes are marked truncated for p_min > 2.
  CHECK(rep.truncated_classes.size() == 2);
  CHECK(rep.all_hold());
}

TEST_CASE("two-step recurrence tracks summed-terms stability") {
  const RecurrenceCheck c3 = check_recurrence(3);
  CHECK(c3.summed_terms_stable);
  CHECK(c3.identity_holds);
  CHECK(c3.lhs == 4);

  const RecurrenceCheck c2 = check_recurrence(2);
  CHECK(!c2.summed_terms_stable);
  CHECK(!c2.identity_holds);
  CHECK(c2.lhs == 6);
  CHECK(c2.rhs == -2);

  std::int64_t holds = 0;
  for (std::int64_t p = 2; p <= 1000; ++p) {
    const RecurrenceCheck chk = check_recurrence(p);
    CHECK(chk.identity_holds == chk.summed_terms_stable);
    holds += chk.identity_holds;
  }
  CHECK(holds == 969);
}

TEST_CASE("limit gap and window maxima") {
  CHECK(limit_gap(2) == doctest::Approx(-0.1826894921370860).epsilon(1e-12));
  CHECK(limit_gap(4) == doctest::Approx(0.1923105078629140).epsilon(1e-12));
  CHECK(max_abs_gap(250, 500) == doctest::Approx(0.029321).epsilon(1e-3));
  CHECK(max_abs_gap(250, 500) > max_abs_gap(500, 1000));
}

TEST_CASE("threshold scan") {
  const ThresholdReport rep = threshold_scan(900);
  CHECK(rep.p_max == 900);
  CHECK(rep.last_at_or_below == 839);
  CHECK(rep.first_stable_p == 840);
  CHECK(rep.count_at_or_below == 141);
  CHECK(rep.reference_p == 783);
  CHECK(!rep.stable_from_reference);
  // The bracketing facts around the reference value.
  CHECK(dyadic_compare_fraction(exact_probability(782), 2, 3) <= 0);
  CHECK(dyadic_compare_fraction(exact_probability(783), 2, 3) > 0);
  CHECK(dyadic_compare_fraction(exact_probability(839), 2, 3) <= 0);
  CHECK(dyadic_compare_fraction(exact_probability(840), 2, 3) > 0);
}

TEST_CASE("aggregate odds") {
  const AggregateReport a3 = uk_aggregate(3);
  CHECK(a3.prob == dy(3, 2));
  CHECK(a3.all_beat == dy(27, 6));
  CHECK(a3.none_beat == dy(1, 6));
  CHECK(a3.ratio_num == 27);
  CHECK(a3.ratio_den == 1);
  CHECK(!a3.ratio_infinite);
  CHECK(a3.ratio_vs_pow2 == 1);  // 27 > 8

  const AggregateReport a2 = uk_aggregate(2);
  CHECK(a2.ratio_num == 1);
  CHECK(a2.ratio_den == 1);
  CHECK(a2.ratio_vs_pow2 == -1);  // 1 < 4

  const AggregateReport a4 = uk_aggregate(4);
  CHECK(a4.ratio_num == 2401);
  CHECK(a4.ratio_den == 1);
  CHECK(a4.ratio_vs_pow2 == 1);
}

TEST_CASE("probability series") {
  const auto series = probability_series(2, 993);
  CHECK(series.size() == 992);
  CHECK(series.front().first == 2);
  CHECK(series.front().second == 0.5);
  CHECK(series.back().first == 993);
  CHECK(series.back().second == doctest::Approx(0.6901285731591063).epsilon(1e-12));
  double mean = 0.0;
  for (std::size_t i = series.size() - 50; i < series.size(); ++i)
    mean += series[i].second;
  mean /= 50.0;
  CHECK(std::fabs(mean - kNormalCentralMass) < 0.05);
}

TEST_CASE("normal cdf") {
  CHECK(verify_normal_constant());
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.0) + normal_cdf(-1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(normal_cdf(1.0) - normal_cdf(-1.0) ==
        doctest::Approx(0.6826894921370859).epsilon(1e-13));
  CHECK(normal_cdf(2.0) == doctest::Approx(0.9772498680518208).epsilon(1e-12));
  CHECK(normal_cdf(10.0) == 1.0);
  CHECK(normal_cdf(-10.0) == 0.0);
}
