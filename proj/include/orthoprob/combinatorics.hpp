#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "orthoprob/bigint.hpp"
#include "orthoprob/dyadic.hpp"

namespace orthoprob {

// Central two-sided mass of the standard normal, Phi(1) - Phi(-1).
inline constexpr double kNormalCentralMass = 0.682689492137086;

// Phi(x), accurate to ~1e-13 for |x| <= 4; saturates beyond |x| = 8.
double normal_cdf(double x);

// Recomputes kNormalCentralMass from the error-function series and checks it
// to 1e-12. Called once at CLI startup and from the tests.
bool verify_normal_constant();

// Smallest m >= 0 with p - 2m <= sqrt(p), decided by integer comparisons only.
std::int64_t p_star(std::int64_t p);

// Probability that the first coordinate axis is closer in angle to a random
// sign pattern's centroid direction than a second random pattern is, in
// dimension p. Exact, over denominator 2^p.
DyadicProbability exact_probability(std::int64_t p);

// Term-count bookkeeping for the exact sum at a given p:
//   total_terms  T = floor(p/2), index range 0..T of distinct disagreement
//                counts j (the j = p/2 tie column counts half for even p);
//   summed_terms R = T - p_star + 1, columns that actually enter the sum;
//   left_terms   L = T - R, columns excluded on the left.
// d_scaled is the centered numerator N - 2^(p-1), i.e. 2^(p-1) * (2P - 1).
struct SequenceRow {
  std::int64_t p = 0;
  std::int64_t p_star = 0;
  std::int64_t total_terms = 0;
  std::int64_t summed_terms = 0;
  std::int64_t left_terms = 0;
  BigInt d_scaled;
};

SequenceRow sequence_row(std::int64_t p);

// Streams (row, probability) for p = p_begin, p_begin + 1, ... in O(sqrt(p))
// amortized big-int operations per step: the anchor binomial C(p, p_star) is
// carried across steps by ratio updates instead of recomputed.
class ExactSweep {
 public:
  explicit ExactSweep(std::int64_t p_begin = 2);

  struct Point {
    SequenceRow row;
    DyadicProbability prob;
    BigCount binom_at_pstar;     // C(p, p_star)
    BigCount binom_below_pstar;  // C(p, p_star - 1)
  };

  Point next();
  std::int64_t current_p() const { return p_; }

 private:
  std::int64_t p_;
  std::int64_t m_;       // p_star(p_)
  BigCount anchor_;      // C(p_, m_)
};

// Structural checks on the term-count sequences over [p_min, p_max].
// A "class" is a maximal run of consecutive p sharing one left_terms value;
// classes touching the ends of the scan range may be truncated and are
// excluded from the cardinality and minima checks (the class at the domain
// floor p = 2 is complete by construction). The nine checks, violations[i]
// holding the failing p (or class labels, for i = 7) of check i+1:
//  (1) total_terms == p/2 at even p
//  (2) total_terms unchanged from even p to p+1
//  (3) total_terms grows by exactly one from p to p+2
//  (4) left_terms nondecreasing, one-step growth at most one
//  (5) summed_terms one-step change within {-1, 0, +1}
//  (6) summed_terms two-step growth within {0, +1}
//  (7) left_terms two-step growth within {0, +1}
//  (8) every fully-observed class has 2 or 3 members
//  (9) d_scaled strictly increases within a class (equivalently the exact
//      centered probabilities scaled by 2^p do; both sides carry 2^(p-1))
// The separate minima check: for each fully-observed class with label l >= 1,
// d_scaled(min of class) > d_scaled(min of class - 2).
struct PropertyReport {
  std::int64_t p_min = 0;
  std::int64_t p_max = 0;
  std::array<std::vector<std::int64_t>, 9> violations;  // check i+1 at index i
  std::vector<std::int64_t> minima_violations;          // class labels
  std::vector<std::int64_t> truncated_classes;          // class labels
  std::string base_case_note;  // set when the range covers p = 2
  bool all_hold() const;
};

PropertyReport check_lemma_properties(std::int64_t p_min, std::int64_t p_max);

// Two-step identity d_scaled(p+2) = 4*d_scaled(p) - 2*(C(p,m) - C(p,m-1)),
// m = p_star(p). Holds exactly when summed_terms(p+2) == summed_terms(p).
struct RecurrenceCheck {
  std::int64_t p = 0;
  bool identity_holds = false;
  bool summed_terms_stable = false;  // R(p+2) == R(p)
  BigInt lhs;                        // d_scaled(p+2)
  BigInt rhs;                        // 4*d_scaled(p) - 2*(C(p,m) - C(p,m-1))
};

RecurrenceCheck check_recurrence(std::int64_t p);

// Signed distance of the exact probability from the normal limit.
double limit_gap(std::int64_t p);

// Max |limit_gap| over p in [lo, hi].
double max_abs_gap(std::int64_t lo, std::int64_t hi);

// Scan p = 2..p_max for the last p whose probability is <= 2/3. The reference
// threshold 783 is echoed with a flag telling whether the probability in fact
// stays above 2/3 from there on.
struct ThresholdReport {
  std::int64_t p_max = 0;
  std::int64_t last_at_or_below = 0;   // largest p <= p_max with P(p) <= 2/3
  std::int64_t first_stable_p = 0;     // last_at_or_below + 1
  std::int64_t count_at_or_below = 0;  // how many p in range have P(p) <= 2/3
  std::int64_t reference_p = 783;
  bool stable_from_reference = false;  // P(p) > 2/3 for all p in [783, p_max]
};

ThresholdReport threshold_scan(std::int64_t p_max);

// With p independent components scored against the same pattern pair, the
// count of components beating a random line is Binomial(p, P(p)). Reports the
// all-beat and none-beat probabilities and the exact odds ratio
// P(p)^p : (1 - P(p))^p, with its sign against 2^p.
struct AggregateReport {
  std::int64_t p = 0;
  DyadicProbability prob;       // P(p)
  DyadicProbability all_beat;   // P(p)^p
  DyadicProbability none_beat;  // (1 - P(p))^p
  BigCount ratio_num;           // reduced numerator of all_beat / none_beat
  BigCount ratio_den;           // reduced denominator
  bool ratio_infinite = false;  // none_beat == 0
  int ratio_vs_pow2 = 0;        // sign of ratio - 2^p
};

AggregateReport uk_aggregate(std::int64_t p);

// (p, P(p) as double) for p in [p_min, p_max]; the convergence data series.
std::vector<std::pair<std::int64_t, double>> probability_series(
    std::int64_t p_min, std::int64_t p_max);

}  // namespace orthoprob
