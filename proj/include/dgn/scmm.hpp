#pragma once

#include <span>
#include <vector>

#include "dgn/tensor.hpp"

namespace dgn {

// Gain value assigned to already-committed candidates so that any argmax or
// softmax downstream effectively ignores them.
inline constexpr double kMaskedGain = -1e30;

// Per-feature nonnegative weights of the objective
//   f(m) = sum_u alpha[u] * log(1 + sum_d m[d] * h[d][u]).
// Nonnegativity is what makes the set function submodular, so it is enforced
// at construction.
struct ScmmWeights {
  std::vector<double> alpha;

  explicit ScmmWeights(std::vector<double> a);
  static ScmmWeights ones(int f);
  int features() const { return static_cast<int>(alpha.size()); }
};

// Nonnegative encoded features, one row per candidate (D x F').
struct FeatureMatrix {
  Matrix h;

  explicit FeatureMatrix(Matrix m);
  int candidates() const { return h.rows; }
  int features() const { return h.cols; }
};

// Selection state threaded through greedy rounds: a fractional membership
// mass per candidate plus the ordered list of hard-committed candidates.
struct Membership {
  std::vector<double> m;             // in [0, 1]
  std::vector<int> hard_order;       // committed candidates, commit order
  std::vector<unsigned char> committed;  // flags, size D

  static Membership empty(int d);
  static Membership of_set(int d, std::span<const int> selected);  // binary indicator

  int size() const { return static_cast<int>(m.size()); }
  bool is_committed(int idx) const { return committed[idx] != 0; }
  void commit(int idx);  // m[idx] = 1, appends to hard_order
  void validate() const;
};

// Objective value at membership m. With a binary m this is exactly the set
// function value of the selected columns.
double scmm_value(const ScmmWeights& w, const FeatureMatrix& h, const Membership& m);

// Per-candidate gain of raising m[d] to 1; committed candidates get
// kMaskedGain. With binary m, entry d is f(A + {d}) - f(A).
std::vector<double> marginal_gains(const ScmmWeights& w, const FeatureMatrix& h,
                                   const Membership& m);

// Index of the largest value; ties break to the lowest index.
int argmax_lowest(std::span<const double> v);

// Greedy maximization under a cardinality budget: min(k, D) rounds, each
// committing the best remaining candidate. Returns indices in commit order.
std::vector<int> forward_greedy(const ScmmWeights& w, const FeatureMatrix& h, int k);

struct BruteForceResult {
  std::vector<int> best_set;  // ascending
  double value = 0.0;
};

// Exhaustive maximizer over all subsets of size min(k, D); monotonicity makes
// that size optimal. Ties keep the lexicographically smallest set. Refuses
// instances with D > 20 or C(D, k) > 1e6.
BruteForceResult brute_force_best(const ScmmWeights& w, const FeatureMatrix& h, int k);

}  // namespace dgn
