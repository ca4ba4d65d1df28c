#include "dgn/scmm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgn/errors.hpp"
#include "dgn/kernels.hpp"

namespace dgn {

namespace {

void check_dims(const ScmmWeights& w, const FeatureMatrix& h, const Membership& m) {
  require(w.features() == h.features(),
          "scmm: weight length " + std::to_string(w.features()) + " != feature rows " +
              std::to_string(h.features()));
  require(m.size() == h.candidates(),
          "scmm: membership length " + std::to_string(m.size()) + " != candidates " +
              std::to_string(h.candidates()));
}

// Accumulates the modular sums t[u] = sum_d m[d] * h[d][u]. Zero-mass rows
// contribute an exact +0 and are skipped.
void modular_sums(const FeatureMatrix& h, std::span<const double> m, std::vector<double>& t) {
  t.assign(h.features(), 0.0);
  const auto& K = kernels::active();
  for (int d = 0; d < h.candidates(); ++d)
    if (m[d] != 0.0) K.axpy(m[d], h.h.row(d), t.data(), t.size());
}

}  // namespace

ScmmWeights::ScmmWeights(std::vector<double> a) : alpha(std::move(a)) {
  for (double v : alpha)
    require(v >= 0.0 && std::isfinite(v), "ScmmWeights: entries must be finite and >= 0");
}

ScmmWeights ScmmWeights::ones(int f) { return ScmmWeights(std::vector<double>(f, 1.0)); }

FeatureMatrix::FeatureMatrix(Matrix m) : h(std::move(m)) {
  for (double v : h.data)
    require(v >= 0.0 && std::isfinite(v), "FeatureMatrix: entries must be finite and >= 0");
}

Membership Membership::empty(int d) {
  require(d >= 0, "Membership: negative size");
  Membership s;
  s.m.assign(d, 0.0);
  s.committed.assign(d, 0);
  return s;
}

Membership Membership::of_set(int d, std::span<const int> selected) {
  Membership s = empty(d);
  for (int idx : selected) s.commit(idx);
  return s;
}

void Membership::commit(int idx) {
  require(idx >= 0 && idx < size(), "Membership: index out of range");
  require(!is_committed(idx), "Membership: candidate already committed");
  m[idx] = 1.0;
  committed[idx] = 1;
  hard_order.push_back(idx);
}

void Membership::validate() const {
  require(committed.size() == m.size(), "Membership: flag size mismatch");
  for (double v : m) require(v >= 0.0 && v <= 1.0, "Membership: mass outside [0,1]");
  for (int idx : hard_order) {
    require(idx >= 0 && idx < size(), "Membership: hard_order index out of range");
    require(m[idx] == 1.0, "Membership: committed candidate must have mass 1");
  }
}

double scmm_value(const ScmmWeights& w, const FeatureMatrix& h, const Membership& m) {
  check_dims(w, h, m);
  if (h.features() == 0 || h.candidates() == 0) return 0.0;
  const auto& K = kernels::active();
  std::vector<double> t;
  modular_sums(h, m.m, t);
  std::vector<double> lt(t.size());
  K.log1p(t.data(), lt.data(), t.size());
  return K.dot(w.alpha.data(), lt.data(), lt.size());
}

std::vector<double> marginal_gains(const ScmmWeights& w, const FeatureMatrix& h,
                                   const Membership& m) {
  check_dims(w, h, m);
  const int d_count = h.candidates();
  const int f = h.features();
  std::vector<double> gains(d_count, 0.0);
  if (d_count == 0) return gains;
  const auto& K = kernels::active();

  std::vector<double> t, lt(f), buf(f), lbuf(f);
  modular_sums(h, m.m, t);
  K.log1p(t.data(), lt.data(), f);
  const double base = K.dot(w.alpha.data(), lt.data(), f);

  for (int d = 0; d < d_count; ++d) {
    if (m.is_committed(d)) {
      gains[d] = kMaskedGain;
      continue;
    }
    buf.assign(t.begin(), t.end());
    const double c = 1.0 - m.m[d];
    if (c != 0.0) K.axpy(c, h.h.row(d), buf.data(), f);
    K.log1p(buf.data(), lbuf.data(), f);
    gains[d] = K.dot(w.alpha.data(), lbuf.data(), f) - base;
  }
  return gains;
}

int argmax_lowest(std::span<const double> v) {
  require(!v.empty(), "argmax_lowest: empty input");
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

std::vector<int> forward_greedy(const ScmmWeights& w, const FeatureMatrix& h, int k) {
  require(k >= 0, "forward_greedy: negative budget");
  const int rounds = std::min(k, h.candidates());
  Membership state = Membership::empty(h.candidates());
  std::vector<int> picked;
  picked.reserve(rounds);
  for (int r = 0; r < rounds; ++r) {
    std::vector<double> gains = marginal_gains(w, h, state);
    int best = argmax_lowest(gains);
    state.commit(best);
    picked.push_back(best);
  }
  return picked;
}

BruteForceResult brute_force_best(const ScmmWeights& w, const FeatureMatrix& h, int k) {
  require(k >= 0, "brute_force_best: negative budget");
  const int d = h.candidates();
  const int size = std::min(k, d);
  require(d <= 20, "brute_force_best: refusing D=" + std::to_string(d) + " (limit D <= 20)");
  double combos = 1.0;
  for (int i = 0; i < size; ++i) combos = combos * (d - i) / (i + 1);
  require(combos <= 1e6, "brute_force_best: refusing C(" + std::to_string(d) + "," +
                             std::to_string(size) + ") > 1e6 subsets");

  BruteForceResult best;
  if (size == 0) return best;

  // Lexicographic combination enumeration; first maximum encountered is the
  // lexicographically smallest maximizer.
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  bool first = true;
  while (true) {
    Membership m = Membership::of_set(d, idx);
    double value = scmm_value(w, h, m);
    if (first || value > best.value) {
      best.value = value;
      best.best_set = idx;
      first = false;
    }
    int pos = size - 1;
    while (pos >= 0 && idx[pos] == d - size + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

}  // namespace dgn
