#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dgn/rng.hpp"
#include "dgn/scmm.hpp"
#include "dgn/tensor.hpp"

namespace dgn {

struct DenseLayer {
  Matrix w;               // out x in
  std::vector<double> b;  // out
};

// Feed-forward encoder, ReLU after every layer so the output is nonnegative.
// 1, 2 (default) or 3 layers; the third is the deep variant.
struct EncoderParams {
  std::vector<DenseLayer> layers;

  int input_dim() const { return layers.front().w.cols; }
  int output_dim() const { return layers.back().w.rows; }
  int depth() const { return static_cast<int>(layers.size()); }
};

// Everything trainable: encoder weights plus the raw objective weights.
// Effective objective weights are softplus(alpha_raw), strictly positive, so
// the test-time objective is always submodular.
struct DgnParams {
  EncoderParams encoder;
  std::vector<double> alpha_raw;
};

enum class Mode { kTrain, kTest };

// One unfolded greedy round, for inspection and training.
struct LayerTrace {
  int layer_index = 0;                  // 1-based
  std::vector<double> gains;            // marginal gains before masking
  std::vector<unsigned char> masked;    // candidates committed before this layer
  std::vector<double> distribution;     // softmax (train) or one-hot (test)
  int chosen = -1;                      // argmax of distribution
};

struct DgnOutput {
  std::vector<LayerTrace> traces;
  std::vector<int> selection;  // test: commit order; train: first-appearance order of chosen
  std::optional<double> loss;  // train mode only
};

// Named views over every parameter block; optimizer and finite differences
// iterate these so they never need to know the parameter layout.
struct BlockRef {
  std::string name;
  std::vector<double>* values;
};
struct ConstBlockRef {
  std::string name;
  const std::vector<double>* values;
};
std::vector<BlockRef> param_blocks(EncoderParams& p);
std::vector<ConstBlockRef> param_blocks(const EncoderParams& p);
std::vector<BlockRef> param_blocks(DgnParams& p);
std::vector<ConstBlockRef> param_blocks(const DgnParams& p);

EncoderParams zeros_like(const EncoderParams& p);
DgnParams zeros_like(const DgnParams& p);
bool all_finite(const DgnParams& p);

double softplus(double x);
double sigmoid(double x);
std::vector<double> softplus_alpha(const std::vector<double>& alpha_raw);

// Fan-balanced uniform init, zero biases. depth selects 1/2/3 encoder layers
// (2 is the trained default; 3 is the deep variant). alpha_raw starts at 0,
// i.e. every objective weight at softplus(0) = ln 2.
EncoderParams init_encoder(int f_in, int f_hidden, int f_out, int depth, Rng& rng);
DgnParams init_params(int f_in, int f_hidden, int f_out, int depth, Rng& rng);

// H = ReLU(W_l ... ReLU(W_1 x + b_1) ... + b_l), applied per candidate row.
FeatureMatrix encode(const Matrix& x, const EncoderParams& params);

// One greedy round at state m. Train mode: distribution = softmax(gains/tau)
// over non-committed candidates and the state update is the saturating
// m' = min(1, m + p); nothing is hard-committed. Test mode: the argmax
// candidate (lowest index on ties) is committed.
std::pair<LayerTrace, Membership> greedy_layer(const FeatureMatrix& h, const ScmmWeights& alpha,
                                               const Membership& m, double tau, Mode mode,
                                               int layer_index = 1);

// Unfolded pass: encode once, then min(k, D) greedy rounds. Test-mode
// selection is exactly forward_greedy on the encoded features. labels are
// required in train mode (0-based candidate indices, distinct).
DgnOutput dgn_forward(const Matrix& x, const DgnParams& params, int k, double tau, Mode mode,
                      const std::vector<int>* labels = nullptr);

// Summed per-layer cross entropy, sign-flipped so the value is >= 0 and
// minimized. Label j pairs with layer j; layers beyond min(#layers, |labels|)
// contribute nothing. Probabilities are clamped to [1e-7, 1 - 1e-7].
double layerwise_ce_loss(const std::vector<std::vector<double>>& distributions,
                         const std::vector<int>& labels);

inline constexpr double kProbClamp = 1e-7;

struct DgnBackwardResult {
  double loss = 0.0;
  DgnOutput output;
  DgnParams grads;  // same shapes as the parameters
};

// Exact reverse-mode gradient of the train-mode loss with respect to every
// parameter. Subgradient conventions: ReLU' (0) = 0, min(1, .) has gradient 0
// on the clamped branch, clamped probabilities pass no gradient.
DgnBackwardResult dgn_backward(const Matrix& x, const DgnParams& params, int k, double tau,
                               const std::vector<int>& labels);

// Central-difference gradient of an arbitrary scalar function of the
// parameters. Steps below 1e-8 are rejected: cancellation makes them
// meaningless in double precision.
template <class LossFn>
DgnParams finite_diff(const DgnParams& params, double h, LossFn&& loss) {
  require(h >= 1e-8, "finite_diff: step below 1e-8 is unreliable in float64");
  DgnParams grads = zeros_like(params);
  DgnParams work = params;
  auto wb = param_blocks(work);
  auto gb = param_blocks(grads);
  for (std::size_t b = 0; b < wb.size(); ++b) {
    auto& values = *wb[b].values;
    auto& out = *gb[b].values;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + h;
      const double up = loss(static_cast<const DgnParams&>(work));
      values[i] = saved - h;
      const double down = loss(static_cast<const DgnParams&>(work));
      values[i] = saved;
      out[i] = (up - down) / (2.0 * h);
    }
  }
  return grads;
}

// Finite-difference oracle for the train-mode loss; test use only.
DgnParams finite_diff_grad(const Matrix& x, const DgnParams& params, int k, double tau,
                           const std::vector<int>& labels, double h);

}  // namespace dgn
