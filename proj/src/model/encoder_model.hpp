// Copyright 2026 The gramscore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef GRAMSCORE_MODEL_ENCODER_MODEL_HPP
#define GRAMSCORE_MODEL_ENCODER_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "model/regression_model.hpp"

namespace gramscore {

// Transformer encoder (post-LN blocks: multi-head self-attention and a ReLU
// feed-forward layer) over hashed word/punctuation tokens, mean pooling, and
// a single linear projection to a scalar score. Fine-tuned end to end with
// Adam.
//
// encoder_name selects the initial encoder weights:
//   "hashed-transformer-tiny"  seeded random initialisation
//   "file:<path>"              encoder tensors from an encoder snapshot file;
//                              the projection is re-initialised from the seed
struct EncoderConfig {
  std::string encoder_name = "hashed-transformer-tiny";
  std::size_t vocab_size = 4096;
  std::size_t dim = 32;
  std::size_t heads = 2;
  std::size_t ff_dim = 64;
  std::size_t layers = 2;
  std::size_t max_tokens = 192;
  std::string pooling = "mean";  // "mean" or "first"
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const EncoderConfig& c);
EncoderConfig encoder_config_from_json(const nlohmann::json& j);

// Lowercased word cores and punctuation characters, hashed into
// [0, vocab_size); truncated from the end to max_tokens.
std::vector<std::size_t> encoder_tokenize(std::string_view text, std::size_t vocab_size,
                                          std::size_t max_tokens);

class EncoderModel final : public RegressionModel {
 public:
  explicit EncoderModel(EncoderConfig config);

  std::string backend() const override { return "encoder"; }
  double predict(std::string_view text) const override;
  double train_step(std::span<const WeightedExample> batch, double learning_rate) override;
  ModelSnapshot snapshot() const override;
  void restore(const ModelSnapshot& snapshot) override;
  std::unique_ptr<RegressionModel> clone() const override;
  double default_learning_rate(std::size_t dataset_size) const override;

  // Flat views used by gradient checks.
  std::size_t parameter_count() const;
  std::vector<double> parameters() const;
  void set_parameters(const std::vector<double>& flat);
  double batch_loss(std::span<const WeightedExample> batch) const;
  std::vector<double> gradient(std::span<const WeightedExample> batch) const;

  const EncoderConfig& config() const noexcept { return config_; }

 private:
  struct Layer {
    Eigen::MatrixXd wq, wk, wv, wo, bq, bk, bv, bo;
    Eigen::MatrixXd ln1_gain, ln1_bias;
    Eigen::MatrixXd w1, b1, w2, b2;
    Eigen::MatrixXd ln2_gain, ln2_bias;
  };
  struct Params {
    Eigen::MatrixXd embedding, position;
    std::vector<Layer> layers;
    Eigen::MatrixXd proj_w, proj_b;  // dim x 1, 1 x 1

    std::vector<Eigen::MatrixXd*> tensors();
    std::vector<const Eigen::MatrixXd*> tensors() const;
    std::vector<std::string> names() const;
  };
  struct Trace;

  void init_params(Params& p, std::uint64_t seed, bool encoder, bool projection) const;
  Params zeros_like() const;
  double forward(const std::vector<std::size_t>& ids, Trace* trace) const;
  void backward(const std::vector<std::size_t>& ids, const Trace& trace, double dy, Params& grad) const;
  Params accumulate_gradient(std::span<const WeightedExample> batch, double* loss) const;

  EncoderConfig config_;
  Params params_;
  Params adam_m_;
  Params adam_v_;
  std::uint64_t step_ = 0;
};

}  // namespace gramscore

#endif  // GRAMSCORE_MODEL_ENCODER_MODEL_HPP
