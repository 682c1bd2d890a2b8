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

#include "model/encoder_model.hpp"

#include <cctype>
#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/strings.hpp"

namespace gramscore {

namespace {

using Eigen::MatrixXd;

constexpr double kLayerNormEps = 1e-5;
constexpr std::string_view kRandomInit = "hashed-transformer-tiny";
constexpr std::string_view kFilePrefix = "file:";

struct LayerNormCache {
  MatrixXd normed;           // x-hat
  Eigen::VectorXd inv_std;   // per row
};

MatrixXd layer_norm(const MatrixXd& x, const MatrixXd& gain, const MatrixXd& bias, LayerNormCache* cache) {
  const auto d = static_cast<double>(x.cols());
  MatrixXd normed(x.rows(), x.cols());
  Eigen::VectorXd inv_std(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mean = x.row(r).sum() / d;
    const auto centered = (x.row(r).array() - mean).matrix();
    const double var = centered.squaredNorm() / d;
    inv_std(r) = 1.0 / std::sqrt(var + kLayerNormEps);
    normed.row(r) = centered * inv_std(r);
  }
  MatrixXd out = (normed.array().rowwise() * gain.row(0).array()).matrix();
  out.rowwise() += bias.row(0);
  if (cache) {
    cache->normed = std::move(normed);
    cache->inv_std = std::move(inv_std);
  }
  return out;
}

// Returns d(input) and accumulates into the gain/bias gradients.
MatrixXd layer_norm_backward(const MatrixXd& dout, const LayerNormCache& c, const MatrixXd& gain,
                             MatrixXd& dgain, MatrixXd& dbias) {
  dgain.row(0) += (dout.array() * c.normed.array()).colwise().sum().matrix();
  dbias.row(0) += dout.colwise().sum();
  const MatrixXd dnormed = (dout.array().rowwise() * gain.row(0).array()).matrix();
  const auto d = static_cast<double>(dout.cols());
  MatrixXd dx(dout.rows(), dout.cols());
  for (Eigen::Index r = 0; r < dout.rows(); ++r) {
    const double mean_dn = dnormed.row(r).sum() / d;
    const double mean_dn_x = dnormed.row(r).dot(c.normed.row(r)) / d;
    dx.row(r) = c.inv_std(r) *
                (dnormed.row(r).array() - mean_dn - c.normed.row(r).array() * mean_dn_x).matrix();
  }
  return dx;
}

MatrixXd affine(const MatrixXd& x, const MatrixXd& w, const MatrixXd& b) {
  MatrixXd y = x * w;
  y.rowwise() += b.row(0);
  return y;
}

nlohmann::json tensor_json(const MatrixXd& m) {
  std::vector<double> flat(static_cast<std::size_t>(m.size()));
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      flat.data(), m.rows(), m.cols()) = m;
  return {{"shape", {m.rows(), m.cols()}}, {"data", flat}};
}

void tensor_from_json(const nlohmann::json& j, MatrixXd& m, const std::string& name) {
  const auto shape = j.at("shape").get<std::vector<Eigen::Index>>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (shape.size() != 2 || shape[0] != m.rows() || shape[1] != m.cols() ||
      data.size() != static_cast<std::size_t>(m.size()))
    throw ValidationError("encoder snapshot tensor '" + name + "' has the wrong shape");
  m = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      data.data(), m.rows(), m.cols());
}

}  // namespace

nlohmann::json to_json(const EncoderConfig& c) {
  return {{"encoder_name", c.encoder_name}, {"vocab_size", c.vocab_size}, {"dim", c.dim},
          {"heads", c.heads},               {"ff_dim", c.ff_dim},         {"layers", c.layers},
          {"max_tokens", c.max_tokens},     {"pooling", c.pooling},       {"learning_rate", c.learning_rate},
          {"beta1", c.beta1},               {"beta2", c.beta2},           {"epsilon", c.epsilon},
          {"seed", c.seed}};
}

EncoderConfig encoder_config_from_json(const nlohmann::json& j) {
  EncoderConfig c;
  c.encoder_name = j.value("encoder_name", c.encoder_name);
  c.vocab_size = j.value("vocab_size", c.vocab_size);
  c.dim = j.value("dim", c.dim);
  c.heads = j.value("heads", c.heads);
  c.ff_dim = j.value("ff_dim", c.ff_dim);
  c.layers = j.value("layers", c.layers);
  c.max_tokens = j.value("max_tokens", c.max_tokens);
  c.pooling = j.value("pooling", c.pooling);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.beta1 = j.value("beta1", c.beta1);
  c.beta2 = j.value("beta2", c.beta2);
  c.epsilon = j.value("epsilon", c.epsilon);
  c.seed = j.value("seed", c.seed);
  return c;
}

std::vector<std::size_t> encoder_tokenize(std::string_view text, std::size_t vocab_size,
                                          std::size_t max_tokens) {
  std::vector<std::size_t> ids;
  auto emit = [&](std::string_view piece) {
    if (ids.size() < max_tokens) ids.push_back(fnv1a64(piece) % vocab_size);
  };
  for (const auto& tok : tokenize_words(text)) {
    const std::string lower = to_lower(tok.text);
    std::string word;
    for (char c : lower) {
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || (c & 0x80)) {
        word.push_back(c);
      } else {
        if (!word.empty()) emit(word), word.clear();
        emit(std::string_view(&c, 1));
      }
    }
    if (!word.empty()) emit(word);
  }
  return ids;
}

// ---------------------------------------------------------------------------
// Parameter bookkeeping

std::vector<Eigen::MatrixXd*> EncoderModel::Params::tensors() {
  std::vector<MatrixXd*> out{&embedding, &position};
  for (auto& l : layers)
    for (MatrixXd* t : {&l.wq, &l.wk, &l.wv, &l.wo, &l.bq, &l.bk, &l.bv, &l.bo, &l.ln1_gain, &l.ln1_bias,
                        &l.w1, &l.b1, &l.w2, &l.b2, &l.ln2_gain, &l.ln2_bias})
      out.push_back(t);
  out.push_back(&proj_w);
  out.push_back(&proj_b);
  return out;
}

std::vector<const Eigen::MatrixXd*> EncoderModel::Params::tensors() const {
  auto mut = const_cast<Params*>(this)->tensors();
  return {mut.begin(), mut.end()};
}

std::vector<std::string> EncoderModel::Params::names() const {
  std::vector<std::string> out{"embedding", "position"};
  static constexpr const char* kLayerNames[] = {"wq", "wk", "wv", "wo", "bq", "bk", "bv", "bo",
                                                "ln1_gain", "ln1_bias", "w1", "b1", "w2", "b2",
                                                "ln2_gain", "ln2_bias"};
  for (std::size_t i = 0; i < layers.size(); ++i)
    for (const char* n : kLayerNames) out.push_back("layer" + std::to_string(i) + "." + n);
  out.push_back("proj_w");
  out.push_back("proj_b");
  return out;
}

EncoderModel::Params EncoderModel::zeros_like() const {
  const auto d = static_cast<Eigen::Index>(config_.dim);
  const auto f = static_cast<Eigen::Index>(config_.ff_dim);
  Params p;
  p.embedding = MatrixXd::Zero(static_cast<Eigen::Index>(config_.vocab_size), d);
  p.position = MatrixXd::Zero(static_cast<Eigen::Index>(config_.max_tokens), d);
  p.layers.resize(config_.layers);
  for (auto& l : p.layers) {
    l.wq = l.wk = l.wv = l.wo = MatrixXd::Zero(d, d);
    l.bq = l.bk = l.bv = l.bo = MatrixXd::Zero(1, d);
    l.ln1_gain = l.ln1_bias = l.ln2_gain = l.ln2_bias = l.b2 = MatrixXd::Zero(1, d);
    l.w1 = MatrixXd::Zero(d, f);
    l.b1 = MatrixXd::Zero(1, f);
    l.w2 = MatrixXd::Zero(f, d);
  }
  p.proj_w = MatrixXd::Zero(d, 1);
  p.proj_b = MatrixXd::Zero(1, 1);
  return p;
}

void EncoderModel::init_params(Params& p, std::uint64_t seed, bool encoder, bool projection) const {
  std::mt19937_64 gen(derive_seed(seed, {0xE7C0}));
  auto fill = [&](MatrixXd& m, double scale) {
    std::normal_distribution<double> dist(0.0, scale);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = dist(gen);
  };
  const double d = static_cast<double>(config_.dim);
  const double f = static_cast<double>(config_.ff_dim);
  if (encoder) {
    fill(p.embedding, 1.0);
    fill(p.position, 0.1);
    for (auto& l : p.layers) {
      for (MatrixXd* w : {&l.wq, &l.wk, &l.wv, &l.wo}) fill(*w, 1.0 / std::sqrt(d));
      fill(l.w1, std::sqrt(2.0 / d));
      fill(l.w2, 1.0 / std::sqrt(f));
      for (MatrixXd* b : {&l.bq, &l.bk, &l.bv, &l.bo, &l.b1, &l.b2, &l.ln1_bias, &l.ln2_bias}) b->setZero();
      l.ln1_gain.setOnes();
      l.ln2_gain.setOnes();
    }
  }
  if (projection) {
    std::mt19937_64 proj_gen(derive_seed(seed, {0x9507}));
    std::normal_distribution<double> dist(0.0, 0.01);
    for (Eigen::Index r = 0; r < p.proj_w.rows(); ++r) p.proj_w(r, 0) = dist(proj_gen);
    p.proj_b(0, 0) = 3.0;
  }
}

EncoderModel::EncoderModel(EncoderConfig config) : config_(std::move(config)) {
  if (config_.dim == 0 || config_.heads == 0 || config_.dim % config_.heads != 0)
    throw ConfigError("encoder dim must be a positive multiple of heads");
  if (config_.vocab_size == 0 || config_.max_tokens == 0 || config_.ff_dim == 0)
    throw ConfigError("encoder vocab_size, max_tokens and ff_dim must be positive");
  if (config_.pooling != "mean" && config_.pooling != "first")
    throw ConfigError("encoder pooling must be 'mean' or 'first'");
  if (!(config_.learning_rate > 0)) throw ConfigError("encoder learning_rate must be positive");

  params_ = zeros_like();
  if (config_.encoder_name == kRandomInit) {
    init_params(params_, config_.seed, true, true);
  } else if (config_.encoder_name.rfind(kFilePrefix, 0) == 0) {
    const std::string path = config_.encoder_name.substr(kFilePrefix.size());
    const auto source = nlohmann::json::parse(read_file(path));
    const auto& tensors = source.contains("model") ? source["model"].at("tensors") : source.at("tensors");
    auto names = params_.names();
    auto ts = params_.tensors();
    for (std::size_t i = 0; i + 2 < ts.size(); ++i) {  // projection excluded
      if (!tensors.contains(names[i]))
        throw ConfigError("encoder weights file lacks tensor '" + names[i] + "'");
      tensor_from_json(tensors[names[i]], *ts[i], names[i]);
    }
    init_params(params_, config_.seed, false, true);
  } else {
    throw ConfigError("unknown encoder_name '" + config_.encoder_name + "'");
  }
  adam_m_ = zeros_like();
  adam_v_ = zeros_like();
}

// ---------------------------------------------------------------------------
// Forward / backward

struct EncoderModel::Trace {
  struct LayerTrace {
    MatrixXd x;                  // block input
    MatrixXd q, k, v;
    std::vector<MatrixXd> attn;  // per head, n x n
    MatrixXd h;                  // concatenated head outputs
    LayerNormCache ln1;
    MatrixXd y1;                 // post-LN1 output
    MatrixXd z;                  // pre-activation FFN hidden
    MatrixXd a;                  // relu(z)
    LayerNormCache ln2;
  };
  std::vector<LayerTrace> layers;
  MatrixXd out;                  // final block output
  Eigen::RowVectorXd pooled;
};

double EncoderModel::forward(const std::vector<std::size_t>& ids, Trace* trace) const {
  const auto n = static_cast<Eigen::Index>(ids.size());
  const auto d = static_cast<Eigen::Index>(config_.dim);
  const auto dh = d / static_cast<Eigen::Index>(config_.heads);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  MatrixXd x(n, d);
  for (Eigen::Index t = 0; t < n; ++t)
    x.row(t) = params_.embedding.row(static_cast<Eigen::Index>(ids[static_cast<std::size_t>(t)])) +
               params_.position.row(t);

  if (trace) trace->layers.resize(params_.layers.size());
  for (std::size_t li = 0; li < params_.layers.size(); ++li) {
    const Layer& L = params_.layers[li];
    MatrixXd q = affine(x, L.wq, L.bq), k = affine(x, L.wk, L.bk), v = affine(x, L.wv, L.bv);
    MatrixXd h(n, d);
    std::vector<MatrixXd> attn(config_.heads);
    for (std::size_t hd = 0; hd < config_.heads; ++hd) {
      const auto c0 = static_cast<Eigen::Index>(hd) * dh;
      MatrixXd s = q.middleCols(c0, dh) * k.middleCols(c0, dh).transpose() * scale;
      for (Eigen::Index r = 0; r < n; ++r) {
        const double m = s.row(r).maxCoeff();
        s.row(r) = (s.row(r).array() - m).exp().matrix();
        s.row(r) /= s.row(r).sum();
      }
      h.middleCols(c0, dh) = s * v.middleCols(c0, dh);
      attn[hd] = std::move(s);
    }
    const MatrixXd r1 = x + affine(h, L.wo, L.bo);
    LayerNormCache ln1;
    MatrixXd y1 = layer_norm(r1, L.ln1_gain, L.ln1_bias, &ln1);
    MatrixXd z = affine(y1, L.w1, L.b1);
    MatrixXd a = z.cwiseMax(0.0);
    const MatrixXd r2 = y1 + affine(a, L.w2, L.b2);
    LayerNormCache ln2;
    MatrixXd next = layer_norm(r2, L.ln2_gain, L.ln2_bias, &ln2);
    if (trace) {
      auto& T = trace->layers[li];
      T.x = std::move(x);
      T.q = std::move(q);
      T.k = std::move(k);
      T.v = std::move(v);
      T.attn = std::move(attn);
      T.h = std::move(h);
      T.ln1 = std::move(ln1);
      T.y1 = std::move(y1);
      T.z = std::move(z);
      T.a = std::move(a);
      T.ln2 = std::move(ln2);
    }
    x = std::move(next);
  }
  Eigen::RowVectorXd pooled = config_.pooling == "mean" ? Eigen::RowVectorXd(x.colwise().mean())
                                                        : Eigen::RowVectorXd(x.row(0));
  const double y = (pooled * params_.proj_w)(0, 0) + params_.proj_b(0, 0);
  if (trace) {
    trace->out = std::move(x);
    trace->pooled = std::move(pooled);
  }
  return y;
}

void EncoderModel::backward(const std::vector<std::size_t>& ids, const Trace& trace, double dy,
                            Params& g) const {
  const auto n = static_cast<Eigen::Index>(ids.size());
  const auto d = static_cast<Eigen::Index>(config_.dim);
  const auto dh = d / static_cast<Eigen::Index>(config_.heads);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  g.proj_w += dy * trace.pooled.transpose();
  g.proj_b(0, 0) += dy;
  const Eigen::RowVectorXd dpooled = dy * params_.proj_w.transpose();
  MatrixXd dx = MatrixXd::Zero(n, d);
  if (config_.pooling == "mean")
    dx.rowwise() = dpooled / static_cast<double>(n);
  else
    dx.row(0) = dpooled;

  for (std::size_t li = params_.layers.size(); li-- > 0;) {
    const Layer& L = params_.layers[li];
    Layer& G = g.layers[li];
    const auto& T = trace.layers[li];

    const MatrixXd dr2 = layer_norm_backward(dx, T.ln2, L.ln2_gain, G.ln2_gain, G.ln2_bias);
    G.w2 += T.a.transpose() * dr2;
    G.b2.row(0) += dr2.colwise().sum();
    const MatrixXd dz = ((dr2 * L.w2.transpose()).array() * (T.z.array() > 0.0).cast<double>()).matrix();
    G.w1 += T.y1.transpose() * dz;
    G.b1.row(0) += dz.colwise().sum();
    const MatrixXd dy1 = dr2 + dz * L.w1.transpose();

    const MatrixXd dr1 = layer_norm_backward(dy1, T.ln1, L.ln1_gain, G.ln1_gain, G.ln1_bias);
    G.wo += T.h.transpose() * dr1;
    G.bo.row(0) += dr1.colwise().sum();
    const MatrixXd dh_all = dr1 * L.wo.transpose();

    MatrixXd dq(n, d), dk(n, d), dv(n, d);
    for (std::size_t hd = 0; hd < config_.heads; ++hd) {
      const auto c0 = static_cast<Eigen::Index>(hd) * dh;
      const MatrixXd& A = T.attn[hd];
      const MatrixXd dhh = dh_all.middleCols(c0, dh);
      const MatrixXd da = dhh * T.v.middleCols(c0, dh).transpose();
      dv.middleCols(c0, dh) = A.transpose() * dhh;
      const Eigen::VectorXd rowdot = (da.array() * A.array()).rowwise().sum();
      const MatrixXd ds = (A.array() * (da.colwise() - rowdot).array()).matrix() * scale;
      dq.middleCols(c0, dh) = ds * T.k.middleCols(c0, dh);
      dk.middleCols(c0, dh) = ds.transpose() * T.q.middleCols(c0, dh);
    }
    G.wq += T.x.transpose() * dq;
    G.wk += T.x.transpose() * dk;
    G.wv += T.x.transpose() * dv;
    G.bq.row(0) += dq.colwise().sum();
    G.bk.row(0) += dk.colwise().sum();
    G.bv.row(0) += dv.colwise().sum();
    dx = dr1 + dq * L.wq.transpose() + dk * L.wk.transpose() + dv * L.wv.transpose();
  }
  for (Eigen::Index t = 0; t < n; ++t) {
    g.embedding.row(static_cast<Eigen::Index>(ids[static_cast<std::size_t>(t)])) += dx.row(t);
    g.position.row(t) += dx.row(t);
  }
}

EncoderModel::Params EncoderModel::accumulate_gradient(std::span<const WeightedExample> batch,
                                                      double* loss) const {
  check_batch(batch);
  Params g = zeros_like();
  const double scale = 2.0 / static_cast<double>(batch.size());
  std::vector<double> preds;
  preds.reserve(batch.size());
  for (const auto& ex : batch) {
    const auto ids = encoder_tokenize(ex.text, config_.vocab_size, config_.max_tokens);
    if (ids.empty()) throw ValidationError("cannot score text without words");
    if (ex.weight == 0.0) {
      preds.push_back(forward(ids, nullptr));
      continue;
    }
    Trace trace;
    const double y = forward(ids, &trace);
    preds.push_back(y);
    backward(ids, trace, scale * ex.weight * (y - ex.target), g);
  }
  if (loss) *loss = weighted_batch_loss(batch, preds);
  return g;
}

// ---------------------------------------------------------------------------
// Public API

double EncoderModel::predict(std::string_view text) const {
  const auto ids = encoder_tokenize(text, config_.vocab_size, config_.max_tokens);
  if (ids.empty()) throw ValidationError("cannot score text without words");
  return forward(ids, nullptr);
}

double EncoderModel::batch_loss(std::span<const WeightedExample> batch) const {
  check_batch(batch);
  std::vector<double> preds;
  preds.reserve(batch.size());
  for (const auto& ex : batch) preds.push_back(predict(ex.text));
  return weighted_batch_loss(batch, preds);
}

std::vector<double> EncoderModel::gradient(std::span<const WeightedExample> batch) const {
  Params g = accumulate_gradient(batch, nullptr);
  std::vector<double> flat;
  for (const MatrixXd* t : g.tensors())
    for (Eigen::Index i = 0; i < t->size(); ++i) flat.push_back(t->data()[i]);
  return flat;
}

double EncoderModel::train_step(std::span<const WeightedExample> batch, double learning_rate) {
  double loss = 0.0;
  Params g = accumulate_gradient(batch, &loss);
  auto fail = [&](const std::string& what) {
    std::vector<std::size_t> indices;
    for (const auto& ex : batch) indices.push_back(ex.index);
    throw TrainingDivergence(what, indices);
  };
  if (!std::isfinite(loss)) fail("non-finite batch loss");

  ++step_;
  const double b1 = config_.beta1, b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(step_));
  auto ps = params_.tensors();
  auto gs = g.tensors();
  auto ms = adam_m_.tensors();
  auto vs = adam_v_.tensors();
  std::vector<MatrixXd> next(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    *ms[i] = b1 * *ms[i] + (1.0 - b1) * *gs[i];
    *vs[i] = b2 * *vs[i] + (1.0 - b2) * gs[i]->cwiseProduct(*gs[i]);
    next[i] = *ps[i] - (learning_rate * (ms[i]->array() / c1) /
                        ((vs[i]->array() / c2).sqrt() + config_.epsilon))
                           .matrix();
    if (!next[i].allFinite()) fail("non-finite parameter after update");
  }
  for (std::size_t i = 0; i < ps.size(); ++i) *ps[i] = std::move(next[i]);
  return loss;
}

ModelSnapshot EncoderModel::snapshot() const {
  ModelSnapshot s;
  s["backend"] = backend();
  s["config"] = to_json(config_);
  nlohmann::json tensors = nlohmann::json::object();
  const auto names = params_.names();
  const auto ts = params_.tensors();
  for (std::size_t i = 0; i < ts.size(); ++i) tensors[names[i]] = tensor_json(*ts[i]);
  s["tensors"] = std::move(tensors);
  return s;
}

void EncoderModel::restore(const ModelSnapshot& s) {
  if (s.value("backend", "") != backend()) throw ValidationError("snapshot is not an encoder model");
  config_ = encoder_config_from_json(s.at("config"));
  Params next = zeros_like();
  const auto names = next.names();
  auto ts = next.tensors();
  const auto& tensors = s.at("tensors");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!tensors.contains(names[i])) throw ValidationError("encoder snapshot lacks tensor '" + names[i] + "'");
    tensor_from_json(tensors[names[i]], *ts[i], names[i]);
  }
  params_ = std::move(next);
  adam_m_ = zeros_like();
  adam_v_ = zeros_like();
  step_ = 0;
}

std::unique_ptr<RegressionModel> EncoderModel::clone() const {
  return std::unique_ptr<EncoderModel>(new EncoderModel(*this));
}

double EncoderModel::default_learning_rate(std::size_t) const { return config_.learning_rate; }

std::size_t EncoderModel::parameter_count() const {
  std::size_t n = 0;
  for (const MatrixXd* t : params_.tensors()) n += static_cast<std::size_t>(t->size());
  return n;
}

std::vector<double> EncoderModel::parameters() const {
  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (const MatrixXd* t : params_.tensors())
    for (Eigen::Index i = 0; i < t->size(); ++i) flat.push_back(t->data()[i]);
  return flat;
}

void EncoderModel::set_parameters(const std::vector<double>& flat) {
  if (flat.size() != parameter_count()) throw ValidationError("parameter vector has the wrong length");
  std::size_t k = 0;
  for (MatrixXd* t : params_.tensors())
    for (Eigen::Index i = 0; i < t->size(); ++i) t->data()[i] = flat[k++];
}

}  // namespace gramscore
