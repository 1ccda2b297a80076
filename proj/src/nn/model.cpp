//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "aisens/nn/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "aisens/error.hpp"

namespace aisens::nn {

namespace {

constexpr double kLnEps = 1e-5;

// Layer parameter indices into the store.

struct LinearIdx {
  int W = -1;
  int b = -1;
};

struct LnIdx {
  int g = -1;
  int b = -1;
};

struct LstmIdx {
  int Wx = -1;
  int Wh = -1;
  int b = -1;
};

struct BiLstmIdx {
  LstmIdx fwd;
  LstmIdx bwd;
};

struct BlockIdx {
  LnIdx ln1;
  LinearIdx q, k, v, o;
  LnIdx ln2;
  LinearIdx ff1, ff2;
};

// Per-layer activations.

struct LnCache {
  Mat xhat;
  Eigen::RowVectorXd inv_std;
};

struct LstmCache {
  Mat x;
  Mat gates;  // i, f, g, o after their nonlinearities
  Mat c;
  Mat h;
  Mat tanh_c;
  bool reverse = false;
};

struct BiLstmCache {
  LstmCache fwd;
  LstmCache bwd;
};

struct BlockCache {
  LnCache ln1;
  Mat a;  // ln1 output, attention input
  Mat q, k, v, o;
  std::vector<Mat> p;
  LnCache ln2;
  Mat b;  // ln2 output, feed-forward input
  Mat u;  // pre-activation
  Mat act;
};

struct SeqCache {
  std::vector<int> ids;
  int len = 0;
  Mat emb_mask;  // empty when no dropout
  Mat emb;       // after dropout
  std::vector<BlockCache> blocks;
  LnCache final_ln;
  std::vector<BiLstmCache> lstm;
  Mat out_mask;
  Mat states;  // after dropout, pooled by the head
  Vec pooled;
};

Mat xavier(util::Rng &rng, int rows, int cols) {
  const double a = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      m(i, j) = util::uniform(rng, -a, a);
  return m;
}

Mat uniform_mat(util::Rng &rng, int rows, int cols, double a) {
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      m(i, j) = util::uniform(rng, -a, a);
  return m;
}

LinearIdx add_linear(ParameterStore &ps, util::Rng &rng, const std::string &name,
                     int out, int in) {
  LinearIdx idx;
  idx.W = ps.add(name + ".W", xavier(rng, out, in));
  idx.b = ps.add(name + ".b", Mat::Zero(out, 1));
  return idx;
}

LnIdx add_ln(ParameterStore &ps, const std::string &name, int dim) {
  LnIdx idx;
  idx.g = ps.add(name + ".g", Mat::Ones(dim, 1));
  idx.b = ps.add(name + ".b", Mat::Zero(dim, 1));
  return idx;
}

LstmIdx add_lstm(ParameterStore &ps, util::Rng &rng, const std::string &name,
                 int in, int h) {
  LstmIdx idx;
  idx.Wx = ps.add(name + ".Wx", xavier(rng, 4 * h, in));
  idx.Wh = ps.add(name + ".Wh", xavier(rng, 4 * h, h));
  Mat b = Mat::Zero(4 * h, 1);
  b.block(h, 0, h, 1).setOnes();  // forget gate
  idx.b = ps.add(name + ".b", std::move(b));
  return idx;
}

Mat linear_fwd(const ParameterStore &ps, LinearIdx idx, const Mat &x) {
  Mat y = ps.value(idx.W) * x;
  y.colwise() += ps.value(idx.b).col(0);
  return y;
}

Mat linear_bwd(ParameterStore &ps, LinearIdx idx, const Mat &x, const Mat &dy) {
  ps.grad(idx.W).noalias() += dy * x.transpose();
  ps.grad(idx.b).col(0) += dy.rowwise().sum();
  return ps.value(idx.W).transpose() * dy;
}

Mat ln_fwd(const ParameterStore &ps, LnIdx idx, const Mat &x, LnCache *cache) {
  const Eigen::RowVectorXd mu = x.colwise().mean();
  Mat xc = x.rowwise() - mu;
  const Eigen::RowVectorXd var = xc.array().square().colwise().mean();
  const Eigen::RowVectorXd inv = (var.array() + kLnEps).rsqrt();
  xc.array().rowwise() *= inv.array();
  Mat y = xc.array().colwise() * ps.value(idx.g).col(0).array();
  y.colwise() += ps.value(idx.b).col(0);
  if (cache) {
    cache->xhat = std::move(xc);
    cache->inv_std = inv;
  }
  return y;
}

Mat ln_bwd(ParameterStore &ps, LnIdx idx, const LnCache &c, const Mat &dy) {
  ps.grad(idx.g).col(0) += (dy.array() * c.xhat.array()).rowwise().sum().matrix();
  ps.grad(idx.b).col(0) += dy.rowwise().sum();
  const Mat dxhat = dy.array().colwise() * ps.value(idx.g).col(0).array();
  const Eigen::RowVectorXd m1 = dxhat.colwise().mean();
  const Eigen::RowVectorXd m2 =
      (dxhat.array() * c.xhat.array()).colwise().mean().matrix();
  Mat dx = dxhat;
  dx.rowwise() -= m1;
  dx.array() -= c.xhat.array().rowwise() * m2.array();
  dx.array().rowwise() *= c.inv_std.array();
  return dx;
}

Eigen::ArrayXd sigmoid(const Eigen::ArrayXd &z) { return 1.0 / (1.0 + (-z).exp()); }

Mat lstm_fwd(const ParameterStore &ps, LstmIdx idx, const Mat &x, bool reverse,
             LstmCache *cache) {
  const Mat &Wh = ps.value(idx.Wh);
  const Eigen::Index h = Wh.cols();
  const Eigen::Index L = x.cols();
  Mat a = ps.value(idx.Wx) * x;
  a.colwise() += ps.value(idx.b).col(0);
  Mat gates(4 * h, L), c(h, L), hs(h, L), tc(h, L);
  Vec hp = Vec::Zero(h), cp = Vec::Zero(h), z(4 * h);
  for (Eigen::Index s = 0; s < L; ++s) {
    const Eigen::Index t = reverse ? L - 1 - s : s;
    z = a.col(t);
    z.noalias() += Wh * hp;
    const Eigen::ArrayXd i = sigmoid(z.segment(0, h).array());
    const Eigen::ArrayXd f = sigmoid(z.segment(h, h).array());
    const Eigen::ArrayXd g = z.segment(2 * h, h).array().tanh();
    const Eigen::ArrayXd o = sigmoid(z.segment(3 * h, h).array());
    cp = (f * cp.array() + i * g).matrix();
    const Eigen::ArrayXd tcs = cp.array().tanh();
    hp = (o * tcs).matrix();
    gates.col(t) << i.matrix(), f.matrix(), g.matrix(), o.matrix();
    c.col(t) = cp;
    tc.col(t) = tcs.matrix();
    hs.col(t) = hp;
  }
  if (cache) {
    cache->x = x;
    cache->gates = std::move(gates);
    cache->c = std::move(c);
    cache->tanh_c = std::move(tc);
    cache->h = hs;
    cache->reverse = reverse;
  }
  return hs;
}

Mat lstm_bwd(ParameterStore &ps, LstmIdx idx, const LstmCache &k, const Mat &dh_out) {
  const Mat &Wh = ps.value(idx.Wh);
  const Eigen::Index h = Wh.cols();
  const Eigen::Index L = k.x.cols();
  auto pos = [&](Eigen::Index s) { return k.reverse ? L - 1 - s : s; };
  Mat dz(4 * h, L), hprev(h, L);
  Vec dh_next = Vec::Zero(h), dc_next = Vec::Zero(h);
  for (Eigen::Index s = L - 1; s >= 0; --s) {
    const Eigen::Index t = pos(s);
    const auto i = k.gates.col(t).segment(0, h).array();
    const auto f = k.gates.col(t).segment(h, h).array();
    const auto g = k.gates.col(t).segment(2 * h, h).array();
    const auto o = k.gates.col(t).segment(3 * h, h).array();
    const auto tc = k.tanh_c.col(t).array();
    const Eigen::ArrayXd dh = dh_out.col(t).array() + dh_next.array();
    const Eigen::ArrayXd dc = dh * o * (1.0 - tc.square()) + dc_next.array();
    Eigen::ArrayXd cprev = Eigen::ArrayXd::Zero(h);
    if (s > 0) {
      cprev = k.c.col(pos(s - 1)).array();
      hprev.col(t) = k.h.col(pos(s - 1));
    } else {
      hprev.col(t).setZero();
    }
    dz.col(t).segment(0, h) = (dc * g * i * (1.0 - i)).matrix();
    dz.col(t).segment(h, h) = (dc * cprev * f * (1.0 - f)).matrix();
    dz.col(t).segment(2 * h, h) = (dc * i * (1.0 - g.square())).matrix();
    dz.col(t).segment(3 * h, h) = (dh * tc * o * (1.0 - o)).matrix();
    dc_next = (dc * f).matrix();
    dh_next.noalias() = Wh.transpose() * dz.col(t);
  }
  ps.grad(idx.Wh).noalias() += dz * hprev.transpose();
  ps.grad(idx.Wx).noalias() += dz * k.x.transpose();
  ps.grad(idx.b).col(0) += dz.rowwise().sum();
  return ps.value(idx.Wx).transpose() * dz;
}

Mat bilstm_fwd(const ParameterStore &ps, const BiLstmIdx &idx, const Mat &x,
               BiLstmCache *cache) {
  const Mat f = lstm_fwd(ps, idx.fwd, x, false, cache ? &cache->fwd : nullptr);
  const Mat b = lstm_fwd(ps, idx.bwd, x, true, cache ? &cache->bwd : nullptr);
  Mat out(f.rows() + b.rows(), x.cols());
  out << f, b;
  return out;
}

Mat bilstm_bwd(ParameterStore &ps, const BiLstmIdx &idx, const BiLstmCache &c,
               const Mat &dy) {
  const Eigen::Index h = dy.rows() / 2;
  Mat dx = lstm_bwd(ps, idx.fwd, c.fwd, dy.topRows(h));
  dx += lstm_bwd(ps, idx.bwd, c.bwd, dy.bottomRows(h));
  return dx;
}

double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x * std::numbers::sqrt2 / 2)); }

double gelu_grad(double x) {
  const double cdf = 0.5 * (1.0 + std::erf(x * std::numbers::sqrt2 / 2));
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return cdf + x * pdf;
}

Mat block_fwd(const ParameterStore &ps, const BlockIdx &idx, int heads,
              const Mat &x, BlockCache *cache) {
  BlockCache local;
  BlockCache &c = cache ? *cache : local;
  const Eigen::Index H = x.rows();
  const Eigen::Index L = x.cols();
  const Eigen::Index dh = H / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  c.a = ln_fwd(ps, idx.ln1, x, &c.ln1);
  c.q = linear_fwd(ps, idx.q, c.a);
  c.k = linear_fwd(ps, idx.k, c.a);
  c.v = linear_fwd(ps, idx.v, c.a);
  c.o.resize(H, L);
  c.p.resize(static_cast<std::size_t>(heads));
  for (int hd = 0; hd < heads; ++hd) {
    Mat s = (c.k.middleRows(hd * dh, dh).transpose() * c.q.middleRows(hd * dh, dh)) * scale;
    for (Eigen::Index i = 0; i < L; ++i) {
      const double mx = s.col(i).maxCoeff();
      s.col(i) = (s.col(i).array() - mx).exp().matrix();
      s.col(i) /= s.col(i).sum();
    }
    c.o.middleRows(hd * dh, dh).noalias() = c.v.middleRows(hd * dh, dh) * s;
    c.p[static_cast<std::size_t>(hd)] = std::move(s);
  }
  Mat x1 = x + linear_fwd(ps, idx.o, c.o);
  c.b = ln_fwd(ps, idx.ln2, x1, &c.ln2);
  c.u = linear_fwd(ps, idx.ff1, c.b);
  c.act = c.u.unaryExpr([](double v) { return gelu(v); });
  x1 += linear_fwd(ps, idx.ff2, c.act);
  return x1;
}

Mat block_bwd(ParameterStore &ps, const BlockIdx &idx, int heads,
              const BlockCache &c, const Mat &dy) {
  const Eigen::Index H = dy.rows();
  const Eigen::Index L = dy.cols();
  const Eigen::Index dh = H / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  // Feed-forward branch: x2 = x1 + ff2(gelu(ff1(ln2(x1)))).
  Mat dact = linear_bwd(ps, idx.ff2, c.act, dy);
  dact.array() *= c.u.unaryExpr([](double v) { return gelu_grad(v); }).array();
  const Mat db = linear_bwd(ps, idx.ff1, c.b, dact);
  Mat dx1 = dy + ln_bwd(ps, idx.ln2, c.ln2, db);

  // Attention branch: x1 = x + o(attn(ln1(x))).
  const Mat d_o = linear_bwd(ps, idx.o, c.o, dx1);
  Mat dq(H, L), dk(H, L), dv(H, L);
  for (int hd = 0; hd < heads; ++hd) {
    const Mat &p = c.p[static_cast<std::size_t>(hd)];
    const auto doh = d_o.middleRows(hd * dh, dh);
    dv.middleRows(hd * dh, dh).noalias() = doh * p.transpose();
    Mat dp = c.v.middleRows(hd * dh, dh).transpose() * doh;
    for (Eigen::Index i = 0; i < L; ++i) {
      const double dot = p.col(i).dot(dp.col(i));
      dp.col(i) = (p.col(i).array() * (dp.col(i).array() - dot)).matrix();
    }
    dq.middleRows(hd * dh, dh).noalias() = scale * (c.k.middleRows(hd * dh, dh) * dp);
    dk.middleRows(hd * dh, dh).noalias() =
        scale * (c.q.middleRows(hd * dh, dh) * dp.transpose());
  }
  Mat da = linear_bwd(ps, idx.q, c.a, dq);
  da += linear_bwd(ps, idx.k, c.a, dk);
  da += linear_bwd(ps, idx.v, c.a, dv);
  dx1 += ln_bwd(ps, idx.ln1, c.ln1, da);
  return dx1;
}

Mat dropout_mask(util::Rng &rng, Eigen::Index rows, Eigen::Index cols, double p) {
  Mat m(rows, cols);
  const double keep = 1.0 / (1.0 - p);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      m(i, j) = util::uniform01(rng) < p ? 0.0 : keep;
  return m;
}

}  // namespace

struct Model::Index {
  int embedding = -1;
  LinearIdx in;
  int pos = -1;
  std::vector<BlockIdx> blocks;
  LnIdx final_ln;
  std::vector<BiLstmIdx> lstm;
  int head_w = -1;
  int head_b = -1;
};

struct ForwardCache::Impl {
  std::vector<SeqCache> seqs;
  std::uint64_t version = 0;
  bool has_activations = false;
};

ForwardCache::ForwardCache(): impl_(std::make_unique<Impl>()) { }
ForwardCache::~ForwardCache() = default;
ForwardCache::ForwardCache(ForwardCache &&) noexcept = default;
ForwardCache &ForwardCache::operator=(ForwardCache &&) noexcept = default;

Model::Model(const ModelConfig &config, int vocab_size)
    : config_(config), vocab_size_(vocab_size) {
  config_.validate();
  if (vocab_size < 1)
    throw ConfigError({ "vocabulary must not be empty" });
  util::Rng rng(util::derive_seed(config_.seed, 0));
  auto idx = std::make_shared<Index>();
  const int D = config_.embed_dim;
  const int H = config_.hidden_size;
  idx->embedding = params_.add("embedding", uniform_mat(rng, vocab_size, D, 0.1));
  int feat = D;
  switch (config_.encoder) {
  case Encoder::kBagOfTokens:
    break;
  case Encoder::kBiRecurrent:
    for (int l = 0; l < config_.num_layers; ++l) {
      const std::string n = "lstm" + std::to_string(l);
      const int in = l == 0 ? D : H;
      idx->lstm.push_back({ add_lstm(params_, rng, n + ".fwd", in, H / 2),
                            add_lstm(params_, rng, n + ".bwd", in, H / 2) });
    }
    feat = H;
    break;
  case Encoder::kSelfAttention:
    idx->in = add_linear(params_, rng, "in", H, D);
    if (config_.positional == Positional::kLearned)
      idx->pos = params_.add("pos", uniform_mat(rng, H, config_.max_len, 0.1));
    for (int l = 0; l < config_.num_layers; ++l) {
      const std::string n = "block" + std::to_string(l);
      BlockIdx b;
      b.ln1 = add_ln(params_, n + ".ln1", H);
      b.q = add_linear(params_, rng, n + ".q", H, H);
      b.k = add_linear(params_, rng, n + ".k", H, H);
      b.v = add_linear(params_, rng, n + ".v", H, H);
      b.o = add_linear(params_, rng, n + ".o", H, H);
      b.ln2 = add_ln(params_, n + ".ln2", H);
      b.ff1 = add_linear(params_, rng, n + ".ff1", config_.ffn_size(), H);
      b.ff2 = add_linear(params_, rng, n + ".ff2", H, config_.ffn_size());
      idx->blocks.push_back(b);
    }
    idx->final_ln = add_ln(params_, "final_ln", H);
    if (config_.recurrent_head)
      idx->lstm.push_back({ add_lstm(params_, rng, "rnn_head.fwd", H, H / 2),
                            add_lstm(params_, rng, "rnn_head.bwd", H, H / 2) });
    feat = H;
    break;
  }
  idx->head_w = params_.add("head.w", xavier(rng, feat, 1));
  idx->head_b = params_.add("head.b", Mat::Zero(1, 1));
  index_ = std::move(idx);

  if (config_.encoder == Encoder::kSelfAttention
      && config_.positional == Positional::kSinusoidal) {
    sinusoid_.resize(H, config_.max_len);
    for (int t = 0; t < config_.max_len; ++t)
      for (int i = 0; i < H; ++i) {
        const double freq =
            std::pow(10000.0, -static_cast<double>(i - i % 2) / static_cast<double>(H));
        sinusoid_(i, t) = i % 2 == 0 ? std::sin(t * freq) : std::cos(t * freq);
      }
  }
}

int Model::feature_size() const noexcept {
  return config_.encoder == Encoder::kBagOfTokens ? config_.embed_dim
                                                  : config_.hidden_size;
}

std::vector<double> Model::forward(const InputView &in, Mode mode, util::Rng *rng,
                                   ForwardCache *cache) const {
  const int n = in.rows();
  if (in.stride < 1 || in.ids.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(in.stride))
    throw ShapeMismatch("id matrix size does not match rows x stride");
  const bool train = mode == Mode::kTrain;
  const double p = train ? config_.dropout : 0.0;
  if (p > 0.0 && !rng)
    throw ShapeMismatch("training-mode dropout needs a random generator");
  const Index &ix = *index_;
  const Mat &E = params_.value(ix.embedding);
  if (cache) {
    cache->impl().seqs.clear();
    cache->impl().seqs.resize(static_cast<std::size_t>(n));
    cache->impl().version = params_.version();
    cache->impl().has_activations = train;
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    const int len = in.lengths[static_cast<std::size_t>(r)];
    if (len < 1 || len > in.stride || len > config_.max_len)
      throw ShapeMismatch("row " + std::to_string(r) + " has invalid length "
                          + std::to_string(len));
    SeqCache local;
    SeqCache &sc = (cache && train) ? cache->impl().seqs[static_cast<std::size_t>(r)] : local;
    const bool keep = cache && train;
    sc.len = len;
    sc.ids.assign(in.ids.begin() + static_cast<std::ptrdiff_t>(r) * in.stride,
                  in.ids.begin() + static_cast<std::ptrdiff_t>(r) * in.stride + len);
    Mat x(config_.embed_dim, len);
    for (int t = 0; t < len; ++t) {
      const int id = sc.ids[static_cast<std::size_t>(t)];
      if (id < 0 || id >= vocab_size_)
        throw ShapeMismatch("token id " + std::to_string(id) + " outside vocabulary");
      x.col(t) = E.row(id).transpose();
    }
    if (p > 0.0) {
      sc.emb_mask = dropout_mask(*rng, x.rows(), x.cols(), p);
      x.array() *= sc.emb_mask.array();
    }
    if (keep)
      sc.emb = x;

    Mat states;
    switch (config_.encoder) {
    case Encoder::kBagOfTokens:
      states = std::move(x);
      break;
    case Encoder::kBiRecurrent:
      sc.lstm.resize(ix.lstm.size());
      states = std::move(x);
      for (std::size_t l = 0; l < ix.lstm.size(); ++l)
        states = bilstm_fwd(params_, ix.lstm[l], states, keep ? &sc.lstm[l] : nullptr);
      break;
    case Encoder::kSelfAttention: {
      Mat h = linear_fwd(params_, ix.in, x);
      if (ix.pos >= 0) {
        h += params_.value(ix.pos).leftCols(len);
      } else {
        // Fixed positions have unit amplitude; lift the content to match.
        h *= std::sqrt(static_cast<double>(config_.hidden_size));
        h += sinusoid_.leftCols(len);
      }
      sc.blocks.resize(ix.blocks.size());
      for (std::size_t l = 0; l < ix.blocks.size(); ++l)
        h = block_fwd(params_, ix.blocks[l], config_.attention_heads, h,
                      keep ? &sc.blocks[l] : nullptr);
      h = ln_fwd(params_, ix.final_ln, h, keep ? &sc.final_ln : nullptr);
      if (!ix.lstm.empty()) {
        sc.lstm.resize(1);
        h = bilstm_fwd(params_, ix.lstm[0], h, keep ? &sc.lstm[0] : nullptr);
      }
      states = std::move(h);
      break;
    }
    }
    if (p > 0.0 && config_.encoder != Encoder::kBagOfTokens) {
      sc.out_mask = dropout_mask(*rng, states.rows(), states.cols(), p);
      states.array() *= sc.out_mask.array();
    }
    Vec pooled;
    if (config_.encoder == Encoder::kBagOfTokens)
      pooled = states.rowwise().sum();
    else if (config_.pooling == Pooling::kMean)
      pooled = states.rowwise().mean();
    else
      pooled = states.col(0);
    out[static_cast<std::size_t>(r)] =
        params_.value(ix.head_w).col(0).dot(pooled) + params_.value(ix.head_b)(0, 0);
    if (keep) {
      sc.states = std::move(states);
      sc.pooled = std::move(pooled);
    }
  }
  return out;
}

void Model::backward(const ForwardCache &cache, std::span<const double> dpred) {
  const auto &impl = cache.impl();
  if (!impl.has_activations)
    throw StaleCache("forward cache holds no training activations");
  if (impl.version != params_.version())
    throw StaleCache("parameters changed since the forward pass");
  if (dpred.size() != impl.seqs.size())
    throw ShapeMismatch("loss gradient size does not match the batch");
  const Index &ix = *index_;
  for (std::size_t r = 0; r < impl.seqs.size(); ++r) {
    const SeqCache &sc = impl.seqs[r];
    const double g = dpred[r];
    if (g == 0.0)
      continue;
    params_.grad(ix.head_w).col(0) += g * sc.pooled;
    params_.grad(ix.head_b)(0, 0) += g;
    const Vec dpool = g * params_.value(ix.head_w).col(0);
    Mat ds = Mat::Zero(dpool.size(), sc.len);
    if (config_.encoder == Encoder::kBagOfTokens)
      ds.colwise() = dpool;
    else if (config_.pooling == Pooling::kMean)
      ds.colwise() = dpool / static_cast<double>(sc.len);
    else
      ds.col(0) = dpool;
    if (sc.out_mask.size() > 0)
      ds.array() *= sc.out_mask.array();

    Mat dx;
    switch (config_.encoder) {
    case Encoder::kBagOfTokens:
      dx = std::move(ds);
      break;
    case Encoder::kBiRecurrent:
      for (std::size_t l = ix.lstm.size(); l-- > 0;)
        ds = bilstm_bwd(params_, ix.lstm[l], sc.lstm[l], ds);
      dx = std::move(ds);
      break;
    case Encoder::kSelfAttention: {
      if (!ix.lstm.empty())
        ds = bilstm_bwd(params_, ix.lstm[0], sc.lstm[0], ds);
      ds = ln_bwd(params_, ix.final_ln, sc.final_ln, ds);
      for (std::size_t l = ix.blocks.size(); l-- > 0;)
        ds = block_bwd(params_, ix.blocks[l], config_.attention_heads, sc.blocks[l], ds);
      if (ix.pos >= 0)
        params_.grad(ix.pos).leftCols(sc.len) += ds;
      else
        ds *= std::sqrt(static_cast<double>(config_.hidden_size));
      dx = linear_bwd(params_, ix.in, sc.emb, ds);
      break;
    }
    }
    if (sc.emb_mask.size() > 0)
      dx.array() *= sc.emb_mask.array();
    Mat &dE = params_.grad(ix.embedding);
    for (int t = 0; t < sc.len; ++t)
      dE.row(sc.ids[static_cast<std::size_t>(t)]) += dx.col(t).transpose();
  }
}

Mat Model::token_states(std::span<const int> ids) const {
  const int len = static_cast<int>(ids.size());
  const Index &ix = *index_;
  if (len < 1 || len > config_.max_len)
    throw ShapeMismatch("invalid sequence length");
  Mat x(config_.embed_dim, len);
  for (int t = 0; t < len; ++t) {
    if (ids[static_cast<std::size_t>(t)] < 0 || ids[static_cast<std::size_t>(t)] >= vocab_size_)
      throw ShapeMismatch("token id outside vocabulary");
    x.col(t) = params_.value(ix.embedding).row(ids[static_cast<std::size_t>(t)]).transpose();
  }
  switch (config_.encoder) {
  case Encoder::kBagOfTokens:
    return x;
  case Encoder::kBiRecurrent:
    for (const auto &l: ix.lstm)
      x = bilstm_fwd(params_, l, x, nullptr);
    return x;
  case Encoder::kSelfAttention: {
    Mat h = linear_fwd(params_, ix.in, x);
    h += ix.pos >= 0 ? Mat(params_.value(ix.pos).leftCols(len)) : Mat(sinusoid_.leftCols(len));
    for (const auto &b: ix.blocks)
      h = block_fwd(params_, b, config_.attention_heads, h, nullptr);
    h = ln_fwd(params_, ix.final_ln, h, nullptr);
    if (!ix.lstm.empty())
      h = bilstm_fwd(params_, ix.lstm[0], h, nullptr);
    return h;
  }
  }
  return x;
}

}  // namespace aisens::nn
