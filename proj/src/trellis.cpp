#include "nbpolar/trellis.hpp"

#include <bit>
#include <stdexcept>

namespace nbpolar {

TrellisContext make_trellis_context(const CodeSpec& code,
                                    const std::vector<Llrv>& channel,
                                    const QuantConfig& quant) {
  if (channel.size() != static_cast<size_t>(code.N))
    throw std::invalid_argument("trellis: channel length != N");
  TrellisContext ctx;
  ctx.gf = &code.field;
  ctx.kernel = code.kernel;
  ctx.len = code.N;
  ctx.n = code.n;
  ctx.channel = &channel;
  ctx.quant = quant;
  return ctx;
}

PathState::PathState(const TrellisContext& ctx) : ctx_(&ctx) {
  const size_t q = ctx.gf->order();
  llr_.resize(static_cast<size_t>(ctx.n));
  for (int d = 1; d <= ctx.n; ++d)
    llr_[d - 1].assign(static_cast<size_t>(ctx.len >> d) * q, 0.0);
  psum_out_.resize(static_cast<size_t>(ctx.n) + 1);
  psum_left_.resize(static_cast<size_t>(ctx.n) + 1);
  for (int d = 0; d <= ctx.n; ++d) {
    psum_out_[d].assign(static_cast<size_t>(ctx.len >> d), 0);
    psum_left_[d].assign(static_cast<size_t>(ctx.len >> d), 0);
  }
  decisions_.reserve(static_cast<size_t>(ctx.len));
}

std::span<const double> PathState::layer_input(int d, int node) const {
  const size_t q = ctx_->gf->order();
  if (d == 0) return std::span<const double>((*ctx_->channel)[node]);
  return std::span<const double>(llr_[d - 1]).subspan(
      static_cast<size_t>(node) * q, q);
}

std::span<double> PathState::llr_at(int d, int node) {
  const size_t q = ctx_->gf->order();
  return std::span<double>(llr_[d - 1]).subspan(static_cast<size_t>(node) * q,
                                                q);
}

std::span<const double> PathState::leaf_llrv(int i) {
  if (i != next_)
    throw std::invalid_argument("trellis: symbols must be decoded in order");
  if (i >= ctx_->len) throw std::invalid_argument("trellis: index out of range");

  int first_depth;
  if (i == 0) {
    first_depth = 1;
  } else {
    int z = std::countr_zero(static_cast<unsigned>(i));
    int dg = ctx_->n - z;
    // G step: condition on the completed left sibling's partial sums.
    int half = ctx_->len >> dg;
    for (int j = 0; j < half; ++j) {
      g_node(*ctx_->gf, ctx_->kernel, layer_input(dg - 1, j),
             layer_input(dg - 1, j + half), psum_left_[dg][j], llr_at(dg, j));
      quantize_llrv_inplace(llr_at(dg, j), ctx_->quant);
    }
    first_depth = dg + 1;
  }
  for (int d = first_depth; d <= ctx_->n; ++d) {
    int half = ctx_->len >> d;
    for (int j = 0; j < half; ++j) {
      f_node(*ctx_->gf, ctx_->kernel, layer_input(d - 1, j),
             layer_input(d - 1, j + half), llr_at(d, j));
      quantize_llrv_inplace(llr_at(d, j), ctx_->quant);
    }
  }
  leaf_ready_ = true;
  return layer_input(ctx_->n, 0);
}

void PathState::commit(GfElem symbol) {
  if (!leaf_ready_)
    throw std::logic_error("trellis: commit without a leaf_llrv call");
  if (symbol >= ctx_->gf->order())
    throw std::invalid_argument("trellis: symbol outside the field");
  const GfContext& gf = *ctx_->gf;
  const GfElem a = ctx_->kernel.alpha;
  const GfElem b = ctx_->kernel.beta;
  int i = next_;
  decisions_.push_back(symbol);
  psum_out_[ctx_->n][0] = symbol;
  for (int d = ctx_->n; d >= 1; --d) {
    int s = ctx_->len >> d;  // leaves per node at this depth
    int lo = (i / s) * s;
    if (i != lo + s - 1) break;  // node not complete yet
    if (lo % (2 * s) == 0) {
      // Left child finished: stash its encoding for the parent's G step.
      psum_left_[d] = psum_out_[d];
      break;
    }
    // Right child finished: fold both halves into the parent encoding.
    for (int j = 0; j < s; ++j) {
      psum_out_[d - 1][j] =
          GfContext::add(psum_left_[d][j], gf.mul(a, psum_out_[d][j]));
      psum_out_[d - 1][j + s] = gf.mul(b, psum_out_[d][j]);
    }
  }
  ++next_;
  leaf_ready_ = false;
}

std::span<const GfElem> PathState::codeword_psum() const {
  if (next_ != ctx_->len)
    throw std::logic_error("trellis: codeword_psum before decode completed");
  return psum_out_[0];
}

PathState::PsumLayers PathState::recompute_psums() const {
  // Replay the decision history through fresh layers (no LLRV work).
  const GfContext& gf = *ctx_->gf;
  const GfElem a = ctx_->kernel.alpha;
  const GfElem b = ctx_->kernel.beta;
  PsumLayers layers;
  layers.left.resize(static_cast<size_t>(ctx_->n) + 1);
  layers.out.resize(static_cast<size_t>(ctx_->n) + 1);
  for (int d = 0; d <= ctx_->n; ++d) {
    layers.left[d].assign(static_cast<size_t>(ctx_->len >> d), 0);
    layers.out[d].assign(static_cast<size_t>(ctx_->len >> d), 0);
  }
  for (int i = 0; i < static_cast<int>(decisions_.size()); ++i) {
    layers.out[ctx_->n][0] = decisions_[i];
    for (int d = ctx_->n; d >= 1; --d) {
      int s = ctx_->len >> d;
      int lo = (i / s) * s;
      if (i != lo + s - 1) break;
      if (lo % (2 * s) == 0) {
        layers.left[d] = layers.out[d];
        break;
      }
      for (int j = 0; j < s; ++j) {
        layers.out[d - 1][j] =
            GfContext::add(layers.left[d][j], gf.mul(a, layers.out[d][j]));
        layers.out[d - 1][j + s] = gf.mul(b, layers.out[d][j]);
      }
    }
  }
  return layers;
}

}  // namespace nbpolar
