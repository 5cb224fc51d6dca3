#pragma once

#include <span>
#include <vector>

#include "nbpolar/code.hpp"
#include "nbpolar/llrv.hpp"

namespace nbpolar {

// Shared, read-only inputs of one decode: the field/kernel, the code
// length, and the channel LLRVs (depth-0 layer of the trellis).
struct TrellisContext {
  const GfContext* gf = nullptr;
  KernelCoeffs kernel;
  int len = 0;  // code length in symbols
  int n = 0;    // log2(len)
  const std::vector<Llrv>* channel = nullptr;
  QuantConfig quant;
};

TrellisContext make_trellis_context(const CodeSpec& code,
                                    const std::vector<Llrv>& channel,
                                    const QuantConfig& quant = {});

// Decoder path state over one trellis: per-depth LLRV caches, per-depth
// partial sums, the decision history and the accumulated path metric.
// Copying a PathState is a deep copy (survivor duplication).
class PathState {
 public:
  explicit PathState(const TrellisContext& ctx);

  // Computes (through the cached F/G schedule) the decision-level LLRV for
  // symbol i. Symbols must be requested in order: i == next_index().
  // The returned span stays valid until the next leaf_llrv/commit call.
  std::span<const double> leaf_llrv(int i);

  // Records the decision for the current symbol and back-propagates
  // partial sums. Must follow the leaf_llrv call for the same index.
  void commit(GfElem symbol);

  double pm() const { return pm_; }
  void set_pm(double pm) { pm_ = pm; }

  int next_index() const { return next_; }
  const std::vector<GfElem>& decisions() const { return decisions_; }

  // Partial encoding of the whole block; valid once all symbols committed.
  std::span<const GfElem> codeword_psum() const;

  const std::vector<std::vector<GfElem>>& psum_left_layers() const {
    return psum_left_;
  }
  const std::vector<std::vector<GfElem>>& psum_out_layers() const {
    return psum_out_;
  }

  struct PsumLayers {
    std::vector<std::vector<GfElem>> left;
    std::vector<std::vector<GfElem>> out;
  };
  // Re-derives the partial-sum layers from the decision history alone; used
  // by consistency checks after path redistribution.
  PsumLayers recompute_psums() const;

 private:
  std::span<double> llr_at(int d, int node);
  std::span<const double> layer_input(int d, int node) const;

  const TrellisContext* ctx_;
  double pm_ = 0.0;
  int next_ = 0;
  bool leaf_ready_ = false;
  std::vector<GfElem> decisions_;
  // llr_[d] holds the active node of depth d+1 as a flat (len>>d+1)*q buffer.
  std::vector<std::vector<double>> llr_;
  // psum_out_[d] / psum_left_[d]: completed-subtree encodings at depth d.
  std::vector<std::vector<GfElem>> psum_out_;
  std::vector<std::vector<GfElem>> psum_left_;
};

}  // namespace nbpolar
