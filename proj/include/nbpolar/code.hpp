#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nbpolar/gf.hpp"
#include "nbpolar/llrv.hpp"

namespace nbpolar {

// (N, K) nonbinary polar code over GF(q) with kernel [[1,0],[alpha,beta]].
struct CodeSpec {
  int N = 0;  // code length in symbols, power of two
  int K = 0;  // free symbol count
  int n = 0;  // log2(N)
  GfContext field;
  KernelCoeffs kernel;
  std::vector<std::uint8_t> frozen;  // per-index flag
  std::vector<GfElem> frozen_value;  // meaningful where frozen[i] != 0

  void validate() const;  // throws on inconsistent fields
  bool is_frozen(int i) const { return frozen[static_cast<size_t>(i)] != 0; }
};

CodeSpec make_code(int N, int K, GfContext field, KernelCoeffs kernel,
                   std::vector<std::uint8_t> frozen,
                   std::vector<GfElem> frozen_value);

// Kernel encoding c = u * F^(x)n in n butterfly stages, O(N log N) symbol
// operations. With enforce_frozen set, u must carry the frozen values at
// frozen indices (throws std::invalid_argument otherwise).
std::vector<GfElem> encode(const CodeSpec& code, const std::vector<GfElem>& u,
                           bool enforce_frozen = true);

// Scatters message symbols into the free positions and frozen values into
// the rest.
std::vector<GfElem> expand_message(const CodeSpec& code,
                                   const std::vector<GfElem>& message);
std::vector<GfElem> extract_message(const CodeSpec& code,
                                    const std::vector<GfElem>& u);

// Small dense GF matrix, used for the cross-subcode constraint system.
struct GfMatrix {
  int rows = 0, cols = 0;
  std::vector<GfElem> a;
  GfElem& at(int r, int c) { return a[static_cast<size_t>(r * cols + c)]; }
  GfElem at(int r, int c) const { return a[static_cast<size_t>(r * cols + c)]; }
};

GfMatrix gf_identity(int n);
GfMatrix gf_mat_invert(const GfContext& gf, const GfMatrix& m);
std::vector<GfElem> gf_mat_apply(const GfContext& gf, const GfMatrix& m,
                                 const std::vector<GfElem>& v);

// Split of an N-symbol code into M subcodes of N/M symbols. Stream j is
// decoded by sub-decoder j against the j-th contiguous block of the
// channel. At every level i the M stream symbols w relate to the M
// original symbols mu_k = u[i + k*N/M] through w = T * mu, with T the same
// invertible upper-triangular matrix at every level.
struct SplitSpec {
  CodeSpec original;
  int M = 0;
  std::vector<CodeSpec> subcodes;  // local frozen flags/values per stream
  GfMatrix T;      // stream symbols from original symbols
  GfMatrix T_inv;  // original symbols from stream symbols

  int levels() const { return original.N / M; }
  // Original index feeding slot k of the constraint at a level.
  int original_index(int level, int k) const {
    return level + k * (original.N / M);
  }
  // True when the level carries no free symbol, so reconciliation can be
  // bypassed.
  bool level_all_frozen(int level) const;
  std::vector<std::uint8_t> level_bypass_pattern() const;
};

// Derives the M subcode specifications plus the constraint system.
// M must be 2 or 4 and smaller than N.
SplitSpec split_code(const CodeSpec& code, int M);

// Splits a source vector u into the M per-stream symbol sequences
// (the generative direction of the constraint, used by encoding and
// by the reconstruction tests).
std::vector<std::vector<GfElem>> split_streams(const SplitSpec& split,
                                               const std::vector<GfElem>& u);

// Inverse of split_streams: recover u from per-stream decisions.
std::vector<GfElem> merge_streams(const SplitSpec& split,
                                  const std::vector<std::vector<GfElem>>& w);

// Frozen-set file format: header "N K q alpha beta poly", then one line
// "index value" per frozen index, all decimal.
void save_code(const CodeSpec& code, std::ostream& os);
void save_code_file(const CodeSpec& code, const std::string& path);
CodeSpec load_code(std::istream& is);
CodeSpec load_code_file(const std::string& path);

// Monte-Carlo genie-aided construction settings.
struct ConstructionConfig {
  double design_ebn0_db = 3.5;
  int trials = 1000;  // must be >= 1000
  std::uint64_t seed = 1;
  int workers = 1;
};

// Genie-aided construction: simulate SC decoding of random codewords over
// AWGN at the design SNR, count first-error events per index with all
// earlier symbols corrected, and freeze the N-K worst indices (values 0).
// Deterministic given the seed, independent of worker count.
CodeSpec construct_frozen_set(int N, int K, const GfContext& field,
                              KernelCoeffs kernel,
                              const ConstructionConfig& cfg);

// Small deterministic search for kernel coefficients: picks the candidate
// whose genie error counts concentrate worst-channel mass outside the best
// K indices. Used when the caller does not fix (alpha, beta).
KernelCoeffs select_kernel(int N, int K, const GfContext& field,
                           const ConstructionConfig& cfg);

}  // namespace nbpolar
