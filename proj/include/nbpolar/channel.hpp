#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nbpolar/code.hpp"
#include "nbpolar/llrv.hpp"
#include "nbpolar/split_decoder.hpp"

namespace nbpolar {

// Deterministic per-frame random stream: the (seed, frame) pair fully
// determines every draw, so frames can run on any worker in any order and
// still reproduce bit-identically.
class FrameRng {
 public:
  FrameRng(std::uint64_t seed, std::uint64_t frame);

  std::uint64_t next_u64();
  // Uniform in (0, 1].
  double next_unit_open();
  // Standard normal via Box-Muller.
  double next_gaussian();
  // Uniform symbol in [0, q) for q a power of two.
  GfElem next_symbol(unsigned q) {
    return static_cast<GfElem>(next_u64() & (q - 1));
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct ChannelConfig {
  double ebn0_db = 0.0;
  double rate = 0.5;        // K/N
  int bits_per_symbol = 1;  // r
  std::uint64_t seed = 1;

  // Per-dimension noise variance for unit-energy antipodal signalling.
  double noise_variance() const;
};

// BPSK maps each of the r symbol bits (LSB first) to +1 (bit 0) or -1
// (bit 1); white Gaussian noise of the configured variance is added.
std::vector<double> transmit(const std::vector<GfElem>& codeword,
                             int bits_per_symbol, double sigma, FrameRng& rng);

// Log-likelihood vector of one symbol from its r received values,
// normalized to max 0.
Llrv channel_llrv(std::span<const double> y, int bits_per_symbol,
                  double sigma, unsigned q);

std::vector<Llrv> channel_llrvs(std::span<const double> y,
                                int bits_per_symbol, double sigma, unsigned q);

// Exact LLRVs for a noiseless observation of a codeword (certainty spikes),
// for round-trip tests.
std::vector<Llrv> certainty_llrvs(const std::vector<GfElem>& codeword,
                                  unsigned q);

struct FerPoint {
  double ebn0_db = 0.0;
  long long frames = 0;
  long long errors = 0;
  double fer = 0.0;
  double ci_lo = 0.0;  // Wilson 95% interval
  double ci_hi = 0.0;
};

struct StopRule {
  long long max_frames = 1'000'000;
  long long min_errors = 100;
  long long batch = 256;  // scheduling granularity; no effect on results
};

struct DecoderSelect {
  enum class Kind { Sc, Scl, SNbscl };
  Kind kind = Kind::Scl;
  int L = 4;
  int Ls = 16;  // skimming factor, S-NBSCL only
};

// Monte-Carlo frame-error-rate sweep. Frames are processed in fixed-index
// batches so the stopping decision, and therefore the output, is identical
// for any worker count. The split spec must be provided for S-NBSCL runs.
std::vector<FerPoint> run_fer(const CodeSpec& code, const SplitSpec* split,
                              DecoderSelect dec,
                              const std::vector<double>& ebn0_list,
                              std::uint64_t seed, const StopRule& stop,
                              int workers, const QuantConfig& quant = {});

double wilson_lo(long long errors, long long frames);
double wilson_hi(long long errors, long long frames);

std::string fer_csv(const std::vector<FerPoint>& points);

// Eb/N0 (dB) at which the interpolated curve crosses the target FER;
// linear interpolation of log10(FER) between sweep points. Empty when the
// curve never brackets the target.
std::optional<double> ebn0_at_fer(const std::vector<FerPoint>& points,
                                  double target_fer);

}  // namespace nbpolar
