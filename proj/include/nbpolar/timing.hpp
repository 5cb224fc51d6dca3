#pragma once

#include <cstdint>
#include <vector>

namespace nbpolar {

// Architecture parameters of the cycle model. Unit costs follow the
// prototype design: an F processing element takes 2*log2(q)+3 cycles, a G
// element 5, PM calculation 1 cycle, the sub-path filter 34 cycles of
// load/validate overhead, the global path calculator 1 cycle, and PM
// updates back-propagate through log2 of the (sub-)trellis depth.
struct ArchParams {
  unsigned q = 256;
  int L = 4;
  int N = 128;
  int K = 64;
  int M = 2;
  int Ls = 16;
  double clock_hz = 500e6;

  int n() const;
  int n_sub() const;  // log2(N/M)
  int pe_f_cycles() const;  // 2*log2(q) + 3
  static constexpr int pe_g_cycles = 5;
  static constexpr int pm_calc = 1;
  static constexpr int filter_overhead = 34;
  static constexpr int global_calc = 1;
};

struct TimingReport {
  long long trellis_cycles = 0;
  long long pm_cycles = 0;
  long long recon_cycles = 0;
  long long total_cycles = 0;
  double throughput_mbps = 0.0;

  // Named sub-terms for reporting.
  long long per_free_symbol = 0;   // direct-mapped PM block per free symbol
  long long per_recon_level = 0;   // split reconciliation block per level
  long long skim_sort_cycles = 0;
  long long global_sort_cycles = 0;
};

// Coded-bit throughput: N * r symbol bits per frame over the frame latency.
double throughput_mbps(long long total_cycles, int N, int bits_per_symbol,
                       double clock_hz);

// Direct-mapped decoder frame latency: (2N-2) F-element passes of trellis
// work, then per symbol a PM calculation, plus sort and partial-sum update
// for free symbols only.
TimingReport dm_frame_latency(const ArchParams& p,
                              const std::vector<std::uint8_t>& frozen_pattern);

// Split-tree decoder frame latency over N/M levels: the parallel
// sub-trellis work, one cycle per bypassed level, and the full
// reconciliation pipeline (skim sort, filter overhead, global calculation,
// global sort, partial-sum update) per reconciled level.
TimingReport st_frame_latency(
    const ArchParams& p, const std::vector<std::uint8_t>& level_bypassed);

}  // namespace nbpolar
