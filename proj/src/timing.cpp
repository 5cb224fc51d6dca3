#include "nbpolar/timing.hpp"

#include <cmath>
#include <stdexcept>

#include "nbpolar/sorter.hpp"

namespace nbpolar {

namespace {

int ilog2(unsigned n) {
  int d = 0;
  while ((1u << d) < n) ++d;
  return d;
}

}  // namespace

int ArchParams::n() const { return ilog2(static_cast<unsigned>(N)); }
int ArchParams::n_sub() const { return ilog2(static_cast<unsigned>(N / M)); }
int ArchParams::pe_f_cycles() const { return 2 * ilog2(q) + 3; }

double throughput_mbps(long long total_cycles, int N, int bits_per_symbol,
                       double clock_hz) {
  if (total_cycles <= 0)
    throw std::invalid_argument("throughput: cycles must be positive");
  double bits = static_cast<double>(N) * bits_per_symbol;
  return bits * clock_hz / static_cast<double>(total_cycles) / 1e6;
}

TimingReport dm_frame_latency(const ArchParams& p,
                              const std::vector<std::uint8_t>& frozen_pattern) {
  if (frozen_pattern.size() != static_cast<size_t>(p.N))
    throw std::invalid_argument("dm_frame_latency: pattern length != N");
  TimingReport rep;
  rep.trellis_cycles = static_cast<long long>(2 * p.N - 2) * p.pe_f_cycles();
  long long sort = merge_sort_latency(static_cast<long long>(p.q) * p.L);
  rep.per_free_symbol = ArchParams::pm_calc + sort + p.n();
  for (std::uint8_t frozen : frozen_pattern)
    rep.pm_cycles += frozen ? ArchParams::pm_calc : rep.per_free_symbol;
  rep.recon_cycles = 0;
  rep.total_cycles = rep.trellis_cycles + rep.pm_cycles;
  rep.throughput_mbps = throughput_mbps(rep.total_cycles, p.N,
                                        ilog2(p.q), p.clock_hz);
  return rep;
}

TimingReport st_frame_latency(
    const ArchParams& p, const std::vector<std::uint8_t>& level_bypassed) {
  if (level_bypassed.size() != static_cast<size_t>(p.N / p.M))
    throw std::invalid_argument("st_frame_latency: pattern length != N/M");
  TimingReport rep;
  rep.trellis_cycles =
      static_cast<long long>(2 * (p.N / p.M) - 2) * p.pe_f_cycles();

  // Skim sorter spans the qL sub-path PMs, the global sorter the Ls^M
  // assembled PMs; both reshape into the nearest W x W square.
  int w_skim = static_cast<int>(
      std::ceil(std::sqrt(static_cast<double>(p.q) * p.L)));
  double tuples = std::pow(static_cast<double>(p.Ls), p.M);
  int w_glob = static_cast<int>(std::ceil(std::sqrt(tuples)));
  rep.skim_sort_cycles = sort2d_cycles(w_skim);
  rep.global_sort_cycles = sort2d_cycles(w_glob);
  rep.per_recon_level = rep.skim_sort_cycles + ArchParams::filter_overhead +
                        ArchParams::global_calc + rep.global_sort_cycles +
                        p.n_sub();

  for (std::uint8_t bypassed : level_bypassed) {
    if (bypassed)
      rep.pm_cycles += 1;
    else
      rep.recon_cycles += rep.per_recon_level;
  }
  rep.total_cycles = rep.trellis_cycles + rep.pm_cycles + rep.recon_cycles;
  rep.throughput_mbps = throughput_mbps(rep.total_cycles, p.N,
                                        ilog2(p.q), p.clock_hz);
  return rep;
}

}  // namespace nbpolar
