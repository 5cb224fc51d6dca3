#pragma once

#include <vector>

namespace nbpolar {

struct SortReport {
  std::vector<double> sorted;
  int phases = 0;
  long long cycles = 0;
};

// Classical bitonic network applied as compare-exchange stages; length must
// be a power of two. Phases counted as network stages:
// log2(W) * (log2(W)+1) / 2, one modeled cycle per stage.
SortReport bitonic_sort(std::vector<double> v, bool ascending = true);

// W x W two-dimensional sorter: six phases of alternating row/column
// bitonic passes (rows in snake directions, then columns ascending).
// Input length must be W^2 with W a power of two. log2(W)+1 phases reach
// row-major snake order on any input, so six phases fully sort every
// matrix up to W = 32. The modeled latency is 6 * (W + log2(W)) cycles,
// one W + log2(W) beat per phase of the pipelined networks.
SortReport sort2d(std::vector<double> v);

long long sort2d_cycles(int w);
inline constexpr int kSort2dPhases = 6;

// True when the matrix is fully sorted in row-major snake order (even rows
// left-to-right, odd rows right-to-left).
bool is_snake_sorted(const std::vector<double>& m, int w);

// Latency model of a conventional parallel merge sorter for k elements:
// round(k * log10(k)) cycles.
long long merge_sort_latency(long long k);

}  // namespace nbpolar
