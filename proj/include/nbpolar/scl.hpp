#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "nbpolar/code.hpp"
#include "nbpolar/trellis.hpp"

namespace nbpolar {

// Path-metric increment for extending a path with `symbol`, given the
// decision-level LLRV. The increment is the log of the proper conditional
// probability of the symbol (log-softmax of the LLRV), which keeps path
// metrics comparable across paths: the accumulated PM of a full path is
// then the codeword log-likelihood up to a path-independent constant.
inline double pm_increment(std::span<const double> leaf, GfElem symbol) {
  double sum = 0.0;
  for (double x : leaf) sum += std::exp(x);
  return leaf[symbol] - std::log(sum);
}

struct Candidate {
  int parent = 0;
  GfElem symbol = 0;
  double pm = 0.0;
};

struct DecodeResult {
  std::vector<GfElem> u;          // full decision vector of the best path
  std::vector<GfElem> message;    // free-symbol values of the best path
  std::vector<double> final_pms;  // per-survivor metrics, list order
  std::vector<std::vector<GfElem>> survivors;  // decisions of every survivor
  bool failed = false;            // set by the split decoder on dead ends
};

// One SCL step: extends every path with the frozen value (frozen index) or
// with all q symbols (free index), sorts the candidates by PM (ties broken
// by parent index, then symbol value) and keeps the top L, duplicating or
// dropping path states as needed.
std::vector<PathState> extend_and_select(std::vector<PathState> paths,
                                         const std::vector<Llrv>& leaf_llrvs,
                                         int i, const CodeSpec& code, int L,
                                         const QuantConfig& quant = {});

// Successive-cancellation list decoding; SC is the L = 1 case. The best
// final path is selected purely by PM (no CRC).
DecodeResult scl_decode(const CodeSpec& code, const std::vector<Llrv>& channel,
                        int L, const QuantConfig& quant = {});

}  // namespace nbpolar
