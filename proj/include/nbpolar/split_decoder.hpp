#pragma once

#include <string>
#include <vector>

#include "nbpolar/code.hpp"
#include "nbpolar/scl.hpp"
#include "nbpolar/trellis.hpp"

namespace nbpolar {

struct SkimConfig {
  int L = 4;
  int Ls = 16;
  std::size_t assembly_budget = 1u << 20;  // cap on Ls^M

  void validate(int M, unsigned q) const;
};

// Candidate extension local to one sub-decoder: the global survivor it
// extends, the proposed symbol and the accumulated local metric.
struct SubPath {
  int parent = 0;
  GfElem symbol = 0;
  double pm = 0.0;
};

// One consistent combination of sub-paths, one per sub-decoder.
struct GlobalPath {
  std::vector<int> member;  // index into each sub-decoder's skimmed list
  int parent = 0;
  double pm = 0.0;  // sum of member local metrics
};

struct SplitStats {
  int bypassed = 0;
  int reconciled = 0;
  std::vector<std::size_t> valid_tuples;  // per reconciled level
  bool failed = false;

  std::string to_json() const;
};

// Cross-sub-decoder constraint at one level: recover the original symbols
// from the stream symbols and compare against the frozen targets.
struct LevelConstraint {
  const GfContext* gf = nullptr;
  const GfMatrix* T_inv = nullptr;
  std::vector<std::pair<int, GfElem>> frozen_mu;  // (slot k, required value)

  bool tuple_valid(const std::vector<GfElem>& w) const;
};

LevelConstraint level_constraint(const SplitSpec& split, int level);

// Skimming stage of the reconciliation: drop sub-paths that violate a
// locally-decidable frozen symbol, sort the rest by PM descending
// (deterministic tie-break by generation order) and keep the top Ls.
// An empty result signals a dead frame.
std::vector<SubPath> skim_subpaths(std::vector<SubPath> subpaths,
                                   bool locally_frozen, GfElem frozen_value,
                                   const SkimConfig& cfg);

// Cartesian assembly of the skimmed lists: only tuples whose members
// descend from the same surviving global path and satisfy the level
// constraint are kept; the tuple PM is the sum of member PMs. Results are
// in deterministic generation order (parent, then member positions).
std::vector<GlobalPath> assemble_globals(
    const std::vector<std::vector<SubPath>>& skimmed,
    const LevelConstraint& constraint);

// Writes the member sub-paths of the selected globals back into the
// sub-decoder survivor slots (slot g holds the member of global g),
// duplicating shared path states as needed, and commits the symbols.
std::vector<std::vector<PathState>> distribute_paths(
    const std::vector<GlobalPath>& top,
    const std::vector<std::vector<SubPath>>& skimmed,
    std::vector<std::vector<PathState>> states);

// Split-tree SCL decoding: M parallel sub-decoders over N/M-symbol
// trellises with per-level skimming and reconciliation. The channel is
// consumed as M contiguous blocks of N/M LLRVs.
DecodeResult s_nbscl_decode(const SplitSpec& split,
                            const std::vector<Llrv>& channel,
                            const SkimConfig& cfg, SplitStats* stats = nullptr,
                            const QuantConfig& quant = {});

}  // namespace nbpolar
