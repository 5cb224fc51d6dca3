#include "nbpolar/split_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nbpolar {

void SkimConfig::validate(int M, unsigned q) const {
  if (L < 1) throw std::invalid_argument("SkimConfig: L must be >= 1");
  if (Ls < L || static_cast<unsigned>(Ls) > q * static_cast<unsigned>(L))
    throw std::invalid_argument("SkimConfig: need L <= Ls <= q*L");
  double tuples = std::pow(static_cast<double>(Ls), M);
  if (tuples > static_cast<double>(assembly_budget))
    throw std::invalid_argument("SkimConfig: Ls^M exceeds the assembly budget");
}

std::string SplitStats::to_json() const {
  std::ostringstream os;
  os << "{\"bypassed_levels\":" << bypassed
     << ",\"reconciled_levels\":" << reconciled << ",\"failed\":"
     << (failed ? "true" : "false") << ",\"valid_tuples\":[";
  for (size_t i = 0; i < valid_tuples.size(); ++i) {
    if (i) os << ',';
    os << valid_tuples[i];
  }
  os << "]}";
  return os.str();
}

bool LevelConstraint::tuple_valid(const std::vector<GfElem>& w) const {
  if (frozen_mu.empty()) return true;
  for (const auto& [k, theta] : frozen_mu) {
    GfElem acc = 0;
    for (int c = 0; c < T_inv->cols; ++c)
      acc = GfContext::add(acc, gf->mul(T_inv->at(k, c), w[c]));
    if (acc != theta) return false;
  }
  return true;
}

LevelConstraint level_constraint(const SplitSpec& split, int level) {
  LevelConstraint lc;
  lc.gf = &split.original.field;
  lc.T_inv = &split.T_inv;
  for (int k = 0; k < split.M; ++k) {
    int idx = split.original_index(level, k);
    if (split.original.is_frozen(idx))
      lc.frozen_mu.emplace_back(k, split.original.frozen_value[idx]);
  }
  return lc;
}

std::vector<SubPath> skim_subpaths(std::vector<SubPath> subpaths,
                                   bool locally_frozen, GfElem frozen_value,
                                   const SkimConfig& cfg) {
  if (locally_frozen) {
    std::erase_if(subpaths,
                  [&](const SubPath& s) { return s.symbol != frozen_value; });
  }
  std::stable_sort(subpaths.begin(), subpaths.end(),
                   [](const SubPath& a, const SubPath& b) {
                     return a.pm > b.pm;
                   });
  if (subpaths.size() > static_cast<size_t>(cfg.Ls))
    subpaths.resize(static_cast<size_t>(cfg.Ls));
  return subpaths;
}

std::vector<GlobalPath> assemble_globals(
    const std::vector<std::vector<SubPath>>& skimmed,
    const LevelConstraint& constraint) {
  const int m = static_cast<int>(skimmed.size());
  int max_parent = -1;
  for (const auto& list : skimmed)
    for (const SubPath& s : list) max_parent = std::max(max_parent, s.parent);

  std::vector<GlobalPath> out;
  std::vector<int> pick(static_cast<size_t>(m));
  std::vector<GfElem> w(static_cast<size_t>(m));
  // Per surviving global parent, walk the Cartesian product of same-parent
  // sub-paths in list order (lists arrive sorted by PM).
  for (int g = 0; g <= max_parent; ++g) {
    std::vector<std::vector<int>> idx(static_cast<size_t>(m));
    bool feasible = true;
    for (int j = 0; j < m; ++j) {
      for (size_t t = 0; t < skimmed[j].size(); ++t)
        if (skimmed[j][t].parent == g) idx[j].push_back(static_cast<int>(t));
      if (idx[j].empty()) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      double pm = 0.0;
      for (int j = 0; j < m; ++j) {
        const SubPath& s = skimmed[j][idx[j][pick[j]]];
        w[j] = s.symbol;
        pm += s.pm;
      }
      if (constraint.tuple_valid(w)) {
        GlobalPath gp;
        gp.member.resize(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j) gp.member[j] = idx[j][pick[j]];
        gp.parent = g;
        gp.pm = pm;
        out.push_back(std::move(gp));
      }
      int j = m - 1;
      while (j >= 0 && ++pick[j] == static_cast<int>(idx[j].size()))
        pick[j--] = 0;
      if (j < 0) break;
    }
  }
  return out;
}

std::vector<std::vector<PathState>> distribute_paths(
    const std::vector<GlobalPath>& top,
    const std::vector<std::vector<SubPath>>& skimmed,
    std::vector<std::vector<PathState>> states) {
  if (top.empty())
    throw std::invalid_argument("distribute_paths: no surviving global path");
  const int m = static_cast<int>(states.size());
  std::vector<std::vector<PathState>> out(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    std::vector<int> refs(states[j].size(), 0);
    for (const GlobalPath& gp : top)
      ++refs[skimmed[j][gp.member[j]].parent];
    out[j].reserve(top.size());
    for (const GlobalPath& gp : top) {
      const SubPath& s = skimmed[j][gp.member[j]];
      if (--refs[s.parent] > 0)
        out[j].push_back(states[j][s.parent]);  // shared: deep copy
      else
        out[j].push_back(std::move(states[j][s.parent]));
      out[j].back().set_pm(s.pm);
      out[j].back().commit(s.symbol);
    }
  }
  return out;
}

DecodeResult s_nbscl_decode(const SplitSpec& split,
                            const std::vector<Llrv>& channel,
                            const SkimConfig& cfg, SplitStats* stats,
                            const QuantConfig& quant) {
  const GfContext& gf = split.original.field;
  const unsigned q = gf.order();
  cfg.validate(split.M, q);
  const int levels = split.levels();
  if (channel.size() != static_cast<size_t>(split.original.N))
    throw std::invalid_argument("s_nbscl_decode: channel length != N");

  SplitStats local_stats;
  SplitStats& st = stats ? *stats : local_stats;
  st = SplitStats{};

  // Per-sub-decoder channel blocks and trellis contexts.
  std::vector<std::vector<Llrv>> blocks(static_cast<size_t>(split.M));
  std::vector<TrellisContext> ctx(static_cast<size_t>(split.M));
  for (int j = 0; j < split.M; ++j) {
    blocks[j].assign(channel.begin() + j * levels,
                     channel.begin() + (j + 1) * levels);
    ctx[j] = make_trellis_context(split.subcodes[j], blocks[j], quant);
  }

  std::vector<std::vector<PathState>> states(static_cast<size_t>(split.M));
  for (int j = 0; j < split.M; ++j) states[j].emplace_back(ctx[j]);

  auto fail = [&]() {
    st.failed = true;
    DecodeResult res;
    res.failed = true;
    return res;
  };

  std::vector<std::vector<SubPath>> lists(static_cast<size_t>(split.M));
  for (int level = 0; level < levels; ++level) {
    // Sub-decoding: local leaf LLRVs and candidate sub-paths.
    for (int j = 0; j < split.M; ++j) {
      lists[j].clear();
      const CodeSpec& sub = split.subcodes[j];
      for (size_t g = 0; g < states[j].size(); ++g) {
        auto leaf = states[j][g].leaf_llrv(level);
        if (sub.is_frozen(level)) {
          GfElem sigma = sub.frozen_value[level];
          double pm = states[j][g].pm() + pm_increment(leaf, sigma);
          lists[j].push_back(
              {static_cast<int>(g), sigma, quantize_pm(pm, quant)});
        } else {
          for (unsigned sym = 0; sym < q; ++sym) {
            double pm = states[j][g].pm() +
                        pm_increment(leaf, static_cast<GfElem>(sym));
            lists[j].push_back({static_cast<int>(g), static_cast<GfElem>(sym),
                                quantize_pm(pm, quant)});
          }
        }
      }
    }

    if (split.level_all_frozen(level)) {
      // All M symbols fixed: one extension per survivor, no reconciliation.
      for (int j = 0; j < split.M; ++j) {
        for (size_t g = 0; g < states[j].size(); ++g) {
          states[j][g].set_pm(lists[j][g].pm);
          states[j][g].commit(lists[j][g].symbol);
        }
      }
      ++st.bypassed;
      continue;
    }

    for (int j = 0; j < split.M; ++j) {
      const CodeSpec& sub = split.subcodes[j];
      lists[j] = skim_subpaths(std::move(lists[j]), sub.is_frozen(level),
                               sub.frozen_value[level], cfg);
      if (lists[j].empty()) return fail();
    }

    std::vector<GlobalPath> globals =
        assemble_globals(lists, level_constraint(split, level));
    if (globals.empty()) return fail();
    std::stable_sort(globals.begin(), globals.end(),
                     [](const GlobalPath& a, const GlobalPath& b) {
                       return a.pm > b.pm;
                     });
    st.valid_tuples.push_back(globals.size());
    if (globals.size() > static_cast<size_t>(cfg.L))
      globals.resize(static_cast<size_t>(cfg.L));
    states = distribute_paths(globals, lists, std::move(states));
    ++st.reconciled;
  }

  // Best global path: slot metrics sum across sub-decoders.
  size_t best = 0;
  double best_pm = -1e300;
  for (size_t g = 0; g < states[0].size(); ++g) {
    double pm = 0.0;
    for (int j = 0; j < split.M; ++j) pm += states[j][g].pm();
    if (pm > best_pm) {
      best_pm = pm;
      best = g;
    }
  }

  std::vector<std::vector<GfElem>> w(static_cast<size_t>(split.M));
  for (int j = 0; j < split.M; ++j) w[j] = states[j][best].decisions();

  DecodeResult res;
  res.u = merge_streams(split, w);
  res.message = extract_message(split.original, res.u);
  res.final_pms.reserve(states[0].size());
  for (size_t g = 0; g < states[0].size(); ++g) {
    double pm = 0.0;
    for (int j = 0; j < split.M; ++j) pm += states[j][g].pm();
    res.final_pms.push_back(pm);
  }
  return res;
}

}  // namespace nbpolar
