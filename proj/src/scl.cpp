#include "nbpolar/scl.hpp"

#include <algorithm>
#include <stdexcept>

namespace nbpolar {

std::vector<PathState> extend_and_select(std::vector<PathState> paths,
                                         const std::vector<Llrv>& leaf_llrvs,
                                         int i, const CodeSpec& code, int L,
                                         const QuantConfig& quant) {
  if (paths.empty())
    throw std::invalid_argument("extend_and_select: empty path list");
  if (leaf_llrvs.size() != paths.size())
    throw std::invalid_argument("extend_and_select: one LLRV per path required");
  if (L < 1) throw std::invalid_argument("extend_and_select: L must be >= 1");

  if (code.is_frozen(i)) {
    GfElem theta = code.frozen_value[i];
    for (size_t p = 0; p < paths.size(); ++p) {
      double pm = paths[p].pm() + pm_increment(leaf_llrvs[p], theta);
      paths[p].set_pm(quantize_pm(pm, quant));
      paths[p].commit(theta);
    }
    return paths;
  }

  const unsigned q = code.field.order();
  std::vector<Candidate> cands;
  cands.reserve(paths.size() * q);
  for (size_t p = 0; p < paths.size(); ++p) {
    for (unsigned sym = 0; sym < q; ++sym) {
      double pm = paths[p].pm() +
                  pm_increment(leaf_llrvs[p], static_cast<GfElem>(sym));
      cands.push_back({static_cast<int>(p), static_cast<GfElem>(sym),
                       quantize_pm(pm, quant)});
    }
  }
  // Generation order is (parent asc, symbol asc); stable sort keeps that
  // order among equal PMs, which pins the tie-break.
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.pm > b.pm;
                   });
  size_t keep = std::min(static_cast<size_t>(L), cands.size());
  cands.resize(keep);

  std::vector<int> refs(paths.size(), 0);
  for (const Candidate& c : cands) ++refs[c.parent];

  std::vector<PathState> out;
  out.reserve(keep);
  for (const Candidate& c : cands) {
    if (--refs[c.parent] > 0) {
      out.push_back(paths[c.parent]);  // deep copy, parent still needed
    } else {
      out.push_back(std::move(paths[c.parent]));
    }
    out.back().set_pm(c.pm);
    out.back().commit(c.symbol);
  }
  return out;
}

DecodeResult scl_decode(const CodeSpec& code, const std::vector<Llrv>& channel,
                        int L, const QuantConfig& quant) {
  TrellisContext ctx = make_trellis_context(code, channel, quant);
  std::vector<PathState> paths;
  paths.emplace_back(ctx);

  std::vector<Llrv> leafs;
  for (int i = 0; i < code.N; ++i) {
    leafs.clear();
    for (PathState& p : paths) {
      auto leaf = p.leaf_llrv(i);
      leafs.emplace_back(leaf.begin(), leaf.end());
    }
    paths = extend_and_select(std::move(paths), leafs, i, code, L, quant);
  }

  size_t best = 0;
  for (size_t p = 1; p < paths.size(); ++p)
    if (paths[p].pm() > paths[best].pm()) best = p;

  DecodeResult res;
  res.u = paths[best].decisions();
  res.message = extract_message(code, res.u);
  res.final_pms.reserve(paths.size());
  for (const PathState& p : paths) {
    res.final_pms.push_back(p.pm());
    res.survivors.push_back(p.decisions());
  }
  return res;
}

}  // namespace nbpolar
