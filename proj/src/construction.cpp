#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "nbpolar/channel.hpp"
#include "nbpolar/code.hpp"
#include "nbpolar/scl.hpp"
#include "nbpolar/trellis.hpp"

namespace nbpolar {

namespace {

// Genie-aided SC pass over one random frame: every symbol is decided by
// argmax, compared against the truth, then forced to the true value so
// later indices see a clean prefix. Accumulates first-error counts.
void genie_frame(const CodeSpec& all_free, double sigma, std::uint64_t seed,
                 std::uint64_t frame, std::vector<std::uint32_t>& counts) {
  const unsigned q = all_free.field.order();
  FrameRng rng(seed, frame);
  std::vector<GfElem> u(static_cast<size_t>(all_free.N));
  for (GfElem& s : u) s = rng.next_symbol(q);
  std::vector<GfElem> c = encode(all_free, u, false);
  std::vector<double> y = transmit(c, all_free.field.degree(), sigma, rng);
  std::vector<Llrv> llrvs =
      channel_llrvs(y, all_free.field.degree(), sigma, q);

  TrellisContext ctx = make_trellis_context(all_free, llrvs);
  PathState path(ctx);
  for (int i = 0; i < all_free.N; ++i) {
    auto leaf = path.leaf_llrv(i);
    unsigned best = 0;
    for (unsigned t = 1; t < q; ++t)
      if (leaf[t] > leaf[best]) best = t;
    if (best != u[static_cast<size_t>(i)]) ++counts[static_cast<size_t>(i)];
    path.commit(u[static_cast<size_t>(i)]);
  }
}

std::vector<std::uint32_t> genie_error_counts(int N, const GfContext& field,
                                              KernelCoeffs kernel,
                                              double sigma, int trials,
                                              std::uint64_t seed,
                                              int workers) {
  std::vector<std::uint8_t> none(static_cast<size_t>(N), 0);
  std::vector<GfElem> zeros(static_cast<size_t>(N), 0);
  CodeSpec all_free = make_code(N, N, field, kernel, none, zeros);

  if (workers < 1) workers = 1;
  std::vector<std::vector<std::uint32_t>> partial(
      static_cast<size_t>(workers),
      std::vector<std::uint32_t>(static_cast<size_t>(N), 0));
  std::atomic<int> cursor{0};
  auto work = [&](int w) {
    while (true) {
      int f = cursor.fetch_add(1);
      if (f >= trials) break;
      genie_frame(all_free, sigma, seed, static_cast<std::uint64_t>(f),
                  partial[static_cast<size_t>(w)]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  std::vector<std::uint32_t> counts(static_cast<size_t>(N), 0);
  for (const auto& p : partial)
    for (int i = 0; i < N; ++i) counts[static_cast<size_t>(i)] += p[static_cast<size_t>(i)];
  return counts;
}

double design_sigma(int N, int K, double design_ebn0_db) {
  double rate = static_cast<double>(K) / N;
  return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, design_ebn0_db / 10.0)));
}

}  // namespace

CodeSpec construct_frozen_set(int N, int K, const GfContext& field,
                              KernelCoeffs kernel,
                              const ConstructionConfig& cfg) {
  if (cfg.trials < 1000)
    throw std::invalid_argument("construct_frozen_set: need at least 1000 trials");
  if (K < 0 || K > N)
    throw std::invalid_argument("construct_frozen_set: K out of range");

  std::vector<std::uint32_t> counts;
  if (K == N) {
    counts.assign(static_cast<size_t>(N), 0);  // nothing to rank
  } else {
    counts = genie_error_counts(N, field, kernel,
                                design_sigma(N, K, cfg.design_ebn0_db),
                                cfg.trials, cfg.seed, cfg.workers);
  }

  // Freeze the N-K least reliable indices; ties resolved by index.
  std::vector<int> order(static_cast<size_t>(N));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return counts[static_cast<size_t>(a)] > counts[static_cast<size_t>(b)];
  });
  std::vector<std::uint8_t> frozen(static_cast<size_t>(N), 0);
  for (int i = 0; i < N - K; ++i) frozen[static_cast<size_t>(order[i])] = 1;
  std::vector<GfElem> values(static_cast<size_t>(N), 0);
  return make_code(N, K, field, kernel, std::move(frozen), std::move(values));
}

KernelCoeffs select_kernel(int N, int K, const GfContext& field,
                           const ConstructionConfig& cfg) {
  const unsigned q = field.order();
  if (q == 2) return {1, 1};

  std::vector<KernelCoeffs> candidates;
  for (auto [a, b] : {std::pair<unsigned, unsigned>{1, 1}, {2, 1}, {1, 2},
                      {2, 2}, {3, 2}, {2, 3}}) {
    if (a < q && b < q)
      candidates.push_back({static_cast<GfElem>(a), static_cast<GfElem>(b)});
  }

  int trials = std::max(1000, cfg.trials / 2);
  double sigma = design_sigma(N, K, cfg.design_ebn0_db);

  KernelCoeffs best{1, 1};
  std::uint64_t best_score = ~0ull;
  for (const KernelCoeffs& k : candidates) {
    std::vector<std::uint32_t> counts = genie_error_counts(
        N, field, k, sigma, trials, cfg.seed, cfg.workers);
    // Residual error mass on the K indices that would stay free.
    std::sort(counts.begin(), counts.end());
    std::uint64_t score = 0;
    for (int i = 0; i < K; ++i) score += counts[static_cast<size_t>(i)];
    if (score < best_score) {
      best_score = score;
      best = k;
    }
  }
  return best;
}

}  // namespace nbpolar
