#include "nbpolar/channel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nbpolar/scl.hpp"

namespace nbpolar {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace

FrameRng::FrameRng(std::uint64_t seed, std::uint64_t frame) {
  state_ = mix64(seed ^ mix64(frame + 0x9E3779B97F4A7C15ull));
}

std::uint64_t FrameRng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  return mix64(state_);
}

double FrameRng::next_unit_open() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double FrameRng::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = next_unit_open();
  double u2 = next_unit_open();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

double ChannelConfig::noise_variance() const {
  return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
}

std::vector<double> transmit(const std::vector<GfElem>& codeword,
                             int bits_per_symbol, double sigma,
                             FrameRng& rng) {
  std::vector<double> y;
  y.reserve(codeword.size() * static_cast<size_t>(bits_per_symbol));
  for (GfElem c : codeword) {
    for (int k = 0; k < bits_per_symbol; ++k) {
      double s = ((c >> k) & 1) ? -1.0 : 1.0;
      y.push_back(s + sigma * rng.next_gaussian());
    }
  }
  return y;
}

Llrv channel_llrv(std::span<const double> y, int bits_per_symbol,
                  double sigma, unsigned q) {
  if (y.size() != static_cast<size_t>(bits_per_symbol))
    throw std::invalid_argument("channel_llrv: expected r observations");
  if (sigma <= 0.0)
    throw std::invalid_argument("channel_llrv: sigma must be positive");
  Llrv out(q);
  double inv2var = 1.0 / (2.0 * sigma * sigma);
  for (unsigned theta = 0; theta < q; ++theta) {
    double acc = 0.0;
    for (int k = 0; k < bits_per_symbol; ++k) {
      double s = ((theta >> k) & 1) ? -1.0 : 1.0;
      double d = y[static_cast<size_t>(k)] - s;
      acc -= d * d * inv2var;
    }
    out[theta] = acc;
  }
  normalize_inplace(out);
  return out;
}

std::vector<Llrv> channel_llrvs(std::span<const double> y,
                                int bits_per_symbol, double sigma,
                                unsigned q) {
  size_t n = y.size() / static_cast<size_t>(bits_per_symbol);
  std::vector<Llrv> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i)
    out.push_back(channel_llrv(
        y.subspan(i * static_cast<size_t>(bits_per_symbol),
                  static_cast<size_t>(bits_per_symbol)),
        bits_per_symbol, sigma, q));
  return out;
}

std::vector<Llrv> certainty_llrvs(const std::vector<GfElem>& codeword,
                                  unsigned q) {
  std::vector<Llrv> out;
  out.reserve(codeword.size());
  for (GfElem c : codeword) {
    Llrv v(q, -kLlrClamp);
    v[c] = 0.0;
    out.push_back(std::move(v));
  }
  return out;
}

double wilson_lo(long long errors, long long frames) {
  if (frames <= 0) return 0.0;
  double z = 1.959963984540054;
  double n = static_cast<double>(frames);
  double p = static_cast<double>(errors) / n;
  double denom = 1.0 + z * z / n;
  double center = (p + z * z / (2.0 * n)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return std::max(0.0, center - half);
}

double wilson_hi(long long errors, long long frames) {
  if (frames <= 0) return 1.0;
  double z = 1.959963984540054;
  double n = static_cast<double>(frames);
  double p = static_cast<double>(errors) / n;
  double denom = 1.0 + z * z / n;
  double center = (p + z * z / (2.0 * n)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return std::min(1.0, center + half);
}

namespace {

// Decodes one frame; returns true on a frame error.
bool frame_error(const CodeSpec& code, const SplitSpec* split,
                 const DecoderSelect& dec, double sigma, std::uint64_t seed,
                 std::uint64_t frame, const QuantConfig& quant) {
  FrameRng rng(seed, frame);
  const unsigned q = code.field.order();
  std::vector<GfElem> msg(static_cast<size_t>(code.K));
  for (GfElem& s : msg) s = rng.next_symbol(q);
  std::vector<GfElem> u = expand_message(code, msg);
  std::vector<GfElem> c = encode(code, u);
  std::vector<double> y = transmit(c, code.field.degree(), sigma, rng);
  std::vector<Llrv> llrvs = channel_llrvs(y, code.field.degree(), sigma, q);

  DecodeResult res;
  switch (dec.kind) {
    case DecoderSelect::Kind::Sc:
      res = scl_decode(code, llrvs, 1, quant);
      break;
    case DecoderSelect::Kind::Scl:
      res = scl_decode(code, llrvs, dec.L, quant);
      break;
    case DecoderSelect::Kind::SNbscl: {
      if (!split)
        throw std::invalid_argument("run_fer: S-NBSCL requires a split spec");
      SkimConfig cfg;
      cfg.L = dec.L;
      cfg.Ls = dec.Ls;
      res = s_nbscl_decode(*split, llrvs, cfg, nullptr, quant);
      break;
    }
  }
  return res.failed || res.message != msg;
}

}  // namespace

std::vector<FerPoint> run_fer(const CodeSpec& code, const SplitSpec* split,
                              DecoderSelect dec,
                              const std::vector<double>& ebn0_list,
                              std::uint64_t seed, const StopRule& stop,
                              int workers, const QuantConfig& quant) {
  if (workers < 1) workers = 1;
  double rate = static_cast<double>(code.K) / code.N;
  std::vector<FerPoint> out;
  out.reserve(ebn0_list.size());

  for (double ebn0 : ebn0_list) {
    ChannelConfig cc;
    cc.ebn0_db = ebn0;
    cc.rate = rate;
    cc.bits_per_symbol = code.field.degree();
    double sigma = std::sqrt(cc.noise_variance());

    long long frames = 0;
    long long errors = 0;
    while (frames < stop.max_frames && errors < stop.min_errors) {
      long long batch = std::min(stop.batch, stop.max_frames - frames);
      std::vector<std::uint8_t> err(static_cast<size_t>(batch), 0);
      std::atomic<long long> cursor{0};
      auto work = [&]() {
        while (true) {
          long long k = cursor.fetch_add(1);
          if (k >= batch) break;
          err[static_cast<size_t>(k)] =
              frame_error(code, split, dec, sigma, seed,
                          static_cast<std::uint64_t>(frames + k), quant)
                  ? 1
                  : 0;
        }
      };
      if (workers == 1) {
        work();
      } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
      }
      for (std::uint8_t e : err) errors += e;
      frames += batch;
    }

    FerPoint pt;
    pt.ebn0_db = ebn0;
    pt.frames = frames;
    pt.errors = errors;
    pt.fer = frames > 0 ? static_cast<double>(errors) / frames : 0.0;
    pt.ci_lo = wilson_lo(errors, frames);
    pt.ci_hi = wilson_hi(errors, frames);
    out.push_back(pt);
  }
  return out;
}

std::string fer_csv(const std::vector<FerPoint>& points) {
  std::ostringstream os;
  os << "ebn0_db,frames,errors,fer,ci_lo,ci_hi\n";
  os << std::setprecision(12);
  for (const FerPoint& p : points)
    os << p.ebn0_db << ',' << p.frames << ',' << p.errors << ',' << p.fer
       << ',' << p.ci_lo << ',' << p.ci_hi << '\n';
  return os.str();
}

std::optional<double> ebn0_at_fer(const std::vector<FerPoint>& points,
                                  double target_fer) {
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    const FerPoint& a = points[i];
    const FerPoint& b = points[i + 1];
    if (a.fer <= 0.0 || b.fer <= 0.0) continue;
    if (a.fer < target_fer || b.fer > target_fer) continue;
    if (a.fer == b.fer) continue;
    double la = std::log10(a.fer);
    double lb = std::log10(b.fer);
    double lt = std::log10(target_fer);
    return a.ebn0_db + (b.ebn0_db - a.ebn0_db) * (lt - la) / (lb - la);
  }
  return std::nullopt;
}

}  // namespace nbpolar
