#include "doctest.h"

#include <cmath>

#include "nbpolar/channel.hpp"
#include "nbpolar/code.hpp"
#include "oracles.hpp"

using namespace nbpolar;

TEST_CASE("transmit maps bits LSB-first to antipodal values") {
  FrameRng rng(61, 0);
  // sigma = 0: exact +-1 pattern.
  auto y = transmit({0x00}, 8, 0.0, rng);
  REQUIRE(y.size() == 8);
  for (double v : y) CHECK(v == 1.0);

  auto y2 = transmit({0x05}, 4, 0.0, rng);  // bits 0101 LSB-first
  CHECK(y2[0] == -1.0);
  CHECK(y2[1] == 1.0);
  CHECK(y2[2] == -1.0);
  CHECK(y2[3] == 1.0);
}

TEST_CASE("noise statistics match the configured variance") {
  ChannelConfig cc;
  cc.ebn0_db = 2.0;
  cc.rate = 0.5;
  double sigma = std::sqrt(cc.noise_variance());
  FrameRng rng(63, 0);
  const int n = 1'000'000;
  double sum = 0.0, sum2 = 0.0;
  std::vector<GfElem> zeros(n / 8, 0);
  auto y = transmit(zeros, 8, sigma, rng);
  for (double v : y) {
    double noise = v - 1.0;
    sum += noise;
    sum2 += noise * noise;
  }
  double mean = sum / y.size();
  double var = sum2 / y.size() - mean * mean;
  CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.01));
  CHECK(std::abs(mean) < 0.01);
}

TEST_CASE("channel_llrv peaks at the transmitted symbol without noise") {
  FrameRng rng(65, 0);
  for (unsigned theta = 0; theta < 16; ++theta) {
    auto y = transmit({static_cast<GfElem>(theta)}, 4, 0.0, rng);
    Llrv v = channel_llrv(y, 4, 0.5, 16);
    for (unsigned t = 0; t < 16; ++t) {
      if (t == theta)
        CHECK(v[t] == 0.0);
      else
        CHECK(v[t] < 0.0);
    }
  }
}

TEST_CASE("binary channel LLRV reduces to the scalar bit LLR") {
  FrameRng rng(67, 0);
  double sigma = 0.8;
  for (int t = 0; t < 100; ++t) {
    double y = (t % 2 ? -1.0 : 1.0) + sigma * rng.next_gaussian();
    Llrv v = channel_llrv(std::vector<double>{y}, 1, sigma, 2);
    double expect = 2.0 * y / (sigma * sigma);  // log p(y|0) - log p(y|1)
    CHECK(v[0] - v[1] == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("channel_llrv equals the exhaustive Gaussian likelihood at q=4") {
  FrameRng rng(69, 0);
  double sigma = 0.6;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> y{rng.next_gaussian() * 1.5,
                          rng.next_gaussian() * 1.5};
    Llrv v = channel_llrv(y, 2, sigma, 4);
    Llrv ref(4);
    for (unsigned theta = 0; theta < 4; ++theta) {
      double acc = 0.0;
      for (int k = 0; k < 2; ++k) {
        double s = ((theta >> k) & 1) ? -1.0 : 1.0;
        acc += -(y[k] - s) * (y[k] - s) / (2.0 * sigma * sigma);
      }
      ref[theta] = acc;
    }
    normalize_inplace(ref);
    for (unsigned i = 0; i < 4; ++i)
      CHECK(v[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  }
}

TEST_CASE("frame rng is a pure function of (seed, frame)") {
  FrameRng a(123, 45);
  FrameRng b(123, 45);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
  FrameRng c(123, 46);
  CHECK(FrameRng(123, 45).next_u64() != c.next_u64());
}

TEST_CASE("run_fer is deterministic across worker counts") {
  GfContext gf = GfContext::build(4, 0x13);
  ConstructionConfig ccfg;
  ccfg.design_ebn0_db = 2.0;
  ccfg.trials = 1000;
  ccfg.seed = 5;
  CodeSpec code = construct_frozen_set(16, 8, gf, {2, 3}, ccfg);

  DecoderSelect dec;
  dec.kind = DecoderSelect::Kind::Scl;
  dec.L = 2;
  StopRule stop;
  stop.max_frames = 2000;
  stop.min_errors = 50;
  std::vector<double> sweep{0.5, 1.5};
  auto p1 = run_fer(code, nullptr, dec, sweep, 77, stop, 1);
  auto p8 = run_fer(code, nullptr, dec, sweep, 77, stop, 8);
  CHECK(fer_csv(p1) == fer_csv(p8));
  CHECK(p1.size() == 2);
  CHECK(p1[0].frames > 0);

  // Split decoder determinism too.
  SplitSpec split = split_code(code, 2);
  DecoderSelect sdec;
  sdec.kind = DecoderSelect::Kind::SNbscl;
  sdec.L = 2;
  sdec.Ls = 8;
  auto s1 = run_fer(code, &split, sdec, {1.0}, 78, stop, 1);
  auto s8 = run_fer(code, &split, sdec, {1.0}, 78, stop, 8);
  CHECK(fer_csv(s1) == fer_csv(s8));
}

TEST_CASE("run_fer: SC kind equals SCL with L=1") {
  GfContext gf = GfContext::build(4, 0x13);
  ConstructionConfig ccfg;
  ccfg.design_ebn0_db = 2.0;
  ccfg.trials = 1000;
  ccfg.seed = 6;
  CodeSpec code = construct_frozen_set(16, 8, gf, {2, 3}, ccfg);
  StopRule stop;
  stop.max_frames = 1000;
  stop.min_errors = 1000;
  DecoderSelect sc{DecoderSelect::Kind::Sc, 1, 16};
  DecoderSelect scl1{DecoderSelect::Kind::Scl, 1, 16};
  auto a = run_fer(code, nullptr, sc, {1.0}, 79, stop, 2);
  auto b = run_fer(code, nullptr, scl1, {1.0}, 79, stop, 2);
  CHECK(fer_csv(a) == fer_csv(b));
}

TEST_CASE("high SNR produces zero errors in the budget") {
  GfContext gf = GfContext::build(4, 0x13);
  ConstructionConfig ccfg;
  ccfg.design_ebn0_db = 2.0;
  ccfg.trials = 1000;
  ccfg.seed = 7;
  CodeSpec code = construct_frozen_set(16, 8, gf, {2, 3}, ccfg);
  StopRule stop;
  stop.max_frames = 500;
  stop.min_errors = 10;
  DecoderSelect dec{DecoderSelect::Kind::Scl, 2, 16};
  auto pts = run_fer(code, nullptr, dec, {20.0}, 80, stop, 2);
  CHECK(pts[0].errors == 0);
  CHECK(pts[0].fer == 0.0);
  CHECK(pts[0].ci_lo == 0.0);
}

TEST_CASE("wilson interval brackets the point estimate") {
  CHECK(wilson_lo(0, 100) == 0.0);
  CHECK(wilson_hi(0, 100) > 0.0);
  double lo = wilson_lo(10, 100);
  double hi = wilson_hi(10, 100);
  CHECK(lo < 0.1);
  CHECK(hi > 0.1);
  CHECK(lo > 0.04);
  CHECK(hi < 0.19);
}

TEST_CASE("csv format is stable") {
  FerPoint p;
  p.ebn0_db = 1.5;
  p.frames = 1000;
  p.errors = 13;
  p.fer = 0.013;
  p.ci_lo = 0.007;
  p.ci_hi = 0.022;
  std::string csv = fer_csv({p});
  CHECK(csv.find("ebn0_db,frames,errors,fer,ci_lo,ci_hi\n") == 0);
  CHECK(csv.find("1.5,1000,13,0.013,0.007,0.022") != std::string::npos);
}

TEST_CASE("ebn0_at_fer interpolates on the log scale") {
  std::vector<FerPoint> pts(2);
  pts[0].ebn0_db = 1.0;
  pts[0].fer = 1e-1;
  pts[1].ebn0_db = 2.0;
  pts[1].fer = 1e-3;
  auto x = ebn0_at_fer(pts, 1e-2);
  REQUIRE(x.has_value());
  CHECK(*x == doctest::Approx(1.5));
  CHECK_FALSE(ebn0_at_fer(pts, 1e-4).has_value());
}
