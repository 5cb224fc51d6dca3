#include "doctest.h"

#include <sstream>

#include "nbpolar/channel.hpp"
#include "nbpolar/code.hpp"
#include "oracles.hpp"

using namespace nbpolar;

namespace {

CodeSpec all_free_code(int N, const GfContext& gf, KernelCoeffs k) {
  return make_code(N, N, gf, k, std::vector<std::uint8_t>(N, 0),
                   std::vector<GfElem>(N, 0));
}

}  // namespace

TEST_CASE("encode matches the N=2 kernel and the dense Kronecker oracle") {
  GfContext gf = GfContext::build(8, 0x11D);
  KernelCoeffs k{2, 3};

  CodeSpec c2 = all_free_code(2, gf, k);
  std::vector<GfElem> u{0x53, 0xCA};
  auto c = encode(c2, u);
  CHECK(c[0] == GfContext::add(0x53, gf.mul(2, 0xCA)));
  CHECK(c[1] == gf.mul(3, 0xCA));

  CodeSpec c8 = all_free_code(8, gf, k);
  FrameRng rng(3, 0);
  for (int t = 0; t < 50; ++t) {
    auto u8 = oracles::random_symbols(8, 256, rng);
    CHECK(encode(c8, u8) == oracles::encode_dense(gf, k, u8));
  }

  // All-zero input stays zero.
  std::vector<GfElem> z(8, 0);
  CHECK(encode(c8, z) == z);
}

TEST_CASE("encode enforces frozen values and is GF-linear") {
  GfContext gf = GfContext::build(4, 0x13);
  std::vector<std::uint8_t> frozen{1, 0, 1, 0};
  std::vector<GfElem> fval{7, 0, 1, 0};
  CodeSpec code = make_code(4, 2, gf, {2, 3}, frozen, fval);

  std::vector<GfElem> bad{0, 1, 1, 2};
  CHECK_THROWS_AS(encode(code, bad), std::invalid_argument);
  std::vector<GfElem> good{7, 1, 1, 2};
  CHECK_NOTHROW(encode(code, good));

  FrameRng rng(5, 0);
  for (int t = 0; t < 100; ++t) {
    auto a = oracles::random_symbols(4, 16, rng);
    auto b = oracles::random_symbols(4, 16, rng);
    std::vector<GfElem> sum(4);
    for (int i = 0; i < 4; ++i) sum[i] = GfContext::add(a[i], b[i]);
    auto ca = encode(code, a, false);
    auto cb = encode(code, b, false);
    auto cs = encode(code, sum, false);
    for (int i = 0; i < 4; ++i)
      REQUIRE(cs[i] == GfContext::add(ca[i], cb[i]));
  }
}

TEST_CASE("split_code encode-equivalence over random messages") {
  GfContext gf = GfContext::build(8, 0x11D);
  KernelCoeffs k{2, 1};
  FrameRng rng(7, 0);
  for (int N : {8, 128}) {
    CodeSpec code = all_free_code(N, gf, k);
    for (int M : {2, 4}) {
      SplitSpec split = split_code(code, M);
      for (int t = 0; t < 200; ++t) {
        auto u = oracles::random_symbols(N, 256, rng);
        auto full = encode(code, u, false);
        auto streams = split_streams(split, u);
        std::vector<GfElem> cat;
        for (int j = 0; j < M; ++j) {
          auto part = encode(split.subcodes[j], streams[j], false);
          cat.insert(cat.end(), part.begin(), part.end());
        }
        REQUIRE(cat == full);
        // Constraint completeness: streams map back to the source.
        REQUIRE(merge_streams(split, streams) == u);
      }
    }
  }
}

TEST_CASE("split constraint matrix is bijective per level") {
  GfContext gf = GfContext::build(4, 0x13);
  CodeSpec code = all_free_code(16, gf, {3, 5});
  for (int M : {2, 4}) {
    SplitSpec split = split_code(code, M);
    // T * T_inv == identity
    for (int r = 0; r < M; ++r) {
      for (int c = 0; c < M; ++c) {
        GfElem acc = 0;
        for (int j = 0; j < M; ++j)
          acc = GfContext::add(acc, gf.mul(split.T.at(r, j), split.T_inv.at(j, c)));
        REQUIRE(acc == (r == c ? 1 : 0));
      }
    }
  }
}

TEST_CASE("split local frozen rule") {
  GfContext gf = GfContext::build(4, 0x13);
  // N=8, M=2: pairs (i, i+4). Freeze selected original indices.
  std::vector<std::uint8_t> frozen{1, 1, 0, 0, 1, 0, 0, 0};
  std::vector<GfElem> fval{3, 1, 0, 0, 2, 0, 0, 0};
  CodeSpec code = make_code(8, 5, gf, {2, 3}, frozen, fval);
  SplitSpec split = split_code(code, 2);

  // Level 0: u[0] and u[4] frozen -> both streams locally frozen.
  CHECK(split.subcodes[0].is_frozen(0));
  CHECK(split.subcodes[1].is_frozen(0));
  CHECK(split.subcodes[0].frozen_value[0] ==
        GfContext::add(3, gf.mul(2, 2)));
  CHECK(split.subcodes[1].frozen_value[0] == gf.mul(3, 2));
  CHECK(split.level_all_frozen(0));

  // Level 1: u[1] frozen, u[5] free: neither stream locally decidable.
  CHECK_FALSE(split.subcodes[0].is_frozen(1));
  CHECK_FALSE(split.subcodes[1].is_frozen(1));
  CHECK_FALSE(split.level_all_frozen(1));

  // Fully frozen code: every level bypassable.
  CodeSpec all_frozen = make_code(8, 0, gf, {2, 3},
                                  std::vector<std::uint8_t>(8, 1),
                                  std::vector<GfElem>(8, 0));
  SplitSpec sf = split_code(all_frozen, 2);
  for (int i = 0; i < 4; ++i) CHECK(sf.level_all_frozen(i));

  CHECK_THROWS_AS(split_code(code, 3), std::invalid_argument);
  CHECK_THROWS_AS(split_code(code, 8), std::invalid_argument);
}

TEST_CASE("frozen-set file round trip") {
  GfContext gf = GfContext::build(8, 0x11D);
  std::vector<std::uint8_t> frozen(16, 0);
  std::vector<GfElem> fval(16, 0);
  frozen[0] = frozen[3] = frozen[7] = frozen[12] = 1;
  fval[3] = 200;
  fval[12] = 17;
  CodeSpec code = make_code(16, 12, gf, {2, 3}, frozen, fval);

  std::ostringstream os;
  save_code(code, os);
  std::istringstream is(os.str());
  CodeSpec back = load_code(is);
  CHECK(back.N == 16);
  CHECK(back.K == 12);
  CHECK(back.field.order() == 256);
  CHECK(back.field.poly() == 0x11D);
  CHECK(back.kernel.alpha == 2);
  CHECK(back.kernel.beta == 3);
  CHECK(back.frozen == code.frozen);
  CHECK(back.frozen_value == code.frozen_value);

  // Header format: "N K q alpha beta poly" then "index value" lines.
  std::istringstream hdr(os.str());
  std::string first;
  std::getline(hdr, first);
  CHECK(first == "16 12 256 2 3 285");
}

TEST_CASE("construction freezes the right count and is seed-deterministic") {
  GfContext gf = GfContext::build(2, 0x7);
  ConstructionConfig cfg;
  cfg.design_ebn0_db = 2.0;
  cfg.trials = 1000;
  cfg.seed = 11;
  CodeSpec code = construct_frozen_set(16, 8, gf, {2, 3}, cfg);
  CHECK(code.K == 8);
  int frozen_count = 0;
  for (int i = 0; i < 16; ++i)
    if (code.is_frozen(i)) ++frozen_count;
  CHECK(frozen_count == 8);

  // Determinism: same seed, same set.
  CodeSpec again = construct_frozen_set(16, 8, gf, {2, 3}, cfg);
  CHECK(again.frozen == code.frozen);

  ConstructionConfig small = cfg;
  small.trials = 500;
  CHECK_THROWS_AS(construct_frozen_set(16, 8, gf, {2, 3}, small),
                  std::invalid_argument);

  // K = N: no frozen indices.
  CodeSpec open = construct_frozen_set(8, 8, gf, {2, 3}, cfg);
  for (int i = 0; i < 8; ++i) CHECK_FALSE(open.is_frozen(i));
}
