#include "doctest.h"

#include <algorithm>

#include "nbpolar/channel.hpp"
#include "nbpolar/sorter.hpp"

using namespace nbpolar;

namespace {

std::vector<double> random_perm(size_t n, std::uint64_t seed,
                                std::uint64_t frame) {
  FrameRng rng(seed, frame);
  std::vector<double> v(n);
  for (size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i);
  for (size_t i = n - 1; i > 0; --i) {
    size_t j = rng.next_u64() % (i + 1);
    std::swap(v[i], v[j]);
  }
  return v;
}

}  // namespace

TEST_CASE("bitonic network handles easy and random inputs") {
  std::vector<double> sorted{1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(bitonic_sort(sorted).sorted == sorted);

  std::vector<double> rev(16);
  for (int i = 0; i < 16; ++i) rev[i] = 15 - i;
  auto rep = bitonic_sort(rev);
  for (int i = 0; i < 16; ++i) CHECK(rep.sorted[i] == i);
  CHECK(rep.phases == 4 * 5 / 2);

  for (int t = 0; t < 1000; ++t) {
    auto v = random_perm(32, 51, t);
    auto ref = v;
    std::sort(ref.begin(), ref.end());
    REQUIRE(bitonic_sort(v).sorted == ref);
    std::sort(ref.rbegin(), ref.rend());
    REQUIRE(bitonic_sort(v, false).sorted == ref);
  }

  CHECK_THROWS_AS(bitonic_sort(std::vector<double>(5, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("sort2d fully sorts random permutations in 6 phases") {
  for (int w : {16, 32}) {
    for (int t = 0; t < 1000; ++t) {
      auto v = random_perm(static_cast<size_t>(w) * w, 53, t);
      auto rep = sort2d(v);
      REQUIRE(rep.phases == 6);
      REQUIRE(is_snake_sorted(rep.sorted, w));
      // Snake reading is the full ascending sequence.
      auto ref = v;
      std::sort(ref.begin(), ref.end());
      std::vector<double> snake;
      for (int r = 0; r < w; ++r)
        for (int i = 0; i < w; ++i) {
          int c = (r % 2 == 0) ? i : w - 1 - i;
          snake.push_back(rep.sorted[static_cast<size_t>(r * w + c)]);
        }
      REQUIRE(snake == ref);
    }
  }
}

TEST_CASE("sort2d latency model") {
  CHECK(sort2d_cycles(16) == 120);
  CHECK(sort2d_cycles(32) == 222);
  auto rep16 = sort2d(random_perm(256, 55, 0));
  CHECK(rep16.cycles == 120);
  auto rep32 = sort2d(random_perm(1024, 55, 1));
  CHECK(rep32.cycles == 222);

  // Constant input: trivially sorted, same cycle model.
  auto flat = sort2d(std::vector<double>(256, 3.25));
  CHECK(flat.cycles == 120);
  CHECK(is_snake_sorted(flat.sorted, 16));

  CHECK_THROWS_AS(sort2d(std::vector<double>(100, 0.0)),
                  std::invalid_argument);  // 10x10 is not a power of two
  CHECK_THROWS_AS(sort2d(std::vector<double>(192, 0.0)),
                  std::invalid_argument);  // not a square
}

TEST_CASE("merge sorter latency model") {
  CHECK(merge_sort_latency(1024) == 3083);
  CHECK(std::abs(merge_sort_latency(256) - 616) <= 1);
  CHECK(merge_sort_latency(10) == 10);
  CHECK_THROWS_AS(merge_sort_latency(1), std::invalid_argument);
}
