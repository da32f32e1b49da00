#include "doctest.h"

#include "bvlab/errors.hpp"
#include "bvlab/parallel.hpp"
#include "bvlab/tau.hpp"
#include "support.hpp"

#include <filesystem>

using namespace bvlab;

TEST_SUITE("tau") {
  TEST_CASE("first values") {
    auto t = compute_tau_table(12);
    const std::int64_t want[] = {1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944};
    for (int m = 1; m <= 12; ++m) CHECK(t[m] == want[m - 1]);
  }

  TEST_CASE("matches the naive q-expansion") {
    auto ref = bvtest::tau_qexpansion(400);
    auto t = compute_tau_table(400);
    for (int m = 1; m <= 400; ++m) CHECK(t[m] == ref[m]);
  }

  TEST_CASE("Hecke relations and Deligne bound") {
    auto t = compute_tau_table(20'000);
    for (std::int64_t p = 2; p * p <= 20'000; ++p) {
      if (!bvtest::is_prime_slow(p)) continue;
      int128 p11 = 1;
      for (int i = 0; i < 11; ++i) p11 *= p;
      CHECK(t[p * p] == t[p] * t[p] - p11);
    }
    for (std::int64_t p = 2; p <= 20'000; ++p)
      if (bvtest::is_prime_slow(p)) CHECK(std::abs(static_cast<double>(t[p])) <= 2.0 * std::pow(double(p), 5.5));
    CHECK(t[6 * 35] == t[6] * t[35]);
  }

  TEST_CASE("parallel build is identical") {
    ParallelMap pool(2);
    CHECK(compute_tau_table(3000, &pool) == compute_tau_table(3000));
  }

  TEST_CASE("cache round trip and checksum") {
    auto t = compute_tau_table(500);
    auto bytes = t.serialize();
    CHECK(bytes.size() == 12 + 16 * 500);
    CHECK(TauTable::deserialize(bytes) == t);
    CHECK(t.checksum_hex().size() == 16);
    CHECK(t.checksum() == TauTable::deserialize(bytes).checksum());
    bytes[0] = 'X';
    CHECK_THROWS_AS(TauTable::deserialize(bytes), ContractError);

    auto path = std::filesystem::temp_directory_path() / "bvlab_tau_unit.bin";
    std::filesystem::remove(path);
    auto a = load_or_compute_tau(300, path);
    CHECK(std::filesystem::exists(path));
    auto b = load_or_compute_tau(200, path);
    CHECK(b.size() == 200);
    CHECK(b[200] == a[200]);
    std::filesystem::remove(path);
  }

  TEST_CASE("guards") {
    auto t = compute_tau_table(10);
    CHECK_THROWS_AS(t.at(11), RangeError);
    CHECK_THROWS_AS(t.at(0), RangeError);
    CHECK_THROWS_AS(compute_tau_table(kMaxTauN + 1), SizeLimitError);
    CHECK(to_string(static_cast<int128>(-113643)) == "-113643");
  }
}
