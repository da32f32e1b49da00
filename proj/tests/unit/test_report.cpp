#include "doctest.h"

#include "bvlab/errors.hpp"
#include "bvlab/parallel.hpp"
#include "bvlab/report.hpp"
#include "json.hpp"

#include <atomic>

using namespace bvlab;

TEST_SUITE("report") {
  TEST_CASE("csv and json") {
    ExperimentReport r("demo", {"x", "name", "v"});
    r.add_row({std::int64_t{3}, std::string("a"), 0.1});
    r.add_row({std::int64_t{4}, std::string("b"), 1e-300});
    r.set_meta("seed", "7");
    r.set_flag("tripped", false);
    CHECK(r.to_csv() == "x,name,v\n3,a,0.1\n4,b,1e-300\n");
    auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["name"] == "demo");
    CHECK(j["rows"].size() == 2);
    CHECK_FALSE(r.any_flag());
    CHECK(r.number(1, "x") == 4.0);
    CHECK_THROWS_AS(r.add_row({1.0}), ContractError);
  }

  TEST_CASE("numbers round-trip") {
    for (double v : {0.1, 1.0 / 3.0, 2.0 / 3.0 * 1e-17, 123456789.125, -0.0}) CHECK(std::stod(format_number(v)) == v);
    CHECK(format_number(0.5) == "0.5");
  }

  TEST_CASE("parallel map visits every index once and rethrows") {
    ParallelMap pool(3);
    std::vector<std::atomic<int>> seen(1000);
    pool.for_each(seen.size(), [&](std::size_t i) { seen[i]++; });
    for (auto& s : seen) CHECK(s.load() == 1);
    CHECK_THROWS_AS(pool.for_each(10, [](std::size_t i) { if (i == 4) throw RangeError("x"); }), RangeError);
  }
}
