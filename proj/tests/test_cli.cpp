#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hyp32/cli.hpp"
#include "hyp32/series.hpp"
#include "json.hpp"
#include "support.hpp"

using hyp32::Cx;
using hyp32::Status;
using hyp32::test::close;
using nlohmann::ordered_json;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hyp32::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Cx value_of(const ordered_json& j) {
  return {j["value"]["re"].get<double>(), j["value"]["im"].get<double>()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("argument parsers") {
    REQUIRE(hyp32::parse_complex("0.5").has_value());
    CHECK(*hyp32::parse_complex("0.5") == Cx{0.5, 0.0});
    CHECK(*hyp32::parse_complex("0.3,-0.2") == Cx{0.3, -0.2});
    CHECK_FALSE(hyp32::parse_complex("0.3, -0.2").has_value());
    CHECK_FALSE(hyp32::parse_complex("abc").has_value());
    CHECK_FALSE(hyp32::parse_complex("1,2,3").has_value());
    CHECK(*hyp32::parse_range("0:3") == std::pair{0, 3});
    CHECK_FALSE(hyp32::parse_range("3:0").has_value());
    CHECK_FALSE(hyp32::parse_range("3").has_value());
    CHECK(hyp32::csv_field("ok") == "ok");
    CHECK(hyp32::csv_field("a,b") == "\"a,b\"");
    CHECK(hyp32::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(hyp32::csv_field("two\nlines") == "\"two\nlines\"");
  }

  TEST_CASE("exit code mapping") {
    CHECK(hyp32::exit_code(Status::ok) == 0);
    CHECK(hyp32::exit_code(Status::slow_convergence) == 1);
    CHECK(hyp32::exit_code(Status::near_singular) == 2);
    CHECK(hyp32::exit_code(Status::domain_violation) == 3);
  }

  TEST_CASE("eval") {
    const Run r = run({"eval", "--a", "0", "--b", "0.7", "--c", "1.9", "--m", "2", "--n", "1",
                       "--format", "json"});
    CHECK(r.code == 0);
    const ordered_json j = ordered_json::parse(r.out);
    CHECK(close(value_of(j), 1.0, 1e-14));
    CHECK(j["status"] == "ok");

    const Run z = run({"eval", "--a", "0.5", "--b", "1", "--c", "2", "--m", "0", "--n", "0",
                       "--method", "zy", "--format", "json"});
    CHECK(z.code == 0);
    CHECK(close(value_of(ordered_json::parse(z.out)), 4.0 / 3.0, 1e-15));
    CHECK(ordered_json::parse(z.out)["method"] == "zy");

    const std::vector<std::string> base{"eval", "--a", "0.3", "--b", "1.4", "--c", "2.9",
                                        "--m",  "3",   "--n",  "2",   "--format", "json"};
    std::vector<std::string> oracle = base, closed = base;
    oracle.insert(oracle.end(), {"--method", "oracle"});
    closed.insert(closed.end(), {"--method", "zy"});
    CHECK(close(value_of(ordered_json::parse(run(oracle).out)),
                value_of(ordered_json::parse(run(closed).out)), 1e-9));
  }

  TEST_CASE("eval JSON round-trips") {
    const Run r = run({"eval", "--a", "0.3,0.2", "--b", "1.4", "--c", "2.9", "--m", "3", "--n",
                       "2", "--format", "json"});
    const ordered_json once = ordered_json::parse(r.out);
    const std::string dumped = once.dump(2);
    CHECK(ordered_json::parse(dumped).dump(2) == dumped);
    CHECK(dumped + "\n" == r.out);
    std::vector<std::string> keys;
    for (const auto& [k, v] : once.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"value", "abs_err", "status", "method"});
  }

  TEST_CASE("eval exit codes") {
    const Run near = run({"eval", "--a", "0.5", "--b", "1.0000000001", "--c", "2", "--m", "1",
                          "--n", "0", "--method", "zy"});
    CHECK(near.code == hyp32::kExitNearSingular);
    const Run domain =
        run({"eval", "--a", "3.5", "--b", "1", "--c", "2", "--m", "0", "--n", "0"});
    CHECK(domain.code == hyp32::kExitDomain);
    const Run slow = run({"eval", "--a", "2.9", "--b", "0.5", "--c", "1.5", "--m", "1", "--n",
                          "0", "--method", "oracle"});
    CHECK(slow.code == hyp32::kExitFailures);
    CHECK(run({"eval", "--a", "0.5", "--b", "1", "--c", "2", "--m", "0"}).code ==
          hyp32::kExitUsage);
    CHECK(run({"eval", "--a", "x", "--b", "1", "--c", "2", "--m", "0", "--n", "0"}).code ==
          hyp32::kExitUsage);
    CHECK(run({"eval", "--a", "0.5", "--b", "1", "--c", "2", "--m", "0", "--n", "0",
               "--method", "nope"})
              .code == hyp32::kExitUsage);
    CHECK(run({"frobnicate"}).code == hyp32::kExitUsage);
  }

  TEST_CASE("eval with z uses the z-dependent reduction") {
    const Run r = run({"eval", "--a", "0.5", "--b", "1", "--c", "2", "--m", "0", "--n", "0",
                       "--z", "0.5", "--format", "json"});
    CHECK(r.code == 0);
    constexpr double kRef = 1.1045694996615867968;  // 3F2(0.5, 1, 2; 2, 3; 0.5), mpmath
    CHECK(close(value_of(ordered_json::parse(r.out)), kRef, 1e-13));
  }

  TEST_CASE("verify") {
    const Run zy = run({"verify", "--identity", "zy", "--samples", "200", "--seed", "42",
                        "--tol", "1e-8", "--format", "json"});
    CHECK(zy.code == 0);
    const ordered_json j = ordered_json::parse(zy.out);
    CHECK(j["samples"] == 200);
    CHECK(j["failures"].empty());
    CHECK(j["max_rel_err"].get<double>() <= 1e-8);

    CHECK(run({"verify", "--identity", "kb", "--reference", "zy", "--samples", "200", "--tol",
               "1e-11"})
              .code == 0);

    const Run empty = run({"verify", "--identity", "zy", "--samples", "0", "--format", "json"});
    CHECK(empty.code == 0);
    CHECK(ordered_json::parse(empty.out)["samples"] == 0);

    CHECK(run({"verify", "--identity", "nope"}).code == hyp32::kExitUsage);
    CHECK(run({"verify", "--identity", "zy", "--m-range", "4:1"}).code == hyp32::kExitUsage);
    const Run strict = run({"verify", "--identity", "zy", "--samples", "20", "--tol", "1e-30"});
    CHECK(strict.code == hyp32::kExitFailures);
  }

  TEST_CASE("verify output is identical across runs") {
    const std::vector<std::string> args{"verify", "--identity", "zy", "--samples", "100",
                                        "--seed", "42", "--format", "json"};
    CHECK(run(args).out == run(args).out);
  }

  TEST_CASE("table") {
    const Run zero = run({"table", "--a", "0", "--b", "1.3", "--c", "2.8", "--format", "json"});
    CHECK(zero.code == 0);
    const ordered_json cells = ordered_json::parse(zero.out);
    CHECK(cells.size() == 16);
    for (const auto& cell : cells) CHECK(close({cell["re"], cell["im"]}, 1.0, 1e-13));

    const Run one = run({"table", "--a", "0.5", "--b", "1.3", "--c", "2.8", "--m-range", "2:2",
                         "--n-range", "1:1", "--format", "json"});
    const Run ev = run({"eval", "--a", "0.5", "--b", "1.3", "--c", "2.8", "--m", "2", "--n",
                        "1", "--format", "json"});
    const ordered_json cell = ordered_json::parse(one.out).at(0);
    CHECK(Cx{cell["re"], cell["im"]} == value_of(ordered_json::parse(ev.out)));

    const Run grid = run({"table", "--a", "0.5", "--b", "1.3", "--c", "2.8", "--format", "json"});
    for (const auto& c : ordered_json::parse(grid.out)) {
      const hyp32::Params3F2NegDiff p{0.5, 1.3, 2.8, c["m"].get<int>(), c["n"].get<int>()};
      CHECK(close({c["re"], c["im"]}, hyp32::sum_3f2_unit_oracle(p).value, 1e-8));
    }

    const Run csv = run({"table", "--a", "0", "--b", "1.3", "--c", "2.8", "--m-range", "0:1",
                         "--n-range", "0:0", "--format", "csv"});
    std::istringstream lines(csv.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "m,n,re,im,abs_err,status,method");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == 2);
  }

  TEST_CASE("list-identities") {
    const Run r = run({"list-identities", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("zy,") != std::string::npos);
    CHECK(r.out.find("thomae2,") != std::string::npos);
  }

  TEST_CASE("term budget from the environment") {
    ::setenv("HYP32_MAX_TERMS", "50", 1);
    const Run capped = run({"eval", "--a", "0.3", "--b", "1.4", "--c", "2.9", "--m", "0",
                            "--n", "0", "--method", "oracle"});
    ::setenv("HYP32_MAX_TERMS", "zero", 1);
    const Run bad = run({"eval", "--a", "0.3", "--b", "1.4", "--c", "2.9", "--m", "0", "--n",
                         "0", "--method", "oracle"});
    ::unsetenv("HYP32_MAX_TERMS");
    CHECK(capped.code == hyp32::kExitFailures);
    CHECK(bad.code == hyp32::kExitUsage);
  }
}
