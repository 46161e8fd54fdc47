#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "eon/config.hpp"
#include "eon/errors.hpp"

using namespace eon;

TEST_SUITE_BEGIN("config");

TEST_CASE("parses bindings, comments and blank lines") {
  const Config cfg = Config::parse_string(
      "# experiment setup\n"
      "dataset = bio.csv   # trailing comment\n"
      "\n"
      "folds = 20\n"
      "tolerance = 1e-8\n"
      "  metric =  accuracy  \n");
  CHECK(cfg.has("dataset"));
  CHECK(cfg.get_string("dataset") == "bio.csv");
  CHECK(cfg.get_long("folds") == 20);
  CHECK(cfg.get_double("tolerance") == 1e-8);
  CHECK(cfg.get_string("metric") == "accuracy");
  CHECK_FALSE(cfg.has("seed"));
  CHECK(cfg.entries().size() == 4);
}

TEST_CASE("lists split on spaces and commas") {
  const Config cfg = Config::parse_string(
      "grid.eps0 = 1e-3, 2e-3 4e-3\n"
      "grid.K = 3,4 ,5\n"
      "names = a b,c\n");
  CHECK(cfg.get_double_list("grid.eps0") == std::vector<double>{1e-3, 2e-3, 4e-3});
  CHECK(cfg.get_long_list("grid.K") == std::vector<long>{3, 4, 5});
  CHECK(cfg.get_string_list("names") == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("single values read back as one-element lists") {
  const Config cfg = Config::parse_string("grid.delta = 1e-3\n");
  CHECK(cfg.get_double_list("grid.delta") == std::vector<double>{1e-3});
}

TEST_CASE("typed fallbacks apply only to missing keys") {
  const Config cfg = Config::parse_string("threads = 4\n");
  CHECK(cfg.get_long("threads", 1) == 4);
  CHECK(cfg.get_long("restarts", 10) == 10);
  CHECK(cfg.get_double("tolerance", 1e-8) == 1e-8);
  CHECK(cfg.get_string("metric", "accuracy") == "accuracy");
  CHECK(cfg.get_seed("seed", 7) == 7);
}

TEST_CASE("seeds accept the full unsigned 64-bit range") {
  const Config cfg = Config::parse_string("seed = 18446744073709551615\n");
  CHECK(cfg.get_seed("seed", 0) == 18446744073709551615ull);
  const Config bad = Config::parse_string("seed = -1\n");
  CHECK_THROWS_AS(bad.get_seed("seed", 0), parse_error);
}

TEST_CASE("duplicate keys are rejected with the offending line") {
  try {
    Config::parse_string("a = 1\nb = 2\na = 3\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("duplicate key 'a'") != std::string::npos);
  }
}

TEST_CASE("malformed lines and values are rejected") {
  CHECK_THROWS_AS(Config::parse_string("just a token\n"), parse_error);
  CHECK_THROWS_AS(Config::parse_string("= value\n"), parse_error);

  const Config cfg = Config::parse_string("x = not-a-number\ny = 1.5\n");
  CHECK_THROWS_AS(cfg.get_double("x"), parse_error);
  CHECK_THROWS_AS(cfg.get_long("x"), parse_error);
  // Truncating reads of fractional values are refused rather than rounded.
  CHECK_THROWS_AS(cfg.get_long("y"), parse_error);
  CHECK_THROWS_AS(cfg.get_double("missing"), invalid_argument);
  CHECK_THROWS_AS(cfg.get_double_list("missing"), invalid_argument);
}

TEST_CASE("line numbers in value errors point at the binding") {
  const Config cfg = Config::parse_string("# header\n\nrate = fast\n");
  try {
    cfg.get_double("rate");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("files parse like strings and missing files raise io_error") {
  const std::string path = "/tmp/eon_test_config.cfg";
  {
    std::ofstream f(path, std::ios::trunc);
    f << "alpha = 0.25\nbeta = 1, 2, 3\n";
  }
  const Config cfg = Config::parse_file(path);
  CHECK(cfg.get_double("alpha") == 0.25);
  CHECK(cfg.get_long_list("beta") == std::vector<long>{1, 2, 3});
  std::remove(path.c_str());

  CHECK_THROWS_AS(Config::parse_file("/nonexistent/dir/a.cfg"), io_error);
}

TEST_SUITE_END();
