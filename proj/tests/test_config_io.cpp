#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "btlab/config.hpp"
#include "btlab/io.hpp"

TEST_CASE("config round trip: parse(serialize(parse(text))) is identity") {
  const std::string text = R"(# sweep setup
experiment = "figure2"
operator = "L"
n_list = 4, 5, 6
nx = 120            # coarse
ny = 80
tol = 1e-9
mu = 0.25
seed = 99
outdir = "scratch_out"
)";
  const btlab::RunConfig a = btlab::parse_run_config(text);
  CHECK(a.n_list == std::vector<int>{4, 5, 6});
  CHECK(a.nx == 120);
  CHECK(a.tol == 1e-9);
  CHECK(a.mu == 0.25);
  CHECK(a.seed == 99);
  CHECK(a.outdir == "scratch_out");
  const btlab::RunConfig b = btlab::parse_run_config(btlab::serialize_run_config(a));
  CHECK(a == b);
  CHECK(btlab::serialize_run_config(a) == btlab::serialize_run_config(b));
}

TEST_CASE("defaults round trip and expose every documented key") {
  const btlab::RunConfig d = btlab::default_run_config();
  const std::string s = btlab::serialize_run_config(d);
  const btlab::RunConfig back = btlab::parse_run_config(s);
  CHECK(d == back);
  for (const char* key :
       {"experiment", "operator", "potential", "alpha", "n_list", "nx", "ny", "x_extent",
        "y_extent", "k", "tol", "mu", "quasimode_start", "outdir", "seed"}) {
    INFO(key);
    CHECK(s.find(key) != std::string::npos);
  }
}

TEST_CASE("unknown keys and malformed lines are rejected") {
  CHECK_THROWS_AS((void)btlab::parse_run_config("bogus_key = 3\n"), std::invalid_argument);
  CHECK_THROWS_AS((void)btlab::parse_run_config("just some text\n"), std::invalid_argument);
}

TEST_CASE("model config construction from the experiment catalog") {
  btlab::RunConfig rc = btlab::default_run_config();
  rc.experiment = "sharpness";
  const btlab::ModelConfig cfg = btlab::to_model_config(rc, 5);
  CHECK(cfg.h == std::pow(2.0, -5.0));
  CHECK(cfg.potential.name() == "plateau");
  CHECK(cfg.alpha.name() == "constant");
  rc.experiment = "cubic";
  CHECK(btlab::to_model_config(rc, 4).potential.name() == "quadratic_cubic");
}

TEST_CASE("atomic write and csv formatting") {
  const std::string dir = "test_io_scratch";
  const std::string path = dir + "/file.csv";
  btlab::CsvWriter csv;
  csv.header({"a", "b"});
  csv.row({btlab::csv_num(1.0 / 3.0), btlab::csv_num(2.0)});
  csv.save(path);
  std::ifstream is(path);
  std::string line;
  std::getline(is, line);
  CHECK(line == "a,b");
  std::getline(is, line);
  CHECK(line == "0.33333333333333331,2");
  // 17 significant digits round-trip exactly.
  CHECK(std::stod(btlab::csv_num(1.0 / 3.0)) == 1.0 / 3.0);
  std::filesystem::remove_all(dir);
}
