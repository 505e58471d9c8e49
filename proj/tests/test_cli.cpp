#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "evimap/cli.hpp"
#include "evimap/io.hpp"

using namespace evimap;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "evimap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

struct Workdir {
  fs::path dir;
  Workdir() : dir(fs::temp_directory_path() / "evimap_cli_test") {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workdir() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& content) const {
    const auto path = dir / name;
    write_file_atomic(path, content);
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

const char* kLayout = "values: white,black\n28,31,black\n28,33,black\n27,32,black\n36,32,white\n";

}  // namespace

TEST_CASE("extrapolate writes a pgm") {
  Workdir w;
  const auto obs = w.file("o.txt", kLayout);
  const auto r = run({"extrapolate", "--obs", obs, "--width", "64", "--height", "64", "--lambda", "3", "--discount",
                      "interaction", "--out", w.path("field.pgm"), "--csv", w.path("field.csv")});
  CHECK(r.status == 0);
  const auto pgm = read_file(w.path("field.pgm"));
  CHECK(pgm.starts_with("P5\n64 64\n255\n"));
  CHECK(pgm.size() == std::string("P5\n64 64\n255\n").size() + 64 * 64);
  CHECK(lines(read_file(w.path("field.csv"))).size() == 1 + 64 * 64);

  // Same inputs give the same bytes.
  CHECK(run({"extrapolate", "--obs", obs, "--width", "64", "--height", "64", "--out", w.path("again.pgm")}).status == 0);
  CHECK(read_file(w.path("again.pgm")) == pgm);

  for (const auto* style : {"entropy", "info", "conflict", "rgb"}) {
    CAPTURE(style);
    CHECK(run({"extrapolate", "--obs", obs, "--width", "64", "--height", "64", "--style", style, "--out",
               w.path(std::string(style) + ".pnm")})
              .status == 0);
  }
}

TEST_CASE("wider domains write one raster per value") {
  Workdir w;
  const auto obs = w.file("o.txt", "values: sand,clay,rock\n1,1,sand\n6,6,rock|clay\n");
  const auto r = run({"extrapolate", "--obs", obs, "--width", "8", "--height", "8", "--out", w.path("f.pgm")});
  CHECK(r.status == 0);
  for (const auto* label : {"sand", "clay", "rock"}) {
    CHECK(fs::exists(w.path(std::string("f_") + label + ".pgm")));
  }
}

TEST_CASE("map subcommands") {
  Workdir w;
  const auto obs = w.file("o.txt", kLayout);
  const std::vector<std::string> grid{"--obs", obs, "--width", "64", "--height", "64"};
  for (const auto* cmd : {"entropy", "info", "conflict", "plausible"}) {
    CAPTURE(cmd);
    auto args = grid;
    args.insert(args.begin(), cmd);
    args.insert(args.end(), {"--out", w.path("m.pgm"), "--csv", w.path("m.csv")});
    const auto r = run(args);
    CHECK(r.status == 0);
    CHECK(lines(read_file(w.path("m.csv"))).size() == 1 + 64 * 64);
  }
}

TEST_CASE("plausible marks weak cells undetermined") {
  Workdir w;
  const auto obs = w.file("o.txt", "values: 1,2\n0,0,1\n19,0,2\n");
  const auto r = run({"plausible", "--obs", obs, "--width", "20", "--height", "1", "--threshold", "0.1", "--csv",
                      w.path("p.csv")});
  CHECK(r.status == 0);
  const auto rows = lines(read_file(w.path("p.csv")));
  CHECK(rows.front() == "x,y,value");
  CHECK(rows[1] == "0,0,1");
  CHECK(rows[20] == "19,0,2");
  CHECK(rows[10] == "9,0,-");
}

TEST_CASE("suggest") {
  Workdir w;
  const auto obs = w.file("o.txt", "values: white,black\n2,3,black\n");
  const auto r = run({"suggest", "--obs", obs, "--width", "8", "--height", "8", "--top", "5", "--csv",
                      w.path("s.csv")});
  CHECK(r.status == 0);
  const auto rows = lines(read_file(w.path("s.csv")));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "x,y,expected_loss");
  double previous = 1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double loss = std::stod(rows[i].substr(rows[i].rfind(',') + 1));
    CHECK(loss <= previous);
    previous = loss;
  }
  const auto printed = run({"suggest", "--obs", obs, "--width", "8", "--height", "8", "--top", "2"});
  CHECK(lines(printed.out).size() == 3);
}

TEST_CASE("exit statuses") {
  Workdir w;
  const auto good = w.file("o.txt", kLayout);
  CHECK(run({"--help"}).status == 0);
  CHECK(run({}).status == 1);
  CHECK(run({"extrapolate", "--obs", good}).status == 1);
  CHECK(run({"extrapolate", "--obs", good, "--width", "64", "--height", "64", "--mode", "sideways"}).status == 1);

  const auto unknown = w.file("bad.txt", "values: white,black\n3,4,green\n");
  const auto r = run({"extrapolate", "--obs", unknown, "--width", "8", "--height", "8"});
  CHECK(r.status == 1);
  CHECK(r.err.find("line 2") != std::string::npos);

  CHECK(run({"extrapolate", "--obs", w.path("missing.txt"), "--width", "8", "--height", "8"}).status == 1);
  CHECK(run({"extrapolate", "--obs", good, "--width", "8", "--height", "8"}).status == 1);  // out of grid
  CHECK(run({"extrapolate", "--obs", good, "--width", "64", "--height", "64", "--lambda-value", "green=2"}).status == 1);

  // Contradictory certainties with persistence 0 conflict only at their own
  // cell, so a 1x1 grid is in total conflict everywhere.
  const auto clash = w.file("clash.txt", "values: white,black\n0,0,white\n0,0,black\n");
  const auto all = run({"extrapolate", "--obs", clash, "--width", "1", "--height", "1", "--discount", "plain"});
  CHECK(all.status == 2);
  CHECK(run({"extrapolate", "--obs", clash, "--width", "1", "--height", "1", "--discount", "plain", "--mode",
             "unnormalized"})
            .status == 0);
  CHECK(run({"conflict", "--obs", clash, "--width", "1", "--height", "1", "--discount", "plain"}).status == 0);
}

TEST_CASE("per-value persistence") {
  Workdir w;
  const auto obs = w.file("o.txt", "values: white,black\n0,0,black\n");
  CHECK(run({"extrapolate", "--obs", obs, "--width", "4", "--height", "1", "--lambda-value", "black=inf", "--csv",
             w.path("inf.csv")})
            .status == 0);
  CHECK(lines(read_file(w.path("inf.csv")))[4] == "3,0,0.000000,0.000000,1.000000,0.000000");
  CHECK(run({"extrapolate", "--obs", obs, "--width", "4", "--height", "1", "--lambda-value", "black=0", "--csv",
             w.path("zero.csv")})
            .status == 0);
  CHECK(lines(read_file(w.path("zero.csv")))[4] == "3,0,0.000000,0.000000,0.000000,1.000000");
}
