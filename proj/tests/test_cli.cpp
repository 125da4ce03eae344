#include <doctest.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sphdiff/spectrum.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = SPHDIFF_CLI_PATH;
const std::string data_dir = SPHDIFF_DATA_DIR;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("sphdiff_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const int rc = std::system((cli + " " + args + " >/dev/null 2>/dev/null").c_str());
  return WEXITSTATUS(rc);
}

int run_capture(const std::string& args, const std::string& stdout_file) {
  const int rc =
      std::system((cli + " " + args + " >" + stdout_file + " 2>/dev/null").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// rows of a CSV produced by the tool, comments skipped, header split off
struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  Csv csv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (csv.columns.empty()) {
      csv.columns = fields;
      continue;
    }
    std::vector<double> row;
    for (const auto& s : fields)
      row.push_back(s == "-inf" ? -std::numeric_limits<double>::infinity()
                                : std::stod(s));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

std::string bundled_spectrum() { return (fs::path(data_dir) / "cmb_tt_dl.csv").string(); }

}  // namespace

TEST_CASE("exit codes: 0 on success, 2 on validation, 3 on I/O") {
  TempDir tmp("codes");
  CHECK(run("diffusion-length --Q 1 --u 1 --D 1") == 0);
  CHECK(run("--version") == 0);
  CHECK(run("definitely-not-a-command") == 2);
  CHECK(run("evolve --spectrum /nonexistent.csv --t 0 --out " + tmp.file("o")) == 3);
  CHECK(run("evolve --spectrum " + bundled_spectrum() + " --t 0 --k 0 --L 20 --out " +
            tmp.file("o2")) == 2);

  std::ofstream bad(tmp.file("bad.csv"));
  bad << "l,Xl\n0,1\n";
  bad.close();
  CHECK(run("spectrum-evolve --spectrum " + tmp.file("bad.csv") + " --t 0 --out " +
            tmp.file("se.csv")) == 2);

  std::ofstream neg(tmp.file("neg.csv"));
  neg << "l,Cl\n0,1\n1,-2\n";
  neg.close();
  CHECK(run("spectrum-evolve --spectrum " + tmp.file("neg.csv") + " --t 0 --out " +
            tmp.file("se2.csv")) == 2);

  // format expectation mismatch: bundled file is Dl
  CHECK(run("spectrum-evolve --spectrum " + bundled_spectrum() +
            " --format cl --t 0 --out " + tmp.file("se3.csv")) == 2);
}

TEST_CASE("evolve: determinism, headers, PGM sidecars") {
  TempDir tmp("evolve");
  const std::string out = tmp.file("run");
  const std::string flags = "evolve --spectrum " + bundled_spectrum() +
                            " --preset cmb-k0.01 --L 40 --grid neq:24x48 --seed 7 "
                            "--pgm --threads 2 --out " +
                            out;
  REQUIRE(run_capture(flags, tmp.file("stdout.txt")) == 0);

  // difference-map summary stats are reported, with a finite max/|mean| ratio
  const std::string summary = slurp(tmp.file("stdout.txt"));
  CHECK(summary.find("diff_t0_t1: max_abs=") != std::string::npos);
  const auto pos = summary.find("max_over_mean=");
  REQUIRE(pos != std::string::npos);
  CHECK(std::isfinite(std::stod(summary.substr(pos + 14))));
  const std::vector<std::string> names = {"map_t0.csv",      "map_t1.csv",
                                          "map_t2.csv",      "diff_t0_t1.csv",
                                          "diff_t0_t2.csv",  "diff_t1_t2.csv",
                                          "map_t0.pgm",      "map_t0.json"};
  std::map<std::string, std::string> first;
  for (const auto& n : names) first[n] = slurp((fs::path(out) / n).string());

  // identical flags must reproduce identical bytes
  REQUIRE(run(flags) == 0);
  for (const auto& n : names) CHECK(first[n] == slurp((fs::path(out) / n).string()));

  // header carries the tool version and the full invocation
  const std::string head = first["map_t0.csv"].substr(0, 400);
  CHECK(head.find("# sphdiff 0.1.0") != std::string::npos);
  CHECK(head.find("# invocation: ") != std::string::npos);
  CHECK(head.find("--seed 7") != std::string::npos);
  CHECK(head.find("theta,phi,value") != std::string::npos);

  // PGM magic and geometry, and a sidecar that records the scaling bounds
  CHECK(first["map_t0.pgm"].substr(0, 3) == "P5\n");
  CHECK(first["map_t0.pgm"].find("48 24\n255\n") != std::string::npos);
  const auto side = nlohmann::json::parse(first["map_t0.json"]);
  CHECK(side["ntheta"] == 24);
  CHECK(side["nphi"] == 48);
  CHECK(side["min"].get<double>() < side["max"].get<double>());
  CHECK(side["version"] == "0.1.0");

  // a different seed must change the maps
  const std::string out2 = tmp.file("run2");
  REQUIRE(run("evolve --spectrum " + bundled_spectrum() +
              " --preset cmb-k0.01 --L 40 --grid neq:24x48 --seed 8 --out " + out2) == 0);
  CHECK(slurp((fs::path(out2) / "map_t0.csv").string()) != first["map_t0.csv"]);

  // t = 0 map equals the pure synthesis of the sampled initial field:
  // difference map against a second time is not identically zero, while
  // rerunning t = 0 alone reproduces the same map
  const std::string out3 = tmp.file("run3");
  REQUIRE(run("evolve --spectrum " + bundled_spectrum() +
              " --preset cmb-k0.01 --t 0 --L 40 --grid neq:24x48 --seed 7 --out " +
              out3) == 0);
  CHECK(slurp((fs::path(out3) / "map_t0.csv").string()).substr(0, 40) ==
        first["map_t0.csv"].substr(0, 40));
  const auto m0 = read_csv((fs::path(out) / "map_t0.csv").string());
  const auto m0_again = read_csv((fs::path(out3) / "map_t0.csv").string());
  REQUIRE(m0.rows.size() == m0_again.rows.size());
  for (std::size_t i = 0; i < m0.rows.size(); ++i)
    CHECK(m0.rows[i][2] == m0_again.rows[i][2]);
}

TEST_CASE("spectrum-evolve: t = 0 column is the input, monopole multiplier is 1") {
  TempDir tmp("spec");
  const std::string out = tmp.file("se.csv");
  REQUIRE(run("spectrum-evolve --spectrum " + bundled_spectrum() +
              " --preset cmb-k0.01 --out " + out) == 0);
  const auto csv = read_csv(out);
  REQUIRE(csv.columns.size() == 7);  // l, Dl_t0..2, mult_t0..2
  CHECK(csv.columns[0] == "l");
  CHECK(csv.columns[1] == "Dl_t0");
  CHECK(csv.columns[4] == "mult_t0");

  const auto loaded = sphdiff::load_spectrum(bundled_spectrum());
  REQUIRE(csv.rows.size() == 2508);  // preset truncation keeps l = 0..2507
  for (const auto& row : csv.rows) {
    const int l = static_cast<int>(row[0]);
    const double dl_in = sphdiff::dl_from_cl(l, loaded.spectrum[l]);
    CHECK(row[1] == doctest::Approx(dl_in).epsilon(1e-12));  // Dl_t0 == input
    CHECK(row[4] == 1.0);                                    // mult at t = 0
    if (l == 0) {
      CHECK(row[5] == 1.0);
      CHECK(row[6] == 1.0);
    }
    CHECK(row[5] <= 1.0 + 1e-12);  // multipliers only attenuate at these times
  }
}

TEST_CASE("cov: normalization, symmetry, nearly coincident short lags") {
  TempDir tmp("cov");
  const std::string out = tmp.file("cov.csv");
  REQUIRE(run("cov --spectrum " + bundled_spectrum() +
              " --preset cmb-k0.01 --theta-grid 40 --normalize --out " + out) == 0);
  const auto csv = read_csv(out);
  REQUIRE(csv.columns == std::vector<std::string>{"theta", "t", "tprime", "cov"});

  std::map<std::pair<int, int>, std::vector<double>> lines;  // (it, itp) -> curve
  std::vector<double> t_values;
  for (const auto& row : csv.rows) {
    if (t_values.empty() || row[1] > t_values.back() + 1e-15) {
      if (std::find(t_values.begin(), t_values.end(), row[1]) == t_values.end())
        t_values.push_back(row[1]);
    }
  }
  REQUIRE(t_values.size() == 3);
  const auto t_index = [&](double t) {
    for (std::size_t i = 0; i < t_values.size(); ++i)
      if (t == t_values[i]) return static_cast<int>(i);
    return -1;
  };
  for (const auto& row : csv.rows)
    lines[{t_index(row[1]), t_index(row[2])}].push_back(row[3]);

  // normalized variance cell
  CHECK(lines[{0, 0}][0] == doctest::Approx(1.0).epsilon(1e-12));
  // symmetry under swapping t and t'
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (std::size_t i = 0; i < lines[{a, b}].size(); ++i)
        CHECK(lines[{a, b}][i] == doctest::Approx(lines[{b, a}][i]).epsilon(1e-13));
  // lag curves t' = 0, 0.02, 0.04 nearly coincide (max gap within 6% of peak)
  double max_gap = 0.0;
  for (std::size_t i = 0; i < lines[{0, 0}].size(); ++i) {
    max_gap = std::max(max_gap, std::abs(lines[{0, 0}][i] - lines[{0, 1}][i]));
    max_gap = std::max(max_gap, std::abs(lines[{0, 0}][i] - lines[{0, 2}][i]));
  }
  CHECK(max_gap <= 0.06);
}

TEST_CASE("truncation: error monotone, bound dominates, log gap decreasing") {
  TempDir tmp("trunc");
  const std::string out = tmp.file("tr.csv");
  REQUIRE(run("truncation --spectrum " + bundled_spectrum() +
              " --c 1 --D 1 --k 0.1 --t 10 --L 50,100,200,400,800 --out " + out) == 0);
  const auto csv = read_csv(out);
  REQUIRE(csv.columns == std::vector<std::string>{"L", "error", "bound", "log_diff"});
  REQUIRE(csv.rows.size() == 5);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    CHECK(csv.rows[i][2] >= csv.rows[i][1]);  // bound >= error
    if (i > 0) {
      CHECK(csv.rows[i][1] <= csv.rows[i - 1][1]);  // error nonincreasing
      CHECK(csv.rows[i][3] < csv.rows[i - 1][3]);   // log gap decreasing
    }
  }
}

TEST_CASE("increment: h,norm table") {
  TempDir tmp("incr");
  const std::string out = tmp.file("inc.csv");
  REQUIRE(run("increment --spectrum " + bundled_spectrum() +
              " --c 1 --D 1 --k 0.1 --time-unit t --t 1 --h 0.0001,0.001,0.01 --out " +
              out) == 0);
  const auto csv = read_csv(out);
  REQUIRE(csv.columns == std::vector<std::string>{"h", "norm"});
  REQUIRE(csv.rows.size() == 3);
  for (std::size_t i = 1; i < csv.rows.size(); ++i) {
    CHECK(csv.rows[i][1] > csv.rows[i - 1][1]);  // norm grows with h
    // near-linear small-h behavior: norm scales roughly tenfold per decade
    const double ratio = csv.rows[i][1] / csv.rows[i - 1][1];
    CHECK(ratio > 5.0);
    CHECK(ratio < 20.0);
  }
}

TEST_CASE("diffusion-length report") {
  TempDir tmp("dl");
  const std::string out = tmp.file("dl.csv");
  REQUIRE(run("diffusion-length --Q 8 --u 1 --D 2 --out " + out) == 0);
  const auto csv = read_csv(out);
  REQUIRE(csv.columns == std::vector<std::string>{"Q", "u", "D", "r_D", "t_star"});
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.rows[0][3] == doctest::Approx(2.0 * 0.29635240388172784).epsilon(1e-12));
  CHECK(csv.rows[0][4] ==
        doctest::Approx(std::pow(8.0, 2.0 / 3.0) /
                        (8.0 * std::exp(1.0) * std::acos(-1.0) * 2.0))
            .epsilon(1e-12));
}
