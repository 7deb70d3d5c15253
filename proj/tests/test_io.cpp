#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "genent/io.hpp"
#include "genent/rng.hpp"

using namespace genent;
using nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("genent_io_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("state JSON round trip preserves amplitudes exactly") {
  TempDir dir;
  const std::string file = (dir.path / "state.json").string();

  std::mt19937_64 rng(99);
  const PureState psi = haar_random_state(4, rng);
  save_state_file(psi, file);
  const PureState back = load_state_file(file);

  REQUIRE(back.n_qubits() == psi.n_qubits());
  for (std::size_t i = 0; i < psi.dim(); ++i) CHECK(back[i] == psi[i]);
}

TEST_CASE("state JSON rejects malformed input") {
  CHECK_THROWS_AS(state_from_json(json{{"n", 2}}), Error);
  CHECK_THROWS_AS(state_from_json(json{{"n", 2}, {"amplitudes", {{1.0, 0.0}}}}), Error);
  CHECK_THROWS_AS(
      state_from_json(json{{"n", 1}, {"amplitudes", {{1.0}, {0.0, 0.0}}}}), Error);
  CHECK_THROWS_AS(state_from_json(json::array()), Error);
  CHECK_THROWS_AS(load_state_file("/nonexistent/state.json"), Error);
}

TEST_CASE("measure report JSON round-trips its numbers") {
  const MeasureReport report = genuine_entanglement(tensor_product({ghz(2), ghz(2)}));
  const json j = report_to_json(report);

  CHECK(j["n"] == 4);
  CHECK(j["E"].get<double>() == report.value);
  CHECK(j["S_I"].get<double>() == report.sum_class_I);
  CHECK(j["S_II"].get<double>() == report.sum_class_II);
  REQUIRE(j["partitions"].size() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    const NonlocalInfo& info = report.per_partition[i];
    CHECK(j["partitions"][i]["A"].get<std::uint32_t>() == info.partition.part_a.mask);
    CHECK(j["partitions"][i]["S"].get<double>() == info.value);
    const bool is_class_i = info.partition.partition_class() == PartitionClass::I;
    CHECK(j["partitions"][i]["class"] == (is_class_i ? "I" : "II"));
  }
  CHECK(j["factorization"] == json::array({{1, 2}, {3, 4}}));

  // Serialized and reparsed, the numbers survive bit for bit.
  const json reparsed = json::parse(j.dump());
  CHECK(reparsed["E"].get<double>() == report.value);
  CHECK(reparsed["S_I"].get<double>() == report.sum_class_I);
}

TEST_CASE("scan summary JSON carries the five contract fields") {
  const ScanSummary summary{1000, -1e-13, 0.83, 0, 42};
  const json j = scan_to_json(summary);
  CHECK(j["n_states"] == 1000);
  CHECK(j["min_E"].get<double>() == -1e-13);
  CHECK(j["max_E"].get<double>() == 0.83);
  CHECK(j["negatives_below_tolerance"] == 0);
  CHECK(j["seed"] == 42);
}

TEST_CASE("ising emission formats") {
  TempDir dir;
  const std::vector<IsingSweepRow> rows{{0.5, -4.75, 0.3, 0.91, false},
                                        {1.0, -5.1, 0.2, 0.55, true}};
  const std::string csv = (dir.path / "ising_N4.csv").string();
  const std::string dat = (dir.path / "ising_N4.dat").string();
  write_ising_csv(rows, csv);
  write_ising_dat(rows, dat);

  std::ifstream csv_in(csv);
  std::string line;
  std::getline(csv_in, line);
  CHECK(line == "h,ground_energy,gap,E,degenerate_flag");
  std::getline(csv_in, line);
  CHECK(line == "0.5,-4.75,0.3,0.91,0");
  std::getline(csv_in, line);
  CHECK(line == "1,-5.1,0.2,0.55,1");

  std::ifstream dat_in(dat);
  std::getline(dat_in, line);
  CHECK(line == "# h E");
  std::getline(dat_in, line);
  CHECK(line == "0.5 0.91");
}
