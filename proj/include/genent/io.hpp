#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "genent/ising.hpp"
#include "genent/measure.hpp"

namespace genent {

// Result of a random nonnegativity scan over Haar states.
struct ScanSummary {
  long long n_states = 0;
  double min_E = 0.0;
  double max_E = 0.0;
  long long negatives_below_tolerance = 0;  // count of E < -1e-10
  RngSeed seed = 0;
};

// State file format: {"n": <int>, "amplitudes": [[re, im], ...]} with 2^n
// entries in ascending basis-index order.
nlohmann::json state_to_json(const PureState& state);
PureState state_from_json(const nlohmann::json& j);
PureState load_state_file(const std::string& path);
void save_state_file(const PureState& state, const std::string& path);

nlohmann::json report_to_json(const MeasureReport& report);
nlohmann::json scan_to_json(const ScanSummary& summary);

// CSV columns: h,ground_energy,gap,E,degenerate_flag. The .dat companion is
// gnuplot-ready with bare "h E" columns.
void write_ising_csv(const std::vector<IsingSweepRow>& rows, const std::string& path);
void write_ising_dat(const std::vector<IsingSweepRow>& rows, const std::string& path);

}  // namespace genent
