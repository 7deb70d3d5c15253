#include "genent/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

namespace genent {

nlohmann::json state_to_json(const PureState& state) {
  nlohmann::json amps = nlohmann::json::array();
  for (const cplx& a : state.amplitudes()) amps.push_back({a.real(), a.imag()});
  return nlohmann::json{{"n", state.n_qubits()}, {"amplitudes", std::move(amps)}};
}

PureState state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("amplitudes"))
    raise(errc::bad_input, "state JSON needs \"n\" and \"amplitudes\"");
  if (!j["n"].is_number_integer())
    raise(errc::bad_input, "\"n\" must be an integer");
  const int n = j["n"].get<int>();
  const auto& arr = j["amplitudes"];
  if (!arr.is_array()) raise(errc::bad_input, "\"amplitudes\" must be an array");

  std::vector<cplx> amps;
  amps.reserve(arr.size());
  for (const auto& entry : arr) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number())
      raise(errc::bad_input, "amplitude entries must be [re, im] pairs");
    amps.emplace_back(entry[0].get<double>(), entry[1].get<double>());
  }
  return make_state(n, std::move(amps));
}

PureState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::bad_input, "cannot open state file: " + path);
  nlohmann::json j;
  in >> j;
  return state_from_json(j);
}

void save_state_file(const PureState& state, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(errc::bad_input, "cannot write state file: " + path);
  out << state_to_json(state).dump(2) << "\n";
}

nlohmann::json report_to_json(const MeasureReport& report) {
  nlohmann::json partitions = nlohmann::json::array();
  for (const NonlocalInfo& info : report.per_partition) {
    const auto cls = info.partition.partition_class();
    partitions.push_back({{"A", info.partition.part_a.mask},
                          {"class", cls == PartitionClass::I ? "I" : "II"},
                          {"S", info.value}});
  }
  nlohmann::json factors = nlohmann::json::array();
  for (const QubitSubset& f : report.factorization.factors) factors.push_back(f.qubits());
  return nlohmann::json{{"n", report.n_qubits},
                        {"E", report.value},
                        {"S_I", report.sum_class_I},
                        {"S_II", report.sum_class_II},
                        {"partitions", std::move(partitions)},
                        {"factorization", std::move(factors)},
                        {"factorization_tol", report.factorization.tolerance_used},
                        {"factorization_margin", report.factorization.worst_factor_impurity}};
}

nlohmann::json scan_to_json(const ScanSummary& summary) {
  return nlohmann::json{{"n_states", summary.n_states},
                        {"min_E", summary.min_E},
                        {"max_E", summary.max_E},
                        {"negatives_below_tolerance", summary.negatives_below_tolerance},
                        {"seed", summary.seed}};
}

void write_ising_csv(const std::vector<IsingSweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(errc::bad_input, "cannot write: " + path);
  out << "h,ground_energy,gap,E,degenerate_flag\n";
  out << std::setprecision(12);
  for (const IsingSweepRow& row : rows)
    out << row.h << ',' << row.ground_energy << ',' << row.gap << ','
        << row.entanglement << ',' << (row.degenerate ? 1 : 0) << '\n';
}

void write_ising_dat(const std::vector<IsingSweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(errc::bad_input, "cannot write: " + path);
  out << "# h E\n";
  out << std::setprecision(12);
  for (const IsingSweepRow& row : rows) out << row.h << ' ' << row.entanglement << '\n';
}

}  // namespace genent
