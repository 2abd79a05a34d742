#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsosc/classify.hpp"
#include "tsosc/monomials.hpp"
#include "tsosc/oscillation.hpp"
#include "tsosc/simulate.hpp"

namespace tsosc {

using Json = nlohmann::json;

// JSON views of the reports. Traces are left to the CSV writers.
Json to_json(const CriterionReport& r);
Json to_json(const WindowsReport& r);
Json to_json(const DivergenceReport& r);
Json to_json(const ThresholdResult& r);
Json to_json(const ConclusionReport& r);
Json to_json(const KiguradzeProfile& p);
Json to_json(const PhilosSlack& s);
Json to_json(const LemmaReport& r);
Json to_json(const SimulationSummary& s);
Json to_json(const ExampleReport& r);
Json to_json(const NeutralEquationSpec& s);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;  // IoError when missing
};

// t, value, window_lo, window_hi
CsvTable criterion_table(const CriterionReport& r);
// index, t, x, z over the points from t0
CsvTable solution_table(const SolutionTrace& tr);

// Numbers are written with enough digits to read back exactly.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const Json& doc);
std::string read_text(const std::filesystem::path& path);

}  // namespace tsosc
