#include "tsosc/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tsosc/error.hpp"

namespace tsosc {

namespace {

// JSON has no NaN or infinity; those become null
Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const CriterionReport& r) {
  Json prefixes = Json::array();
  for (double e : r.prefix_estimates) prefixes.push_back(num(e));
  return {
      {"id", r.id},
      {"neutral_variant", r.neutral_variant},
      {"kind", r.lower ? "liminf" : "limsup"},
      {"points", r.trace.size()},
      {"tail_estimate", num(r.tail_estimate)},
      {"threshold", r.threshold},
      {"margin", r.margin},
      {"prefix_estimates", prefixes},
      {"stable", r.stable},
      {"verdict", std::string(to_string(r.verdict))},
      {"nonregressive_t", r.nonregressive_t},
      {"notes", r.notes},
  };
}

Json to_json(const WindowsReport& r) {
  return {{"gamma", r.gamma},
          {"liminf", to_json(r.liminf)},
          {"limsup", to_json(r.limsup)},
          {"verdict", std::string(to_string(r.verdict))}};
}

Json to_json(const DivergenceReport& r) {
  return {{"verdict", std::string(to_string(r.verdict))}, {"partial_sums", r.partial_sums}, {"notes", r.notes}};
}

Json to_json(const ThresholdResult& r) {
  Json extra = Json::object();
  for (const auto& [k, v] : r.extra) extra[k] = num(v);
  return {{"example", r.example}, {"lhs", num(r.lhs)},   {"rhs", num(r.rhs)},
          {"satisfied", r.satisfied}, {"extra", extra}, {"notes", r.notes}};
}

Json to_json(const ConclusionReport& r) {
  return {{"conclusion", std::string(to_string(r.conclusion))}, {"basis", r.basis}, {"notes", r.notes}};
}

Json to_json(const KiguradzeProfile& p) {
  return {{"n", p.n},         {"m", p.m}, {"s_index", p.s_index}, {"s", p.s}, {"domain_size", p.domain_size},
          {"tail_length", p.tail_length()}, {"signs", p.signs}};
}

Json to_json(const PhilosSlack& s) {
  return {{"worst_slack", num(s.worst_slack)},
          {"worst_scaled", num(s.worst_scaled)},
          {"at_index", s.at_index},
          {"holds", s.holds},
          {"applies", s.applies}};
}

Json to_json(const LemmaReport& r) {
  Json lemmas = Json::array();
  for (const auto& l : r.lemmas)
    lemmas.push_back({{"lemma", std::string(to_string(l.lemma))},
                      {"min_slack", num(l.min_slack)},
                      {"min_scaled_slack", num(l.min_scaled_slack)},
                      {"k", l.k},
                      {"l", l.l},
                      {"t", l.t},
                      {"checked", l.checked},
                      {"holds", l.holds}});
  return {{"s", r.s}, {"tolerance", r.tolerance}, {"all_hold", r.all_hold()}, {"lemmas", lemmas}};
}

Json to_json(const SimulationSummary& s) {
  return {{"horizon", s.horizon},
          {"t_end", s.t_end},
          {"sign_changes", s.sign_changes},
          {"last_change_index", s.last_change_index ? Json(*s.last_change_index) : Json(nullptr)},
          {"trend", std::string(to_string(s.trend))},
          {"snapped_delays", s.snapped}};
}

Json to_json(const NeutralEquationSpec& s) {
  return {{"n", s.n},
          {"scale", s.scale.describe()},
          {"t0", s.t0},
          {"A", s.A.render()},
          {"B", s.B.render()},
          {"alpha", s.alpha.render()},
          {"beta", s.beta.render()},
          {"range", std::string(to_string(s.range))}};
}

Json to_json(const ExampleReport& r) {
  Json doc = {{"example", r.example},
              {"params", r.params},
              {"equation", to_json(r.spec)},
              {"threshold", to_json(r.threshold)},
              {"criteria_run", r.criteria_run},
              {"conclusion", to_json(r.conclusion)},
              {"verdict", std::string(to_string(r.conclusion.conclusion))}};
  if (r.criteria_run) {
    doc["criterion_points"] = r.criterion_points;
    doc["neutral_variant"] = r.neutral_variant;
    doc["windows"] = to_json(r.windows);
    doc["exponential"] = to_json(r.exponential);
    doc["evidence"] = {{"neutral_satisfied", r.evidence.neutral_satisfied},
                       {"nonneutral_satisfied", r.evidence.nonneutral_satisfied}};
    doc["divergence"] = to_json(r.divergence);
  }
  if (r.simulation) doc["simulation"] = to_json(*r.simulation);
  return doc;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  fail(Errc::IoError, "cli::read_csv", "no column '" + name + "'");
}

CsvTable criterion_table(const CriterionReport& r) {
  CsvTable t{{"t", "value", "window_lo", "window_hi"}, {}};
  for (const auto& p : r.trace) t.rows.push_back({p.t, p.value, p.window_lo, p.window_hi});
  return t;
}

CsvTable solution_table(const SolutionTrace& tr) {
  CsvTable t{{"index", "t", "x", "z"}, {}};
  const auto offset = static_cast<std::size_t>(tr.z.window().start_index() - tr.x.window().start_index());
  for (std::size_t i = 0; i < tr.z.size(); ++i)
    t.rows.push_back({static_cast<double>(i), tr.z.point(i), tr.x[offset + i], tr.z[i]});
  return t;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cli::write_csv", "cannot open " + path.string());
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto res = std::to_chars(buf, buf + sizeof buf, row[c]);
      out << (c ? "," : "") << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    out << '\n';
  }
  if (!out) fail(Errc::IoError, "cli::write_csv", "write failed for " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  constexpr const char* where = "cli::read_csv";
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, where, "cannot open " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) fail(Errc::IoError, where, path.string() + " is empty");
  std::stringstream header(line);
  for (std::string cell; std::getline(header, cell, ',');) t.columns.push_back(cell);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      const auto comma = std::min(line.find(',', start), line.size());
      double v = 0.0;
      const char* first = line.data() + start;
      const char* last = line.data() + comma;
      const auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc() || res.ptr != last)
        throw Error(Errc::ParseError, where, path.string() + ": bad number on line " + std::to_string(lineno), start);
      row.push_back(v);
      start = comma + 1;
    }
    if (row.size() != t.columns.size())
      fail(Errc::ParseError, where, path.string() + ": line " + std::to_string(lineno) + " has the wrong column count");
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cli::write_json", "cannot open " + path.string());
  out << doc.dump(2) << '\n';
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cli::read_text", "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tsosc
