#include "tsosc/config.hpp"

#include <charconv>
#include <cmath>
#include <json.hpp>

#include "tsosc/error.hpp"
#include "tsosc/simulate.hpp"

namespace tsosc {

namespace {

using nlohmann::json;

constexpr const char* kWhere = "cli::parse_config";

[[noreturn]] void invalid(const std::string& msg) { fail(Errc::ValidationError, kWhere, msg); }

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& what) {
  if (!obj.is_object()) invalid(what + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) invalid("unknown key '" + key + "' in " + what);
  }
}

double number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) invalid(std::string("'") + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) invalid(std::string("'") + key + "' must be finite");
  return d;
}

std::size_t count(const json& obj, const char* key, std::size_t fallback, std::size_t minimum) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < static_cast<std::int64_t>(minimum))
    invalid(std::string("'") + key + "' must be an integer >= " + std::to_string(minimum));
  return v.get<std::size_t>();
}

Expr expression(const json& obj, const char* key, const Expr& fallback, const std::map<std::string, double>& params) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (v.is_number()) return Expr::number(v.get<double>());
  if (!v.is_string()) invalid(std::string("'") + key + "' must be an expression string");
  try {
    return Expr::parse(v.get<std::string>(), params);
  } catch (const Error& e) {
    throw Error(Errc::ParseError, kWhere, std::string("'") + key + "': " + e.detail(), e.position());
  }
}

std::pair<TimeScale, double> scale_from(const json& s) {
  if (!s.is_object() || !s.contains("type") || !s.at("type").is_string()) invalid("scale needs a string 'type'");
  const auto type = s.at("type").get<std::string>();
  if (type == "uniform") {
    only_keys(s, {"type", "h", "anchor", "t0", "fine"}, "uniform scale");
    const double h = number(s, "h", 1.0);
    const double anchor = number(s, "anchor", 0.0);
    if (!(h > 0.0)) invalid("uniform scale needs h > 0");
    bool fine = false;
    if (s.contains("fine")) {
      if (!s.at("fine").is_boolean()) invalid("'fine' must be a boolean");
      fine = s.at("fine").get<bool>();
    }
    return {TimeScale::uniform(h, anchor, fine), number(s, "t0", anchor)};
  }
  if (type == "geometric") {
    only_keys(s, {"type", "q", "anchor", "t0"}, "geometric scale");
    const double q = number(s, "q", 2.0);
    const double anchor = number(s, "anchor", 1.0);
    if (!(q > 1.0)) invalid("geometric scale needs q > 1");
    if (!(anchor > 0.0)) invalid("geometric scale needs anchor > 0");
    return {TimeScale::geometric(q, anchor), number(s, "t0", anchor)};
  }
  if (type == "explicit") {
    only_keys(s, {"type", "points", "t0"}, "explicit scale");
    if (!s.contains("points") || !s.at("points").is_array()) invalid("explicit scale needs a 'points' array");
    std::vector<double> pts;
    for (const auto& p : s.at("points")) {
      if (!p.is_number()) invalid("explicit scale points must be numbers");
      pts.push_back(p.get<double>());
    }
    if (pts.size() < 2) invalid("explicit scale needs at least 2 points");
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (!(pts[i] > pts[i - 1])) invalid("explicit scale points must increase strictly");
    const double t0 = number(s, "t0", pts.front());
    return {TimeScale::explicit_points(std::move(pts)), t0};
  }
  invalid("scale type must be uniform, geometric or explicit, got '" + type + "'");
}

json scale_to_json(const TimeScale& ts, double t0) {
  json s;
  switch (ts.kind()) {
    case TimeScale::Kind::Uniform:
      s = {{"type", "uniform"}, {"h", ts.step()}, {"anchor", ts.anchor()}};
      if (ts.approximates_real()) s["fine"] = true;
      break;
    case TimeScale::Kind::Geometric: s = {{"type", "geometric"}, {"q", ts.ratio()}, {"anchor", ts.anchor()}}; break;
    case TimeScale::Kind::Explicit: s = {{"type", "explicit"}, {"points", ts.points()}}; break;
  }
  s["t0"] = t0;
  return s;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, kWhere, std::string("malformed JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  only_keys(doc,
            {"n", "scale", "A", "B", "alpha", "beta", "range", "params", "window", "horizon", "gamma", "margin",
             "lambda", "history"},
            "config");

  std::map<std::string, double> params;
  if (doc.contains("params")) {
    const auto& p = doc.at("params");
    if (!p.is_object()) invalid("'params' must be an object of numbers");
    for (const auto& [key, value] : p.items()) {
      if (!value.is_number()) invalid("parameter '" + key + "' must be a number");
      if (key == "t") invalid("'t' is reserved for the variable");
      params[key] = value.get<double>();
    }
  }

  RunConfig cfg;
  auto& spec = cfg.spec;
  if (doc.contains("n")) {
    const auto& n = doc.at("n");
    if (!n.is_number_integer() || n.get<std::int64_t>() < 1 || n.get<std::int64_t>() > 20)
      invalid("'n' must be an integer in [1, 20]");
    spec.n = n.get<int>();
  }
  if (doc.contains("scale")) std::tie(spec.scale, spec.t0) = scale_from(doc.at("scale"));
  spec.A = expression(doc, "A", Expr(), params);
  spec.B = expression(doc, "B", Expr(), params);
  spec.alpha = expression(doc, "alpha", Expr::variable(), params);
  spec.beta = expression(doc, "beta", Expr::variable(), params);

  cfg.window = count(doc, "window", cfg.window, 4);
  cfg.horizon = count(doc, "horizon", cfg.horizon, 1);
  cfg.gamma = number(doc, "gamma", cfg.gamma);
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) invalid("'gamma' must lie in (0, 1)");
  cfg.margin = number(doc, "margin", cfg.margin);
  if (!(cfg.margin >= 0.0 && cfg.margin < 0.5)) invalid("'margin' must lie in [0, 0.5)");
  if (doc.contains("lambda")) {
    const auto& l = doc.at("lambda");
    only_keys(l, {"min", "max", "count"}, "lambda");
    cfg.lambda.min = number(l, "min", cfg.lambda.min);
    cfg.lambda.max = number(l, "max", cfg.lambda.max);
    cfg.lambda.count = count(l, "count", cfg.lambda.count, 1);
    if (!(cfg.lambda.min > 0.0 && cfg.lambda.max >= cfg.lambda.min)) invalid("lambda grid needs 0 < min <= max");
  }

  const auto eq = sample_equation(spec, cfg.window);
  if (doc.contains("range")) {
    if (!doc.at("range").is_string()) invalid("'range' must be R1, R2 or none");
    spec.range = range_from_string(doc.at("range").get<std::string>());
  } else {
    spec.range = infer_range(eq);
  }
  validate(spec, eq);

  if (doc.contains("history")) {
    const auto& h = doc.at("history");
    cfg.history.clear();
    if (h.is_number()) {
      cfg.history.push_back(h.get<double>());
    } else if (h.is_array()) {
      for (const auto& v : h) {
        if (!v.is_number()) invalid("'history' values must be numbers");
        cfg.history.push_back(v.get<double>());
      }
      const auto need = constant_history(spec).phi.size();
      if (cfg.history.size() != need)
        invalid("'history' needs " + std::to_string(need) + " values on [t_{-1}, sigma^{n-1}(t0)]");
    } else {
      invalid("'history' must be a number or an array");
    }
    for (double v : cfg.history)
      if (!std::isfinite(v)) invalid("'history' values must be finite");
  }
  return cfg;
}

std::string render_config(const RunConfig& cfg) {
  const auto& s = cfg.spec;
  json doc = {
      {"n", s.n},
      {"scale", scale_to_json(s.scale, s.t0)},
      {"A", s.A.render()},
      {"B", s.B.render()},
      {"alpha", s.alpha.render()},
      {"beta", s.beta.render()},
      {"range", std::string(to_string(s.range))},
      {"window", cfg.window},
      {"horizon", cfg.horizon},
      {"gamma", cfg.gamma},
      {"margin", cfg.margin},
      {"lambda", {{"min", cfg.lambda.min}, {"max", cfg.lambda.max}, {"count", cfg.lambda.count}}},
  };
  if (cfg.history.size() == 1)
    doc["history"] = cfg.history.front();
  else
    doc["history"] = cfg.history;
  return doc.dump(2);
}

std::pair<TimeScale, double> parse_scale_arg(std::string_view text) {
  const auto colon = text.find(':');
  json s = {{"type", std::string(text.substr(0, colon))}};
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) invalid("scale option '" + std::string(item) + "' needs key=value");
      const std::string key(item.substr(0, eq));
      const auto value = item.substr(eq + 1);
      const auto parse_number = [&](std::string_view v) {
        double d = 0.0;
        const auto res = std::from_chars(v.data(), v.data() + v.size(), d);
        if (res.ec != std::errc() || res.ptr != v.data() + v.size())
          invalid("scale option '" + key + "' needs a number, got '" + std::string(v) + "'");
        return d;
      };
      if (key == "points") {
        json pts = json::array();
        std::string_view list = value;
        while (!list.empty()) {
          const auto semi = list.find(';');
          pts.push_back(parse_number(list.substr(0, semi)));
          list = semi == std::string_view::npos ? std::string_view{} : list.substr(semi + 1);
        }
        s["points"] = pts;
      } else if (key == "fine") {
        s["fine"] = value == "1" || value == "true";
      } else {
        s[key] = parse_number(value);
      }
    }
  }
  return scale_from(s);
}

}  // namespace tsosc
