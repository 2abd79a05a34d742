#include "tsosc/examples.hpp"

#include "tsosc/error.hpp"

namespace tsosc {

namespace {

constexpr const char* kWhere = "simulate::example";

const Params* defaults(std::string_view id) {
  static const Params q{{"q", 2.0}, {"n", 2.0}, {"b0", 1.0}, {"beta0", 1.0}};
  static const Params d{{"n", 2.0}, {"a0", 0.5}, {"alpha0", 1.0}, {"beta0", 1.0}, {"p", 1.0}, {"b0", 1.0}};
  static const Params c{{"n", 4.0}, {"b0", 1.0}, {"alpha0", 2.0}, {"beta0", 2.0}, {"h", 0.01}};
  if (id == "q-difference") return &q;
  if (id == "difference") return &d;
  if (id == "continuous") return &c;
  return nullptr;
}

}  // namespace

std::vector<std::string> example_ids() { return {"q-difference", "difference", "continuous"}; }

Params example_params(std::string_view id, const Params& params) {
  const Params* base = defaults(id);
  if (!base) fail(Errc::UnknownExample, kWhere, "unknown example '" + std::string(id) + "'");
  Params out = *base;
  for (const auto& [key, value] : params) {
    if (!out.count(key)) fail(Errc::InvalidArgument, kWhere, "example '" + std::string(id) + "' has no parameter '" + key + "'");
    out[key] = value;
  }
  return out;
}

NeutralEquationSpec example_spec(std::string_view id, const Params& params) {
  const Params p = example_params(id, params);
  NeutralEquationSpec spec;
  spec.n = static_cast<int>(p.at("n"));
  spec.t0 = 1.0;
  if (id == "q-difference") {
    spec.scale = TimeScale::geometric(p.at("q"));
    spec.B = Expr::parse("b0/t^n", p);
    spec.beta = Expr::parse("t/q^beta0", p);
    spec.range = RangeTag::None;
  } else if (id == "difference") {
    spec.scale = TimeScale::uniform(1.0);
    spec.A = Expr::parse("a0", p);
    spec.alpha = Expr::parse("t - alpha0", p);
    spec.B = Expr::parse("b0/t^p", p);
    spec.beta = Expr::parse("t - beta0", p);
    spec.range = RangeTag::R1;
  } else {
    spec.scale = TimeScale::uniform(p.at("h"), 0.0, true);
    spec.A = Expr::parse("-(1 - sin(t))/3", p);
    spec.alpha = Expr::parse("t/alpha0", p);
    spec.B = Expr::parse("b0/t^n", p);
    spec.beta = Expr::parse("t/beta0", p);
    spec.range = RangeTag::R2;
  }
  return spec;
}

}  // namespace tsosc
