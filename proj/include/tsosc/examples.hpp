#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tsosc/equation.hpp"

namespace tsosc {

using Params = std::map<std::string, double>;

// Worked examples:
//   q-difference  D_q^n x(t) + (b0/t^n) x(t/q^beta0) = 0 on q^N, t0 = 1
//   difference    Delta^n [x(t) + a0 x(t - alpha0)] + (b0/t^p) x(t - beta0) = 0 on Z, t0 = 1
//   continuous    [x(t) - ((1 - sin t)/3) x(t/alpha0)]^{(n)} + (b0/t^n) x(t/beta0) = 0,
//                 sampled on a fine uniform grid of step h from t0 = 1
std::vector<std::string> example_ids();

// Default parameters of an example overlaid with `params`. Unknown keys are
// rejected with InvalidArgument; unknown ids with UnknownExample.
Params example_params(std::string_view id, const Params& params = {});

NeutralEquationSpec example_spec(std::string_view id, const Params& params = {});

}  // namespace tsosc
