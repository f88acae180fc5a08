/*
   Copyright 2026 The Medium Simulator Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "medium/params.hpp"

#include <cmath>

#include "medium/errors.hpp"

namespace medium {

Rates derived_rates(const ProtocolParams& params) {
    Rates r;
    const double m = static_cast<double>(params.honest()) * params.q;
    const double p = params.p;
    r.alpha = p * m;
    r.beta = static_cast<double>(params.t) * params.q * p;
    r.f = r.alpha + r.beta;
    if (p >= 1.0) {
        r.gamma = m > 0 ? 1.0 : 0.0;
        r.gamma_u = m == 1 ? 1.0 : 0.0;
    } else {
        const double l = std::log1p(-p);
        r.gamma = -std::expm1(m * l);
        r.gamma_u = m > 0 ? m * p * std::exp((m - 1) * l) : 0.0;
    }
    r.gamma_u_stated_bound = 1 - r.gamma / 3 * r.f;
    return r;
}

std::vector<std::string> validate(const ProtocolParams& params) {
    if (params.n == 0) throw ConfigError("n must be at least 1");
    if (params.t > params.n) throw ConfigError("t exceeds n");
    if (params.q < 1) throw ConfigError("q must be at least 1");
    if (!(params.p >= 0 && params.p <= 1)) throw ConfigError("p must lie in [0,1]");
    if (!(params.epsilon > 0 && params.epsilon < 1)) throw ConfigError("epsilon must lie in (0,1)");
    if (!(params.delta > 0 && params.delta < 1)) throw ConfigError("delta must lie in (0,1)");
    if (params.lambda == 0) throw ConfigError("lambda must be positive");

    std::vector<std::string> warnings;
    const Rates r = derived_rates(params);
    if (params.p <= 0 || params.p >= 1) warnings.emplace_back("p outside (0,1)");
    if (static_cast<double>(params.t) > (1 - params.delta) * params.honest())
        warnings.emplace_back("honest majority bound t <= (1-delta)(n-t) violated");
    if (r.gamma > 0 && params.lambda < 2 / r.gamma) warnings.emplace_back("lambda below 2/gamma");
    if (!(3 * r.gamma + 3 * params.epsilon < params.delta)) warnings.emplace_back("3 gamma + 3 eps < delta does not hold");
    if (params.kappa && params.difficulty &&
        std::abs(*params.difficulty - params.p * std::ldexp(1.0, static_cast<int>(*params.kappa))) >
            1e-9 * *params.difficulty)
        warnings.emplace_back("difficulty differs from p * 2^kappa");
    return warnings;
}

}  // namespace medium
