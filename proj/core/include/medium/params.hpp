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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace medium {

struct ProtocolParams {
    std::uint32_t n{100};
    std::uint32_t t{0};
    double p{1e-3};
    std::uint32_t q{10};
    double epsilon{0.5};
    std::uint32_t lambda{200};
    double delta{0.5};
    std::optional<std::uint32_t> kappa;
    std::optional<double> difficulty;  // p * 2^kappa, documentation only

    [[nodiscard]] std::uint32_t honest() const noexcept { return n - t; }
    [[nodiscard]] bool is_corrupted(std::uint32_t party) const noexcept { return party >= n - t; }
};

struct Rates {
    double alpha{0};    // expected honest blocks per round
    double beta{0};     // expected corrupted blocks per round
    double gamma{0};    // probability a round is successful
    double gamma_u{0};  // probability a round is uniquely successful
    double f{0};        // alpha + beta
    double gamma_u_stated_bound{0};  // 1 - (gamma/3) f, as quoted alongside gamma_u

    //! Chain-growth rate (1-eps) gamma_u - (1+eps) beta.
    [[nodiscard]] double growth(double epsilon) const { return (1 - epsilon) * gamma_u - (1 + epsilon) * beta; }
};

[[nodiscard]] Rates derived_rates(const ProtocolParams& params);

//! Throws ConfigError on structural problems (t > n, q < 1, p outside [0,1], eps or
//! delta outside (0,1), lambda = 0) and returns advisory warnings.
std::vector<std::string> validate(const ProtocolParams& params);

}  // namespace medium
