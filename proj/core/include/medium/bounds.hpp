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

#include "medium/params.hpp"
#include "medium/real.hpp"
#include "medium/weight.hpp"

namespace medium {

//! Numeric value of c at `bits` precision. Throws LimitModeError for the longest-chain limit.
[[nodiscard]] Real coefficient_value(const WeightCoefficient& c, mpfr_prec_t bits = kCalculatorPrecision);

//! sum_{i=first}^{last} c^i, zero when last < first.
[[nodiscard]] Real geometric_sum(const Real& c, std::int64_t first, std::int64_t last);

struct PreciseRates {
    Real alpha;
    Real beta;
    Real gamma;
    Real gamma_u;
};

[[nodiscard]] PreciseRates precise_rates(const ProtocolParams& params, mpfr_prec_t bits = kCalculatorPrecision);

//! Maximal normalized weight gained over a window: sum_{i=1}^{terms} k(i) c^i with
//! k(i) = 1 below `threshold` and (1+eps) alpha from it on.
struct WeightCap {
    Real K;
    std::int64_t terms{0};
    std::int64_t threshold{0};
    Real heavy_factor;  // (1+eps) alpha
};

//! The cap over a window of `window` rounds (lambda when omitted).
[[nodiscard]] WeightCap compute_K(const ProtocolParams& params, const WeightCoefficient& c,
                                  std::optional<std::uint64_t> window = std::nullopt);

struct FreshBlockWindow {
    std::uint64_t R{0};             // min of the two readings below
    std::uint64_t R_statement{0};   // max R with sum_{i=1}^{R+1} c^i <= K
    std::uint64_t R_proof{0};       // max R with sum_{i=0}^{R} c^i <= K
    std::uint64_t R_hat{0};
    Real u;
    std::uint64_t u_rounds{0};      // ceil(u)
};

[[nodiscard]] FreshBlockWindow compute_R_u(const ProtocolParams& params, const WeightCoefficient& c, const Real& K);

//! Largest m >= 0 with sum_{i=first}^{first+m} c^i <= K, or nullopt when even the
//! first term exceeds K. Straight accumulation, no closed form.
[[nodiscard]] std::optional<std::uint64_t> scan_geometric_terms(const Real& c, std::int64_t first, const Real& K);

struct BalanceBound {
    Real R;                       // real root of bank = (c^{R x} - 1) / (c^x - 1), x = (1+eps) lambda beta
    std::uint64_t rounds{0};      // ceil(R) * lambda
    Real R_tau;                   // same with bank = (1+eps) p q t tau
    std::uint64_t rounds_tau{0};
};

[[nodiscard]] BalanceBound balance_bound(double bank, const ProtocolParams& params, const WeightCoefficient& c,
                                         std::uint64_t tau = 0);

//! sum_{i=1}^{floor(g s)} c^i with g = (1-eps) gamma_u - (1+eps) beta.
[[nodiscard]] Real weight_growth(const ProtocolParams& params, const WeightCoefficient& c, std::uint64_t window);

//! (N / ell) sum_{i=1}^{ell} c^{i + ell0}.
[[nodiscard]] Real expected_subtree_weight(std::uint64_t blocks, std::uint64_t levels, std::uint64_t offset,
                                           const WeightCoefficient& c);

struct DerivedParams {
    Rates rates;
    double g{0};
    WeightCap cap;
    FreshBlockWindow fresh;
    Real tau_growth;
};

[[nodiscard]] DerivedParams derive_params(const ProtocolParams& params, const WeightCoefficient& c);

}  // namespace medium
