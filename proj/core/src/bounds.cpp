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

#include "medium/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "medium/errors.hpp"

namespace medium {

namespace {

    constexpr mpfr_prec_t kBits = kCalculatorPrecision;

    Real real(double v) { return Real(v, kBits); }

    Real real_u(std::uint64_t v) {
        Real out(kBits);
        mpfr_set_ui(out.get(), v, MPFR_RNDN);
        return out;
    }

    std::int64_t to_int(const Real& r) { return static_cast<std::int64_t>(mpfr_get_sj(r.get(), MPFR_RNDN)); }

    bool is_one(const Real& c) { return mpfr_cmp_ui(c.get(), 1) == 0; }

}  // namespace

Real coefficient_value(const WeightCoefficient& c, mpfr_prec_t bits) {
    if (c.kind() == CoefficientKind::BitcoinLimit)
        throw LimitModeError("longest-chain limit has no numeric weight");
    auto mid = c.enclose(bits).midpoint();
    Real out(bits);
    mpfr_set(out.get(), mid.get(), MPFR_RNDN);
    return out;
}

Real geometric_sum(const Real& c, std::int64_t first, std::int64_t last) {
    if (last < first) return Real(0.0, c.precision());
    const std::uint64_t count = static_cast<std::uint64_t>(last - first + 1);
    if (is_one(c)) {
        Real out(c.precision());
        mpfr_set_ui(out.get(), count, MPFR_RNDN);
        return out;
    }
    Real head(c.precision());
    mpfr_pow_si(head.get(), c.get(), first, MPFR_RNDN);
    Real one(1.0, c.precision());
    return head * (pow(c, count) - one) / (c - one);
}

PreciseRates precise_rates(const ProtocolParams& params, mpfr_prec_t bits) {
    const Real p(params.p, bits);
    const Real one(1.0, bits);
    const std::uint64_t honest_queries = std::uint64_t{params.q} * params.honest();
    Real pq = p;
    mpfr_mul_ui(pq.get(), pq.get(), params.q, MPFR_RNDN);

    PreciseRates out{Real(bits), Real(bits), Real(bits), Real(bits)};
    mpfr_mul_ui(out.alpha.get(), pq.get(), params.honest(), MPFR_RNDN);
    mpfr_mul_ui(out.beta.get(), pq.get(), params.t, MPFR_RNDN);
    out.gamma = one - pow(one - p, honest_queries);
    if (honest_queries > 0) {
        out.gamma_u = pow(one - p, honest_queries - 1) * p;
        mpfr_mul_ui(out.gamma_u.get(), out.gamma_u.get(), honest_queries, MPFR_RNDN);
    }
    return out;
}

WeightCap compute_K(const ProtocolParams& params, const WeightCoefficient& c, std::optional<std::uint64_t> window) {
    const Real cv = coefficient_value(c, kBits);
    const auto r = precise_rates(params, kBits);
    const Real s = real_u(window.value_or(params.lambda));
    const Real one_eps = real(1.0) + real(params.epsilon);

    WeightCap out{Real(kBits), 0, 0, one_eps * r.alpha};
    out.terms = to_int(ceil(one_eps * (r.gamma + r.beta) * s));
    // the (1+eps) factors of the forked-level count cancel
    std::int64_t forked_levels = 0;
    if (r.gamma.sign() > 0) forked_levels = to_int(ceil((r.alpha - r.gamma) * s / r.gamma));
    out.threshold = out.terms - forked_levels;

    const std::int64_t light_last = std::min(out.terms, out.threshold - 1);
    const std::int64_t heavy_first = std::max<std::int64_t>(1, out.threshold);
    out.K = geometric_sum(cv, 1, light_last) + out.heavy_factor * geometric_sum(cv, heavy_first, out.terms);
    return out;
}

std::optional<std::uint64_t> scan_geometric_terms(const Real& c, std::int64_t first, const Real& K) {
    Real sum(0.0, c.precision());
    Real term(c.precision());
    mpfr_pow_si(term.get(), c.get(), first, MPFR_RNDN);
    std::optional<std::uint64_t> best;
    for (std::uint64_t m = 0;; ++m) {
        sum += term;
        if (sum > K) return best;
        best = m;
        term *= c;
    }
}

namespace {

    // Largest m with sum_{i=first}^{first+m} c^i <= K: closed-form guess, then exact correction.
    std::optional<std::uint64_t> max_terms(const Real& c, std::int64_t first, const Real& K) {
        auto fits = [&](std::int64_t m) { return geometric_sum(c, first, first + m) <= K; };
        if (!fits(0)) return std::nullopt;
        std::int64_t m = 0;
        if (is_one(c)) {
            m = to_int(floor(K)) - 1;
        } else {
            const Real one(1.0, c.precision());
            Real head(c.precision());
            mpfr_pow_si(head.get(), c.get(), first, MPFR_RNDN);
            const Real count = log(K * (c - one) / head + one) / log(c);
            m = to_int(floor(count)) - 1;
        }
        m = std::max<std::int64_t>(m, 0);
        while (fits(m + 1)) ++m;
        while (m > 0 && !fits(m)) --m;
        return static_cast<std::uint64_t>(m);
    }

}  // namespace

FreshBlockWindow compute_R_u(const ProtocolParams& params, const WeightCoefficient& c, const Real& K) {
    const Real cv = coefficient_value(c, kBits);
    FreshBlockWindow out{};
    out.R_statement = max_terms(cv, 1, K).value_or(0);
    out.R_proof = max_terms(cv, 0, K).value_or(0);
    out.R = std::min(out.R_statement, out.R_proof);
    out.R_hat = out.R / 2;

    const auto r = precise_rates(params, kBits);
    const Real one_minus = real(1.0) - real(params.epsilon);
    const Real hat = real_u(out.R_hat);
    out.u = Real(0.0, kBits);
    if (out.R > 0) {
        out.u = (hat * hat + real(2.0) * hat) / (one_minus * real(2.0) * r.gamma) + real_u(params.lambda) * real_u(out.R);
    }
    out.u_rounds = static_cast<std::uint64_t>(to_int(ceil(out.u)));
    return out;
}

namespace {

    // Real R solving bank = (c^{R x} - 1) / (c^x - 1), with the c = 1 and x = 0 limits giving R = bank.
    Real balance_root(const Real& bank, const Real& cv, const Real& x) {
        if (bank.sign() <= 0) return Real(0.0, kBits);
        if (is_one(cv) || x.sign() == 0) return bank;
        const Real one = real(1.0);
        const Real cx = pow(cv, x);
        return log(bank * (cx - one) + one) / (x * log(cv));
    }

    std::uint64_t to_rounds(const Real& R, std::uint32_t lambda) {
        return static_cast<std::uint64_t>(std::max<std::int64_t>(0, to_int(ceil(R)))) * lambda;
    }

}  // namespace

BalanceBound balance_bound(double bank, const ProtocolParams& params, const WeightCoefficient& c, std::uint64_t tau) {
    if (bank < 0) throw ConfigError("bank size must be non-negative");
    const auto r = precise_rates(params, kBits);
    const Real one_eps = real(1.0) + real(params.epsilon);
    Real bank_tau = one_eps * r.beta * real_u(tau);

    BalanceBound out{Real(kBits), 0, Real(kBits), 0};
    if (c.kind() == CoefficientKind::BitcoinLimit) {
        // c -> infinity: a single level of surplus decides every fork
        out.R = real(bank > 0 ? 1.0 : 0.0);
        out.R_tau = real(bank_tau.sign() > 0 ? 1.0 : 0.0);
    } else {
        const Real cv = coefficient_value(c, kBits);
        const Real x = one_eps * real_u(params.lambda) * r.beta;
        out.R = balance_root(real(bank), cv, x);
        out.R_tau = balance_root(bank_tau, cv, x);
    }
    out.rounds = to_rounds(out.R, params.lambda);
    out.rounds_tau = to_rounds(out.R_tau, params.lambda);
    return out;
}

Real weight_growth(const ProtocolParams& params, const WeightCoefficient& c, std::uint64_t window) {
    const auto r = precise_rates(params, kBits);
    const Real g = (real(1.0) - real(params.epsilon)) * r.gamma_u - (real(1.0) + real(params.epsilon)) * r.beta;
    if (g.sign() <= 0) return Real(0.0, kBits);
    const std::int64_t levels = to_int(floor(g * real_u(window)));
    if (c.kind() == CoefficientKind::BitcoinLimit) return real(static_cast<double>(levels));
    return geometric_sum(coefficient_value(c, kBits), 1, levels);
}

Real expected_subtree_weight(std::uint64_t blocks, std::uint64_t levels, std::uint64_t offset,
                             const WeightCoefficient& c) {
    if (levels == 0 || blocks < levels) throw ConfigError("expected subtree weight needs blocks >= levels >= 1");
    const Real cv = coefficient_value(c, kBits);
    const auto first = static_cast<std::int64_t>(offset) + 1;
    return real_u(blocks) / real_u(levels) * geometric_sum(cv, first, first + static_cast<std::int64_t>(levels) - 1);
}

DerivedParams derive_params(const ProtocolParams& params, const WeightCoefficient& c) {
    DerivedParams out{derived_rates(params), 0, compute_K(params, c), {}, weight_growth(params, c, params.lambda)};
    out.g = out.rates.growth(params.epsilon);
    out.fresh = compute_R_u(params, c, out.cap.K);
    return out;
}

}  // namespace medium
