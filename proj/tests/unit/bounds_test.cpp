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

#include <cmath>

#include <gtest/gtest.h>

#include "medium/errors.hpp"

namespace medium {
namespace {

ProtocolParams acceptance_params() {
    ProtocolParams p;
    p.n = 100;
    p.t = 20;
    p.p = 1e-3;
    p.q = 10;
    p.epsilon = 0.5;
    p.lambda = 200;
    return p;
}

double rel(const Real& got, double want) { return std::abs(got.to_double() / want - 1); }

TEST(Rates, ReferenceValues) {
    ProtocolParams p = acceptance_params();
    const Rates r = derived_rates(p);
    EXPECT_NEAR(r.alpha, 0.8, 1e-15);
    EXPECT_NEAR(r.beta, 0.2, 1e-15);
    EXPECT_NEAR(r.gamma, 0.55085085138992457414, 1e-14);
    EXPECT_NEAR(r.gamma_u, 0.35967899788594628697, 1e-14);
    EXPECT_NEAR(r.growth(p.epsilon), -0.12016050105702685651, 1e-14);

    p.p = 0.000125;
    p.q = 100;
    const Rates s = derived_rates(p);
    EXPECT_NEAR(s.gamma, 0.63214355249122996663, 1e-14);
    EXPECT_NEAR(s.gamma_u, 0.36790243531318418139, 1e-14);
    const PreciseRates precise = precise_rates(p);
    EXPECT_LT(rel(precise.gamma, 0.63214355249122996663), 1e-15);
    EXPECT_LT(rel(precise.gamma_u, 0.36790243531318418139), 1e-15);
}

TEST(GeometricSum, ClosedFormAndEdgeCases) {
    EXPECT_EQ(geometric_sum(Real(2.0), 1, 10).to_double(), 2046.0);
    EXPECT_EQ(geometric_sum(Real(2.0), 0, 0).to_double(), 1.0);
    EXPECT_EQ(geometric_sum(Real(2.0), 5, 4).to_double(), 0.0);
    EXPECT_EQ(geometric_sum(Real(1.0), 3, 12).to_double(), 10.0);
    EXPECT_THROW((void)coefficient_value(WeightCoefficient::bitcoin()), LimitModeError);
}

TEST(ComputeK, AcceptanceConfiguration) {
    const auto p = acceptance_params();
    const WeightCap cap = compute_K(p, WeightCoefficient::algebraic_root(10001521, 100));
    EXPECT_EQ(cap.terms, 226);
    EXPECT_EQ(cap.threshold, 135);
    EXPECT_LT(rel(cap.K, 53277394868124052.38816735), 1e-14);
    EXPECT_LT(rel(cap.heavy_factor, 1.2), 1e-15);

    EXPECT_LT(rel(compute_K(p, WeightCoefficient::ghost()).K, 244.4), 1e-14);
    EXPECT_LT(rel(compute_K(p, WeightCoefficient::algebraic_root(10001521, 10)).K, 2.384104301917338747797094e+158),
              1e-14);
}

TEST(ComputeK, SummationOrderDoesNotMatter) {
    const auto p = acceptance_params();
    const auto c = WeightCoefficient::algebraic_root(10001521, 100);
    const WeightCap cap = compute_K(p, c);
    const Real cv = coefficient_value(c);
    Real forward(0.0), backward(0.0);
    for (std::int64_t i = 1; i <= cap.terms; ++i) {
        const Real k = i < cap.threshold ? Real(1.0) : cap.heavy_factor;
        forward += k * pow(cv, static_cast<std::uint64_t>(i));
    }
    for (std::int64_t i = cap.terms; i >= 1; --i) {
        const Real k = i < cap.threshold ? Real(1.0) : cap.heavy_factor;
        backward += k * pow(cv, static_cast<std::uint64_t>(i));
    }
    EXPECT_LT(rel(forward, cap.K.to_double()), 1e-15);
    EXPECT_LT(std::abs((forward - backward).to_double() / forward.to_double()), 1e-60);
}

TEST(ComputeK, WindowArgumentScalesTerms) {
    const auto p = acceptance_params();
    const WeightCap small = compute_K(p, WeightCoefficient::ghost(), 20);
    // ceil(1.5 * 0.7508509 * 20) = 23 terms; ceil(0.24915 * 20 / 0.55085) = 10 forked levels
    EXPECT_EQ(small.terms, 23);
    EXPECT_EQ(small.threshold, 13);
    EXPECT_LT(rel(small.K, 12 + 11 * 1.2), 1e-14);
}

TEST(FreshBlock, StatementAndProofReadings) {
    const auto p = acceptance_params();
    const auto c = WeightCoefficient::algebraic_root(10001521, 100);
    const FreshBlockWindow w = compute_R_u(p, c, compute_K(p, c).K);
    EXPECT_EQ(w.R_statement, 226u);
    EXPECT_EQ(w.R_proof, 227u);
    EXPECT_EQ(w.R, 226u);
    EXPECT_EQ(w.R_hat, 113u);
    EXPECT_LT(rel(w.u, 68790.777734500361221), 1e-13);
    EXPECT_EQ(w.u_rounds, 68791u);

    const FreshBlockWindow g = compute_R_u(p, WeightCoefficient::ghost(), compute_K(p, WeightCoefficient::ghost()).K);
    EXPECT_EQ(g.R, 243u);
    EXPECT_EQ(g.R_hat, 121u);
    EXPECT_LT(rel(g.u, 75618.202772033003159), 1e-13);

    const auto c10 = WeightCoefficient::algebraic_root(10001521, 10);
    const FreshBlockWindow h = compute_R_u(p, c10, compute_K(p, c10).K);
    EXPECT_EQ(h.R_statement, 225u);
    EXPECT_EQ(h.R_proof, 226u);
    EXPECT_LT(rel(h.u, 68178.687965686849716), 1e-13);
}

TEST(FreshBlock, ClosedFormMatchesScan) {
    const auto p = acceptance_params();
    for (const auto& c : {WeightCoefficient::algebraic_root(10001521, 100), WeightCoefficient::algebraic_root(10001521, 10),
                          WeightCoefficient::rational(mpq_class(3, 2)), WeightCoefficient::ghost()}) {
        for (double K : {0.5, 1.0, 3.0, 100.0, 1e6, 1e30}) {
            // GHOST scans one term per unit of K
            if (c == WeightCoefficient::ghost() && K > 1e6) continue;
            const Real k(K);
            const auto w = compute_R_u(p, c, k);
            const Real cv = coefficient_value(c);
            const auto st = scan_geometric_terms(cv, 1, k);
            const auto pr = scan_geometric_terms(cv, 0, k);
            // scans return the extra terms after the first: the statement sums R+1 terms from 1
            EXPECT_EQ(w.R_statement, st ? *st : 0) << c.label() << " K=" << K;
            EXPECT_EQ(w.R_proof, pr ? *pr : 0) << c.label() << " K=" << K;
        }
    }
}

TEST(FreshBlock, ZeroWindowWhenNothingFits) {
    const auto p = acceptance_params();
    const auto w = compute_R_u(p, WeightCoefficient::rational(3), Real(2.0));
    EXPECT_EQ(w.R, 0u);
    EXPECT_TRUE(w.u.is_zero());
    EXPECT_EQ(w.u_rounds, 0u);
}

TEST(BalanceBound, MatchesBisectionOracle) {
    // (1+eps) lambda beta = 2 with lambda = 10, beta = 2/15
    ProtocolParams p;
    p.n = 15;
    p.t = 2;
    p.q = 1;
    p.p = 1.0 / 15;
    p.lambda = 10;
    p.epsilon = 0.5;
    p.delta = 0.5;
    const auto b = balance_bound(20, p, WeightCoefficient::rational(mpq_class(11, 10)));
    EXPECT_NEAR(b.R.to_double(), 8.648911527457694540475533, 1e-6);
    EXPECT_EQ(b.rounds, 90u);
}

TEST(BalanceBound, AcceptanceConfiguration) {
    auto p = acceptance_params();
    const auto c5 = WeightCoefficient::algebraic_root(10001521, 10);
    EXPECT_NEAR(balance_bound(10, p, c5).R.to_double(), 1.023809299147808202614019, 1e-12);
    const auto b = balance_bound(30, p, c5, 100);
    EXPECT_NEAR(b.R.to_double(), 1.035169221831206241851704, 1e-12);
    EXPECT_EQ(b.rounds, 400u);
    // bank bound (1+eps) p q t tau = 30
    EXPECT_NEAR(b.R_tau.to_double(), 1.035169221831206241851704, 1e-12);
    EXPECT_NEAR(balance_bound(30, p, WeightCoefficient::algebraic_root(10001521, 100), 100).R_tau.to_double(),
                1.351685911915469263451824, 1e-12);
}

TEST(BalanceBound, Limits) {
    const auto p = acceptance_params();
    EXPECT_NEAR(balance_bound(17, p, WeightCoefficient::ghost()).R.to_double(), 17.0, 1e-12);
    EXPECT_EQ(balance_bound(17, p, WeightCoefficient::ghost()).rounds, 17u * 200u);
    EXPECT_EQ(balance_bound(17, p, WeightCoefficient::bitcoin()).R.to_double(), 1.0);
    EXPECT_EQ(balance_bound(0, p, WeightCoefficient::bitcoin()).R.to_double(), 0.0);
    EXPECT_EQ(balance_bound(0, p, WeightCoefficient::algebraic_root(10001521, 10)).rounds, 0u);
    auto honest = p;
    honest.t = 0;
    EXPECT_NEAR(balance_bound(5, honest, WeightCoefficient::rational(2)).R.to_double(), 5.0, 1e-12);
}

TEST(WeightGrowth, PositiveAndVacuousRates) {
    auto p = acceptance_params();
    EXPECT_TRUE(weight_growth(p, WeightCoefficient::rational(2), 200).is_zero());
    p.t = 0;
    // g = 0.5 * 1000 * 0.001 * 0.999^999 = 0.18403; floor(0.18403 * 200) = 36
    EXPECT_EQ(weight_growth(p, WeightCoefficient::rational(2), 200).to_double(), 137438953470.0);
    EXPECT_EQ(weight_growth(p, WeightCoefficient::ghost(), 200).to_double(), 36.0);
    EXPECT_EQ(weight_growth(p, WeightCoefficient::bitcoin(), 200).to_double(), 36.0);
}

TEST(ExpectedSubtreeWeight, ReferenceValues) {
    const auto c = WeightCoefficient::algebraic_root(10001521, 100);
    EXPECT_LT(rel(expected_subtree_weight(7, 3, 2, c), 13.45406526306544540035309), 1e-14);
    EXPECT_EQ(expected_subtree_weight(3, 3, 0, WeightCoefficient::rational(2)).to_double(), 14.0);
    EXPECT_EQ(expected_subtree_weight(9, 4, 5, WeightCoefficient::ghost()).to_double(), 9.0);
    EXPECT_THROW((void)expected_subtree_weight(2, 3, 0, c), ConfigError);
    EXPECT_THROW((void)expected_subtree_weight(2, 0, 0, c), ConfigError);
}

TEST(DeriveParams, BundlesEveryQuantity) {
    const auto p = acceptance_params();
    const auto d = derive_params(p, WeightCoefficient::algebraic_root(10001521, 100));
    EXPECT_EQ(d.cap.terms, 226);
    EXPECT_EQ(d.fresh.R, 226u);
    EXPECT_LT(d.g, 0);
    EXPECT_TRUE(d.tau_growth.is_zero());
}

}  // namespace
}  // namespace medium
