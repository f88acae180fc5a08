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

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "medium/real.hpp"

namespace medium {

//! Level counts of a subtree: coeffs[i] is the number of blocks i levels below the root.
class WeightPoly {
  public:
    WeightPoly() = default;
    explicit WeightPoly(std::vector<std::uint64_t> coeffs);

    [[nodiscard]] const std::vector<std::uint64_t>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] bool empty() const noexcept { return coeffs_.empty(); }
    //! Highest level index; -1 for the empty polynomial.
    [[nodiscard]] std::ptrdiff_t degree() const noexcept { return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1; }
    //! Sum of coefficients, i.e. the number of blocks.
    [[nodiscard]] std::uint64_t total() const noexcept;
    [[nodiscard]] std::uint64_t operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }

    //! Adds `count` blocks at level `level`.
    void add(std::size_t level, std::uint64_t count = 1);
    //! Multiplies by X^shift and adds the result.
    void add_shifted(const WeightPoly& other, std::size_t shift);

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const WeightPoly&, const WeightPoly&) = default;

  private:
    std::vector<std::uint64_t> coeffs_;
};

enum class CoefficientKind { AlgebraicRoot, Rational, GhostOne, BitcoinLimit };

//! The depth-weighting base c.
class WeightCoefficient {
  public:
    //! c = prime^(1/root_index); `prime` must be a prime.
    static WeightCoefficient algebraic_root(std::uint64_t prime, std::uint64_t root_index,
                                            mpfr_prec_t precision_hint = kDefaultPrecision);
    static WeightCoefficient rational(const mpq_class& value, mpfr_prec_t precision_hint = kDefaultPrecision);
    static WeightCoefficient ghost();
    static WeightCoefficient bitcoin();

    //! Accepts "P^(1/n)", "P", "a/b", "ghost" (or "1"), "bitcoin" (or "inf").
    static WeightCoefficient parse(std::string_view text);

    [[nodiscard]] CoefficientKind kind() const noexcept { return kind_; }
    [[nodiscard]] bool is_limit() const noexcept { return kind_ == CoefficientKind::BitcoinLimit; }
    [[nodiscard]] std::uint64_t prime() const noexcept { return prime_; }
    [[nodiscard]] std::uint64_t root_index() const noexcept { return root_index_; }
    [[nodiscard]] const mpq_class& rational_value() const noexcept { return rational_; }
    [[nodiscard]] mpfr_prec_t precision_hint() const noexcept { return precision_hint_; }

    //! Rigorous enclosure of c at `bits` of precision.
    [[nodiscard]] Interval enclose(mpfr_prec_t bits) const;
    [[nodiscard]] double approx() const;

    //! Canonical text form, parseable by parse().
    [[nodiscard]] std::string label() const;

    friend bool operator==(const WeightCoefficient& a, const WeightCoefficient& b);

  private:
    WeightCoefficient() = default;
    void warm_cache();

    CoefficientKind kind_{CoefficientKind::GhostOne};
    std::uint64_t prime_{0};
    std::uint64_t root_index_{0};
    mpq_class rational_{1};
    mpfr_prec_t precision_hint_{kDefaultPrecision};
    std::shared_ptr<const std::vector<Interval>> cache_;  // enclosures at hint, 2*hint, 4*hint
};

enum class ComparisonMode {
    Strict,   // throw when the root index does not bound the difference degree
    Reduced,  // reduce modulo the minimal polynomial first; exact for any degree
    Numeric,  // interval escalation up to a cap, Equal if still undecided
};

//! Rigorous enclosure of sum(coeffs[i] * c^i).
[[nodiscard]] Interval evaluate_weight(const WeightPoly& poly, const WeightCoefficient& c, mpfr_prec_t bits);
[[nodiscard]] Interval evaluate_weight(const WeightPoly& poly, const WeightCoefficient& c);

//! Exact ordering of the weights of two subtrees.
[[nodiscard]] std::strong_ordering compare_weight(const WeightPoly& a, const WeightPoly& b, const WeightCoefficient& c,
                                                  ComparisonMode mode = ComparisonMode::Strict);

//! Same as above for signed integer coefficients; used by callers that already hold a difference.
[[nodiscard]] std::strong_ordering sign_at(const std::vector<mpz_class>& diff, const WeightCoefficient& c,
                                           ComparisonMode mode = ComparisonMode::Strict);

}  // namespace medium
