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
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace medium {

inline constexpr mpfr_prec_t kDefaultPrecision = 64;
inline constexpr mpfr_prec_t kCalculatorPrecision = 256;

//! Owning value wrapper around an mpfr_t. Arithmetic rounds to nearest at the
//! precision of the left operand; directed rounding is done on the raw handle.
class Real {
  public:
    Real() : Real(kCalculatorPrecision) {}
    explicit Real(mpfr_prec_t bits);
    Real(double value, mpfr_prec_t bits = kCalculatorPrecision);
    Real(const mpz_class& value, mpfr_prec_t bits, mpfr_rnd_t rnd = MPFR_RNDN);
    Real(const mpq_class& value, mpfr_prec_t bits, mpfr_rnd_t rnd = MPFR_RNDN);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    [[nodiscard]] mpfr_ptr get() noexcept { return value_; }
    [[nodiscard]] mpfr_srcptr get() const noexcept { return value_; }
    [[nodiscard]] mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

    [[nodiscard]] double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
    [[nodiscard]] bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    [[nodiscard]] bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
    [[nodiscard]] int sign() const noexcept { return mpfr_sgn(value_); }

    //! Decimal rendering with `digits` significant digits, "C" locale.
    [[nodiscard]] std::string to_string(int digits = 17) const;

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);

    friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
    friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
    friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
    friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);

  private:
    mpfr_t value_;
};

[[nodiscard]] Real pow(const Real& base, const Real& exponent);
[[nodiscard]] Real pow(const Real& base, std::uint64_t exponent);
[[nodiscard]] Real log(const Real& x);
[[nodiscard]] Real exp(const Real& x);
[[nodiscard]] Real ceil(const Real& x);
[[nodiscard]] Real floor(const Real& x);

//! Closed interval [lo, hi] with endpoints rounded outward.
struct Interval {
    Real lo;
    Real hi;

    [[nodiscard]] bool contains(const Real& x) const { return lo <= x && x <= hi; }
    [[nodiscard]] bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
    [[nodiscard]] Real width() const { return hi - lo; }
    //! Width divided by the larger endpoint magnitude (0 for a degenerate point).
    [[nodiscard]] double relative_width() const;
    [[nodiscard]] Real midpoint() const;
    [[nodiscard]] bool overlaps(const Interval& other) const { return !(hi < other.lo) && !(other.hi < lo); }
};

}  // namespace medium
