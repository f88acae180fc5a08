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

#include "medium/real.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace medium {

Real::Real(mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
}

Real::Real(double value, mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const mpz_class& value, mpfr_prec_t bits, mpfr_rnd_t rnd) {
    mpfr_init2(value_, bits);
    mpfr_set_z(value_, value.get_mpz_t(), rnd);
}

Real::Real(const mpq_class& value, mpfr_prec_t bits, mpfr_rnd_t rnd) {
    mpfr_init2(value_, bits);
    mpfr_set_q(value_, value.get_mpq_t(), rnd);
}

Real::Real(const Real& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    // steal the limbs and leave `other` as a valid 2-bit zero
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(int digits) const {
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    const int needed = mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
    if (needed >= static_cast<int>(buf.size())) {
        buf.resize(static_cast<std::size_t>(needed) + 1);
        mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
    }
    return std::string(buf.data());
}

Real& Real::operator+=(const Real& rhs) {
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& rhs) {
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& rhs) {
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& rhs) {
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.value_, b.value_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

Real pow(const Real& base, const Real& exponent) {
    Real out(std::max(base.precision(), exponent.precision()));
    mpfr_pow(out.get(), base.get(), exponent.get(), MPFR_RNDN);
    return out;
}

Real pow(const Real& base, std::uint64_t exponent) {
    Real out(base.precision());
    mpfr_pow_ui(out.get(), base.get(), exponent, MPFR_RNDN);
    return out;
}

Real log(const Real& x) {
    Real out(x.precision());
    mpfr_log(out.get(), x.get(), MPFR_RNDN);
    return out;
}

Real exp(const Real& x) {
    Real out(x.precision());
    mpfr_exp(out.get(), x.get(), MPFR_RNDN);
    return out;
}

Real ceil(const Real& x) {
    Real out(x.precision());
    mpfr_ceil(out.get(), x.get());
    return out;
}

Real floor(const Real& x) {
    Real out(x.precision());
    mpfr_floor(out.get(), x.get());
    return out;
}

double Interval::relative_width() const {
    Real w(std::max(lo.precision(), hi.precision()));
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
    Real scale(w.precision());
    mpfr_abs(scale.get(), hi.get(), MPFR_RNDN);
    Real alo(w.precision());
    mpfr_abs(alo.get(), lo.get(), MPFR_RNDN);
    if (alo > scale) scale = alo;
    if (scale.is_zero()) return 0.0;
    mpfr_div(w.get(), w.get(), scale.get(), MPFR_RNDU);
    return w.to_double();
}

Real Interval::midpoint() const {
    Real m(std::max(lo.precision(), hi.precision()) + 1);
    mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
}

}  // namespace medium
