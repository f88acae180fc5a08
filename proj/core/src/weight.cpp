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

#include "medium/weight.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <optional>

#include "medium/errors.hpp"

namespace medium {

namespace {

    constexpr mpfr_prec_t kNumericCap = 4096;

    std::uint64_t parse_u64(std::string_view s) {
        std::uint64_t out{0};
        const auto* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(s.data(), end, out);
        if (ec != std::errc{} || ptr != end) throw ConfigError("not an unsigned integer: " + std::string(s));
        return out;
    }

    std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    }

    void strip(std::vector<mpz_class>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    }

    // Horner over the magnitudes of coefficients with the requested sign, with c >= 1
    // bounded by `cb` and rounding in direction `rnd`. The result is then a bound on
    // the partial sum in the same direction.
    void signed_part(Real& acc, const std::vector<mpz_class>& diff, int want_sign, const Real& cb, mpfr_rnd_t rnd) {
        mpfr_set_zero(acc.get(), 1);
        mpz_class mag;
        for (std::size_t i = diff.size(); i-- > 0;) {
            mpfr_mul(acc.get(), acc.get(), cb.get(), rnd);
            if (sgn(diff[i]) == want_sign) {
                mag = abs(diff[i]);
                mpfr_add_z(acc.get(), acc.get(), mag.get_mpz_t(), rnd);
            }
        }
    }

    std::optional<std::strong_ordering> interval_sign(const std::vector<mpz_class>& diff, const Interval& c,
                                                      mpfr_prec_t bits) {
        Real pos_lo(bits), pos_hi(bits), neg_lo(bits), neg_hi(bits);
        signed_part(pos_lo, diff, 1, c.lo, MPFR_RNDD);
        signed_part(neg_hi, diff, -1, c.hi, MPFR_RNDU);
        if (pos_lo > neg_hi) return std::strong_ordering::greater;
        signed_part(pos_hi, diff, 1, c.hi, MPFR_RNDU);
        signed_part(neg_lo, diff, -1, c.lo, MPFR_RNDD);
        if (pos_hi < neg_lo) return std::strong_ordering::less;
        return std::nullopt;
    }

    std::strong_ordering escalate(const std::vector<mpz_class>& diff, const WeightCoefficient& c, mpfr_prec_t start,
                                  mpfr_prec_t cap) {
        for (mpfr_prec_t bits = start;; bits *= 2) {
            if (auto s = interval_sign(diff, c.enclose(bits), bits)) return *s;
            if (cap > 0 && bits >= cap) return std::strong_ordering::equal;
        }
    }

    std::strong_ordering rational_sign(const std::vector<mpz_class>& diff, const mpq_class& c) {
        const mpz_class& u = c.get_num();
        const mpz_class& v = c.get_den();
        // sum d_i u^i v^(L-i), accumulated from the top coefficient down
        mpz_class acc = diff.back();
        mpz_class vpow = 1;
        for (std::size_t i = diff.size() - 1; i-- > 0;) {
            vpow *= v;
            acc = acc * u + diff[i] * vpow;
        }
        const int s = sgn(acc);
        return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    // Folds X^n = P into the lower coefficients; the result has degree < n and the same value at c.
    std::vector<mpz_class> reduce_mod_minimal(const std::vector<mpz_class>& diff, std::uint64_t prime,
                                              std::uint64_t n) {
        if (diff.size() <= n) return diff;
        std::vector<mpz_class> out(n);
        const mpz_class p(std::to_string(prime));
        mpz_class scale = 1;
        for (std::size_t block = 0; block * n < diff.size(); ++block) {
            for (std::size_t j = 0; j < n && block * n + j < diff.size(); ++j) {
                const auto& d = diff[block * n + j];
                if (d != 0) out[j] += d * scale;
            }
            scale *= p;
        }
        strip(out);
        return out;
    }

}  // namespace

WeightPoly::WeightPoly(std::vector<std::uint64_t> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::uint64_t WeightPoly::total() const noexcept {
    std::uint64_t s{0};
    for (auto a : coeffs_) s += a;
    return s;
}

void WeightPoly::add(std::size_t level, std::uint64_t count) {
    if (count == 0) return;
    if (coeffs_.size() <= level) coeffs_.resize(level + 1, 0);
    coeffs_[level] += count;
}

void WeightPoly::add_shifted(const WeightPoly& other, std::size_t shift) {
    if (other.empty()) return;
    if (coeffs_.size() < other.coeffs_.size() + shift) coeffs_.resize(other.coeffs_.size() + shift, 0);
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i + shift] += other.coeffs_[i];
}

std::string WeightPoly::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(coeffs_[i]);
    }
    return out + "]";
}

WeightCoefficient WeightCoefficient::algebraic_root(std::uint64_t prime, std::uint64_t root_index,
                                                    mpfr_prec_t precision_hint) {
    const mpz_class p(std::to_string(prime));
    if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw ConfigError("not a prime: " + std::to_string(prime));
    if (root_index == 0) throw ConfigError("root index must be at least 1");
    WeightCoefficient c;
    c.kind_ = CoefficientKind::AlgebraicRoot;
    c.prime_ = prime;
    c.root_index_ = root_index;
    c.precision_hint_ = std::max<mpfr_prec_t>(precision_hint, 64);
    c.warm_cache();
    return c;
}

WeightCoefficient WeightCoefficient::rational(const mpq_class& value, mpfr_prec_t precision_hint) {
    mpq_class v = value;
    v.canonicalize();
    if (v < 1) throw ConfigError("rational weight coefficient must be at least 1");
    WeightCoefficient c;
    c.kind_ = CoefficientKind::Rational;
    c.rational_ = v;
    c.precision_hint_ = std::max<mpfr_prec_t>(precision_hint, 64);
    c.warm_cache();
    return c;
}

WeightCoefficient WeightCoefficient::ghost() {
    WeightCoefficient c;
    c.kind_ = CoefficientKind::GhostOne;
    c.warm_cache();
    return c;
}

WeightCoefficient WeightCoefficient::bitcoin() {
    WeightCoefficient c;
    c.kind_ = CoefficientKind::BitcoinLimit;
    return c;
}

WeightCoefficient WeightCoefficient::parse(std::string_view text) {
    text = trim(text);
    if (text == "ghost" || text == "GHOST") return ghost();
    if (text == "bitcoin" || text == "Bitcoin" || text == "inf") return bitcoin();
    if (auto caret = text.find('^'); caret != std::string_view::npos) {
        const auto base = trim(text.substr(0, caret));
        auto exp = trim(text.substr(caret + 1));
        if (exp.size() < 5 || exp.front() != '(' || exp.back() != ')' || exp.substr(1, 2) != "1/")
            throw ConfigError("expected P^(1/n), got " + std::string(text));
        exp = exp.substr(3, exp.size() - 4);
        return algebraic_root(parse_u64(base), parse_u64(exp));
    }
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0) throw ConfigError("bad weight coefficient: " + std::string(text));
    return rational(q);
}

void WeightCoefficient::warm_cache() {
    auto cache = std::make_shared<std::vector<Interval>>();
    cache_.reset();
    for (int k = 0; k < 3; ++k) cache->push_back(enclose(precision_hint_ << k));
    cache_ = std::move(cache);
}

Interval WeightCoefficient::enclose(mpfr_prec_t bits) const {
    if (cache_) {
        for (int k = 0; k < 3; ++k)
            if ((precision_hint_ << k) == bits) return (*cache_)[static_cast<std::size_t>(k)];
    }
    Interval out{Real(bits), Real(bits)};
    switch (kind_) {
    case CoefficientKind::GhostOne:
        mpfr_set_ui(out.lo.get(), 1, MPFR_RNDN);
        mpfr_set_ui(out.hi.get(), 1, MPFR_RNDN);
        break;
    case CoefficientKind::Rational:
        mpfr_set_q(out.lo.get(), rational_.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(out.hi.get(), rational_.get_mpq_t(), MPFR_RNDU);
        break;
    case CoefficientKind::AlgebraicRoot: {
        Real p(std::max<mpfr_prec_t>(bits, 64));
        mpfr_set_ui(p.get(), prime_, MPFR_RNDN);
        mpfr_rootn_ui(out.lo.get(), p.get(), root_index_, MPFR_RNDD);
        mpfr_rootn_ui(out.hi.get(), p.get(), root_index_, MPFR_RNDU);
        break;
    }
    case CoefficientKind::BitcoinLimit:
        throw LimitModeError("longest-chain limit has no numeric value");
    }
    return out;
}

double WeightCoefficient::approx() const {
    if (kind_ == CoefficientKind::BitcoinLimit) return std::numeric_limits<double>::infinity();
    return enclose(precision_hint_).midpoint().to_double();
}

std::string WeightCoefficient::label() const {
    switch (kind_) {
    case CoefficientKind::GhostOne: return "ghost";
    case CoefficientKind::BitcoinLimit: return "bitcoin";
    case CoefficientKind::Rational: return rational_.get_str();
    case CoefficientKind::AlgebraicRoot:
        return std::to_string(prime_) + "^(1/" + std::to_string(root_index_) + ")";
    }
    return {};
}

bool operator==(const WeightCoefficient& a, const WeightCoefficient& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
    case CoefficientKind::AlgebraicRoot: return a.prime_ == b.prime_ && a.root_index_ == b.root_index_;
    case CoefficientKind::Rational: return a.rational_ == b.rational_;
    default: return true;
    }
}

Interval evaluate_weight(const WeightPoly& poly, const WeightCoefficient& c, mpfr_prec_t bits) {
    const Interval cb = c.enclose(bits);
    Interval out{Real(bits), Real(bits)};
    const auto& a = poly.coeffs();
    for (std::size_t i = a.size(); i-- > 0;) {
        mpfr_mul(out.lo.get(), out.lo.get(), cb.lo.get(), MPFR_RNDD);
        mpfr_add_ui(out.lo.get(), out.lo.get(), a[i], MPFR_RNDD);
        mpfr_mul(out.hi.get(), out.hi.get(), cb.hi.get(), MPFR_RNDU);
        mpfr_add_ui(out.hi.get(), out.hi.get(), a[i], MPFR_RNDU);
    }
    return out;
}

Interval evaluate_weight(const WeightPoly& poly, const WeightCoefficient& c) {
    return evaluate_weight(poly, c, c.precision_hint());
}

std::strong_ordering sign_at(const std::vector<mpz_class>& diff_in, const WeightCoefficient& c, ComparisonMode mode) {
    std::vector<mpz_class> diff = diff_in;
    strip(diff);
    if (diff.empty()) return std::strong_ordering::equal;
    switch (c.kind()) {
    case CoefficientKind::BitcoinLimit:
        throw LimitModeError("longest-chain limit has no numeric weight");
    case CoefficientKind::GhostOne: {
        mpz_class s = 0;
        for (const auto& d : diff) s += d;
        const int k = sgn(s);
        return k < 0 ? std::strong_ordering::less : (k > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    case CoefficientKind::Rational:
        return rational_sign(diff, c.rational_value());
    case CoefficientKind::AlgebraicRoot:
        break;
    }

    const std::size_t degree = diff.size() - 1;
    const std::size_t n = c.root_index();
    const mpfr_prec_t hint = c.precision_hint();

    if (mode == ComparisonMode::Numeric) return escalate(diff, c, hint, kNumericCap);

    if (degree >= n) {
        if (mode == ComparisonMode::Strict) {
            if (degree > n)
                throw InexactComparisonError("difference degree " + std::to_string(degree) + " exceeds root index " +
                                             std::to_string(n));
            // the only degree-n polynomials vanishing at c are multiples of X^n - P
            bool multiple = diff[0] == -diff[n] * mpz_class(std::to_string(c.prime()));
            for (std::size_t i = 1; multiple && i < n; ++i) multiple = diff[i] == 0;
            if (multiple) return std::strong_ordering::equal;
        } else {
            for (int k = 0; k < 3; ++k)
                if (auto s = interval_sign(diff, c.enclose(hint << k), hint << k)) return *s;
            diff = reduce_mod_minimal(diff, c.prime(), n);
            if (diff.empty()) return std::strong_ordering::equal;
        }
    }
    return escalate(diff, c, hint, 0);
}

std::strong_ordering compare_weight(const WeightPoly& a, const WeightPoly& b, const WeightCoefficient& c,
                                    ComparisonMode mode) {
    if (c.is_limit()) throw LimitModeError("longest-chain limit has no numeric weight");
    if (a == b) return std::strong_ordering::equal;
    if (c.kind() == CoefficientKind::GhostOne) return a.total() <=> b.total();
    const std::size_t len = std::max(a.coeffs().size(), b.coeffs().size());
    std::vector<mpz_class> diff(len);
    for (std::size_t i = 0; i < len; ++i) {
        diff[i] = a[i];
        diff[i] -= b[i];
    }
    return sign_at(diff, c, mode);
}

}  // namespace medium
