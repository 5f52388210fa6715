#pragma once

// Certified floating evaluation of Σ c_k exp(2πi k m / L).
//
// Every evaluation returns an approximation together with an error radius that
// bounds the distance to the exact value. A sign is reported only when the
// approximation is farther from zero than its radius; otherwise the working
// precision is doubled. Exact zero is never decided numerically: callers pass
// an oracle that settles it symbolically once the ladder gets long.

#include <mpfr.h>

#include <cmath>
#include <complex>
#include <limits>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "cxta/errors.hpp"
#include "cxta/rational.hpp"

namespace cxta::detail {

struct Term {
    std::int64_t exponent;  // in [0, level)
    Rational coeff;
};

enum class Component { Real, Imag };

/// RAII handle for an mpfr_t.
class MpfrFloat {
public:
    explicit MpfrFloat(mpfr_prec_t prec) { mpfr_init2(value_, prec); mpfr_set_zero(value_, 1); }
    ~MpfrFloat() { mpfr_clear(value_); }
    MpfrFloat(const MpfrFloat&) = delete;
    MpfrFloat& operator=(const MpfrFloat&) = delete;

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }

private:
    mpfr_t value_;
};

/// Residue (k * m) mod L without overflow.
inline std::int64_t mul_mod(std::int64_t k, std::int64_t m, std::int64_t level) {
    const auto r = static_cast<__int128>(k) * m % level;
    return static_cast<std::int64_t>(r < 0 ? r + level : r);
}

class Evaluator {
public:
    Evaluator(std::int64_t level, std::span<const Term> terms) : level_(level), terms_(terms.begin(), terms.end()) {
        coeff_d_.reserve(terms_.size());
        for (const auto& t : terms_) {
            const double c = t.coeff.get_d();
            if (!std::isfinite(c)) double_ok_ = false;
            coeff_d_.push_back(c);
            abs_sum_ += std::fabs(c);
        }
        // get_d truncates; one ulp of slack per coefficient covers it.
        abs_sum_ *= 1.0 + 1e-12;
        if (!std::isfinite(abs_sum_)) double_ok_ = false;
    }

    std::int64_t level() const { return level_; }
    bool empty() const { return terms_.empty(); }

    /// Error bound for approx(); infinite when doubles cannot represent the coefficients.
    double approx_radius() const {
        if (!double_ok_) return std::numeric_limits<double>::infinity();
        return abs_sum_ * (1e-14 + static_cast<double>(terms_.size()) * 2.3e-16);
    }

    /// Plain double evaluation, no certification.
    std::complex<double> approx(std::int64_t m) const {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const double angle = 2.0 * std::numbers::pi * (static_cast<double>(mul_mod(terms_[i].exponent, m, level_)) /
                                                           static_cast<double>(level_));
            acc += coeff_d_[i] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        return acc;
    }

    /// Sign of one component at embedding m if certified in double precision.
    std::optional<int> try_sign_double(std::int64_t m, Component comp) const {
        if (!double_ok_) return std::nullopt;
        double acc = 0.0;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const double angle = 2.0 * std::numbers::pi * (static_cast<double>(mul_mod(terms_[i].exponent, m, level_)) /
                                                           static_cast<double>(level_));
            acc += coeff_d_[i] * (comp == Component::Real ? std::cos(angle) : std::sin(angle));
        }
        const double n = static_cast<double>(terms_.size());
        const double radius = abs_sum_ * (1e-14 + n * 2.3e-16);
        if (acc > radius) return 1;
        if (acc < -radius) return -1;
        return std::nullopt;
    }

    /// Sign of one component at embedding m if certified at the given MPFR precision.
    std::optional<int> try_sign_mpfr(std::int64_t m, Component comp, mpfr_prec_t prec) const {
        const mpfr_prec_t work = prec + 16;
        MpfrFloat acc(work), angle(work), trig(work), coeff(work), pi2(work);
        mpfr_const_pi(pi2.get(), MPFR_RNDN);
        mpfr_mul_2ui(pi2.get(), pi2.get(), 1, MPFR_RNDN);
        double abs_sum = 0.0;
        for (const auto& t : terms_) {
            const auto r = mul_mod(t.exponent, m, level_);
            mpfr_mul_si(angle.get(), pi2.get(), static_cast<long>(r), MPFR_RNDN);
            mpfr_div_si(angle.get(), angle.get(), static_cast<long>(level_), MPFR_RNDN);
            if (comp == Component::Real)
                mpfr_cos(trig.get(), angle.get(), MPFR_RNDN);
            else
                mpfr_sin(trig.get(), angle.get(), MPFR_RNDN);
            mpfr_set_q(coeff.get(), t.coeff.get_mpq_t(), MPFR_RNDN);
            abs_sum += std::fabs(mpfr_get_d(coeff.get(), MPFR_RNDU)) * (1.0 + 1e-12);
            mpfr_mul(trig.get(), trig.get(), coeff.get(), MPFR_RNDN);
            mpfr_add(acc.get(), acc.get(), trig.get(), MPFR_RNDN);
        }
        // Per term: argument error <= 3 ulp * 2π, trig and product rounding <= 2 ulp,
        // coefficient rounding <= 1 ulp; summation adds n ulp of the running total.
        MpfrFloat radius(64);
        const double n = static_cast<double>(terms_.size());
        mpfr_set_d(radius.get(), abs_sum * (32.0 + 2.0 * n), MPFR_RNDU);
        mpfr_div_2si(radius.get(), radius.get(), work, MPFR_RNDU);
        if (mpfr_cmpabs(acc.get(), radius.get()) > 0) return mpfr_sgn(acc.get()) > 0 ? 1 : -1;
        return std::nullopt;
    }

private:
    std::int64_t level_;
    std::vector<Term> terms_;
    std::vector<double> coeff_d_;
    double abs_sum_ = 0.0;
    bool double_ok_ = true;
};

inline constexpr mpfr_prec_t kOracleAfterBits = 4096;
inline constexpr mpfr_prec_t kMaxBits = mpfr_prec_t{1} << 22;

/// Certified sign of one component at embedding m. `exactly_zero` is consulted
/// once the precision ladder passes kOracleAfterBits.
inline int certified_sign(const Evaluator& ev, std::int64_t m, Component comp,
                          const std::function<bool()>& exactly_zero) {
    if (ev.empty()) return 0;
    if (auto s = ev.try_sign_double(m, comp)) return *s;
    bool oracle_consulted = false;
    for (mpfr_prec_t prec = 128; prec <= kMaxBits; prec *= 2) {
        if (auto s = ev.try_sign_mpfr(m, comp, prec)) return *s;
        if (prec >= kOracleAfterBits && !oracle_consulted) {
            oracle_consulted = true;
            if (exactly_zero()) return 0;
        }
    }
    throw Error("sign certification did not converge");
}

/// True iff the value at embedding m is nonzero, certified; zero is decided by the oracle.
inline bool certified_nonzero(const Evaluator& ev, std::int64_t m, const std::function<bool()>& exactly_zero) {
    if (ev.empty()) return false;
    if (ev.try_sign_double(m, Component::Real) || ev.try_sign_double(m, Component::Imag)) return true;
    bool oracle_consulted = false;
    for (mpfr_prec_t prec = 128; prec <= kMaxBits; prec *= 2) {
        if (ev.try_sign_mpfr(m, Component::Real, prec) || ev.try_sign_mpfr(m, Component::Imag, prec)) return true;
        if (prec >= kOracleAfterBits && !oracle_consulted) {
            oracle_consulted = true;
            if (exactly_zero()) return false;
        }
    }
    throw Error("nonzero certification did not converge");
}

}  // namespace cxta::detail
