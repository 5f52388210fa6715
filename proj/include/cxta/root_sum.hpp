#pragma once

// Sparse sums of roots of unity.
//
// A RootSum is Σ c_k ζ_L^k kept as a short list of terms instead of a reduced
// power-basis vector. It is not canonical (distinct term lists can denote the
// same number) but Galois action and numeric evaluation are cheap, which is
// what the large scans need. Exact questions go through to_dense().

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "cxta/cyclotomic.hpp"

namespace cxta {

class RootSum {
public:
    RootSum() = default;

    static RootSum rational(const Rational& q) {
        RootSum r;
        r.add_term(0, q);
        return r;
    }

    /// ζ_L^k.
    static RootSum zeta(std::int64_t k, std::int64_t level) {
        RootSum r(level);
        r.add_term(k, Rational(1));
        return r;
    }

    /// e^{iπ a/b}.
    static RootSum exp_i_pi(const Rational& a_over_b) {
        const auto a = to_ll(a_over_b.get_num()), b = to_ll(a_over_b.get_den());
        return zeta(a, 2 * b);
    }

    /// cos(π a/b); exact rational values (b ≤ 3) come back as constants.
    static RootSum cos_pi(const Rational& a_over_b) {
        const auto a = to_ll(a_over_b.get_num()), b = to_ll(a_over_b.get_den());
        if (b <= 3) {
            static const Rational table[6] = {Rational(1), frac(1, 2), frac(-1, 2), Rational(-1), frac(-1, 2), frac(1, 2)};
            // index by the angle in units of π/3 modulo 2π
            const auto sixths = mod_floor(a * (6 / b), 12);
            if (sixths % 2 == 0) return rational(table[sixths / 2]);
            if (b == 2) return rational(0);
        }
        RootSum r(2 * b);
        r.add_term(a, frac(1, 2));
        r.add_term(-a, frac(1, 2));
        return r;
    }

    std::int64_t level() const { return level_; }
    const std::map<std::int64_t, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
    Rational constant() const {
        auto it = terms_.find(0);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    RootSum lifted(std::int64_t new_level) const {
        if (new_level % level_ != 0) throw LevelMismatch("RootSum::lifted: not a multiple of the level");
        RootSum r(new_level);
        const auto stride = new_level / level_;
        for (const auto& [e, c] : terms_) r.add_term(e * stride, c);
        return r;
    }

    RootSum& operator+=(const RootSum& o) { return accumulate(o, 1); }
    RootSum& operator-=(const RootSum& o) { return accumulate(o, -1); }
    RootSum& operator*=(const Rational& q) {
        if (sgn(q) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [_, c] : terms_) c *= q;
        return *this;
    }

    friend RootSum operator+(RootSum a, const RootSum& b) { return a += b; }
    friend RootSum operator-(RootSum a, const RootSum& b) { return a -= b; }
    friend RootSum operator*(RootSum a, const Rational& q) { return a *= q; }
    friend RootSum operator*(const Rational& q, RootSum a) { return a *= q; }
    friend RootSum operator*(const RootSum& a, const RootSum& b) {
        const auto level = checked_lcm(a.level_, b.level_);
        const auto sa = level / a.level_, sb = level / b.level_;
        RootSum r(level);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea * sa + eb * sb, ca * cb);
        return r;
    }

    /// σ_m for m coprime to the level (m is reduced modulo the level first).
    RootSum apply_galois(std::int64_t m) const {
        const auto mm = mod_floor(m, level_);
        if (std::gcd(mm, level_) != 1) throw Error("RootSum::apply_galois: exponent not coprime to level");
        RootSum r(level_);
        for (const auto& [e, c] : terms_) r.add_term(detail::mul_mod(e, mm, level_), c);
        return r;
    }

    RootSum conjugate() const { return apply_galois(level_ - 1); }

    CycElem to_dense() const { return to_dense(level_); }
    CycElem to_dense(std::int64_t level) const {
        if (level % level_ != 0) throw LevelMismatch("RootSum::to_dense: not a multiple of the level");
        std::vector<Term> t;
        const auto stride = level / level_;
        for (const auto& [e, c] : terms_) t.push_back({e * stride, c});
        return CycElem::from_terms(level, t);
    }

    bool is_zero_exact() const { return empty() || to_dense().is_zero(); }

    /// Drops to the smallest even level whose roots of unity cover every term.
    RootSum& reduce_level() {
        std::int64_t g = level_;
        for (const auto& [e, _] : terms_) g = std::gcd(g, e);
        if ((level_ / g) % 2 != 0) g /= 2;
        if (g <= 1) return *this;
        RootSum r(level_ / g);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e / g, c);
        *this = std::move(r);
        return *this;
    }

    /// Reduces the level, and collapses to a constant when the value is
    /// rational (decided exactly for small levels).
    RootSum& simplify(std::int64_t max_level = 256) {
        reduce_level();
        if (is_constant() || level_ > max_level) return *this;
        const auto dense = to_dense();
        if (dense.is_rational()) *this = rational(dense.constant_term());
        return *this;
    }

    std::vector<Term> term_list() const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& [e, c] : terms_) out.push_back({e, c});
        return out;
    }

    detail::Evaluator evaluator() const {
        const auto t = term_list();
        return detail::Evaluator(level_, t);
    }

private:
    explicit RootSum(std::int64_t level) : level_(level) {
        if (level < 2 || level % 2 != 0) throw Error("RootSum: level must be a positive even integer");
    }

    // ζ^(L/2) = -1 folds every exponent into [0, L/2).
    void add_term(std::int64_t e, const Rational& c) {
        if (sgn(c) == 0) return;
        e = mod_floor(e, level_);
        const auto half = level_ / 2;
        Rational v = c;
        if (e >= half) {
            e -= half;
            v = -v;
        }
        auto [it, inserted] = terms_.try_emplace(e, v);
        if (!inserted) {
            it->second += v;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    RootSum& accumulate(const RootSum& o, int sign) {
        const auto level = checked_lcm(level_, o.level_);
        if (level != level_) *this = lifted(level);
        const auto stride = level / o.level_;
        for (const auto& [e, c] : o.terms_) add_term(e * stride, sign > 0 ? c : Rational(-c));
        return *this;
    }

    std::int64_t level_ = 2;
    std::map<std::int64_t, Rational> terms_;
};

/// Certified sign of σ_m(x) for a real RootSum; exact zero is settled on the dense form.
inline int certified_sign_at(const RootSum& x, std::int64_t m) {
    if (x.is_constant()) return sgn(x.constant());
    const auto ev = x.evaluator();
    return detail::certified_sign(ev, mod_floor(m, x.level()), detail::Component::Real,
                                  [&] { return x.to_dense().is_zero(); });
}

/// σ_m(x) == x, decided exactly; numerics only short-circuit the "moved" case.
inline bool fixed_by(const RootSum& x, std::int64_t m) {
    if (x.is_constant()) return true;
    const auto diff = x.apply_galois(m) - x;
    if (diff.empty()) return true;
    const auto ev = diff.evaluator();
    if (ev.try_sign_double(1, detail::Component::Real) || ev.try_sign_double(1, detail::Component::Imag)) return false;
    return diff.to_dense().is_zero();
}

/// Like fixed_by, but never falls back to exact arithmetic: returns true only
/// when σ_m(x) ≠ x is certified numerically (doubles only when max_bits < 128).
inline bool certainly_moved(const RootSum& x, std::int64_t m, mpfr_prec_t max_bits = 512) {
    if (x.is_constant()) return false;
    const auto diff = x.apply_galois(m) - x;
    if (diff.empty()) return false;
    const auto ev = diff.evaluator();
    using detail::Component;
    if (ev.try_sign_double(1, Component::Real) || ev.try_sign_double(1, Component::Imag)) return true;
    for (mpfr_prec_t prec = 128; prec <= max_bits; prec *= 2)
        if (ev.try_sign_mpfr(1, Component::Real, prec) || ev.try_sign_mpfr(1, Component::Imag, prec)) return true;
    return false;
}

}  // namespace cxta
