#pragma once

// Exact arithmetic in cyclotomic fields Q(ζ_L) for even L.
//
// Elements are stored on the power basis {1, ζ, ..., ζ^(φ(L)-1)} reduced modulo
// the L-th cyclotomic polynomial, so equality is coefficient equality. The
// Galois group (Z/L)^× acts by ζ ↦ ζ^m.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "cxta/detail/numeric.hpp"
#include "cxta/errors.hpp"
#include "cxta/number_theory.hpp"
#include "cxta/rational.hpp"

namespace cxta {

using detail::Term;

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

struct CyclotomicPoly {
    std::vector<std::int64_t> dense;                             // coefficients, constant term first
    std::vector<std::pair<std::int64_t, std::int64_t>> sparse;   // (index, coeff) for nonzero entries below the leading term
    std::int64_t degree() const { return static_cast<std::int64_t>(dense.size()) - 1; }
};

namespace detail {

inline void checked_sub(std::int64_t& dst, std::int64_t v) {
    if (__builtin_sub_overflow(dst, v, &dst)) throw Error("cyclotomic coefficient overflow");
}
inline void checked_add(std::int64_t& dst, std::int64_t v) {
    if (__builtin_add_overflow(dst, v, &dst)) throw Error("cyclotomic coefficient overflow");
}

// Φ_n for squarefree n as ∏_{d|n} (x^d - 1)^{μ(n/d)}: all multiplications
// first, then exact divisions by the binomials with μ = -1.
inline std::vector<std::int64_t> squarefree_cyclotomic(std::int64_t n) {
    std::vector<std::int64_t> poly{1};
    std::vector<std::int64_t> downs;
    for (auto d : divisors(n)) {
        const int mu = mobius(n / d);
        if (mu == -1) downs.push_back(d);
        if (mu != 1) continue;
        const auto ud = static_cast<std::size_t>(d);
        std::vector<std::int64_t> out(poly.size() + ud, 0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            checked_add(out[i + ud], poly[i]);
            checked_sub(out[i], poly[i]);
        }
        poly = std::move(out);
    }
    for (auto d : downs) {
        // poly = q * (x^d - 1): p[i] = q[i-d] - q[i]  =>  q[i] = q[i-d] - p[i].
        const auto ud = static_cast<std::size_t>(d);
        std::vector<std::int64_t> q(poly.size() - ud, 0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] = -poly[i];
            if (i >= ud) checked_add(q[i], q[i - ud]);
        }
        poly = std::move(q);
    }
    return poly;
}

class CyclotomicCache {
public:
    static CyclotomicCache& instance() {
        static CyclotomicCache cache;
        return cache;
    }

    const CyclotomicPoly& get(std::int64_t n) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(n); it != table_.end()) return *it->second;
        }
        auto built = std::make_unique<CyclotomicPoly>(build(n));
        std::unique_lock lock(mutex_);
        auto [it, inserted] = table_.emplace(n, std::move(built));
        return *it->second;
    }

    /// Seeds the cache with a known polynomial (used by persistent caches).
    void seed(std::int64_t n, std::vector<std::int64_t> dense) {
        auto poly = std::make_unique<CyclotomicPoly>(finish(std::move(dense)));
        std::unique_lock lock(mutex_);
        table_.emplace(n, std::move(poly));
    }

    std::vector<std::int64_t> cached_indices() const {
        std::shared_lock lock(mutex_);
        std::vector<std::int64_t> out;
        for (const auto& [n, _] : table_) out.push_back(n);
        return out;
    }

private:
    static CyclotomicPoly finish(std::vector<std::int64_t> dense) {
        CyclotomicPoly p;
        p.dense = std::move(dense);
        for (std::size_t i = 0; i + 1 < p.dense.size(); ++i)
            if (p.dense[i] != 0) p.sparse.emplace_back(static_cast<std::int64_t>(i), p.dense[i]);
        return p;
    }

    CyclotomicPoly build(std::int64_t n) {
        if (n == 1) return finish({-1, 1});
        const auto rad = radical(n);
        if (rad == n) return finish(squarefree_cyclotomic(n));
        // Φ_n(x) = Φ_rad(n)(x^(n/rad(n)))
        const auto& base = get(rad);
        const auto stride = n / rad;
        std::vector<std::int64_t> dense(static_cast<std::size_t>(base.degree() * stride + 1), 0);
        for (std::size_t i = 0; i < base.dense.size(); ++i) dense[i * static_cast<std::size_t>(stride)] = base.dense[i];
        return finish(std::move(dense));
    }

    mutable std::shared_mutex mutex_;
    std::map<std::int64_t, std::unique_ptr<CyclotomicPoly>> table_;
};

}  // namespace detail

/// Memoized Φ_n; the reference stays valid for the life of the process.
inline const CyclotomicPoly& cyclotomic_polynomial_ref(std::int64_t n) {
    if (n < 1) throw Error("cyclotomic_polynomial: N must be positive");
    return detail::CyclotomicCache::instance().get(n);
}

/// Integer coefficients of Φ_n, constant term first.
inline std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t n) { return cyclotomic_polynomial_ref(n).dense; }

// ---------------------------------------------------------------------------
// Galois automorphisms

/// σ_m : ζ_L ↦ ζ_L^m.
class GaloisAut {
public:
    GaloisAut(std::int64_t level, std::int64_t exponent) : level_(level), exponent_(mod_floor(exponent, level)) {
        if (level < 1) throw Error("GaloisAut: level must be positive");
        if (std::gcd(exponent_, level_) != 1 && level_ > 1) throw Error("GaloisAut: exponent not coprime to level");
    }

    static GaloisAut identity(std::int64_t level) { return {level, 1}; }
    static GaloisAut complex_conjugation(std::int64_t level) { return {level, level - 1}; }

    std::int64_t level() const { return level_; }
    std::int64_t exponent() const { return exponent_; }

    /// (this ∘ other): apply other first, then this.
    GaloisAut compose(const GaloisAut& other) const {
        if (other.level_ != level_) throw LevelMismatch("GaloisAut::compose: different levels");
        return {level_, detail::mul_mod(exponent_, other.exponent_, level_)};
    }

    friend bool operator==(const GaloisAut&, const GaloisAut&) = default;

private:
    std::int64_t level_;
    std::int64_t exponent_;
};

// ---------------------------------------------------------------------------
// Field elements

class CycElem {
public:
    /// Zero of Q(ζ_2) = Q.
    CycElem() : CycElem(2) {}

    static CycElem zero(std::int64_t level) { return CycElem(level); }
    static CycElem rational(const Rational& q, std::int64_t level) {
        CycElem x(level);
        x.coeffs_[0] = q;
        return x;
    }
    static CycElem one(std::int64_t level) { return rational(1, level); }

    /// ζ_L^k for any integer k.
    static CycElem zeta_power(std::int64_t k, std::int64_t level) {
        std::vector<Term> t;
        t.push_back({k, Rational(1)});
        return from_terms(level, t);
    }

    /// Σ c_k ζ_L^(e_k) for arbitrary integer exponents.
    static CycElem from_terms(std::int64_t level, std::span<const Term> terms) {
        CycElem x(level);
        const auto half = level / 2;
        std::vector<Rational> buf(static_cast<std::size_t>(std::max<std::int64_t>(half, 1)));
        for (const auto& t : terms) {
            auto e = mod_floor(t.exponent, level);
            // ζ^(L/2) = -1
            if (e >= half) buf[static_cast<std::size_t>(e - half)] -= t.coeff;
            else buf[static_cast<std::size_t>(e)] += t.coeff;
        }
        x.coeffs_ = reduce(std::move(buf), level);
        return x;
    }

    /// From canonical power-basis coefficients (length φ(L)).
    static CycElem from_coeffs(std::int64_t level, std::vector<Rational> coeffs) {
        CycElem x(level);
        if (coeffs.size() != x.coeffs_.size()) throw Error("CycElem::from_coeffs: expected phi(L) coefficients");
        x.coeffs_ = std::move(coeffs);
        return x;
    }

    std::int64_t level() const { return level_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()); }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
    }
    bool is_rational() const {
        return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
    }
    /// Constant coefficient; equals the value when is_rational().
    const Rational& constant_term() const { return coeffs_[0]; }

    /// Nonzero coefficients as (exponent, coefficient) terms.
    std::vector<Term> terms() const {
        std::vector<Term> out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (sgn(coeffs_[k]) != 0) out.push_back({static_cast<std::int64_t>(k), coeffs_[k]});
        return out;
    }

    CycElem& operator+=(const CycElem& o) {
        check_level(o, "add");
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    CycElem& operator-=(const CycElem& o) {
        check_level(o, "sub");
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    CycElem& operator*=(const Rational& q) {
        for (auto& c : coeffs_) c *= q;
        return *this;
    }
    CycElem& operator*=(const CycElem& o) {
        check_level(o, "mul");
        if (o.is_rational()) return *this *= o.coeffs_[0];
        if (is_rational()) {
            const Rational q = coeffs_[0];
            *this = o;
            return *this *= q;
        }
        const auto n = coeffs_.size();
        std::vector<Rational> prod(2 * n - 1);
        Rational tmp;
        for (std::size_t i = 0; i < n; ++i) {
            if (sgn(coeffs_[i]) == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (sgn(o.coeffs_[j]) == 0) continue;
                mpq_mul(tmp.get_mpq_t(), coeffs_[i].get_mpq_t(), o.coeffs_[j].get_mpq_t());
                prod[i + j] += tmp;
            }
        }
        coeffs_ = reduce(std::move(prod), level_);
        return *this;
    }

    friend CycElem operator+(CycElem a, const CycElem& b) { return a += b; }
    friend CycElem operator-(CycElem a, const CycElem& b) { return a -= b; }
    friend CycElem operator*(CycElem a, const CycElem& b) { return a *= b; }
    friend CycElem operator*(CycElem a, const Rational& q) { return a *= q; }
    friend CycElem operator*(const Rational& q, CycElem a) { return a *= q; }
    friend CycElem operator-(CycElem a) {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }

    friend bool operator==(const CycElem& a, const CycElem& b) {
        return a.level_ == b.level_ && a.coeffs_ == b.coeffs_;
    }

    /// Reduces a polynomial in ζ_L (any length) modulo Φ_L.
    static std::vector<Rational> reduce(std::vector<Rational> poly, std::int64_t level) {
        const auto& phi = cyclotomic_polynomial_ref(level);
        const auto deg = static_cast<std::size_t>(phi.degree());
        Rational tmp;
        for (std::size_t i = poly.size(); i-- > deg;) {
            if (sgn(poly[i]) == 0) continue;
            const std::size_t shift = i - deg;
            for (const auto& [k, a] : phi.sparse) {
                mpq_class& dst = poly[shift + static_cast<std::size_t>(k)];
                tmp = poly[i];
                tmp *= a;
                dst -= tmp;
            }
        }
        poly.resize(deg);
        return poly;
    }

private:
    explicit CycElem(std::int64_t level) : level_(level) {
        if (level < 2 || level % 2 != 0) throw Error("CycElem: level must be a positive even integer");
        coeffs_.assign(static_cast<std::size_t>(cyclotomic_polynomial_ref(level).degree()), Rational(0));
    }

    void check_level(const CycElem& o, const char* op) const {
        if (o.level_ != level_)
            throw LevelMismatch(std::string("CycElem::") + op + ": levels " + std::to_string(level_) + " and " +
                                std::to_string(o.level_));
    }

    std::int64_t level_;
    std::vector<Rational> coeffs_;
};

// ---------------------------------------------------------------------------
// Constructors for roots of unity and cosines

/// e^{iπa/b} at level L; requires 2b | L.
inline CycElem root_of_unity(std::int64_t a, std::int64_t b, std::int64_t level) {
    if (b <= 0 || level % (2 * b) != 0)
        throw LevelMismatch("root_of_unity: 2b must divide the level (b=" + std::to_string(b) +
                            ", L=" + std::to_string(level) + ")");
    return CycElem::zeta_power(detail::mul_mod(a, level / (2 * b), level), level);
}

/// cos(aπ/b) at level L; requires 2b | L.
inline CycElem cos_pi_rational(std::int64_t a, std::int64_t b, std::int64_t level) {
    if (b <= 0 || level % (2 * b) != 0)
        throw LevelMismatch("cos_pi_rational: 2b must divide the level (b=" + std::to_string(b) +
                            ", L=" + std::to_string(level) + ")");
    const auto e = detail::mul_mod(a, level / (2 * b), level);
    std::vector<Term> t;
    t.push_back({e, Rational(1, 2)});
    t.push_back({-e, Rational(1, 2)});
    return CycElem::from_terms(level, t);
}

// ---------------------------------------------------------------------------
// Field operations

/// Re-expresses x in Q(ζ_{L'}) for a multiple L' of its level.
inline CycElem lift(const CycElem& x, std::int64_t new_level) {
    if (new_level % x.level() != 0)
        throw LevelMismatch("lift: " + std::to_string(new_level) + " is not a multiple of " + std::to_string(x.level()));
    if (new_level == x.level()) return x;
    const auto stride = new_level / x.level();
    auto terms = x.terms();
    for (auto& t : terms) t.exponent *= stride;
    return CycElem::from_terms(new_level, terms);
}

inline CycElem apply_galois(const GaloisAut& sigma, const CycElem& x) {
    if (sigma.level() != x.level())
        throw LevelMismatch("apply_galois: automorphism level " + std::to_string(sigma.level()) +
                            " vs element level " + std::to_string(x.level()));
    if (sigma.exponent() == 1 || x.is_rational()) return x;
    auto terms = x.terms();
    for (auto& t : terms) t.exponent = detail::mul_mod(t.exponent, sigma.exponent(), x.level());
    return CycElem::from_terms(x.level(), terms);
}

inline CycElem conjugate(const CycElem& x) { return apply_galois(GaloisAut::complex_conjugation(x.level()), x); }

inline bool is_real(const CycElem& x) { return conjugate(x) == x; }

namespace detail {

using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Returns (quotient, remainder) of a / b; b must be nonzero and trimmed.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    if (a.size() < b.size()) return {Poly{}, a};
    Poly q(a.size() - b.size() + 1);
    const Rational& lead = b.back();
    for (std::size_t i = a.size(); i-- >= b.size();) {
        if (sgn(a[i]) == 0) continue;
        const Rational c = a[i] / lead;
        const std::size_t shift = i - (b.size() - 1);
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    }
    a.resize(b.size() - 1);
    trim(a);
    trim(q);
    return {q, a};
}

inline Poly poly_sub_mul(const Poly& a, const Poly& q, const Poly& b) {
    Poly out(std::max(a.size(), q.empty() || b.empty() ? 0 : q.size() + b.size() - 1));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
    trim(out);
    return out;
}

}  // namespace detail

/// Multiplicative inverse by the extended Euclidean algorithm against Φ_L.
inline CycElem inv(const CycElem& x) {
    if (x.is_zero()) throw DivisionByZero("inv: zero has no inverse");
    if (x.is_rational()) return CycElem::rational(1 / x.constant_term(), x.level());
    using detail::Poly;
    const auto& phi = cyclotomic_polynomial_ref(x.level());
    Poly r0(phi.dense.begin(), phi.dense.end());
    Poly r1 = x.coeffs();
    detail::trim(r1);
    Poly s0{}, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = detail::divmod(r0, r1);
        auto s = detail::poly_sub_mul(s0, q, s1);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r0 is a nonzero constant since Φ_L is irreducible.
    const Rational c = r0.at(0);
    for (auto& v : s0) v /= c;
    return CycElem::from_terms(x.level(), [&] {
        std::vector<Term> t;
        for (std::size_t k = 0; k < s0.size(); ++k)
            if (sgn(s0[k]) != 0) t.push_back({static_cast<std::int64_t>(k), s0[k]});
        return t;
    }());
}

// ---------------------------------------------------------------------------
// Numeric embeddings and certified signs

/// Σ c_k exp(2πi k m / L). For cross-validation only.
inline std::complex<double> numeric_embed(const CycElem& x, std::int64_t m) {
    if (std::gcd(m, x.level()) != 1) throw Error("numeric_embed: embedding exponent not coprime to level");
    const auto terms = x.terms();
    return detail::Evaluator(x.level(), terms).approx(m);
}

/// Sign of σ_m(x) for a real x, without re-checking realness.
inline int sign_at_unchecked(const CycElem& x, std::int64_t m) {
    if (x.is_zero()) return 0;
    if (x.is_rational()) return sgn(x.constant_term());
    const auto terms = x.terms();
    return detail::certified_sign(detail::Evaluator(x.level(), terms), m, detail::Component::Real,
                                  [] { return false; });
}

/// Certified sign of a real element under the principal embedding.
inline int sign_real(const CycElem& x) {
    if (!is_real(x)) throw NotReal("sign_real: element is not fixed by complex conjugation");
    return sign_at_unchecked(x, 1);
}

/// Certified sign of σ_m(x) for real x.
inline int sign_at(const CycElem& x, std::int64_t m) {
    if (std::gcd(m, x.level()) != 1) throw Error("sign_at: embedding exponent not coprime to level");
    if (!is_real(x)) throw NotReal("sign_at: element is not fixed by complex conjugation");
    return sign_at_unchecked(x, m);
}

// ---------------------------------------------------------------------------
// Subfields via the Galois correspondence

inline bool fixes(const GaloisAut& sigma, const CycElem& x) { return apply_galois(sigma, x) == x; }

inline bool fixes_all(const GaloisAut& sigma, std::span<const CycElem> gens) {
    return std::all_of(gens.begin(), gens.end(), [&](const CycElem& g) { return fixes(sigma, g); });
}

/// Exponents m ∈ (Z/L)^× whose automorphism fixes every generator.
inline std::vector<std::int64_t> stabilizer(std::span<const CycElem> gens, std::int64_t level) {
    for (const auto& g : gens)
        if (g.level() != level) throw LevelMismatch("stabilizer: generator level differs");
    // Most automorphisms move some generator by a visible amount, so a double
    // comparison of σ_m(g) with g rules them out before any exact work.
    std::vector<detail::Evaluator> evs;
    std::vector<std::complex<double>> base;
    for (const auto& g : gens) {
        const auto terms = g.terms();
        evs.emplace_back(level, terms);
        base.push_back(evs.back().approx(1));
    }
    std::vector<std::int64_t> out;
    for (auto m : units_mod(level)) {
        bool maybe = true;
        for (std::size_t i = 0; i < evs.size() && maybe; ++i)
            maybe = std::abs(evs[i].approx(m) - base[i]) <= 4 * evs[i].approx_radius();
        if (maybe && fixes_all(GaloisAut(level, m), gens)) out.push_back(m);
    }
    return out;
}

/// [Q(gens) : Q] = φ(L) / |stabilizer|.
inline std::int64_t subfield_degree(std::span<const CycElem> gens) {
    if (gens.empty()) return 1;
    const auto level = gens.front().level();
    return euler_phi(level) / static_cast<std::int64_t>(stabilizer(gens, level).size());
}

/// x ∈ Q(gens), decided by the Galois correspondence.
inline bool in_subfield(const CycElem& x, std::span<const CycElem> gens) {
    const auto stab = stabilizer(gens, x.level());
    return std::all_of(stab.begin(), stab.end(), [&](std::int64_t m) { return fixes(GaloisAut(x.level(), m), x); });
}

/// "p/q + p/q ζ + ..." style debug rendering.
inline std::string to_string(const CycElem& x) {
    std::string out;
    for (std::size_t k = 0; k < x.coeffs().size(); ++k) {
        const auto& c = x.coeffs()[k];
        if (sgn(c) == 0) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c.get_str() + ")";
        if (k > 0) out += "*z" + std::to_string(x.level()) + "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
}

inline std::ostream& operator<<(std::ostream& os, const CycElem& x) { return os << to_string(x); }

}  // namespace cxta
