#pragma once

// Triangle shapes, their Gram forms, and signatures under Galois conjugation.

#include <array>
#include <cmath>
#include <numbers>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cxta/cyclotomic.hpp"
#include "cxta/root_sum.hpp"

namespace cxta {

/// A vertex angle: either θ = x·π with 0 < x ≤ 1/2, or an ideal vertex (θ = 0).
class Angle {
public:
    static Angle ideal() { return Angle(); }

    /// θ = π/b, b ≥ 2 rational.
    static Angle pi_over(const Rational& b) {
        if (b < 2) throw Error("angle π/" + to_string(b) + " is not in (0, π/2]");
        return Angle(Rational(1 / b));
    }

    /// θ = x·π, 0 < x ≤ 1/2.
    static Angle pi_times(const Rational& x) {
        if (sgn(x) <= 0 || x > frac(1, 2)) throw Error("angle " + to_string(x) + "π is not in (0, π/2]");
        return Angle(x);
    }

    bool is_ideal() const { return !over_pi_; }
    /// θ/π; zero for an ideal vertex.
    Rational over_pi() const { return over_pi_ ? *over_pi_ : Rational(0); }

    /// Exact level needed for cos θ: 2·den(θ/π), or 2 for ideal vertices.
    std::int64_t level() const { return over_pi_ ? 2 * to_ll(over_pi_->get_den()) : 2; }

    RootSum cos_sparse() const { return over_pi_ ? RootSum::cos_pi(*over_pi_) : RootSum::rational(1); }
    CycElem cos(std::int64_t level) const {
        if (!over_pi_) return CycElem::one(level);
        return cos_pi_rational(to_ll(over_pi_->get_num()), to_ll(over_pi_->get_den()), level);
    }
    double cos_double() const;

    bool operator==(const Angle&) const = default;

private:
    Angle() = default;
    explicit Angle(Rational x) : over_pi_(std::move(x)) {}
    std::optional<Rational> over_pi_;
};

/// Three vertex angles and the Cartan angular invariant ψ.
///
/// ψ is stored as ψ/π normalized into [0, 1] (ψ and -ψ give conjugate forms
/// with identical arithmetic data). psi_over_pi is empty for an irrational ψ;
/// only psi_double is then meaningful.
struct TriangleShape {
    std::array<Angle, 3> angles{Angle::ideal(), Angle::ideal(), Angle::ideal()};
    std::optional<Rational> psi_over_pi;
    double psi_double = 0.0;

    bool operator==(const TriangleShape& o) const { return angles == o.angles && psi_over_pi == o.psi_over_pi; }
};

/// Reduces ψ/π modulo 2 and folds (1, 2) onto (0, 1) by ψ ↦ 2π - ψ.
inline Rational normalize_psi(Rational x) {
    mpz_class two_den = 2 * x.get_den();
    mpz_class num = x.get_num() % two_den;
    if (num < 0) num += two_den;
    Rational r(num, x.get_den());
    r.canonicalize();
    if (r > 1) r = 2 - r;
    return r;
}

inline TriangleShape make_shape(const std::array<Angle, 3>& angles, const Rational& psi_over_pi) {
    TriangleShape s;
    s.angles = angles;
    s.psi_over_pi = normalize_psi(psi_over_pi);
    s.psi_double = s.psi_over_pi->get_d() * std::numbers::pi;
    return s;
}

inline TriangleShape make_irrational_shape(const std::array<Angle, 3>& angles, double psi) {
    TriangleShape s;
    s.angles = angles;
    s.psi_double = psi;
    return s;
}

inline double Angle::cos_double() const { return over_pi_ ? std::cos(over_pi_->get_d() * std::numbers::pi) : 1.0; }

/// With a right angle one off-diagonal entry of the Gram form vanishes and
/// rescaling the polar vectors turns the remaining phases into -1, so ψ is not
/// an invariant there. Such shapes are replaced by the real form (ψ = π).
inline TriangleShape gauge_fixed(const TriangleShape& s) {
    for (const auto& a : s.angles)
        if (!a.is_ideal() && a.over_pi() == frac(1, 2)) return make_shape(s.angles, 1);
    return s;
}

/// Smallest even L with every cos θ_j and e^{iψ} in Q(ζ_L).
inline std::int64_t level_of(const TriangleShape& s) {
    if (!s.psi_over_pi) throw IrrationalPsi("level_of: ψ is not a rational multiple of π");
    std::int64_t level = 2;
    for (const auto& a : s.angles) level = checked_lcm(level, a.level());
    return checked_lcm(level, 2 * to_ll(s.psi_over_pi->get_den()));
}

using Matrix3 = std::array<std::array<CycElem, 3>, 3>;

/// A 3×3 Hermitian form with entries in Q(ζ_L); h(e_i, e_j) = entries[i][j].
struct HermitianForm3 {
    std::int64_t level = 2;
    Matrix3 entries;
};

/// e^{iψ} at the shape's natural level.
inline RootSum phase_sparse(const TriangleShape& s) {
    if (!s.psi_over_pi) throw IrrationalPsi("ψ is not a rational multiple of π");
    return RootSum::exp_i_pi(*s.psi_over_pi);
}

/// The normalized Gram form of the polar vectors:
///   [ 1            e^{iψ} c1     e^{iψ} c3 ]
///   [ e^{-iψ} c1   1             e^{iψ} c2 ]
///   [ e^{-iψ} c3   e^{-iψ} c2    1         ]
/// with c_j = cos θ_j (1 at ideal vertices).
inline HermitianForm3 gram_form(const TriangleShape& s, std::int64_t level = 0) {
    const auto natural = level_of(s);
    if (level == 0) level = natural;
    if (level % natural != 0) throw LevelMismatch("gram_form: level is not a multiple of the shape's level");
    const auto psi = RootSum::exp_i_pi(*s.psi_over_pi).to_dense(level);
    const auto psi_bar = conjugate(psi);
    const auto c1 = s.angles[0].cos(level), c2 = s.angles[1].cos(level), c3 = s.angles[2].cos(level);
    const auto one = CycElem::one(level);
    HermitianForm3 h;
    h.level = level;
    h.entries = {{{one, psi * c1, psi * c3}, {psi_bar * c1, one, psi * c2}, {psi_bar * c3, psi_bar * c2, one}}};
    return h;
}

inline CycElem det3(const Matrix3& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

inline CycElem det_form(const HermitianForm3& h) { return det3(h.entries); }

/// 1 - c1² - c2² - c3² + 2 cos ψ · c1 c2 c3, as a sparse sum at the shape's level.
inline RootSum det_sparse(const TriangleShape& s) {
    const auto c1 = s.angles[0].cos_sparse(), c2 = s.angles[1].cos_sparse(), c3 = s.angles[2].cos_sparse();
    const auto cos_psi = RootSum::cos_pi(*s.psi_over_pi);
    auto d = RootSum::rational(1) - c1 * c1 - c2 * c2 - c3 * c3;
    d += Rational(2) * (cos_psi * c1 * c2 * c3);
    return d;
}

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    bool operator==(const Signature&) const = default;
};

inline std::string to_string(const Signature& s) {
    return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + "," + std::to_string(s.zero) + ")";
}

/// Signature of σ(h). Leading principal minors decide it when none vanishes;
/// otherwise the signs of the characteristic polynomial's coefficients do
/// (all roots are real, so Descartes' rule counts them exactly).
inline Signature signature_at(const HermitianForm3& h, const GaloisAut& sigma) {
    if (sigma.level() != h.level) throw LevelMismatch("signature_at: automorphism level differs from form level");
    const auto& a = h.entries;
    const auto m = sigma.exponent();
    const auto d1 = a[0][0];
    const auto d2 = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    const auto d3 = det3(a);
    const int s1 = sign_at_unchecked(d1, m), s2 = sign_at_unchecked(d2, m), s3 = sign_at_unchecked(d3, m);
    if (s1 != 0 && s2 != 0 && s3 != 0) {
        const int neg = (s1 < 0) + (s1 * s2 < 0) + (s2 * s3 < 0);
        return {3 - neg, neg, 0};
    }
    // λ³ - t λ² + p λ - d with t = trace, p = sum of principal 2×2 minors, d = det.
    const auto t = a[0][0] + a[1][1] + a[2][2];
    const auto p = d2 + (a[0][0] * a[2][2] - a[0][2] * a[2][0]) + (a[1][1] * a[2][2] - a[1][2] * a[2][1]);
    const int coeff[4] = {1, -sign_at_unchecked(t, m), sign_at_unchecked(p, m), -s3};
    int zero = 0;
    while (zero < 3 && coeff[3 - zero] == 0) ++zero;
    int changes = 0, last = 0;
    for (int i = 0; i <= 3 - zero; ++i) {
        if (coeff[i] == 0) continue;
        if (last != 0 && coeff[i] != last) ++changes;
        last = coeff[i];
    }
    return {changes, 3 - zero - changes, zero};
}

/// A triangle with this shape exists iff the Gram form has signature (2,1,0).
/// Forms with a kernel are rejected, including those with ideal vertices.
inline bool triangle_exists(const TriangleShape& s) {
    const auto h = gram_form(s);
    return signature_at(h, GaloisAut::identity(h.level)) == Signature{2, 1, 0};
}

}  // namespace cxta
