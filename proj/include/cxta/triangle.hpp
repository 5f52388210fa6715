#pragma once

// Candidate groups generated by complex reflections in the sides of a triangle.

#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cxta/hermitian.hpp"

namespace cxta {

/// A shape together with reflection orders n_j and exponents k_j; the
/// reflection in side j multiplies its polar vector by η_j = e^{2πi k_j / n_j}.
struct CandidateGroup {
    TriangleShape shape;
    std::array<std::int64_t, 3> orders{2, 2, 2};
    std::array<std::int64_t, 3> factor_exponents{1, 1, 1};

    bool operator==(const CandidateGroup&) const = default;
};

inline void validate(const CandidateGroup& c) {
    for (int j = 0; j < 3; ++j) {
        if (c.orders[j] < 2) throw Error("reflection order must be at least 2");
        if (std::gcd(mod_floor(c.factor_exponents[j], c.orders[j]), c.orders[j]) != 1)
            throw Error("reflection factor exponent must be coprime to its order");
    }
}

inline std::int64_t level_of(const CandidateGroup& c) {
    auto level = level_of(c.shape);
    for (auto n : c.orders) level = checked_lcm(level, n);
    return level;
}

/// η_j as a sparse sum at its natural level.
inline RootSum eta_sparse(const CandidateGroup& c, int j) {
    return RootSum::zeta(2 * mod_floor(c.factor_exponents[j], c.orders[j]), 2 * c.orders[j]).reduce_level();
}

inline CycElem eta(const CandidateGroup& c, int j, std::int64_t level) {
    if (level % c.orders[j] != 0) throw LevelMismatch("eta: level is not a multiple of the reflection order");
    return CycElem::zeta_power(mod_floor(c.factor_exponents[j], c.orders[j]) * (level / c.orders[j]), level);
}

inline Matrix3 identity3(std::int64_t level) {
    Matrix3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = i == j ? CycElem::one(level) : CycElem::zero(level);
    return m;
}

inline Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
    const auto level = a[0][0].level();
    Matrix3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto acc = CycElem::zero(level);
            for (int k = 0; k < 3; ++k) acc += a[i][k] * b[k][j];
            r[i][j] = acc;
        }
    return r;
}

inline Matrix3 transpose(const Matrix3& a) {
    Matrix3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
    return r;
}

inline Matrix3 conjugate(const Matrix3& a) {
    Matrix3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = conjugate(a[i][j]);
    return r;
}

inline Matrix3 power(Matrix3 a, std::int64_t n) {
    auto r = identity3(a[0][0].level());
    for (; n > 0; n >>= 1) {
        if (n & 1) r = r * a;
        a = a * a;
    }
    return r;
}

struct ReflectionMatrix {
    std::int64_t level = 2;
    int wall = 0;
    Matrix3 entries;
};

/// Complex reflection in side `wall` (0-based), in the basis of polar vectors:
/// R(v) = v + (η - 1) h(v, e_j) e_j, with the Gram form at the candidate's level.
inline ReflectionMatrix reflection_matrix(const CandidateGroup& c, int wall) {
    if (wall < 0 || wall > 2) throw Error("reflection_matrix: wall index must be 0, 1 or 2");
    validate(c);
    if (!triangle_exists(c.shape)) throw DegenerateTriangle("reflection_matrix: shape does not bound a triangle");
    const auto level = level_of(c);
    const auto g = gram_form(c.shape, level);
    const auto factor = eta(c, wall, level) - CycElem::one(level);
    ReflectionMatrix r{level, wall, identity3(level)};
    // Column a of R is R(e_a) = e_a + (η - 1) G[a][j] e_j.
    for (int a = 0; a < 3; ++a) r.entries[wall][a] += factor * g.entries[a][wall];
    return r;
}

/// R preserves h (h(Rz, Rw) = h(z, w), i.e. Rᵀ G R̄ = G), has order exactly n,
/// and eigenvalues {1, 1, η} with η = det R a primitive n-th root of unity.
inline bool verify_reflection(const Matrix3& r, const HermitianForm3& h, std::int64_t n) {
    const auto level = h.level;
    for (const auto& row : r)
        for (const auto& x : row)
            if (x.level() != level) throw LevelMismatch("verify_reflection: matrix and form levels differ");
    if (n < 1 || level % n != 0) return false;
    if (transpose(r) * h.entries * conjugate(r) != h.entries) return false;

    const auto eta = det3(r);
    const auto one = CycElem::one(level);
    auto pow = [&](std::int64_t k) {
        auto x = one;
        for (std::int64_t i = 0; i < k; ++i) x = x * eta;
        return x;
    };
    if (pow(n) != one) return false;
    for (auto d : divisors(n))
        if (d < n && pow(d) == one) return false;

    const auto trace = r[0][0] + r[1][1] + r[2][2];
    if (trace != Rational(2) * one + eta) return false;
    const auto minors = (r[0][0] * r[1][1] - r[0][1] * r[1][0]) + (r[0][0] * r[2][2] - r[0][2] * r[2][0]) +
                        (r[1][1] * r[2][2] - r[1][2] * r[2][1]);
    if (minors != one + Rational(2) * eta) return false;

    // (R - I)(R - η I) = 0: diagonalizable with eigenvalues in {1, η}.
    auto a = r, b = r;
    for (int i = 0; i < 3; ++i) {
        a[i][i] -= one;
        b[i][i] -= eta;
    }
    const auto z = a * b;
    for (const auto& row : z)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return power(r, n) == identity3(level);
}

inline bool verify_reflection(const ReflectionMatrix& r, const HermitianForm3& h, std::int64_t n) {
    return verify_reflection(r.entries, h, n);
}

/// Generators of the field of traces: η_j, cos² θ_j and e^{iψ} c1 c2 c3.
inline std::vector<RootSum> trace_field_generators_sparse(const CandidateGroup& c) {
    std::vector<RootSum> out;
    for (int j = 0; j < 3; ++j) out.push_back(eta_sparse(c, j));
    for (const auto& a : c.shape.angles) out.push_back(a.cos_sparse() * a.cos_sparse());
    const auto& an = c.shape.angles;
    out.push_back(phase_sparse(c.shape) * an[0].cos_sparse() * an[1].cos_sparse() * an[2].cos_sparse());
    for (auto& g : out) g.simplify();
    return out;
}

inline std::vector<CycElem> to_dense(const std::vector<RootSum>& xs, std::int64_t level) {
    std::vector<CycElem> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(x.to_dense(level));
    return out;
}

inline std::vector<CycElem> trace_field_generators(const CandidateGroup& c) {
    return to_dense(trace_field_generators_sparse(c), level_of(c));
}

/// Generators of the two fields bracketing the field of definition E:
/// lower = Q(η_j, cos² θ_j, e^{2iψ}) ⊆ E ⊆ upper = Q(cos² θ_j, e^{iψ} c1 c2 c3).
struct FieldBounds {
    std::vector<RootSum> lower;
    std::vector<RootSum> upper;
};

inline FieldBounds field_E_bounds_sparse(const CandidateGroup& c) {
    FieldBounds b;
    const auto& an = c.shape.angles;
    for (int j = 0; j < 3; ++j) b.lower.push_back(eta_sparse(c, j));
    for (const auto& a : an) {
        b.lower.push_back(a.cos_sparse() * a.cos_sparse());
        b.upper.push_back(a.cos_sparse() * a.cos_sparse());
    }
    const auto phase = phase_sparse(c.shape);
    b.lower.push_back(phase * phase);
    b.upper.push_back(phase * an[0].cos_sparse() * an[1].cos_sparse() * an[2].cos_sparse());
    for (auto& g : b.lower) g.simplify();
    for (auto& g : b.upper) g.simplify();
    return b;
}

struct DenseFieldBounds {
    std::int64_t level = 2;
    std::vector<CycElem> lower;
    std::vector<CycElem> upper;
};

inline DenseFieldBounds field_E_bounds(const CandidateGroup& c) {
    const auto level = level_of(c);
    const auto b = field_E_bounds_sparse(c);
    return {level, to_dense(b.lower, level), to_dense(b.upper, level)};
}

/// Generators of the field of the triangle itself: cos θ_j and e^{iψ}.
inline std::vector<CycElem> E_triangle_generators(const TriangleShape& s, std::int64_t level = 0) {
    if (level == 0) level = level_of(s);
    std::vector<CycElem> out;
    for (const auto& a : s.angles) out.push_back(a.cos(level));
    out.push_back(phase_sparse(s).to_dense(level));
    return out;
}

}  // namespace cxta
