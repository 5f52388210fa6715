#pragma once

// Arithmeticity obstructions: Galois sign profiles of the Gram determinant,
// the admissibility test for candidate groups, Takeuchi's test for Fuchsian
// triangle groups, and the classification drivers built on them.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "cxta/triangle.hpp"

namespace cxta {

enum class Status { Admissible, RuledOut, Indeterminate };

inline std::string to_string(Status s) {
    switch (s) {
        case Status::Admissible: return "ADMISSIBLE";
        case Status::RuledOut: return "RULED_OUT";
        case Status::Indeterminate: return "INDETERMINATE";
    }
    return "?";
}

struct Verdict {
    Status status = Status::Indeterminate;
    std::string tag;
    std::string reason;
    std::optional<std::int64_t> witness;

    bool operator==(const Verdict&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Verdict& v) {
    os << to_string(v.status) << " " << v.tag;
    if (v.witness) os << " witness " << *v.witness;
    return os;
}

inline Verdict admissible(std::string tag, std::string reason) { return {Status::Admissible, std::move(tag), std::move(reason), {}}; }
inline Verdict ruled_out(std::string tag, std::string reason, std::optional<std::int64_t> witness = {}) {
    return {Status::RuledOut, std::move(tag), std::move(reason), witness};
}
inline Verdict indeterminate(std::string tag, std::string reason, std::optional<std::int64_t> witness = {}) {
    return {Status::Indeterminate, std::move(tag), std::move(reason), witness};
}

// ---------------------------------------------------------------------------
// Sign profiles

struct SignProfile {
    std::int64_t level = 2;
    std::map<std::int64_t, int> entries;

    int entry(std::int64_t m) const {
        auto it = entries.find(mod_floor(m, level));
        if (it == entries.end()) throw Error("SignProfile: exponent is not a unit modulo the level");
        return it->second;
    }

    std::vector<std::int64_t> negative() const {
        std::vector<std::int64_t> out;
        for (const auto& [m, s] : entries)
            if (s < 0) out.push_back(m);
        return out;
    }
};

/// Signs of σ_m(det h) for every unit m modulo `level` (default: the shape's level).
inline SignProfile sign_profile(const TriangleShape& shape, std::int64_t level = 0) {
    if (level == 0) level = level_of(shape);
    if (level % level_of(shape) != 0) throw LevelMismatch("sign_profile: level is not a multiple of the shape's level");
    auto det = det_sparse(shape);
    det.simplify();
    SignProfile p{level, {}};
    std::map<std::int64_t, int> by_residue;
    for (auto m : units_mod(level)) {
        const auto r = mod_floor(m, det.level());
        auto it = by_residue.find(r);
        if (it == by_residue.end()) it = by_residue.emplace(r, certified_sign_at(det, r)).first;
        p.entries.emplace(m, it->second);
    }
    return p;
}

namespace detail {

/// mask[m] != 0 iff m is a unit modulo `level` and σ_m fixes every generator.
inline std::vector<char> stabilizer_mask(const std::vector<RootSum>& gens, std::int64_t level) {
    std::vector<char> mask(static_cast<std::size_t>(level), 0);
    for (auto m : units_mod(level)) mask[m] = 1;
    for (const auto& g : gens) {
        if (g.is_constant()) continue;
        const auto lg = g.level();
        if (level % lg != 0) throw LevelMismatch("stabilizer_mask: generator level does not divide the level");
        std::vector<signed char> memo(static_cast<std::size_t>(lg), -1);
        for (std::int64_t m = 1; m < level; ++m) {
            if (!mask[m]) continue;
            auto& known = memo[m % lg];
            if (known < 0) known = fixed_by(g, m % lg) ? 1 : 0;
            if (!known) mask[m] = 0;
        }
    }
    return mask;
}

/// out[i] = f(i) for i < n, computed on up to `jobs` threads.
template <class F>
auto parallel_map(std::size_t n, unsigned jobs, F f) -> std::vector<decltype(f(std::size_t{}))> {
    std::vector<decltype(f(std::size_t{}))> out(n);
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (auto i = next++; i < n; i = next++) {
                try {
                    out[i] = f(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

inline std::int64_t count(const std::vector<char>& mask) { return std::count(mask.begin(), mask.end(), 1); }

/// σ_m restricts to the identity or to complex conjugation on the field.
inline bool id_or_conj(const std::vector<char>& stab, std::int64_t m) {
    const auto level = static_cast<std::int64_t>(stab.size());
    return stab[m] || stab[level - m];
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Admissibility of candidate groups

/// Verdict plus the field data it was derived from.
struct CandidateReport {
    CandidateGroup candidate;
    Verdict verdict;
    std::int64_t level = 2;
    int det_sign = 0;
    std::int64_t lower_degree = 0;     // [E_lower : Q]
    std::int64_t upper_degree = 0;     // [E_upper : Q]
    std::int64_t triangle_degree = 0;  // [E_△ : Q]
    std::int64_t negative_pairs = 0;   // conjugate pairs of places of E_△ where det < 0
};

/// Supplies the sign profile of a (gauge-fixed) shape at a given level, e.g.
/// from a persistent cache. Must agree with sign_profile.
using ProfileSource = std::function<SignProfile(const TriangleShape&, std::int64_t)>;

inline CandidateReport analyze(const CandidateGroup& given, const ProfileSource& profiles = {}) {
    if (!given.shape.psi_over_pi) throw IrrationalPsi("admissibility_test: ψ is not a rational multiple of π");
    validate(given);
    CandidateReport rep;
    rep.candidate = given;
    auto c = given;
    c.shape = gauge_fixed(given.shape);
    const auto level = level_of(c);
    rep.level = level;

    auto det = det_sparse(c.shape);
    det.simplify();
    if (det.is_zero_exact()) {
        rep.verdict = ruled_out("DEGENERATE_FORM", "the Gram determinant vanishes, so the polar vectors are linearly dependent");
        return rep;
    }
    if (!triangle_exists(c.shape))
        throw DegenerateTriangle("admissibility_test: the Gram form does not have signature (2,1)");

    const auto profile = profiles ? profiles(c.shape, level) : sign_profile(c.shape, level);
    if (profile.level != level || profile.entries.size() != static_cast<std::size_t>(euler_phi(level)))
        throw LevelMismatch("analyze: supplied sign profile does not match the candidate's level");
    rep.det_sign = profile.entry(1);
    std::vector<char> negative(static_cast<std::size_t>(level), 0);
    for (const auto& [m, s] : profile.entries) negative[m] = s < 0;

    const auto bounds = field_E_bounds_sparse(c);
    std::vector<RootSum> triangle_gens;
    for (const auto& a : c.shape.angles) triangle_gens.push_back(a.cos_sparse());
    triangle_gens.push_back(phase_sparse(c.shape));
    for (auto& g : triangle_gens) g.simplify();

    const auto stab_lower = detail::stabilizer_mask(bounds.lower, level);
    const auto stab_upper = detail::stabilizer_mask(bounds.upper, level);
    const auto stab_tri = detail::stabilizer_mask(triangle_gens, level);
    const auto phi = euler_phi(level);
    rep.lower_degree = phi / detail::count(stab_lower);
    rep.upper_degree = phi / detail::count(stab_upper);
    rep.triangle_degree = phi / detail::count(stab_tri);

    if (!negative[1]) {
        rep.verdict = ruled_out("NOT_INDEFINITE", "the form is not indefinite at the identity place");
        return rep;
    }

    const auto stab_eta = detail::stabilizer_mask({eta_sparse(c, 0), eta_sparse(c, 1), eta_sparse(c, 2)}, level);
    for (std::int64_t m = 1; m < level; ++m)
        if (stab_upper[m] && !stab_eta[m]) {
            rep.verdict = ruled_out("REFLECTION_FACTOR_NOT_IN_E",
                                    "a reflection factor does not lie in the largest possible field of definition", m);
            return rep;
        }
    for (std::int64_t m = 1; m < level; ++m)
        if (stab_upper[m] && !stab_lower[m]) {
            rep.verdict = ruled_out("FIELD_SANDWICH_EMPTY",
                                    "the lower bound for the field of definition is not contained in the upper bound", m);
            return rep;
        }

    for (std::int64_t m = 1; m < level; ++m)
        if (negative[m] && !detail::id_or_conj(stab_lower, m)) {
            rep.verdict = ruled_out("SIGN_WITNESS",
                                    "σ_" + std::to_string(m) +
                                        " keeps the determinant negative but acts nontrivially on the field of definition",
                                    m);
            return rep;
        }

    const auto negative_count = detail::count(negative);
    rep.negative_pairs = negative_count / detail::count(stab_tri) / 2;
    std::optional<std::int64_t> upper_witness;
    for (std::int64_t m = 1; m < level && !upper_witness; ++m)
        if (negative[m] && !detail::id_or_conj(stab_upper, m)) upper_witness = m;

    const auto& psi = *c.shape.psi_over_pi;
    if (sgn(psi) == 0 || psi == 1) {
        // Real form: the group is Fuchsian and the place count does not apply.
        if (upper_witness)
            rep.verdict = indeterminate("E_NOT_PINNED",
                                        "negative places are compatible with the lower field bound but not the upper one",
                                        upper_witness);
        else
            rep.verdict = admissible("SIGNS_CONSISTENT", "every place where the determinant is negative fixes the field");
        return rep;
    }

    if (stab_upper[level - 1]) {
        rep.verdict = ruled_out("UPPER_FIELD_REAL", "the upper bound for the field of definition is totally real");
        return rep;
    }
    const auto tri = detail::count(stab_tri);
    const auto index_upper = detail::count(stab_upper) / tri;  // [E_△ : E_upper]
    const auto index_lower = detail::count(stab_lower) / tri;  // [E_△ : E_lower]
    if (rep.negative_pairs < index_upper || rep.negative_pairs > index_lower) {
        rep.verdict = ruled_out("COUNT_MISMATCH",
                                std::to_string(rep.negative_pairs) +
                                    " conjugate pairs of negative places, but the field bounds allow between " +
                                    std::to_string(index_upper) + " and " + std::to_string(index_lower));
        return rep;
    }
    if (index_upper == index_lower && !upper_witness) {
        rep.verdict = admissible("COUNT_MATCHES", "negative places match the field of definition exactly");
        return rep;
    }
    rep.verdict = indeterminate("E_NOT_PINNED",
                                "the field bounds differ and the negative places do not decide between them",
                                upper_witness);
    return rep;
}

inline Verdict admissibility_test(const CandidateGroup& c) { return analyze(c).verdict; }

// ---------------------------------------------------------------------------
// Fuchsian triangle groups

inline constexpr std::int64_t kIdeal = 0;

namespace detail {

inline RootSum cos_pi_over(std::int64_t n) {
    return n == kIdeal ? RootSum::rational(1) : RootSum::cos_pi(Rational(1, static_cast<unsigned long>(n)));
}

inline bool hyperbolic(const std::array<std::int64_t, 3>& v) {
    Rational sum = 0;
    for (auto n : v)
        if (n != kIdeal) sum += frac(1, n);
    return sum < 1;
}

/// Takeuchi's condition on d with generators of F′; cosines given.
inline Verdict takeuchi_from_cosines(const std::array<RootSum, 3>& c) {
    auto d = RootSum::rational(1) - c[0] * c[0] - c[1] * c[1] - c[2] * c[2] - Rational(2) * (c[0] * c[1] * c[2]);
    std::vector<RootSum> gens;
    for (const auto& x : c) gens.push_back(x * x);
    gens.push_back(c[0] * c[1] * c[2]);
    std::int64_t level = d.level();
    std::erase_if(gens, [](RootSum& g) { return g.simplify().is_constant(); });
    for (const auto& g : gens) level = checked_lcm(level, g.level());

    const auto ev = d.evaluator();
    auto sign = [&](std::int64_t m) {
        if (d.is_constant()) return sgn(d.constant());
        return detail::certified_sign(ev, mod_floor(m, d.level()), Component::Real, [&] { return d.is_zero_exact(); });
    };
    if (sign(1) >= 0) throw NotHyperbolic("takeuchi_fuchsian_test: determinant is not negative");

    auto moved = [&](std::int64_t m) {
        for (const auto& g : gens)
            if (certainly_moved(g, m, 0)) return true;
        for (const auto& g : gens)
            if (certainly_moved(g, m)) return true;
        for (const auto& g : gens)
            if (!fixed_by(g, m)) return true;
        return false;
    };
    for (std::int64_t m = 2; 2 * m <= level; ++m) {
        if (std::gcd(m, level) != 1) continue;
        if (sign(m) < 0 && moved(m))
            return ruled_out("SIGN_WITNESS",
                             "σ_" + std::to_string(m) + " moves the invariant trace field but keeps the determinant negative",
                             m);
    }
    return admissible("TAKEUCHI", "the determinant is positive at every place not fixing the invariant trace field");
}

}  // namespace detail

/// Takeuchi's arithmeticity test for the Fuchsian (p,q,r) triangle group;
/// kIdeal stands for a cusp.
inline Verdict takeuchi_fuchsian_test(std::int64_t p, std::int64_t q, std::int64_t r) {
    const std::array<std::int64_t, 3> v{p, q, r};
    for (auto n : v)
        if (n != kIdeal && n < 2) throw Error("takeuchi_fuchsian_test: vertex orders must be at least 2");
    if (!detail::hyperbolic(v)) throw NotHyperbolic("takeuchi_fuchsian_test: 1/p + 1/q + 1/r must be less than 1");
    return detail::takeuchi_from_cosines({detail::cos_pi_over(p), detail::cos_pi_over(q), detail::cos_pi_over(r)});
}

struct RightTriangleEntry {
    std::int64_t q = 0;
    std::int64_t r = 0;  // kIdeal for a cusp
    Verdict verdict;
};

/// Every hyperbolic (2,q,r) with 3 ≤ q ≤ r ≤ max_denom, then (2,q,∞) and (2,∞,∞).
/// Ordered by q, then r, with the cusp after every finite r.
inline std::vector<RightTriangleEntry> classify_right_triangles(std::int64_t max_denom, unsigned jobs = 1) {
    if (max_denom < 7) throw Error("classify_right_triangles: max_denom must be at least 7");
    std::vector<RootSum> cosines(static_cast<std::size_t>(max_denom + 1));
    for (std::int64_t n = 2; n <= max_denom; ++n) cosines[n] = detail::cos_pi_over(n);
    const auto right = detail::cos_pi_over(2), cusp = RootSum::rational(1);

    const auto rows = detail::parallel_map(static_cast<std::size_t>(max_denom - 2), jobs, [&](std::size_t i) {
        const auto q = static_cast<std::int64_t>(i) + 3;
        std::vector<RightTriangleEntry> row;
        for (std::int64_t r = q; r <= max_denom; ++r) {
            if (!detail::hyperbolic({2, q, r})) continue;
            row.push_back({q, r, detail::takeuchi_from_cosines({right, cosines[q], cosines[r]})});
        }
        row.push_back({q, kIdeal, detail::takeuchi_from_cosines({right, cosines[q], cusp})});
        return row;
    });
    std::vector<RightTriangleEntry> out;
    for (const auto& row : rows) out.insert(out.end(), row.begin(), row.end());
    out.push_back({kIdeal, kIdeal, detail::takeuchi_from_cosines({right, cusp, cusp})});
    return out;
}

inline std::vector<RightTriangleEntry> admissible_only(const std::vector<RightTriangleEntry>& all) {
    std::vector<RightTriangleEntry> out;
    std::copy_if(all.begin(), all.end(), std::back_inserter(out),
                 [](const auto& e) { return e.verdict.status == Status::Admissible; });
    return out;
}

inline Angle angle_pi_over(std::int64_t n) { return n == kIdeal ? Angle::ideal() : Angle::pi_over(Rational(n)); }

struct PsiCandidate {
    Rational psi_over_pi;
    Verdict verdict;
};

/// Rational ψ = sπ/t in (0, π] with φ(t) ≤ 2[F:Q], F = Q(cos²π/q, cos²π/r),
/// each re-tested with orders (2,2,2). ψ = π is always present.
inline std::vector<PsiCandidate> right_psi_candidates(std::int64_t q, std::int64_t r) {
    std::vector<RootSum> f_gens{detail::cos_pi_over(q) * detail::cos_pi_over(q),
                                detail::cos_pi_over(r) * detail::cos_pi_over(r)};
    std::int64_t level = 2;
    for (auto& g : f_gens) level = checked_lcm(level, g.simplify().level());
    const auto f_degree = euler_phi(level) / detail::count(detail::stabilizer_mask(f_gens, level));
    const auto bound = 2 * f_degree;

    std::vector<PsiCandidate> out;
    // φ(t) ≥ √(t/2), so t ≤ 2·bound² covers every t with φ(t) ≤ bound.
    for (std::int64_t t = 1; t <= 2 * bound * bound; ++t) {
        if (euler_phi(t) > bound) continue;
        for (std::int64_t s = 1; s <= t; ++s) {
            if (std::gcd(s, t) != 1) continue;
            const Rational psi = frac(s, t);
            const auto shape = make_shape({Angle::pi_over(2), angle_pi_over(q), angle_pi_over(r)}, psi);
            CandidateGroup c{shape, {2, 2, 2}, {1, 1, 1}};
            Verdict v;
            try {
                v = admissibility_test(c);
            } catch (const DegenerateTriangle&) {
                v = ruled_out("NO_TRIANGLE", "no triangle with these angles and angular invariant");
            }
            out.push_back({psi, v});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.psi_over_pi < b.psi_over_pi; });
    return out;
}

// ---------------------------------------------------------------------------
// Nonuniform enumeration

inline const std::array<std::int64_t, 4> kNonuniformOrders{2, 3, 4, 6};
inline const std::array<std::int64_t, 5> kNonuniformAngles{2, 3, 4, 6, kIdeal};
inline const std::array<std::int64_t, 6> kNonuniformPsiDenominators{2, 3, 4, 6, 8, 12};

/// Every candidate with orders in {2,3,4,6}, angles in {π/2,π/3,π/4,π/6,0}
/// and ψ = sπ/t, 0 < s < t, t ∈ {2,3,4,6,8,12}, that bounds a triangle, has a
/// lower field bound of degree ≤ 2 and is not ruled out. Survivors come in the
/// order angles, ψ, orders (each lexicographic).
inline std::vector<CandidateReport> enumerate_nonuniform(unsigned jobs = 1, const ProfileSource& profiles = {}) {
    std::vector<Rational> psis;
    for (auto t : kNonuniformPsiDenominators)
        for (std::int64_t s = 1; s < t; ++s)
            if (std::gcd(s, t) == 1) psis.push_back(frac(s, t));
    std::sort(psis.begin(), psis.end());

    std::vector<TriangleShape> shapes;
    for (auto a1 : kNonuniformAngles)
        for (auto a2 : kNonuniformAngles)
            for (auto a3 : kNonuniformAngles)
                for (const auto& psi : psis)
                    shapes.push_back(make_shape({angle_pi_over(a1), angle_pi_over(a2), angle_pi_over(a3)}, psi));

    const auto per_shape = detail::parallel_map(shapes.size(), jobs, [&](std::size_t i) {
        const auto& shape = shapes[i];
        std::vector<CandidateReport> found;
        if (det_sparse(shape).simplify().is_zero_exact() || !triangle_exists(shape)) return found;
        for (auto n1 : kNonuniformOrders)
            for (auto n2 : kNonuniformOrders)
                for (auto n3 : kNonuniformOrders) {
                    CandidateGroup c{shape, {n1, n2, n3}, {1, 1, 1}};
                    const auto b = field_E_bounds_sparse(c);
                    const auto level = level_of(c);
                    if (euler_phi(level) / detail::count(detail::stabilizer_mask(b.lower, level)) > 2) continue;
                    auto rep = analyze(c, profiles);
                    if (rep.verdict.status != Status::RuledOut) found.push_back(std::move(rep));
                }
        return found;
    });
    std::vector<CandidateReport> out;
    for (auto& group : per_shape) out.insert(out.end(), group.begin(), group.end());
    return out;
}

// ---------------------------------------------------------------------------
// Jacobsthal function and the equilateral scan

/// Smallest ℓ such that any ℓ consecutive integers contain one coprime to n.
inline std::int64_t jacobsthal(std::int64_t n) {
    if (n < 1) throw Error("jacobsthal: n must be positive");
    std::vector<char> shares(static_cast<std::size_t>(2 * n + 1), 0);
    for (auto p : prime_factors(n))
        for (auto k = p; k <= 2 * n; k += p) shares[k] = 1;
    std::int64_t run = 0, longest = 0;
    for (std::int64_t k = 1; k <= 2 * n; ++k) {
        run = shares[k] ? run + 1 : 0;
        longest = std::max(longest, run);
    }
    return longest + 1;
}

inline std::int64_t smallest_coprime_prime(std::int64_t n) {
    if (n < 1) throw Error("smallest_coprime_prime: n must be positive");
    std::int64_t p = 2;
    while (n % p == 0) p = next_prime(p);
    return p;
}

enum class SPolicy { Worst, All };

struct EquilateralRow {
    std::int64_t n = 0;
    std::int64_t p = 0;
    std::int64_t s = 1;  // the s attaining the reported sign
    int sign = 0;
};

struct EquilateralScan {
    std::vector<EquilateralRow> rows;
    std::vector<std::int64_t> survivors;  // n whose sign is not -1
    std::int64_t threshold = 0;           // n*: every scanned n ≥ n* has sign -1
};

/// 1 - 3cos²(pπ/n) + 2cos(psπ/12n)cos³(pπ/n), the image of the equilateral
/// determinant with ψ = sπ/12n under ζ ↦ ζ^p.
inline RootSum equilateral_conjugate_det(std::int64_t n, std::int64_t p, std::int64_t s) {
    const auto c = RootSum::cos_pi(frac(p, n));
    const auto cpsi = RootSum::cos_pi(frac(p * s, 12 * n));
    return RootSum::rational(1) - Rational(3) * (c * c) + Rational(2) * (cpsi * c * c * c);
}

/// With SPolicy::All every s coprime to 12n in [1, 12n) is tried and the
/// largest sign is kept.
inline EquilateralScan equilateral_scan(std::int64_t n_min, std::int64_t n_max, SPolicy policy = SPolicy::Worst,
                                        unsigned jobs = 1) {
    if (n_min < 7 || n_max < n_min) throw Error("equilateral_scan: need 7 <= n_min <= n_max");
    EquilateralScan out;
    out.rows = detail::parallel_map(static_cast<std::size_t>(n_max - n_min + 1), jobs, [&](std::size_t i) {
        const auto n = n_min + static_cast<std::int64_t>(i);
        const auto p = smallest_coprime_prime(12 * n);
        EquilateralRow row{n, p, 1, certified_sign_at(equilateral_conjugate_det(n, p, 1), 1)};
        if (policy == SPolicy::All) {
            for (std::int64_t s = 2; s < 12 * n && row.sign < 1; ++s) {
                if (std::gcd(s, 12 * n) != 1) continue;
                const auto sign = certified_sign_at(equilateral_conjugate_det(n, p, s), 1);
                if (sign > row.sign) row = {n, p, s, sign};
            }
        }
        return row;
    });
    for (const auto& row : out.rows)
        if (row.sign != -1) out.survivors.push_back(row.n);
    out.threshold = out.survivors.empty() ? n_min : out.survivors.back() + 1;
    return out;
}

// ---------------------------------------------------------------------------
// Irrational angular invariant

/// Constraints that still apply when ψ is not a rational multiple of π. No
/// exact computation is possible there, so these are reported, not decided.
inline std::vector<std::string> irrational_psi_report(const TriangleShape& shape, bool nonuniform) {
    std::vector<std::string> out;
    if (nonuniform)
        out.push_back("e^{iψ} lies in a biquadratic extension of Q");
    else
        out.push_back("e^{2iψ} lies in E and cos²ψ lies in the totally real subfield F");
    const bool small_angles = std::all_of(shape.angles.begin(), shape.angles.end(), [](const Angle& a) {
        return !a.is_ideal() && a.over_pi() <= frac(1, 3);
    });
    if (small_angles) out.push_back("cos²ψ lies in Q(cos²θ1, cos²θ2, cos²θ3, cos θ1 cos θ2 cos θ3)");
    return out;
}

}  // namespace cxta
