// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Tolerances: exact equality everywhere except numeric embeddings (1e-9) and
// the independent MPFR sign oracle (values must clear 1e-12 to be compared).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cxta/cxta.hpp"
#include "test_support.hpp"

using namespace cxta;
using cxta::testing::mpfr_cos_pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Angle random_angle(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 9), b(2, 12), num(1, 5), den(2, 12);
    const int k = kind(rng);
    if (k == 0) return Angle::ideal();
    if (k <= 6) return Angle::pi_over(b(rng));
    while (true) {
        const auto x = frac(num(rng), den(rng));
        if (x <= frac(1, 2)) return Angle::pi_times(x);
    }
}

TriangleShape random_shape(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> t(1, 12), s(0, 23);
    while (true) {
        auto shape = make_shape({random_angle(rng), random_angle(rng), random_angle(rng)}, frac(s(rng), t(rng)));
        if (level_of(shape) <= 120) return shape;
    }
}

CycElem cos_of(const Angle& a, std::int64_t level) {
    if (a.is_ideal()) return CycElem::one(level);
    const auto x = a.over_pi();
    return cos_pi_rational(to_ll(x.get_num()), to_ll(x.get_den()), level);
}

Angle angle_b(std::int64_t n) { return n == kIdeal ? Angle::ideal() : Angle::pi_over(n); }

// ---------------------------------------------------------------------------

Outcome right_triangle_count() {
    const auto all = classify_right_triangles(2000);
    const auto ok = admissible_only(all);
    const auto v237 = takeuchi_fuchsian_test(2, 3, 7).status;
    const auto v2313 = takeuchi_fuchsian_test(2, 3, 13).status;
    std::ostringstream os;
    os << ok.size() << " admissible of " << all.size() << " triangles (2,q,r), q,r <= 2000 or cusp; (2,3,7) "
       << to_string(v237) << ", (2,3,13) " << to_string(v2313);
    return {ok.size() == 41 && v237 == Status::Admissible && v2313 == Status::RuledOut, os.str()};
}

Outcome equilateral_fuchsian_floor() {
    std::vector<std::int64_t> admissible_below;
    for (std::int64_t n = 7; n < 15; ++n)
        if (takeuchi_fuchsian_test(n, n, n).status == Status::Admissible) admissible_below.push_back(n);
    const bool at15 = takeuchi_fuchsian_test(15, 15, 15).status == Status::Admissible;
    std::ostringstream os;
    os << "(n,n,n) admissible for n in {";
    for (std::size_t i = 0; i < admissible_below.size(); ++i) os << (i ? "," : "") << admissible_below[i];
    os << "} below 15 (expected none); n = 15 " << (at15 ? "ADMISSIBLE" : "RULED_OUT");
    return {admissible_below.empty() && at15, os.str()};
}

Outcome nonuniform_constraints() {
    const auto start = std::chrono::steady_clock::now();
    const auto first = enumerate_nonuniform();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::set<std::int64_t> orders{2, 3, 4, 6}, dens{2, 3, 4, 6, 8, 12};
    const std::set<Rational> angles{frac(1, 2), frac(1, 3), frac(1, 4), frac(1, 6), Rational(0)};
    std::size_t bad = 0, admissible_count = 0;
    for (const auto& rep : first) {
        bool ok = dens.count(to_ll(rep.candidate.shape.psi_over_pi->get_den())) == 1;
        for (auto n : rep.candidate.orders) ok = ok && orders.count(n);
        for (const auto& a : rep.candidate.shape.angles) ok = ok && angles.count(a.over_pi());
        bad += !ok;
        admissible_count += rep.verdict.status == Status::Admissible;
    }
    const auto second = enumerate_nonuniform();
    bool same = first.size() == second.size();
    for (std::size_t i = 0; same && i < first.size(); ++i)
        same = first[i].candidate == second[i].candidate && first[i].verdict == second[i].verdict;
    std::ostringstream os;
    os << first.size() << " candidates (" << admissible_count << " admissible), " << bad
       << " violate the constraints, repeat run " << (same ? "identical" : "DIFFERENT") << ", " << seconds
       << " s (limit 60 s)";
    return {!first.empty() && bad == 0 && same && seconds < 60, os.str()};
}

Outcome determinant_closed_form() {
    std::mt19937_64 rng(4242);
    int random_bad = 0;
    for (int i = 0; i < 200; ++i) {
        const auto s = random_shape(rng);
        const auto h = gram_form(s);
        const auto L = h.level;
        const auto c1 = cos_of(s.angles[0], L), c2 = cos_of(s.angles[1], L), c3 = cos_of(s.angles[2], L);
        const auto psi = *s.psi_over_pi;
        const auto cpsi = cos_pi_rational(to_ll(psi.get_num()), to_ll(psi.get_den()), L);
        const auto expected = CycElem::one(L) - c1 * c1 - c2 * c2 - c3 * c3 + Rational(2) * cpsi * c1 * c2 * c3;
        random_bad += !(det_form(h) - expected).is_zero();
    }
    int right_bad = 0, right_count = 0;
    for (std::int64_t q = 3; q <= 10; ++q)
        for (std::int64_t r = q; r <= 12; ++r)
            for (auto psi : {Rational(1), frac(1, 2), frac(2, 5)}) {
                const auto h = gram_form(make_shape({angle_b(2), angle_b(q), angle_b(r)}, psi));
                const auto cq = cos_pi_rational(1, q, h.level), cr = cos_pi_rational(1, r, h.level);
                right_bad += det_form(h) != CycElem::one(h.level) - cq * cq - cr * cr;
                ++right_count;
            }
    int eq_bad = 0, eq_count = 0;
    for (std::int64_t n = 4; n <= 16; ++n)
        for (std::int64_t s = 1; s <= 3; ++s) {
            const auto psi = frac(s, 12 * n);
            const auto h = gram_form(make_shape({angle_b(n), angle_b(n), angle_b(n)}, psi));
            const auto c = cos_pi_rational(1, n, h.level);
            const auto cpsi = cos_pi_rational(to_ll(psi.get_num()), to_ll(psi.get_den()), h.level);
            eq_bad += det_form(h) != CycElem::one(h.level) - Rational(3) * c * c + Rational(2) * cpsi * c * c * c;
            ++eq_count;
        }
    std::ostringstream os;
    os << random_bad << "/200 random shapes, " << right_bad << "/" << right_count << " right shapes, " << eq_bad << "/"
       << eq_count << " equilateral shapes differ from the closed form";
    return {random_bad == 0 && right_bad == 0 && eq_bad == 0, os.str()};
}

Outcome equilateral_scan_threshold() {
    const std::int64_t n_max = 10000;
    const auto scan = equilateral_scan(7, n_max);
    std::size_t oracle_disagree = 0, oracle_skipped = 0, wrong_prime = 0, tail_bad = 0;
    for (const auto& row : scan.rows) {
        wrong_prime += row.p != smallest_coprime_prime(12 * row.n);
        const double c = mpfr_cos_pi(row.p, row.n, 200);
        const double cpsi = mpfr_cos_pi(row.p, 12 * row.n, 200);
        const double value = 1 - 3 * c * c + 2 * cpsi * c * c * c;
        if (std::fabs(value) < 1e-12) ++oracle_skipped;
        else oracle_disagree += row.sign != (value > 0 ? 1 : -1);
        tail_bad += row.n >= scan.threshold && row.sign != -1;
    }
    std::ostringstream os;
    os << "n* = " << scan.threshold << " (" << scan.survivors.size() << " survivors in [7, " << n_max << "]), "
       << tail_bad << " rows at or above n* not negative, " << oracle_disagree << " disagreements with MPFR ("
       << oracle_skipped << " too close to zero to compare)";
    return {scan.threshold <= n_max && tail_bad == 0 && oracle_disagree == 0 && wrong_prime == 0, os.str()};
}

Outcome jacobsthal_checks() {
    std::size_t sieve_bad = 0;
    for (std::int64_t n = 1; n <= 500; ++n) {
        std::int64_t longest = 0;
        for (std::int64_t start = 0; start < n; ++start) {
            std::int64_t len = 0;
            while (std::gcd(start + len, n) != 1) ++len;
            longest = std::max(longest, len);
        }
        sieve_bad += jacobsthal(n) != longest + 1;
    }
    const bool small = jacobsthal(1) == 1 && jacobsthal(2) == 2 && jacobsthal(30) == 6;
    std::vector<std::int64_t> violations;
    for (std::int64_t n = 1; n <= 2000; ++n)
        if (smallest_coprime_prime(12 * n) > jacobsthal(12 * n)) violations.push_back(n);
    std::ostringstream os;
    os << sieve_bad << " sieve disagreements for n <= 500; j(1), j(2), j(30) " << (small ? "= 1, 2, 6" : "WRONG")
       << "; p(12n) <= j(12n) fails for " << violations.size() << " n <= 2000";
    if (!violations.empty())
        os << " (first n = " << violations.front() << ": p = " << smallest_coprime_prime(12 * violations.front())
           << ", j = " << jacobsthal(12 * violations.front()) << ")";
    return {sieve_bad == 0 && small && violations.empty(), os.str()};
}

Outcome galois_laws() {
    std::mt19937_64 rng(77);
    const std::int64_t levels[] = {4, 6, 8, 10, 12, 14, 16, 18, 20, 24, 28, 30, 36, 40, 42, 60};
    std::size_t law_bad = 0, embed_bad = 0;
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto L = levels[static_cast<std::size_t>(i) % std::size(levels)];
        const auto units = units_mod(L);
        const auto x = testing::random_elem(rng, L), y = testing::random_elem(rng, L);
        const GaloisAut s(L, units[rng() % units.size()]), t(L, units[rng() % units.size()]);
        const auto conj = GaloisAut::complex_conjugation(L);
        law_bad += apply_galois(s, apply_galois(t, x)) != apply_galois(s.compose(t), x);
        law_bad += apply_galois(conj, apply_galois(conj, x)) != x;
        law_bad += apply_galois(s, x * y) != apply_galois(s, x) * apply_galois(s, y);
        law_bad += apply_galois(s, x + y) != apply_galois(s, x) + apply_galois(s, y);
        // Direct evaluation Σ c_k e^{2πi k m / L} in long double.
        const auto m = s.exponent();
        std::complex<long double> direct = 0;
        const auto& co = x.coeffs();
        for (std::size_t k = 0; k < co.size(); ++k) {
            const long double angle = 2.0L * 3.14159265358979323846264338327950288L *
                                      static_cast<long double>((static_cast<std::int64_t>(k) * m) % L) / L;
            direct += static_cast<long double>(co[k].get_d()) * std::polar(1.0L, angle);
        }
        const auto embedded = numeric_embed(x, m);
        const double err = std::abs(std::complex<double>(embedded) - std::complex<double>(direct));
        worst = std::max(worst, err);
        embed_bad += err > 1e-9;
        embed_bad += std::abs(numeric_embed(apply_galois(s, x), 1) - embedded) > 1e-9;
    }
    std::ostringstream os;
    os << law_bad << " law violations over 1000 random elements, " << embed_bad
       << " embeddings off by more than 1e-9 (worst " << worst << ")";
    return {law_bad == 0 && embed_bad == 0, os.str()};
}

Outcome reflection_round_trip() {
    std::mt19937_64 rng(8);
    static const std::int64_t angles[] = {2, 3, 4, 5, 6, 8, kIdeal};
    static const Rational psis[] = {1, frac(1, 2), frac(1, 3), frac(2, 3), frac(1, 4), frac(1, 6), frac(5, 6)};
    std::uniform_int_distribution<std::size_t> pa(0, std::size(angles) - 1), pp(0, std::size(psis) - 1);
    std::uniform_int_distribution<std::int64_t> order(2, 8);
    int checked = 0, failed = 0;
    while (checked < 200) {
        const auto shape =
            make_shape({angle_b(angles[pa(rng)]), angle_b(angles[pa(rng)]), angle_b(angles[pa(rng)])}, psis[pp(rng)]);
        if (level_of(shape) > 120 || !triangle_exists(shape)) continue;
        CandidateGroup c{shape, {order(rng), order(rng), order(rng)}, {1, 1, 1}};
        for (int j = 0; j < 3; ++j) {
            std::uniform_int_distribution<std::int64_t> k(1, c.orders[j] - 1);
            do c.factor_exponents[j] = k(rng);
            while (std::gcd(c.factor_exponents[j], c.orders[j]) != 1);
        }
        if (level_of(c) > 240) continue;
        const auto h = gram_form(c.shape, level_of(c));
        bool ok = true;
        for (int j = 0; j < 3; ++j) ok = ok && verify_reflection(reflection_matrix(c, j), h, c.orders[j]);
        failed += !ok;
        ++checked;
    }
    std::ostringstream os;
    os << failed << "/200 random candidates have a reflection failing verification";
    return {failed == 0, os.str()};
}

Outcome signature_coherence() {
    std::mt19937_64 rng(99);
    int shapes = 0, sum_bad = 0, parity_bad = 0, conj_bad = 0, places = 0;
    while (shapes < 200) {
        const auto s = random_shape(rng);
        ++shapes;
        const auto h = gram_form(s);
        const auto det = det_form(h);
        for (auto m : units_mod(h.level)) {
            const auto sig = signature_at(h, GaloisAut(h.level, m));
            ++places;
            sum_bad += sig.positive + sig.negative + sig.zero != 3;
            const int det_sign = sign_at(det, m);
            if (det_sign != 0) parity_bad += sig.zero != 0 || det_sign != (sig.negative % 2 ? -1 : 1);
            else parity_bad += sig.zero == 0;
            conj_bad += !(sig == signature_at(h, GaloisAut(h.level, h.level - m)));
        }
    }
    std::ostringstream os;
    os << places << " places over " << shapes << " shapes: " << sum_bad << " signatures not summing to 3, "
       << parity_bad << " parity mismatches, " << conj_bad << " conjugate mismatches";
    return {sum_bad == 0 && parity_bad == 0 && conj_bad == 0, os.str()};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"1 right triangle count", right_triangle_count},
        {"2 equilateral Fuchsian floor", equilateral_fuchsian_floor},
        {"3 nonuniform enumeration constraints", nonuniform_constraints},
        {"4 determinant closed form", determinant_closed_form},
        {"5 equilateral scan threshold", equilateral_scan_threshold},
        {"6 Jacobsthal function", jacobsthal_checks},
        {"7 Galois laws", galois_laws},
        {"8 reflection round trip", reflection_round_trip},
        {"9 signature coherence", signature_coherence},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !out.pass;
        std::printf("%s [%s] %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", name, out.detail.c_str(), seconds);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
