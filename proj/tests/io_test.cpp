#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "cxta/cxta.hpp"
#include "test_support.hpp"

using namespace cxta;
using cxta::testing::kSmallLevels;
using cxta::testing::random_elem;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("cxta_io_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

const char* kTwoThreeSeven = R"({"angles": ["2", "3", "7"], "psi": "1", "orders": [2, 2, 2]})";

}  // namespace

TEST(ElementJson, RoundTrip) {
    std::mt19937_64 rng(5);
    for (auto level : kSmallLevels)
        for (int i = 0; i < 10; ++i) {
            const auto x = random_elem(rng, level);
            const auto text = to_json(x).dump();
            EXPECT_EQ(cyc_elem_from_json(Json::parse(text)), x) << text;
        }
}

TEST(ElementJson, Format) {
    const auto x = CycElem::rational(frac(-3, 4), 8);
    EXPECT_EQ(to_json(x).dump(), R"({"level":8,"coeffs":["-3/4","0","0","0"]})");
    EXPECT_THROW(cyc_elem_from_json(Json::parse(R"({"level": 8, "coeffs": ["1"]})")), ParseError);
    EXPECT_THROW(cyc_elem_from_json(Json::parse(R"({"level": 8, "coeffs": ["1/0","0","0","0"]})")), ParseError);
    EXPECT_THROW(cyc_elem_from_json(Json::parse(R"({"coeffs": []})")), ParseError);
}

TEST(FormJson, IsThreeByThree) {
    const auto h = gram_form(make_shape({Angle::pi_over(2), Angle::pi_over(3), Angle::pi_over(7)}, 1));
    const auto j = to_json(h);
    ASSERT_EQ(j.size(), 3u);
    for (std::size_t a = 0; a < 3; ++a) {
        ASSERT_EQ(j[a].size(), 3u);
        for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(cyc_elem_from_json(j[a][b]), h.entries[a][b]);
    }
}

TEST(AngleText, BothReadings) {
    EXPECT_EQ(parse_angle("2"), Angle::pi_over(2));
    EXPECT_EQ(parse_angle("1/2"), Angle::pi_over(2));
    EXPECT_EQ(parse_angle("1/6"), Angle::pi_over(6));
    EXPECT_EQ(parse_angle("6"), Angle::pi_over(6));
    EXPECT_EQ(parse_angle("2/5").over_pi(), frac(2, 5));
    EXPECT_EQ(parse_angle("5/2").over_pi(), frac(2, 5));
    EXPECT_TRUE(parse_angle("ideal").is_ideal());
    for (const char* bad : {"1", "3/4", "0", "-3", "x", ""}) EXPECT_THROW(parse_angle(bad), Error) << bad;
    for (const char* text : {"2", "7", "2/5", "ideal", "7/2"}) {
        const auto a = parse_angle(text);
        EXPECT_EQ(parse_angle(angle_to_string(a)), a) << text;
    }
    EXPECT_EQ(angle_to_string(Angle::pi_over(7)), "7");
    EXPECT_EQ(angle_to_string(Angle::pi_times(frac(2, 5))), "2/5");
}

TEST(CandidateJson, Parse) {
    const auto c = parse_candidate(kTwoThreeSeven);
    EXPECT_EQ(c.shape, make_shape({Angle::pi_over(2), Angle::pi_over(3), Angle::pi_over(7)}, 1));
    EXPECT_EQ(c.orders, (std::array<std::int64_t, 3>{2, 2, 2}));
    EXPECT_EQ(c.factor_exponents, (std::array<std::int64_t, 3>{1, 1, 1}));

    const auto d = parse_candidate(
        R"({"angles": ["1/4", "ideal", 3], "psi": "7/3", "orders": [3, 4, 6], "factor_exponents": [2, 3, 5]})");
    EXPECT_TRUE(d.shape.angles[1].is_ideal());
    EXPECT_EQ(*d.shape.psi_over_pi, frac(1, 3));
    EXPECT_EQ(d.factor_exponents, (std::array<std::int64_t, 3>{2, 3, 5}));
    EXPECT_EQ(candidate_from_json(to_json(d)), d);

    const auto irr = parse_candidate(R"({"angles": ["4", "4", "4"], "psi_radians": 0.5, "orders": [2, 2, 2]})");
    EXPECT_FALSE(irr.shape.psi_over_pi);
    EXPECT_DOUBLE_EQ(irr.shape.psi_double, 0.5);
}

TEST(CandidateJson, Rejects) {
    const char* bad[] = {
        R"({"angles": ["2", "3", "7"], "psi": "1", "orders": [2, 2)",
        R"({"angles": ["2", "3"], "psi": "1", "orders": [2, 2, 2]})",
        R"({"angles": ["2", "3", "7"], "orders": [2, 2, 2]})",
        R"({"angles": ["2", "3", "7"], "psi": "1"})",
        R"({"angles": ["2", "3", "7"], "psi": "1", "orders": [2, 2, 2], "extra": 1})",
        R"({"angles": ["2", "3", "7"], "psi": "1", "psi_radians": 1.0, "orders": [2, 2, 2]})",
        R"({"angles": ["2", "3", "7"], "psi": 0.5, "orders": [2, 2, 2]})",
        R"({"angles": ["2", "3", "7"], "psi": "1", "orders": [1, 2, 2]})",
        R"({"angles": ["2", "3", "7"], "psi": "1", "orders": [4, 2, 2], "factor_exponents": [2, 1, 1]})",
        R"([1, 2, 3])",
        "",
    };
    for (const char* text : bad) EXPECT_THROW(parse_candidate(text), Error) << text;
    EXPECT_THROW(parse_candidate(R"({"angles": )"), ParseError);
}

TEST(Report, JsonAndCsv) {
    const auto rep = analyze(parse_candidate(kTwoThreeSeven));
    const auto j = to_json(rep);
    EXPECT_EQ(j["status"], "ADMISSIBLE");
    EXPECT_EQ(j["det_sign"], -1);
    EXPECT_EQ(j["degree_E_upper"], 3);
    EXPECT_TRUE(j["witness"].is_null());
    EXPECT_EQ(report_csv_fields(rep).size(), report_csv_header().size());

    const auto out = analyze(parse_candidate(R"({"angles": ["2", "3", "13"], "psi": "1", "orders": [2, 2, 2]})"));
    EXPECT_EQ(to_json(out)["status"], "RULED_OUT");
    EXPECT_TRUE(to_json(out)["witness"].is_number_integer());
}

TEST(Csv, Escaping) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
    EXPECT_EQ(csv_line({"1", "a,b", ""}), "1,\"a,b\",");
}

TEST(SignsText, RoundTrip) {
    for (const char* text : {kTwoThreeSeven, R"({"angles": ["4", "4", "4"], "psi": "1/3", "orders": [2, 2, 2]})"}) {
        const auto c = parse_candidate(text);
        const auto p = sign_profile(c.shape, level_of(c));
        const auto q = decode_signs(p.level, encode_signs(p));
        EXPECT_EQ(q.entries, p.entries);
    }
    EXPECT_THROW(decode_signs(12, "+-+"), ParseError);
    EXPECT_THROW(decode_signs(12, "+-+x"), ParseError);
}

TEST(CanonicalKey, DistinguishesShapesAndLevels) {
    const auto a = make_shape({Angle::pi_over(2), Angle::pi_over(3), Angle::pi_over(7)}, 1);
    const auto b = make_shape({Angle::pi_over(2), Angle::pi_over(3), Angle::pi_over(7)}, frac(1, 2));
    EXPECT_EQ(canonical_key(a, 84), "angles=2,3,7;psi=1;level=84");
    EXPECT_NE(canonical_key(a, 84), canonical_key(b, 84));
    EXPECT_NE(canonical_key(a, 84), canonical_key(a, 168));
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(hex64(fnv1a64("a")), "af63dc4c8601ec8c");
}

TEST(DiskCache, ColdAndWarmAgree) {
    const auto dir = fresh_dir("profiles");
    const auto candidates = {kTwoThreeSeven,
                             R"({"angles": ["4", "4", "4"], "psi": "1/3", "orders": [3, 3, 3]})",
                             R"({"angles": ["6", "ideal", "4"], "psi": "5/12", "orders": [2, 3, 4]})"};
    std::vector<CandidateReport> cold;
    {
        DiskCache cache(dir);
        for (const char* text : candidates) cold.push_back(analyze(parse_candidate(text), cache.source()));
        EXPECT_EQ(cache.hits(), 0u);
        EXPECT_EQ(cache.misses(), cold.size());
    }
    DiskCache warm(dir);
    std::size_t i = 0;
    for (const char* text : candidates) {
        const auto rep = analyze(parse_candidate(text), warm.source());
        EXPECT_EQ(to_json(rep).dump(), to_json(cold[i]).dump());
        EXPECT_EQ(to_json(rep).dump(), to_json(analyze(parse_candidate(text))).dump());
        ++i;
    }
    EXPECT_EQ(warm.hits(), cold.size());
    EXPECT_EQ(warm.misses(), 0u);
    std::filesystem::remove_all(dir);
}

TEST(DiskCache, CorruptEntriesAreRecomputed) {
    const auto dir = fresh_dir("corrupt");
    const auto c = parse_candidate(kTwoThreeSeven);
    const auto expected = sign_profile(gauge_fixed(c.shape), level_of(c));
    {
        DiskCache cache(dir);
        cache.profile(gauge_fixed(c.shape), level_of(c));
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir / "profiles")) {
        std::ofstream out(entry.path());
        out << R"({"key": "angles=2,3,7;psi=1;level=84", "level": 84, "signs": "not a sign string")";
    }
    DiskCache cache(dir);
    EXPECT_EQ(cache.profile(gauge_fixed(c.shape), level_of(c)).entries, expected.entries);
    EXPECT_EQ(cache.misses(), 1u);
    std::filesystem::remove_all(dir);
}

TEST(DiskCache, CyclotomicPolynomialsPersist) {
    const auto dir = fresh_dir("cyclotomic");
    {
        DiskCache cache(dir);
        cyclotomic_polynomial(105);
        cache.save_cyclotomic();
    }
    EXPECT_TRUE(std::filesystem::exists(dir / "cyclotomic" / "105.json"));
    {
        std::ofstream bad(dir / "cyclotomic" / "77.json");
        bad << R"({"n": 77, "coeffs": [1, 1]})";
    }
    DiskCache cache(dir);
    const auto loaded = cache.load_cyclotomic();
    EXPECT_GE(loaded, 1u);
    EXPECT_EQ(cyclotomic_polynomial(105), cyclotomic_polynomial_ref(105).dense);
    EXPECT_EQ(cyclotomic_polynomial(105)[7], -2);
    EXPECT_EQ(static_cast<std::int64_t>(cyclotomic_polynomial(77).size()), euler_phi(77) + 1);
    std::filesystem::remove_all(dir);
}
