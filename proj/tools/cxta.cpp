// cxta: command-line front end for the arithmeticity tests.
//
// Exit codes: 0 ADMISSIBLE, 1 RULED_OUT, 2 INDETERMINATE (check, takeuchi);
// 0 for table commands; 64 usage or unparsable input; 65 input that parses
// but cannot be processed (e.g. no triangle); 74 I/O failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "cxta/cxta.hpp"

namespace {

using namespace cxta;

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitIo = 74;

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv, Pretty };

struct RunConfig {
    Format format = Format::Json;
    std::string output;  // empty: standard output
    unsigned jobs = 1;
    std::string cache_dir;
    bool no_cache = false;

    std::string input = "-";
    std::int64_t max_denom = 2000;
    bool all_rows = false;
    std::int64_t n_min = 7;
    std::int64_t n_max = 10000;
    SPolicy s_policy = SPolicy::Worst;
    std::int64_t jacobsthal_n = 1;
    std::vector<std::string> triple;
};

int exit_code(Status s) {
    switch (s) {
        case Status::Admissible: return 0;
        case Status::RuledOut: return 1;
        case Status::Indeterminate: return 2;
    }
    return 2;
}

std::optional<std::filesystem::path> cache_path(const RunConfig& cfg) {
    if (cfg.no_cache) return std::nullopt;
    if (!cfg.cache_dir.empty()) return std::filesystem::path(cfg.cache_dir);
    if (const char* env = std::getenv("CXTA_CACHE_DIR"); env && *env) return std::filesystem::path(env);
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "cxta";
    if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "cxta";
    return std::nullopt;
}

std::unique_ptr<DiskCache> open_cache(const RunConfig& cfg) {
    const auto dir = cache_path(cfg);
    if (!dir) return nullptr;
    try {
        auto cache = std::make_unique<DiskCache>(*dir);
        cache->load_cyclotomic();
        return cache;
    } catch (const std::exception& e) {
        std::cerr << "cxta: warning: cache disabled (" << e.what() << ")\n";
        return nullptr;
    }
}

void close_cache(DiskCache* cache) {
    if (!cache) return;
    try {
        cache->save_cyclotomic();
    } catch (const std::exception& e) {
        std::cerr << "cxta: warning: could not update cache (" << e.what() << ")\n";
    }
}

std::string read_input(const std::string& path) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw IoFailure("cannot read " + path);
        buf << in.rdbuf();
    }
    return buf.str();
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    out << text;
    if (!out) throw IoFailure("cannot write " + cfg.output);
}

std::string vertex_text(std::int64_t n) { return n == kIdeal ? "ideal" : std::to_string(n); }

Json vertex_json(std::int64_t n) { return n == kIdeal ? Json("ideal") : Json(n); }

std::int64_t parse_vertex(const std::string& s) {
    if (s == "ideal" || s == "inf" || s == "0") return kIdeal;
    std::size_t used = 0;
    std::int64_t n = 0;
    try {
        n = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || used == 0) throw ParseError("vertex order '" + s + "' is not an integer or \"ideal\"");
    return n;
}

std::string verdict_pretty(const Verdict& v) {
    std::string out = to_string(v.status) + " " + v.tag;
    if (v.witness) out += " (witness σ_" + std::to_string(*v.witness) + ")";
    if (!v.reason.empty()) out += ": " + v.reason;
    return out;
}

std::string pi_multiple(const Rational& x) {
    if (sgn(x) == 0) return "0";
    const auto num = to_string(Rational(x.get_num())), den = to_string(Rational(x.get_den()));
    return (num == "1" ? "" : num) + "π" + (den == "1" ? "" : "/" + den);
}

std::string candidate_pretty(const CandidateGroup& c) {
    std::string out = "angles (";
    for (int i = 0; i < 3; ++i) {
        const auto& a = c.shape.angles[i];
        out += i ? ", " : "";
        out += pi_multiple(a.over_pi());
    }
    out += ") ψ = ";
    out += c.shape.psi_over_pi ? pi_multiple(*c.shape.psi_over_pi) : std::to_string(c.shape.psi_double);
    out += " orders (" + std::to_string(c.orders[0]) + ", " + std::to_string(c.orders[1]) + ", " +
           std::to_string(c.orders[2]) + ")";
    if (c.factor_exponents != std::array<std::int64_t, 3>{1, 1, 1})
        out += " exponents (" + std::to_string(c.factor_exponents[0]) + ", " + std::to_string(c.factor_exponents[1]) +
               ", " + std::to_string(c.factor_exponents[2]) + ")";
    return out;
}

std::string report_pretty(const CandidateReport& r) {
    std::ostringstream os;
    os << candidate_pretty(r.candidate) << "\n"
       << "  level " << r.level << ", det sign " << r.det_sign << ", degrees E_lower " << r.lower_degree
       << " E_upper " << r.upper_degree << " E_triangle " << r.triangle_degree << ", negative pairs "
       << r.negative_pairs << "\n"
       << "  " << verdict_pretty(r.verdict) << "\n";
    return os.str();
}

std::string reports_text(const std::vector<CandidateReport>& reports, Format format) {
    std::string out;
    switch (format) {
        case Format::Json:
            for (const auto& r : reports) out += to_json(r).dump() + "\n";
            break;
        case Format::Csv:
            out += csv_line(report_csv_header()) + "\n";
            for (const auto& r : reports) out += csv_line(report_csv_fields(r)) + "\n";
            break;
        case Format::Pretty:
            for (const auto& r : reports) out += report_pretty(r);
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_check(const RunConfig& cfg) {
    const auto c = parse_candidate(read_input(cfg.input));
    if (!c.shape.psi_over_pi) {
        bool nonuniform = false;
        for (const auto& a : c.shape.angles) nonuniform = nonuniform || a.is_ideal();
        const auto constraints = irrational_psi_report(c.shape, nonuniform);
        const Verdict v = indeterminate("IRRATIONAL_PSI", "ψ is not a rational multiple of π; only necessary conditions are reported");
        std::string out;
        if (cfg.format == Format::Json) {
            auto j = to_json(c);
            const auto vj = to_json(v);
            for (const auto& [k, val] : vj.items()) j[k] = val;
            j["constraints"] = constraints;
            out = j.dump() + "\n";
        } else if (cfg.format == Format::Csv) {
            out = csv_line({"status", "tag", "reason", "constraint"}) + "\n";
            for (const auto& s : constraints) out += csv_line({to_string(v.status), v.tag, v.reason, s}) + "\n";
        } else {
            out = candidate_pretty(c) + "\n  " + verdict_pretty(v) + "\n";
            for (const auto& s : constraints) out += "  necessary: " + s + "\n";
        }
        write_output(cfg, out);
        return exit_code(v.status);
    }
    const auto cache = open_cache(cfg);
    const auto report = cache ? analyze(c, cache->source()) : analyze(c);
    close_cache(cache.get());
    write_output(cfg, reports_text({report}, cfg.format));
    return exit_code(report.verdict.status);
}

std::string triangle_rows(const std::vector<std::array<std::int64_t, 3>>& triangles,
                          const std::vector<Verdict>& verdicts, Format format) {
    std::string out;
    if (format == Format::Csv) out += csv_line({"p", "q", "r", "status", "tag", "reason", "witness"}) + "\n";
    for (std::size_t i = 0; i < triangles.size(); ++i) {
        const auto& t = triangles[i];
        const auto& v = verdicts[i];
        switch (format) {
            case Format::Json: {
                Json j{{"p", vertex_json(t[0])}, {"q", vertex_json(t[1])}, {"r", vertex_json(t[2])}};
                const auto vj = to_json(v);
                for (const auto& [k, val] : vj.items()) j[k] = val;
                out += j.dump() + "\n";
                break;
            }
            case Format::Csv:
                out += csv_line({vertex_text(t[0]), vertex_text(t[1]), vertex_text(t[2]), to_string(v.status), v.tag,
                                 v.reason, v.witness ? std::to_string(*v.witness) : ""}) +
                       "\n";
                break;
            case Format::Pretty:
                out += "(" + vertex_text(t[0]) + ", " + vertex_text(t[1]) + ", " + vertex_text(t[2]) + ")  " +
                       verdict_pretty(v) + "\n";
                break;
        }
    }
    return out;
}

int cmd_takeuchi(const RunConfig& cfg) {
    if (cfg.triple.size() != 3) throw ParseError("takeuchi expects three vertex orders p q r");
    const std::array<std::int64_t, 3> t{parse_vertex(cfg.triple[0]), parse_vertex(cfg.triple[1]),
                                        parse_vertex(cfg.triple[2])};
    const auto v = takeuchi_fuchsian_test(t[0], t[1], t[2]);
    write_output(cfg, triangle_rows({t}, {v}, cfg.format));
    return exit_code(v.status);
}

int cmd_classify_right(const RunConfig& cfg) {
    const auto entries = classify_right_triangles(cfg.max_denom, cfg.jobs);
    std::vector<std::array<std::int64_t, 3>> triangles;
    std::vector<Verdict> verdicts;
    std::size_t admissible_count = 0;
    for (const auto& e : entries) {
        const bool ok = e.verdict.status == Status::Admissible;
        admissible_count += ok;
        if (!ok && !cfg.all_rows) continue;
        triangles.push_back({2, e.q, e.r});
        verdicts.push_back(e.verdict);
    }
    auto out = triangle_rows(triangles, verdicts, cfg.format);
    if (cfg.format == Format::Pretty)
        out += std::to_string(admissible_count) + " admissible of " + std::to_string(entries.size()) +
               " right triangles with vertex orders up to " + std::to_string(cfg.max_denom) + "\n";
    write_output(cfg, out);
    return 0;
}

int cmd_enumerate_nonuniform(const RunConfig& cfg) {
    const auto cache = open_cache(cfg);
    const auto reports = cache ? enumerate_nonuniform(cfg.jobs, cache->source()) : enumerate_nonuniform(cfg.jobs);
    close_cache(cache.get());
    auto out = reports_text(reports, cfg.format);
    if (cfg.format == Format::Pretty) {
        std::size_t admissible_count = 0;
        for (const auto& r : reports) admissible_count += r.verdict.status == Status::Admissible;
        out += std::to_string(reports.size()) + " candidates not ruled out (" + std::to_string(admissible_count) +
               " admissible, " + std::to_string(reports.size() - admissible_count) + " indeterminate)\n";
    }
    write_output(cfg, out);
    return 0;
}

int cmd_equilateral_scan(const RunConfig& cfg) {
    const auto scan = equilateral_scan(cfg.n_min, cfg.n_max, cfg.s_policy, cfg.jobs);
    const std::string policy = cfg.s_policy == SPolicy::Worst ? "worst" : "all";
    const auto last = scan.survivors.empty() ? Json(nullptr) : Json(scan.survivors.back());
    std::string out;
    switch (cfg.format) {
        case Format::Json:
            for (const auto& r : scan.rows)
                out += Json{{"n", r.n}, {"p", r.p}, {"s", r.s}, {"sign", r.sign}}.dump() + "\n";
            out += Json{{"n_min", cfg.n_min},
                        {"n_max", cfg.n_max},
                        {"s_policy", policy},
                        {"survivors", scan.survivors.size()},
                        {"last_survivor", last},
                        {"threshold", scan.threshold}}
                       .dump() +
                   "\n";
            break;
        case Format::Csv:
            out += "n,p,s,sign\n";
            for (const auto& r : scan.rows)
                out += csv_line({std::to_string(r.n), std::to_string(r.p), std::to_string(r.s), std::to_string(r.sign)}) +
                       "\n";
            break;
        case Format::Pretty: {
            out += "equilateral scan n = " + std::to_string(cfg.n_min) + ".." + std::to_string(cfg.n_max) +
                   ", s policy " + policy + "\n";
            out += "survivors (conjugate determinant not negative): " + std::to_string(scan.survivors.size()) + "\n";
            for (const auto& r : scan.rows)
                if (r.sign != -1)
                    out += "  n = " + std::to_string(r.n) + "  p = " + std::to_string(r.p) + "  s = " +
                           std::to_string(r.s) + "  sign " + std::to_string(r.sign) + "\n";
            out += "threshold: every scanned n >= " + std::to_string(scan.threshold) + " is ruled out\n";
            break;
        }
    }
    write_output(cfg, out);
    return 0;
}

int cmd_jacobsthal(const RunConfig& cfg) {
    const auto j = jacobsthal(cfg.jacobsthal_n);
    const auto p = smallest_coprime_prime(cfg.jacobsthal_n);
    std::string out;
    switch (cfg.format) {
        case Format::Json:
            out = Json{{"n", cfg.jacobsthal_n}, {"jacobsthal", j}, {"smallest_coprime_prime", p}}.dump() + "\n";
            break;
        case Format::Csv:
            out = "n,jacobsthal,smallest_coprime_prime\n" + std::to_string(cfg.jacobsthal_n) + "," + std::to_string(j) +
                  "," + std::to_string(p) + "\n";
            break;
        case Format::Pretty:
            out = "j(" + std::to_string(cfg.jacobsthal_n) + ") = " + std::to_string(j) +
                  ", smallest prime not dividing it: " + std::to_string(p) + "\n";
            break;
    }
    write_output(cfg, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Arithmeticity obstructions for complex hyperbolic triangle groups", "cxta"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string format = "json", policy = "worst";
    app.add_option("--format", format, "Output format: json (one record per line), csv or pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("-o,--output", cfg.output, "Write output to this file instead of standard output");
    app.add_option("-j,--jobs", cfg.jobs, "Worker threads for scans (0: all cores)");
    app.add_option("--cache-dir", cfg.cache_dir, "Cache directory (default: $CXTA_CACHE_DIR, else ~/.cache/cxta)");
    app.add_flag("--no-cache", cfg.no_cache, "Do not read or write the cache");

    auto* check = app.add_subcommand("check", "Run the admissibility test on a candidate (JSON file or - for stdin)");
    check->add_option("candidate", cfg.input, "Candidate JSON file");

    auto* right = app.add_subcommand("classify-right", "Takeuchi's test on every right triangle (2,q,r)");
    right->add_option("--max-denom", cfg.max_denom, "Largest finite vertex order")->check(CLI::Range(7, 1000000));
    right->add_flag("--all", cfg.all_rows, "Also list triangles that are ruled out");

    auto* nonuniform = app.add_subcommand("enumerate-nonuniform", "Candidates with cusps that are not ruled out");

    auto* equilateral = app.add_subcommand("equilateral-scan", "Sign of the conjugate determinant for equilateral (n,n,n)");
    equilateral->add_option("--n-min", cfg.n_min, "Smallest n")->check(CLI::Range(7, 100000000));
    equilateral->add_option("--n-max", cfg.n_max, "Largest n")->check(CLI::Range(7, 100000000));
    equilateral->add_option("--s-policy", policy, "worst: ψ = π/12n only; all: every sπ/12n with s coprime to 12n")
        ->check(CLI::IsMember({"worst", "all"}));

    auto* jac = app.add_subcommand("jacobsthal", "Jacobsthal's function j(n)");
    jac->add_option("--n", cfg.jacobsthal_n, "Argument n")->required()->check(CLI::Range(1, 100000000));

    auto* take = app.add_subcommand("takeuchi", "Takeuchi's arithmeticity test for the (p,q,r) triangle group");
    take->add_option("orders", cfg.triple, "Vertex orders p q r; \"ideal\" for a cusp")->expected(3)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitUsage;
    }
    cfg.format = format == "csv" ? Format::Csv : format == "pretty" ? Format::Pretty : Format::Json;
    cfg.s_policy = policy == "all" ? SPolicy::All : SPolicy::Worst;
    if (cfg.jobs == 0) cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
    if (equilateral->parsed() && cfg.n_max < cfg.n_min) {
        std::cerr << "cxta: --n-max must be at least --n-min\n" << equilateral->help();
        return kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check(cfg);
        if (right->parsed()) return cmd_classify_right(cfg);
        if (nonuniform->parsed()) return cmd_enumerate_nonuniform(cfg);
        if (equilateral->parsed()) return cmd_equilateral_scan(cfg);
        if (jac->parsed()) return cmd_jacobsthal(cfg);
        if (take->parsed()) return cmd_takeuchi(cfg);
    } catch (const ParseError& e) {
        std::cerr << "cxta: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoFailure& e) {
        std::cerr << "cxta: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "cxta: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
