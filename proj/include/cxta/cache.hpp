#pragma once

// Persistent cache for cyclotomic polynomials and sign profiles.
//
// Layout under the cache directory:
//   cyclotomic/<n>.json   {"n": n, "coeffs": [...]}
//   profiles/<hash>.json  {"key": ..., "level": L, "signs": "+-..."}
// where <hash> is the 64-bit FNV-1a hash of the canonical shape key. Entries
// are checked on load and ignored if they do not match; they never replace a
// computation, only skip it.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>

#include "cxta/io.hpp"

namespace cxta {

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = digits[v & 15];
    return out;
}

class DiskCache {
public:
    explicit DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_ / "cyclotomic");
        std::filesystem::create_directories(dir_ / "profiles");
    }

    const std::filesystem::path& directory() const { return dir_; }

    /// Seeds the in-process Φ_n table from disk; returns how many were loaded.
    std::size_t load_cyclotomic() {
        std::size_t loaded = 0;
        for (const auto& entry : std::filesystem::directory_iterator(dir_ / "cyclotomic")) {
            if (entry.path().extension() != ".json") continue;
            try {
                const auto j = read_json(entry.path());
                const auto n = j.at("n").get<std::int64_t>();
                auto coeffs = j.at("coeffs").get<std::vector<std::int64_t>>();
                if (n < 1 || static_cast<std::int64_t>(coeffs.size()) != euler_phi(n) + 1 || coeffs.back() != 1) continue;
                detail::CyclotomicCache::instance().seed(n, std::move(coeffs));
                on_disk_.insert(n);
                ++loaded;
            } catch (const std::exception&) {
                // Unreadable entries are recomputed on demand.
            }
        }
        return loaded;
    }

    /// Writes every Φ_n computed in this process that is not yet on disk.
    void save_cyclotomic() {
        for (auto n : detail::CyclotomicCache::instance().cached_indices()) {
            if (on_disk_.count(n)) continue;
            write_json(dir_ / "cyclotomic" / (std::to_string(n) + ".json"),
                       Json{{"n", n}, {"coeffs", cyclotomic_polynomial(n)}});
            on_disk_.insert(n);
        }
    }

    /// Sign profile of the shape at `level`, from memory, disk, or computed and stored.
    SignProfile profile(const TriangleShape& shape, std::int64_t level) {
        const auto key = canonical_key(shape, level);
        {
            std::lock_guard lock(mutex_);
            if (auto it = memory_.find(key); it != memory_.end()) {
                ++hits_;
                return it->second;
            }
        }
        const auto path = dir_ / "profiles" / (hex64(fnv1a64(key)) + ".json");
        if (std::filesystem::exists(path)) {
            try {
                const auto j = read_json(path);
                if (j.at("key").get<std::string>() == key && j.at("level").get<std::int64_t>() == level) {
                    auto p = decode_signs(level, j.at("signs").get<std::string>());
                    remember(key, p);
                    ++hits_;
                    return p;
                }
            } catch (const std::exception&) {
                // Fall through and recompute.
            }
        }
        auto p = sign_profile(shape, level);
        write_json(path, Json{{"key", key}, {"level", level}, {"signs", encode_signs(p)}});
        remember(key, p);
        ++misses_;
        return p;
    }

    ProfileSource source() {
        return [this](const TriangleShape& s, std::int64_t level) { return profile(s, level); };
    }

    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }

private:
    static Json read_json(const std::filesystem::path& path) {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        return Json::parse(buf.str());
    }

    // Write to a temporary name and rename, so readers never see partial files.
    void write_json(const std::filesystem::path& path, const Json& j) {
        std::lock_guard lock(write_mutex_);
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            out << j.dump() << "\n";
            if (!out) throw Error("cache: cannot write " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

    void remember(const std::string& key, const SignProfile& p) {
        std::lock_guard lock(mutex_);
        memory_.emplace(key, p);
    }

    std::filesystem::path dir_;
    std::set<std::int64_t> on_disk_;
    std::mutex mutex_, write_mutex_;
    std::map<std::string, SignProfile> memory_;
    std::atomic<std::size_t> hits_{0}, misses_{0};
};

}  // namespace cxta
