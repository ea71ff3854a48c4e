#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "json.hpp"

#include "golomb/numtheory.hpp"

namespace golomb {

struct CacheKey {
    i64 v = 0;
    i64 k = 0;
    std::string mode;
    friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

/// One line of the append-only result cache.  Hits require both the key and
/// the tool version to match.
struct CacheRecord {
    CacheKey key;
    std::string version;
    std::string digest;
    nlohmann::ordered_json summary;
};

inline std::string cache_digest(const nlohmann::ordered_json& summary) {
    // FNV-1a over the serialized summary
    std::string s = summary.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline void cache_put(const std::string& path, const CacheRecord& rec) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cache_put: cannot open " + path);
    nlohmann::ordered_json j;
    j["key"] = {{"v", rec.key.v}, {"k", rec.key.k}, {"mode", rec.key.mode}};
    j["version"] = rec.version;
    j["digest"] = rec.digest.empty() ? cache_digest(rec.summary) : rec.digest;
    j["summary"] = rec.summary;
    out << j.dump() << '\n';
}

/// Scans the whole file; the last matching record wins.  Corrupt lines are
/// skipped with a warning on stderr.
inline std::optional<CacheRecord> cache_get(const std::string& path, const CacheKey& key,
                                            const std::string& version) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::optional<CacheRecord> hit;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            auto j = nlohmann::ordered_json::parse(line);
            CacheRecord rec;
            rec.key.v = j.at("key").at("v").get<i64>();
            rec.key.k = j.at("key").at("k").get<i64>();
            rec.key.mode = j.at("key").at("mode").get<std::string>();
            rec.version = j.at("version").get<std::string>();
            rec.digest = j.at("digest").get<std::string>();
            rec.summary = j.at("summary");
            if (cache_digest(rec.summary) != rec.digest) {
                std::cerr << "cache: digest mismatch at " << path << ":" << lineno << ", skipping\n";
                continue;
            }
            if (rec.key == key && rec.version == version) hit = std::move(rec);
        } catch (const std::exception& e) {
            std::cerr << "cache: skipping corrupt line " << path << ":" << lineno << ": "
                      << e.what() << '\n';
        }
    }
    return hit;
}

} // namespace golomb
