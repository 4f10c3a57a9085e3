#include "nsvoa/cache.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nsvoa/json_io.hpp"

namespace nsvoa {

ResultCache::ResultCache(const std::filesystem::path& dir, std::ostream& log, std::string version)
    : dir_(dir), log_(log), version_(std::move(version)) {
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        log_ << "warning: cache directory " << dir.string() << " is unusable; cache disabled\n";
        return;
    }
    enabled_ = true;
}

std::uint64_t ResultCache::fnv1a(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::filesystem::path ResultCache::path_for(const std::string& key) const {
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a(version_ + '\n' + key)));
    return dir_ / name;
}

std::optional<ResultCache::Entry> ResultCache::load(const std::string& key) const {
    if (!enabled_) return std::nullopt;
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    try {
        const Json j = Json::parse(in);
        if (j.at("version").get<std::string>() != version_ || j.at("key").get<std::string>() != key) return std::nullopt;
        return Entry{j.at("exit_code").get<int>(), j.at("payload").get<std::string>()};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void ResultCache::store(const std::string& key, const Entry& entry) {
    if (!enabled_) return;
    const std::filesystem::path target = path_for(key);
    std::filesystem::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            log_ << "warning: cannot write cache entry " << tmp.string() << "\n";
            return;
        }
        out << Json{{"version", version_}, {"key", key}, {"exit_code", entry.exit_code}, {"payload", entry.payload}}.dump();
        if (!out) {
            log_ << "warning: cannot write cache entry " << tmp.string() << "\n";
            return;
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        log_ << "warning: cannot install cache entry " << target.string() << ": " << ec.message() << "\n";
        std::filesystem::remove(tmp, ec);
    }
}

}  // namespace nsvoa
