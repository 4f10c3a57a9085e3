#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace nsvoa {

/// Content-addressed store of emitted command output. Entries are files named by the
/// FNV-1a hash of the canonical key; each records the engine version, the full key, the
/// exit status and the payload. Writes go to a temporary file that is renamed into place,
/// so readers never see partial entries.
class ResultCache {
public:
    static constexpr const char* kVersion = "nsvoa-engine-1";

    struct Entry {
        int exit_code = 0;
        std::string payload;
    };

    /// An empty directory disables the cache. An unusable directory disables it with a warning on `log`.
    ResultCache(const std::filesystem::path& dir, std::ostream& log, std::string version = kVersion);

    bool enabled() const { return enabled_; }
    /// Missing, unreadable, stale-version or colliding entries read as absent.
    std::optional<Entry> load(const std::string& key) const;
    void store(const std::string& key, const Entry& entry);

    static std::uint64_t fnv1a(const std::string& text);
    std::filesystem::path path_for(const std::string& key) const;

private:
    std::filesystem::path dir_;
    std::ostream& log_;
    std::string version_;
    bool enabled_ = false;
};

}  // namespace nsvoa
