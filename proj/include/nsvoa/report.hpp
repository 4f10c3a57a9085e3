#pragma once

#include <string>
#include <vector>

namespace nsvoa {

/// Outcome of an exhaustive identity check.
struct IdentityReport {
    std::string name;
    long checked = 0;
    std::vector<std::string> failures;  // capped at kMaxFailures entries
    long failure_count = 0;

    static constexpr std::size_t kMaxFailures = 20;

    bool ok() const { return failure_count == 0; }
    void pass() { ++checked; }
    void fail(std::string what) {
        ++checked;
        ++failure_count;
        if (failures.size() < kMaxFailures) failures.push_back(std::move(what));
    }
    void expect(bool cond, const std::string& what) {
        if (cond) pass();
        else fail(what);
    }
    void merge(const IdentityReport& o) {
        checked += o.checked;
        failure_count += o.failure_count;
        for (const auto& f : o.failures)
            if (failures.size() < kMaxFailures) failures.push_back(f);
    }
};

}  // namespace nsvoa
