#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace ribbon {

enum class Outcome { pass, fail, surface_only };

inline const char* to_string(Outcome o) noexcept {
    switch (o) {
        case Outcome::pass: return "pass";
        case Outcome::fail: return "fail";
        case Outcome::surface_only: return "surface-only";
    }
    return "?";
}

/// One checked claim on one instance. A failing entry carries a witness
/// (the offending subset, pair of subsets, or direction) that replays the
/// failure.
struct ReportEntry {
    ReportEntry() = default;
    ReportEntry(std::string claim_id, std::string instance_id, Outcome o = Outcome::pass)
        : claim(std::move(claim_id)), instance(std::move(instance_id)), outcome(o) {}

    std::string claim;
    std::string instance;
    Outcome outcome = Outcome::pass;
    std::size_t checks = 0;
    nlohmann::json witness;
    std::string detail;

    bool failed() const noexcept { return outcome == Outcome::fail; }
};

class VerificationReport {
public:
    void add(ReportEntry e) { entries_.push_back(std::move(e)); }

    void merge(const VerificationReport& other) {
        entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
    }

    const std::vector<ReportEntry>& entries() const noexcept { return entries_; }

    bool passed() const {
        return std::none_of(entries_.begin(), entries_.end(), [](const ReportEntry& e) { return e.failed(); });
    }

    std::vector<ReportEntry> failures() const {
        std::vector<ReportEntry> f;
        std::copy_if(entries_.begin(), entries_.end(), std::back_inserter(f), [](const ReportEntry& e) { return e.failed(); });
        return f;
    }

    std::size_t count(const std::string& claim, Outcome o) const {
        return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [&](const ReportEntry& e) {
            return e.claim == claim && e.outcome == o;
        }));
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& e : entries_) {
            nlohmann::json j{{"claim", e.claim}, {"instance", e.instance}, {"outcome", to_string(e.outcome)}, {"checks", e.checks}};
            if (!e.witness.is_null()) j["witness"] = e.witness;
            if (!e.detail.empty()) j["detail"] = e.detail;
            arr.push_back(std::move(j));
        }
        return {{"passed", passed()}, {"entries", std::move(arr)}};
    }

private:
    std::vector<ReportEntry> entries_;
};

}  // namespace ribbon
