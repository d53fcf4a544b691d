#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "zsdiam/core.hpp"

namespace zsdiam {

std::string_view tool_version();

/// One line of the run log.
struct RunRecord {
    static constexpr int kSchemaVersion = 1;

    int schema_version = kSchemaVersion;
    std::string command;
    int s = 0;
    int r = 0;
    std::string mode;
    /// "exact", "lower-bound", "budget-exceeded", "finding", "ok", ...
    std::string status;
    std::optional<int> value;
    std::optional<std::string> counterexample;
    std::uint64_t nodes = 0;
    double elapsed_seconds = 0.0;
    std::string tool_version;
    int symmetry_version = 0;
    std::string timestamp;
    nlohmann::json details = nlohmann::json::object();

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Compact single-line JSON.
std::string serialize(const RunRecord& record);
RunRecord parse_record(std::string_view line);

/// Current UTC time as 2026-01-31T12:00:00Z.
std::string utc_timestamp();

/// Append-only JSONL file guarded by an advisory lock.
class Store {
public:
    explicit Store(std::filesystem::path path);

    /// $ZSDIAM_CACHE, else $XDG_CACHE_HOME/zsdiam/runs.jsonl, else
    /// ~/.cache/zsdiam/runs.jsonl.
    static std::filesystem::path default_path();

    const std::filesystem::path& path() const noexcept { return path_; }

    void append(const RunRecord& record) const;
    /// Every record, oldest first. Lines that fail to parse are skipped.
    std::vector<RunRecord> load() const;

    /// Latest exact compute result for this instance written by this tool
    /// version under the current symmetry rule.
    std::optional<RunRecord> find_exact(int s, int r, const std::string& mode, int symmetry_version) const;

private:
    std::filesystem::path path_;
};

}  // namespace zsdiam
