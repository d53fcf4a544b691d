#include "zsdiam/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

namespace zsdiam {

std::string_view tool_version() { return ZSDIAM_VERSION; }

using nlohmann::json;

std::string serialize(const RunRecord& rec) {
    nlohmann::ordered_json j;
    j["schema"] = rec.schema_version;
    j["command"] = rec.command;
    j["s"] = rec.s;
    j["r"] = rec.r;
    j["mode"] = rec.mode;
    j["status"] = rec.status;
    j["value"] = rec.value ? json(*rec.value) : json(nullptr);
    j["counterexample"] = rec.counterexample ? json(*rec.counterexample) : json(nullptr);
    j["nodes"] = rec.nodes;
    j["elapsed"] = rec.elapsed_seconds;
    j["tool_version"] = rec.tool_version;
    j["symmetry_version"] = rec.symmetry_version;
    j["timestamp"] = rec.timestamp;
    j["details"] = rec.details;
    return j.dump();
}

RunRecord parse_record(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw Error(std::string("malformed run record: ") + e.what());
    }
    try {
        RunRecord rec;
        rec.schema_version = j.at("schema").get<int>();
        if (rec.schema_version != RunRecord::kSchemaVersion)
            throw Error("unsupported run record schema " + std::to_string(rec.schema_version));
        rec.command = j.at("command").get<std::string>();
        rec.s = j.at("s").get<int>();
        rec.r = j.at("r").get<int>();
        rec.mode = j.at("mode").get<std::string>();
        rec.status = j.at("status").get<std::string>();
        if (!j.at("value").is_null()) rec.value = j["value"].get<int>();
        if (!j.at("counterexample").is_null()) rec.counterexample = j["counterexample"].get<std::string>();
        rec.nodes = j.at("nodes").get<std::uint64_t>();
        rec.elapsed_seconds = j.at("elapsed").get<double>();
        rec.tool_version = j.at("tool_version").get<std::string>();
        rec.symmetry_version = j.at("symmetry_version").get<int>();
        rec.timestamp = j.at("timestamp").get<std::string>();
        rec.details = j.value("details", json::object());
        return rec;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed run record: ") + e.what());
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Store::Store(std::filesystem::path path) : path_(std::move(path)) {}

std::filesystem::path Store::default_path() {
    if (const char* env = std::getenv("ZSDIAM_CACHE"); env && *env) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "zsdiam" / "runs.jsonl";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "zsdiam" / "runs.jsonl";
    return "zsdiam-runs.jsonl";
}

namespace {

class LockedFd {
public:
    LockedFd(const std::filesystem::path& path, int flags, int lock) : fd_(::open(path.c_str(), flags, 0644)) {
        if (fd_ < 0) return;
        if (::flock(fd_, lock) != 0) {
            ::close(fd_);
            fd_ = -1;
        }
    }
    ~LockedFd() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    LockedFd(const LockedFd&) = delete;
    LockedFd& operator=(const LockedFd&) = delete;

    int fd() const { return fd_; }

private:
    int fd_;
};

}  // namespace

void Store::append(const RunRecord& record) const {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    LockedFd file(path_, O_WRONLY | O_APPEND | O_CREAT, LOCK_EX);
    if (file.fd() < 0) throw Error("cannot open run store " + path_.string());
    const std::string line = serialize(record) + "\n";
    std::size_t written = 0;
    while (written < line.size()) {
        const ssize_t n = ::write(file.fd(), line.data() + written, line.size() - written);
        if (n < 0) throw Error("cannot write run store " + path_.string());
        written += static_cast<std::size_t>(n);
    }
}

std::vector<RunRecord> Store::load() const {
    std::vector<RunRecord> out;
    LockedFd file(path_, O_RDONLY, LOCK_SH);
    if (file.fd() < 0) return out;
    std::string content;
    char buf[1 << 14];
    ssize_t n;
    while ((n = ::read(file.fd(), buf, sizeof buf)) > 0) content.append(buf, static_cast<std::size_t>(n));
    std::istringstream lines(content);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        try {
            out.push_back(parse_record(line));
        } catch (const Error&) {
        }
    }
    return out;
}

std::optional<RunRecord> Store::find_exact(int s, int r, const std::string& mode, int symmetry_version) const {
    std::optional<RunRecord> found;
    for (auto& rec : load()) {
        if (rec.command == "compute" && rec.status == "exact" && rec.value && rec.s == s && rec.r == r &&
            rec.mode == mode && rec.tool_version == tool_version() && rec.symmetry_version == symmetry_version)
            found = std::move(rec);
    }
    return found;
}

}  // namespace zsdiam
