#include <cstdlib>
#include <fstream>
#include <sstream>

#include "boofdeg/error.hpp"
#include "boofdeg/harness.hpp"

namespace boofdeg {

Cache::Cache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_, std::ios::binary);
    if (!in) return;
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    needs_newline_ = !text.empty() && text.back() != '\n';
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j["key"].is_string() ||
            !j.contains("value")) {
            ++corrupted_;
            continue;
        }
        entries_[j["key"].get<std::string>()] = j["value"];
    }
}

std::unique_ptr<Cache> Cache::from_env() {
    const char* p = std::getenv("BOOFDEG_CACHE");
    if (!p || !*p) return nullptr;
    return std::make_unique<Cache>(p);
}

std::string Cache::key(int n, const std::string& hex, const std::string& measure, const std::string& params) {
    return std::to_string(n) + "|" + hex + "|" + measure + "|" + params;
}

std::optional<nlohmann::json> Cache::lookup(const std::string& key) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        ++misses_;
        return std::nullopt;
    }
    ++hits_;
    return it->second;
}

void Cache::store(const std::string& key, const nlohmann::json& value) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    if (!out) throw Error("cache: cannot write " + path_);
    if (needs_newline_) {
        out << '\n';
        needs_newline_ = false;
    }
    nlohmann::json line;
    line["schema_version"] = kSchemaVersion;
    line["key"] = key;
    line["value"] = value;
    out << line.dump() << '\n';
    out.flush();
    if (!out) throw Error("cache: write failed on " + path_);
    entries_[key] = value;
}

}  // namespace boofdeg
