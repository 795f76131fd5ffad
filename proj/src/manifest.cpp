#include "normbank/manifest.hpp"

#include <ctime>
#include <fstream>

#include <json.hpp>

#include "normbank/errors.hpp"
#include "normbank/hash.hpp"

namespace normbank {

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot hash missing file: " + path);
    std::uint64_t h = kFnvOffset;
    char buf[8192];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        h = fnv1a(std::string_view(buf, static_cast<std::size_t>(in.gcount())), h);
        if (!in) break;
    }
    return hex64(h);
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void RunManifest::add_input(const std::string& name, const std::string& path) {
    input_hashes[name] = hash_file(path);
}

void RunManifest::add_output(const std::string& name, const std::string& path) {
    output_hashes[name] = hash_file(path);
}

void RunManifest::write(const std::string& path) const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["args"] = args;
    j["seed"] = seed;
    j["input_hashes"] = input_hashes;
    j["output_hashes"] = output_hashes;
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write manifest: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace normbank
