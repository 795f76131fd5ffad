#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace normbank {

inline constexpr const char* kToolVersion = "0.1.0";

// Reproducibility record written next to every command's outputs: the
// command, its seed, and content hashes of every input and output file.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> args;  // normalized flag values
    std::uint64_t seed = 0;
    std::map<std::string, std::string> input_hashes;
    std::map<std::string, std::string> output_hashes;
    std::string started_at;   // UTC ISO-8601
    std::string finished_at;

    void add_input(const std::string& name, const std::string& path);
    void add_output(const std::string& name, const std::string& path);
    void write(const std::string& path) const;
};

std::string hash_file(const std::string& path);
std::string utc_timestamp();

}  // namespace normbank
