#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace normbank {

// Caller misuse: bad flags, mismatched lengths, out-of-range parameters.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// A record or line in an input file violates its schema.
struct SchemaError : std::runtime_error {
    SchemaError(std::string file, std::size_t line, const std::string& reason)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + reason),
          file(std::move(file)), line(line) {}
    std::string file;
    std::size_t line = 0;
};

// Strict-grammar parse failure; position is a byte offset into the input.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at offset " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position = 0;
};

// A statement whose judgment head cannot be recognized, so it cannot be negated.
struct UnnegatableError : std::runtime_error {
    explicit UnnegatableError(const std::string& text)
        : std::runtime_error("no recognizable judgment head: " + text) {}
};

struct EmptyJudgmentError : std::runtime_error {
    EmptyJudgmentError() : std::runtime_error("empty judgment text") {}
};

struct EncodingError : std::runtime_error {
    explicit EncodingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Network failure after retries; carries the input indices that never got a verdict.
struct TransportError : std::runtime_error {
    TransportError(const std::string& msg, std::vector<std::size_t> failed)
        : std::runtime_error(msg), failed_indices(std::move(failed)) {}
    std::vector<std::size_t> failed_indices;
};

// The remote endpoint answered, but not in the documented schema.
struct ProtocolError : std::runtime_error {
    explicit ProtocolError(const std::string& msg) : std::runtime_error(msg) {}
};

// A pluggable component (backend, generator) broke its behavioral contract.
struct ContractError : std::runtime_error {
    explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace normbank
