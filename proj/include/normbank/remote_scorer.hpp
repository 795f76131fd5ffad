#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normbank/scorer.hpp"

namespace normbank {

struct RemoteConfig {
    std::string endpoint;          // http://host:port
    std::string format = "classic";  // wire format of the encoded inputs
    std::size_t batch_size = 16;   // inputs per request
    std::size_t concurrency = 4;   // max in-flight requests
    int timeout_ms = 10000;        // per request, connect + read
    std::size_t max_retries = 3;   // after the first attempt
    int backoff_base_ms = 100;     // doubled per retry, capped
    int backoff_cap_ms = 2000;
};

// HTTP client for an external inference service speaking the documented JSON
// protocol (POST /v1/judge). Results come back in input order regardless of
// request completion order; requests that still fail after retries surface as
// a TransportError carrying the affected input indices. A schema mismatch is
// a ProtocolError and is not retried.
class RemoteScorer final : public ScorerBackend {
  public:
    explicit RemoteScorer(RemoteConfig cfg);

    Verdict judge(const std::string& encoded_input, Mode mode) override;
    std::vector<Verdict> judge_batch(const std::vector<std::string>& encoded_inputs,
                                     Mode mode) override;
    std::string name() const override { return "remote:" + cfg_.endpoint; }

  private:
    RemoteConfig cfg_;
    std::string host_;
    int port_ = 80;
};

}  // namespace normbank
