#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

#include "ltq/coherence.hpp"
#include "ltq/dmr_cohesion.hpp"
#include "ltq/tokenize.hpp"

namespace ltq {

// "http://host[:port][/prefix]". HTTPS is not supported.
struct Endpoint {
    std::string host;
    int port = 80;
    std::string prefix;  // no trailing slash

    static Endpoint parse(std::string_view url);
    std::string path(std::string_view route) const { return prefix + std::string(route); }
};

struct HandshakeInfo {
    std::string tokenizer_name;
    std::int64_t max_context = 0;
    std::string versions;  // raw JSON of the "versions" field
};

// POST {context: [int], target: [int]} to /score, expecting {acc, nll}.
// Non-2xx responses and network failures raise TransportError.
class RemoteLmScorer final : public LmScorer {
public:
    explicit RemoteLmScorer(std::string url, std::chrono::seconds timeout = std::chrono::seconds(300));

    ScoreResult score(std::span<const TokenId> context,
                      std::span<const TokenId> target) const override;

    // GET /handshake.
    HandshakeInfo handshake() const;
    // Throws ConfigError unless the service's tokenizer_name equals `expected`.
    void check_tokenizer(const std::string& expected) const;

private:
    Endpoint endpoint_;
    std::chrono::seconds timeout_;
};

// POST {pairs: [[a, b], ...]} to /pair, expecting {p_no_conn: [number]}.
// Single pairs use {a, b} -> {p_no_conn: number}.
class RemotePairScorer final : public PairScorer {
public:
    explicit RemotePairScorer(std::string url, std::chrono::seconds timeout = std::chrono::seconds(300));

    PairProbability score_pair(std::string_view a, std::string_view b) const override;
    std::vector<PairProbability> score_pairs(std::span<const SentencePair> pairs) const override;

private:
    Endpoint endpoint_;
    std::chrono::seconds timeout_;
};

// POST {text} to /tokenize, expecting {surfaces: [string]} and optionally
// {ids: [int]} parallel to it. Without ids, surfaces are interned per call.
class RemoteTokenizer final : public Tokenizer {
public:
    RemoteTokenizer(std::string url, std::string name,
                    std::chrono::seconds timeout = std::chrono::seconds(300));

    TokenSequence tokenize(std::string_view text) const override;
    std::string name() const override { return name_; }

private:
    Endpoint endpoint_;
    std::string name_;
    std::chrono::seconds timeout_;
};

} // namespace ltq
