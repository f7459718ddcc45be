#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ltq {

using TokenId = std::uint32_t;

struct TokenSequence {
    std::vector<TokenId> tokens;
    // Parallel to `tokens` when present. The builtin tokenizer lowercases
    // letter runs here; the source text itself is never modified.
    std::optional<std::vector<std::string>> surfaces;

    std::size_t n() const noexcept { return tokens.size(); }
};

enum class TokenizerKind { builtin_unicode, external };

struct TokenizerSpec {
    TokenizerKind kind = TokenizerKind::builtin_unicode;
    std::optional<std::string> endpoint;  // required iff kind == external

    void validate() const;
};

class Tokenizer {
public:
    virtual ~Tokenizer() = default;
    virtual TokenSequence tokenize(std::string_view text) const = 0;
    // Name checked against the LM scorer handshake.
    virtual std::string name() const = 0;
};

// Runs of letters/digits form one token, each CJK character is its own token,
// every other non-space character is its own token, whitespace is dropped.
// Ids are interned by first appearance within the call.
class BuiltinTokenizer final : public Tokenizer {
public:
    TokenSequence tokenize(std::string_view text) const override;
    std::string name() const override { return "builtin_unicode"; }
};

// Assigns per-document ids to surfaces by first appearance.
TokenSequence intern_surfaces(std::vector<std::string> surfaces);

// External tokenizers are served over HTTP (see remote.hpp); `name` is the
// tokenizer name the deployment declares for the scorer handshake.
std::unique_ptr<Tokenizer> make_tokenizer(const TokenizerSpec& spec,
                                          std::string name = {});

TokenSequence tokenize(std::string_view text, const TokenizerSpec& spec);

} // namespace ltq
