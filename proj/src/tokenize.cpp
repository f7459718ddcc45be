#include "ltq/tokenize.hpp"

#include <unordered_map>

#include "ltq/error.hpp"
#include "ltq/remote.hpp"
#include "ltq/utf8.hpp"

namespace ltq {

void TokenizerSpec::validate() const {
    if (kind == TokenizerKind::external && (!endpoint || endpoint->empty()))
        throw ConfigError("tokenizer.endpoint", "required for external tokenizer");
    if (kind == TokenizerKind::builtin_unicode && endpoint)
        throw ConfigError("tokenizer.endpoint", "only valid for external tokenizer");
}

TokenSequence intern_surfaces(std::vector<std::string> surfaces) {
    TokenSequence seq;
    seq.tokens.reserve(surfaces.size());
    std::unordered_map<std::string, TokenId> ids;
    for (const auto& s : surfaces) {
        auto [it, inserted] = ids.try_emplace(s, static_cast<TokenId>(ids.size()));
        seq.tokens.push_back(it->second);
    }
    seq.surfaces = std::move(surfaces);
    return seq;
}

TokenSequence BuiltinTokenizer::tokenize(std::string_view text) const {
    const std::u32string cps = utf8::decode(text);
    std::vector<std::string> surfaces;
    std::string run;
    auto flush = [&] {
        if (!run.empty()) surfaces.push_back(std::exchange(run, {}));
    };
    for (char32_t cp : cps) {
        if (utf8::is_space(cp)) {
            flush();
        } else if (utf8::is_cjk(cp)) {
            flush();
            surfaces.push_back(utf8::encode(std::u32string_view(&cp, 1)));
        } else if (utf8::is_word_char(cp)) {
            utf8::append(run, utf8::fold_case(cp));
        } else {
            flush();
            surfaces.push_back(utf8::encode(std::u32string_view(&cp, 1)));
        }
    }
    flush();
    return intern_surfaces(std::move(surfaces));
}

std::unique_ptr<Tokenizer> make_tokenizer(const TokenizerSpec& spec, std::string name) {
    spec.validate();
    if (spec.kind == TokenizerKind::builtin_unicode) return std::make_unique<BuiltinTokenizer>();
    return std::make_unique<RemoteTokenizer>(*spec.endpoint,
                                             name.empty() ? *spec.endpoint : std::move(name));
}

TokenSequence tokenize(std::string_view text, const TokenizerSpec& spec) {
    return make_tokenizer(spec)->tokenize(text);
}

} // namespace ltq
