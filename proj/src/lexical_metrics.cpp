#include "ltq/lexical_metrics.hpp"

#include <algorithm>
#include <unordered_set>

#include "ltq/error.hpp"
#include "ltq/utf8.hpp"

namespace ltq {

namespace {

std::size_t count_substrings(std::string_view text, const Lexicon& lexicon) {
    const std::string hay = utf8::fold_case(text);
    std::size_t total = 0;
    for (const auto& needle : lexicon.folded()) {
        for (auto pos = hay.find(needle); pos != std::string::npos;
             pos = hay.find(needle, pos + needle.size()))
            ++total;
    }
    return total;
}

std::size_t count_whole_tokens(const TokenSequence& tokens, const Lexicon& lexicon) {
    if (!tokens.surfaces) throw Error("whole-token lexicon matching needs token surfaces");
    const std::unordered_set<std::string> entries(lexicon.folded().begin(),
                                                  lexicon.folded().end());
    return static_cast<std::size_t>(
        std::count_if(tokens.surfaces->begin(), tokens.surfaces->end(),
                      [&](const std::string& s) { return entries.count(utf8::fold_case(s)) > 0; }));
}

std::size_t count_longest_match(std::string_view text, const Lexicon& lexicon) {
    const std::u32string hay = utf8::decode(utf8::fold_case(text));
    std::vector<std::u32string> entries;
    for (const auto& e : lexicon.folded()) entries.push_back(utf8::decode(e));
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });

    std::size_t total = 0;
    std::size_t i = 0;
    while (i < hay.size()) {
        std::size_t advance = 1;
        for (const auto& e : entries) {
            if (hay.compare(i, e.size(), e) == 0) {
                ++total;
                advance = e.size();
                break;
            }
        }
        i += advance;
    }
    return total;
}

std::optional<double> density(std::size_t count, const TokenSequence& tokens) {
    if (tokens.n() == 0) return std::nullopt;
    return static_cast<double>(count) / static_cast<double>(tokens.n());
}

} // namespace

std::size_t count_lexicon_matches(std::string_view text, const TokenSequence& tokens,
                                  const Lexicon& lexicon) {
    switch (lexicon.mode()) {
    case MatchMode::substring: return count_substrings(text, lexicon);
    case MatchMode::whole_token: return count_whole_tokens(tokens, lexicon);
    case MatchMode::longest_match: return count_longest_match(text, lexicon);
    }
    return 0;
}

std::optional<double> cohesion_conn(std::string_view text, const TokenSequence& tokens,
                                    const Lexicon& lexicon) {
    if (lexicon.kind() != LexiconKind::connectives)
        throw Error("cohesion_conn needs a connectives lexicon");
    if (tokens.n() == 0) return std::nullopt;
    return density(count_lexicon_matches(text, tokens, lexicon), tokens);
}

std::optional<double> cohesion_pron(const TokenSequence& tokens, std::string_view text,
                                    const Lexicon& lexicon) {
    if (lexicon.kind() != LexiconKind::pronouns)
        throw Error("cohesion_pron needs a pronouns lexicon");
    if (tokens.n() == 0) return std::nullopt;
    return density(count_lexicon_matches(text, tokens, lexicon), tokens);
}

std::size_t count_unique_tokens(const TokenSequence& tokens) {
    if (tokens.surfaces) {
        std::unordered_set<std::string> seen;
        for (const auto& s : *tokens.surfaces) seen.insert(utf8::fold_case(s));
        return seen.size();
    }
    return std::unordered_set<TokenId>(tokens.tokens.begin(), tokens.tokens.end()).size();
}

std::optional<double> complexity_ttr(const TokenSequence& tokens) {
    return density(count_unique_tokens(tokens), tokens);
}

std::optional<double> complexity_para(const TokenSequence& tokens, ParagraphCount paras) {
    if (tokens.n() == 0 || paras.n_para == 0) return std::nullopt;
    return static_cast<double>(tokens.n()) / static_cast<double>(paras.n_para);
}

} // namespace ltq
