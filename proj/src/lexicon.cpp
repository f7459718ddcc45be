#include "ltq/lexicon.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "embedded_data.hpp"
#include "ltq/error.hpp"
#include "ltq/utf8.hpp"

namespace ltq {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    return std::string(s.substr(b, s.find_last_not_of(" \t") - b + 1));
}

std::map<std::string, std::string> parse_header(const std::vector<std::string>& comments) {
    std::map<std::string, std::string> out;
    for (const auto& c : comments) {
        const auto colon = c.find(':');
        if (colon == std::string::npos) continue;
        out[trim(std::string_view(c).substr(1, colon - 1))] = trim(std::string_view(c).substr(colon + 1));
    }
    return out;
}

Lexicon parse_embedded(std::string_view contents, const char* name) {
    std::istringstream in{std::string(contents)};
    return Lexicon::parse(in, name);
}

} // namespace

Lexicon::Lexicon(Language language, LexiconKind kind, MatchMode mode,
                 std::vector<std::string> entries)
    : language_(language), kind_(kind), mode_(mode), entries_(std::move(entries)) {
    if (entries_.empty()) throw ConfigError("entries", "lexicon has no entries");
    std::set<std::string> seen;
    folded_.reserve(entries_.size());
    for (const auto& e : entries_) {
        if (e.empty()) throw ConfigError("entries", "empty lexicon entry");
        auto f = utf8::fold_case(e);
        if (!seen.insert(f).second)
            throw ConfigError("entries", "duplicate entry after case folding: '" + e + "'");
        folded_.push_back(std::move(f));
    }
}

Lexicon Lexicon::parse(std::istream& in, const std::string& origin) {
    std::vector<std::string> comments;
    std::vector<std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#')
            comments.push_back(line);
        else
            entries.push_back(line);
    }
    const auto header = parse_header(comments);
    auto field = [&](const std::string& key) {
        auto it = header.find(key);
        if (it == header.end()) throw ConfigError(origin, "missing '# " + key + ":' header");
        return it->second;
    };

    const auto lang = parse_language(field("language"));
    if (!lang) throw ConfigError(origin, "unknown language '" + field("language") + "'");

    const auto kind_s = field("kind");
    LexiconKind kind;
    if (kind_s == "connectives")
        kind = LexiconKind::connectives;
    else if (kind_s == "pronouns")
        kind = LexiconKind::pronouns;
    else
        throw ConfigError(origin, "unknown kind '" + kind_s + "'");

    const auto mode_s = field("matching");
    MatchMode mode;
    if (mode_s == "substring")
        mode = MatchMode::substring;
    else if (mode_s == "whole_token")
        mode = MatchMode::whole_token;
    else if (mode_s == "longest_match")
        mode = MatchMode::longest_match;
    else
        throw ConfigError(origin, "unknown matching mode '" + mode_s + "'");

    try {
        return Lexicon(*lang, kind, mode, std::move(entries));
    } catch (const ConfigError& e) {
        throw ConfigError(origin, e.what());
    }
}

Lexicon Lexicon::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path, "cannot open lexicon");
    return parse(in, path);
}

const Lexicon& Lexicon::builtin(Language language, LexiconKind kind) {
    static const Lexicon conn_en = parse_embedded(embedded::connectives_en(), "connectives_en");
    static const Lexicon conn_zh = parse_embedded(embedded::connectives_zh(), "connectives_zh");
    static const Lexicon pron_en = parse_embedded(embedded::pronouns_en(), "pronouns_en");
    static const Lexicon pron_zh = parse_embedded(embedded::pronouns_zh(), "pronouns_zh");
    if (kind == LexiconKind::connectives) return language == Language::EN ? conn_en : conn_zh;
    return language == Language::EN ? pron_en : pron_zh;
}

} // namespace ltq
