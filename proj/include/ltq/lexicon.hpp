#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "ltq/document.hpp"

namespace ltq {

enum class LexiconKind { connectives, pronouns };

enum class MatchMode {
    substring,      // case-insensitive, non-overlapping, counted per entry
    whole_token,    // lowercase token surface equals the entry
    longest_match,  // left-to-right scan, longest entry at each position wins
};

// Word list behind a density metric. File format: UTF-8, one entry per line
// with leading/trailing spaces kept verbatim; lines starting with '#' are
// comments, and the header comments "# language: en|zh",
// "# kind: connectives|pronouns" and "# matching: substring|whole_token|
// longest_match" are required.
class Lexicon {
public:
    Lexicon(Language language, LexiconKind kind, MatchMode mode, std::vector<std::string> entries);

    static Lexicon parse(std::istream& in, const std::string& origin = "<lexicon>");
    static Lexicon load(const std::string& path);
    static const Lexicon& builtin(Language language, LexiconKind kind);

    Language language() const noexcept { return language_; }
    LexiconKind kind() const noexcept { return kind_; }
    MatchMode mode() const noexcept { return mode_; }
    // Entries as given in the file.
    const std::vector<std::string>& entries() const noexcept { return entries_; }
    // Case-folded entries, parallel to entries().
    const std::vector<std::string>& folded() const noexcept { return folded_; }

private:
    Language language_;
    LexiconKind kind_;
    MatchMode mode_;
    std::vector<std::string> entries_;
    std::vector<std::string> folded_;
};

} // namespace ltq
