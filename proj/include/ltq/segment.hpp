#pragma once

#include <cstddef>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ltq/document.hpp"

namespace ltq {

struct SentenceList {
    std::vector<std::string> sentences;  // trimmed, never empty

    std::size_t count() const noexcept { return sentences.size(); }
    // N in the adjacent-pair sense: count() - 1, or 0.
    std::size_t pairs() const noexcept { return sentences.empty() ? 0 : sentences.size() - 1; }
};

struct ParagraphCount {
    std::size_t n_para = 0;
};

// Lowercase abbreviations (without their final period) whose period does
// not end an English sentence.
class AbbreviationList {
public:
    AbbreviationList() = default;
    explicit AbbreviationList(std::set<std::string> entries) : entries_(std::move(entries)) {}

    // One entry per line; '#' starts a comment line; surrounding spaces ignored.
    static AbbreviationList parse(std::istream& in);
    static AbbreviationList load(const std::string& path);
    static const AbbreviationList& builtin();

    bool contains(std::string_view lowered) const { return entries_.count(std::string(lowered)) > 0; }
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::set<std::string> entries_;
};

// EN: split after . ! ? … when followed by whitespace or end of text, unless
//     the period closes a listed abbreviation or sits between digits.
// ZH: split after 。！？；… and after . ! ? followed by whitespace or end.
// A terminator directly followed by another terminator defers the split to
// the last one of the run. Newlines always end a sentence.
// Throws Error("no sentences") when the text has no non-space content.
SentenceList split_sentences(std::string_view text, Language language,
                             const AbbreviationList& abbreviations = AbbreviationList::builtin());

// Paragraphs are maximal newline-free runs holding at least one non-space
// character. Throws Error when there are none.
ParagraphCount split_paragraphs(std::string_view text);

} // namespace ltq
