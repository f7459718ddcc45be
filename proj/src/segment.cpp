#include "ltq/segment.hpp"

#include <fstream>
#include <sstream>

#include "embedded_data.hpp"
#include "ltq/error.hpp"
#include "ltq/utf8.hpp"

namespace ltq {

namespace {

bool is_en_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?' || c == U'…'; }

bool is_zh_full_terminator(char32_t c) {
    return c == U'。' || c == U'！' || c == U'？' || c == U'；' || c == U'…';
}

bool is_terminator(char32_t c, Language lang) {
    return lang == Language::EN ? is_en_terminator(c)
                                : (is_zh_full_terminator(c) || is_en_terminator(c));
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\f\v");
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r\f\v") - b + 1);
}

class Splitter {
public:
    Splitter(const std::u32string& cps, Language lang, const AbbreviationList& abbr)
        : cps_(cps), lang_(lang), abbr_(abbr) {}

    std::vector<std::string> run() {
        std::size_t start = 0;
        for (std::size_t i = 0; i < cps_.size(); ++i) {
            if (cps_[i] == U'\n') {
                emit(start, i);
                start = i + 1;
            } else if (ends_sentence(i, start)) {
                emit(start, i + 1);
                start = i + 1;
            }
        }
        emit(start, cps_.size());
        return std::move(out_);
    }

private:
    bool ends_sentence(std::size_t i, std::size_t start) const {
        const char32_t c = cps_[i];
        if (!is_terminator(c, lang_)) return false;
        const bool at_end = i + 1 == cps_.size();
        const char32_t next = at_end ? U'\0' : cps_[i + 1];
        if (!at_end && is_terminator(next, lang_)) return false;
        if (lang_ == Language::ZH && is_zh_full_terminator(c)) return true;
        if (!at_end && !utf8::is_space(next)) return false;
        if (c != U'.' || lang_ != Language::EN) return true;
        return !closes_abbreviation(i, start);
    }

    bool closes_abbreviation(std::size_t dot, std::size_t start) const {
        std::size_t b = dot;
        while (b > start && !utf8::is_space(cps_[b - 1])) --b;
        while (b < dot && !utf8::is_word_char(cps_[b])) ++b;
        if (b == dot) return false;
        std::string word;
        for (std::size_t k = b; k < dot; ++k) utf8::append(word, utf8::fold_case(cps_[k]));
        return abbr_.contains(word);
    }

    void emit(std::size_t begin, std::size_t end) {
        std::size_t b = begin;
        std::size_t e = end;
        while (b < e && utf8::is_space(cps_[b])) ++b;
        while (e > b && utf8::is_space(cps_[e - 1])) --e;
        if (b < e) out_.push_back(utf8::encode(std::u32string_view(cps_).substr(b, e - b)));
    }

    const std::u32string& cps_;
    Language lang_;
    const AbbreviationList& abbr_;
    std::vector<std::string> out_;
};

} // namespace

AbbreviationList AbbreviationList::parse(std::istream& in) {
    std::set<std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        const auto entry = trim(line);
        if (entry.empty() || entry.front() == '#') continue;
        entries.insert(utf8::fold_case(entry));
    }
    return AbbreviationList(std::move(entries));
}

AbbreviationList AbbreviationList::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open abbreviation list");
    return parse(in);
}

const AbbreviationList& AbbreviationList::builtin() {
    static const AbbreviationList list = [] {
        std::istringstream in{std::string(embedded::abbreviations_en())};
        return parse(in);
    }();
    return list;
}

SentenceList split_sentences(std::string_view text, Language language,
                             const AbbreviationList& abbreviations) {
    const std::u32string cps = utf8::decode(text);
    SentenceList out{Splitter(cps, language, abbreviations).run()};
    if (out.sentences.empty()) throw Error("no sentences");
    return out;
}

ParagraphCount split_paragraphs(std::string_view text) {
    ParagraphCount out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto run = text.substr(pos, nl - pos);
        for (char32_t cp : utf8::decode(run)) {
            if (!utf8::is_space(cp)) {
                ++out.n_para;
                break;
            }
        }
        pos = nl + 1;
    }
    if (out.n_para == 0) throw Error("no paragraphs");
    return out;
}

} // namespace ltq
