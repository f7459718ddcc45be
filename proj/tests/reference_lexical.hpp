#pragma once

// Straight-line reference for the statistics-only metrics, written without
// the library's tokenizer, decoder or matchers. It only understands the
// synthetic alphabet produced by make_synthetic_document(): ASCII letters
// and digits, ASCII punctuation, space/newline, CJK ideographs and the
// fullwidth punctuation listed in kZhPunct.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ltq/document.hpp"

namespace ltq::reference {

struct Counts {
    std::size_t n = 0;
    std::size_t unique = 0;
    std::size_t n_para = 0;
    std::size_t conn = 0;
    std::size_t pron = 0;
};

inline bool ascii_alnum(char32_t c) {
    return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || (c >= U'0' && c <= U'9');
}
inline bool ws(char32_t c) { return c == U' ' || c == U'\n' || c == U'\t'; }
inline char32_t lower(char32_t c) { return (c >= U'A' && c <= U'Z') ? c + 32 : c; }

inline std::u32string lower(std::u32string s) {
    for (auto& c : s) c = lower(c);
    return s;
}

inline std::vector<std::u32string> tokens(const std::u32string& text) {
    std::vector<std::u32string> out;
    std::u32string run;
    for (char32_t c : text) {
        if (ascii_alnum(c)) {
            run.push_back(lower(c));
            continue;
        }
        if (!run.empty()) out.push_back(run), run.clear();
        if (!ws(c)) out.push_back(std::u32string(1, c));
    }
    if (!run.empty()) out.push_back(run);
    return out;
}

inline std::size_t substring_hits(const std::u32string& text, const std::vector<std::u32string>& entries) {
    const auto hay = lower(text);
    std::size_t total = 0;
    for (const auto& raw : entries) {
        const auto e = lower(raw);
        std::size_t i = 0;
        while (i + e.size() <= hay.size()) {
            bool eq = true;
            for (std::size_t k = 0; k < e.size() && eq; ++k) eq = hay[i + k] == e[k];
            if (eq) {
                ++total;
                i += e.size();
            } else {
                ++i;
            }
        }
    }
    return total;
}

inline std::size_t longest_match_hits(const std::u32string& text, const std::vector<std::u32string>& entries) {
    std::size_t total = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t best = 0;
        for (const auto& e : entries)
            if (e.size() > best && text.compare(i, e.size(), e) == 0) best = e.size();
        if (best > 0) ++total;
        i += std::max<std::size_t>(best, 1);
    }
    return total;
}

inline Counts count(const std::u32string& text, Language lang, const std::vector<std::u32string>& conn,
                    const std::vector<std::u32string>& pron) {
    Counts c;
    const auto toks = tokens(text);
    c.n = toks.size();
    c.unique = std::set<std::u32string>(toks.begin(), toks.end()).size();
    bool has_content = false;
    for (char32_t ch : text + U"\n") {
        if (ch == U'\n') {
            c.n_para += has_content ? 1 : 0;
            has_content = false;
        } else if (!ws(ch)) {
            has_content = true;
        }
    }
    c.conn = substring_hits(text, conn);
    if (lang == Language::EN) {
        std::set<std::u32string> p;
        for (const auto& e : pron) p.insert(lower(e));
        c.pron = static_cast<std::size_t>(
            std::count_if(toks.begin(), toks.end(), [&](const auto& t) { return p.count(t) > 0; }));
    } else {
        c.pron = longest_match_hits(text, pron);
    }
    return c;
}

inline const std::u32string kZhPunct = U"。，！？；：";

// Random document over the reference alphabet, salted with lexicon phrases.
inline std::u32string make_synthetic_document(std::mt19937_64& rng, Language lang,
                                              const std::vector<std::u32string>& conn,
                                              const std::vector<std::u32string>& pron,
                                              std::size_t pieces) {
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    static const std::u32string letters = U"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    static const std::u32string punct = U".,;:!?'\"()-";
    static const std::u32string han = U"我们你他她它这那个里彼此您的是在有人大中国文本长度质量数据但而且如果因为所以然后";
    std::u32string out;
    for (std::size_t p = 0; p < pieces; ++p) {
        switch (pick(10)) {
        case 0: case 1: out += conn[pick(conn.size())]; break;
        case 2: case 3: out += pron[pick(pron.size())]; break;
        case 4:
            if (lang == Language::EN) {
                out += punct[pick(punct.size())];
            } else {
                out += kZhPunct[pick(kZhPunct.size())];
            }
            break;
        case 5: out += pick(4) == 0 ? U"\n\n" : U"\n"; break;
        default:
            if (lang == Language::EN) {
                const std::size_t len = 1 + pick(8);
                for (std::size_t k = 0; k < len; ++k) out += letters[pick(letters.size())];
            } else {
                const std::size_t len = 1 + pick(6);
                for (std::size_t k = 0; k < len; ++k) out += han[pick(han.size())];
            }
        }
        if (lang == Language::EN || pick(5) == 0) out += pick(3) == 0 ? U"" : U" ";
    }
    return out;
}

} // namespace ltq::reference
