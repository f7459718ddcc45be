#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ltq/error.hpp"
#include "ltq/lexical_metrics.hpp"
#include "ltq/utf8.hpp"
#include "reference_lexical.hpp"

using namespace ltq;

namespace {

Lexicon lex(LexiconKind kind, MatchMode mode, std::vector<std::string> entries,
            Language lang = Language::EN) {
    return Lexicon(lang, kind, mode, std::move(entries));
}

TokenSequence toks(std::string_view text) { return BuiltinTokenizer{}.tokenize(text); }

std::vector<std::u32string> u32(const std::vector<std::string>& v) {
    std::vector<std::u32string> out;
    for (const auto& s : v) out.push_back(utf8::decode(s));
    return out;
}

} // namespace

TEST_CASE("connective density: hand-counted example") {
    const std::string text = "Firstly, a. Then, b.";
    const auto t = toks(text);
    REQUIRE(t.n() == 8);
    const auto l = lex(LexiconKind::connectives, MatchMode::substring, {"firstly,", "then"});
    CHECK(count_lexicon_matches(text, t, l) == 2);
    CHECK(*cohesion_conn(text, t, l) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("connective density: trailing space is part of the entry") {
    const std::string text = "but but but ";
    const auto l = lex(LexiconKind::connectives, MatchMode::substring, {"but "});
    CHECK(*cohesion_conn(text, toks(text), l) == 1.0);
    // the final "but" has no trailing space here
    CHECK(count_lexicon_matches("but but but", toks("but but but"), l) == 2);
    CHECK(*cohesion_conn("nothing here", toks("nothing here"), l) == 0.0);
}

TEST_CASE("connective entries overlap each other but not themselves") {
    const auto l = lex(LexiconKind::connectives, MatchMode::substring, {"in fact", "fact", "aa"});
    CHECK(count_lexicon_matches("In fact, aaa", toks("In fact, aaa"), l) == 3);
}

TEST_CASE("English pronouns match whole tokens") {
    const auto& l = Lexicon::builtin(Language::EN, LexiconKind::pronouns);
    CHECK(*cohesion_pron(toks("I like it"), "I like it", l) == doctest::Approx(2.0 / 3.0));
    CHECK(*cohesion_pron(toks("item"), "item", l) == 0.0);
    CHECK(*cohesion_pron(toks("THEY told Them"), "THEY told Them", l) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("Chinese pronouns use longest match first") {
    const auto& l = Lexicon::builtin(Language::ZH, LexiconKind::pronouns);
    const std::string text = "我们走了";
    const auto t = toks(text);
    CHECK(count_lexicon_matches(text, t, l) == 1);
    CHECK(*cohesion_pron(t, text, l) == doctest::Approx(0.25));
    CHECK(count_lexicon_matches("这个那个我", toks("这个那个我"), l) == 3);
}

TEST_CASE("zero tokens are not computable") {
    const auto& conn = Lexicon::builtin(Language::EN, LexiconKind::connectives);
    const auto& pron = Lexicon::builtin(Language::EN, LexiconKind::pronouns);
    const auto empty = toks("   ");
    CHECK_FALSE(cohesion_conn("   ", empty, conn));
    CHECK_FALSE(cohesion_pron(empty, "   ", pron));
    CHECK_FALSE(complexity_ttr(empty));
    CHECK_FALSE(complexity_para(empty, {1}));
}

TEST_CASE("kind mismatch is rejected") {
    const auto& conn = Lexicon::builtin(Language::EN, LexiconKind::connectives);
    CHECK_THROWS_AS(cohesion_pron(toks("a"), "a", conn), Error);
}

TEST_CASE("type-token ratio") {
    TokenSequence four = intern_surfaces({"a", "a", "a", "a"});
    CHECK(*complexity_ttr(four) == 0.25);
    CHECK(*complexity_ttr(intern_surfaces({"x", "y", "z"})) == 1.0);
    CHECK(*complexity_ttr(intern_surfaces({"A", "a", "b"})) == doctest::Approx(2.0 / 3.0));
    TokenSequence ids_only{{1, 2, 2, 3}, std::nullopt};
    CHECK(*complexity_ttr(ids_only) == 0.75);
}

TEST_CASE("average paragraph length") {
    TokenSequence t;
    t.tokens.assign(100, 0);
    CHECK(*complexity_para(t, {4}) == 25.0);
    t.tokens.assign(7, 0);
    CHECK(*complexity_para(t, {1}) == 7.0);
    t.tokens.assign(10, 0);
    CHECK(*complexity_para(t, {10}) == 1.0);
}

TEST_CASE("bundled lexicons match the published tables") {
    CHECK(Lexicon::builtin(Language::EN, LexiconKind::connectives).entries().size() == 128);
    CHECK(Lexicon::builtin(Language::ZH, LexiconKind::connectives).entries().size() == 140);
    CHECK(Lexicon::builtin(Language::EN, LexiconKind::pronouns).entries().size() == 39);
    CHECK(Lexicon::builtin(Language::ZH, LexiconKind::pronouns).entries().size() == 20);
    const auto& en = Lexicon::builtin(Language::EN, LexiconKind::connectives).entries();
    CHECK(en.front() == "but ");
    CHECK(std::find(en.begin(), en.end(), "so ") != en.end());
    CHECK(std::find(en.begin(), en.end(), "firstly,") != en.end());
    CHECK(en.back() == "by doing this");
    CHECK(Lexicon::builtin(Language::EN, LexiconKind::pronouns).mode() == MatchMode::whole_token);
    CHECK(Lexicon::builtin(Language::ZH, LexiconKind::pronouns).mode() == MatchMode::longest_match);
    CHECK(Lexicon::builtin(Language::ZH, LexiconKind::connectives).mode() == MatchMode::substring);
}

TEST_CASE("lexicon file parsing") {
    std::istringstream ok("# language: en\n# kind: connectives\n# matching: substring\nbut \n yet\r\n\n");
    const auto l = Lexicon::parse(ok);
    CHECK(l.entries() == std::vector<std::string>{"but ", " yet"});

    std::istringstream dup("# language: en\n# kind: pronouns\n# matching: whole_token\nI\ni\n");
    CHECK_THROWS_AS(Lexicon::parse(dup), ConfigError);
    std::istringstream no_header("but\n");
    CHECK_THROWS_AS(Lexicon::parse(no_header), ConfigError);
    std::istringstream empty("# language: zh\n# kind: pronouns\n# matching: longest_match\n");
    CHECK_THROWS_AS(Lexicon::parse(empty), ConfigError);
    std::istringstream bad_mode("# language: zh\n# kind: pronouns\n# matching: fuzzy\n我\n");
    CHECK_THROWS_AS(Lexicon::parse(bad_mode), ConfigError);
}

TEST_CASE("metric properties on synthetic documents") {
    std::mt19937_64 rng(2024);
    for (Language lang : {Language::EN, Language::ZH}) {
        const auto& conn = Lexicon::builtin(lang, LexiconKind::connectives);
        const auto& pron = Lexicon::builtin(lang, LexiconKind::pronouns);
        for (int iter = 0; iter < 60; ++iter) {
            const std::string text = utf8::encode(reference::make_synthetic_document(
                rng, lang, u32(conn.entries()), u32(pron.entries()), 40));
            const auto t = toks(text);
            if (t.n() == 0) continue;

            // shuffling tokens leaves TTR unchanged
            auto shuffled = *t.surfaces;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            CHECK(*complexity_ttr(intern_surfaces(shuffled)) == *complexity_ttr(t));

            // duplicating the text: densities change by at most seam effects, TTR does not grow
            const std::string twice = text + "\n" + text;
            const auto t2 = toks(twice);
            const double slack = 1.0 / static_cast<double>(t.n());
            CHECK(std::abs(*cohesion_conn(twice, t2, conn) - *cohesion_conn(text, t, conn)) <= slack);
            CHECK(std::abs(*cohesion_pron(t2, twice, pron) - *cohesion_pron(t, text, pron)) <= slack);
            CHECK(*complexity_ttr(t2) <= *complexity_ttr(t));

            if (lang == Language::EN) {
                std::string upper = text;
                std::transform(upper.begin(), upper.end(), upper.begin(),
                               [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
                CHECK(*cohesion_pron(toks(upper), upper, pron) == *cohesion_pron(t, text, pron));
            }
        }
    }
}

TEST_CASE("metrics agree with the straight-line reference") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 100; ++iter) {
        const Language lang = iter % 2 ? Language::ZH : Language::EN;
        const auto& conn = Lexicon::builtin(lang, LexiconKind::connectives);
        const auto& pron = Lexicon::builtin(lang, LexiconKind::pronouns);
        const auto doc =
            reference::make_synthetic_document(rng, lang, u32(conn.entries()), u32(pron.entries()), 60);
        const std::string text = utf8::encode(doc);
        const auto want = reference::count(doc, lang, u32(conn.entries()), u32(pron.entries()));
        const auto t = toks(text);
        CHECK(t.n() == want.n);
        CHECK(count_unique_tokens(t) == want.unique);
        CHECK(count_lexicon_matches(text, t, conn) == want.conn);
        CHECK(count_lexicon_matches(text, t, pron) == want.pron);
        if (want.n_para > 0) CHECK(split_paragraphs(text).n_para == want.n_para);
    }
}
