// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "ltq/classify.hpp"
#include "ltq/coherence.hpp"
#include "ltq/corpus.hpp"
#include "ltq/dmr_cohesion.hpp"
#include "ltq/error.hpp"
#include "ltq/lexical_metrics.hpp"
#include "ltq/mixture.hpp"
#include "ltq/pipeline.hpp"
#include "ltq/stats.hpp"
#include "ltq/utf8.hpp"
#include "reference_lexical.hpp"
#include "synthetic_pool.hpp"

using namespace ltq;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    std::string why;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool rel_close(double got, double want, double tol) {
    if (want == 0.0) return got == 0.0;
    return std::abs(got - want) <= tol * std::abs(want);
}

std::vector<std::u32string> u32(const std::vector<std::string>& v) {
    std::vector<std::u32string> out;
    for (const auto& s : v) out.push_back(utf8::decode(s));
    return out;
}

Check lexical_oracle() {
    Check c;
    const auto t0 = Clock::now();
    PipelineConfig cfg;
    cfg.stub_lm_scorer = cfg.stub_pair_scorer = true;
    const Pipeline pipeline(cfg);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const Language lang = rng() % 2 ? Language::EN : Language::ZH;
        const auto& conn = Lexicon::builtin(lang, LexiconKind::connectives);
        const auto& pron = Lexicon::builtin(lang, LexiconKind::pronouns);
        const auto text32 = reference::make_synthetic_document(rng, lang, u32(conn.entries()),
                                                               u32(pron.entries()), 200 + rng() % 800);
        const auto want = reference::count(text32, lang, u32(conn.entries()), u32(pron.entries()));
        const Document doc{"doc" + std::to_string(i), utf8::encode(text32), "Synthetic", lang};
        const auto tokens = BuiltinTokenizer{}.tokenize(doc.text);
        const std::string at = " (document " + doc.id + ")";

        c.expect(tokens.n() == want.n, "token count" + at);
        c.expect(count_unique_tokens(tokens) == want.unique, "unique count" + at);
        c.expect(count_lexicon_matches(doc.text, tokens, conn) == want.conn, "connective count" + at);
        c.expect(count_lexicon_matches(doc.text, tokens, pron) == want.pron, "pronoun count" + at);
        c.expect(split_paragraphs(doc.text).n_para == want.n_para, "paragraph count" + at);
        if (want.n == 0 || want.n_para == 0) continue;

        const auto scored = pipeline.score(doc);
        const auto& m = *scored.metrics;
        const double n = static_cast<double>(want.n);
        c.expect(scored.n_tokens == want.n, "n_tokens" + at);
        c.expect(rel_close(*m[MetricName::cohesion_conn], want.conn / n, 1e-12), "cohesion_conn" + at);
        c.expect(rel_close(*m[MetricName::cohesion_pron], want.pron / n, 1e-12), "cohesion_pron" + at);
        c.expect(rel_close(*m[MetricName::complexity_ttr], want.unique / n, 1e-12), "complexity_ttr" + at);
        c.expect(rel_close(*m[MetricName::complexity_para], n / static_cast<double>(want.n_para), 1e-12),
                 "complexity_para" + at);
    }
    const double t = seconds_since(t0);
    c.expect(t < 10.0, "runtime " + std::to_string(t) + " s");
    return c;
}

// Scores depend on the target only.
class ContextBlindScorer final : public LmScorer {
public:
    ScoreResult score(std::span<const TokenId>, std::span<const TokenId> target) const override {
        std::size_t hits = 0;
        double nll = 0.0;
        for (TokenId t : target) {
            hits += t % 2;
            nll += 1.0 + static_cast<double>(t % 5);
        }
        const auto m = static_cast<double>(target.size());
        return {static_cast<double>(hits) / m, nll / m};
    }
};

Check window_algebra() {
    Check c;
    std::mt19937_64 rng(2);
    for (std::size_t w : {std::size_t{8}, std::size_t{4096}}) {
        for (std::size_t n : {w - 1, w, 3 * w, 3 * w + 5}) {
            const std::string at = " (w=" + std::to_string(w) + ", n=" + std::to_string(n) + ")";
            std::vector<TokenId> tokens(n);
            for (auto& t : tokens) t = static_cast<TokenId>(rng() % 1000);
            const std::span<const TokenId> all(tokens);
            const auto windows = make_windows(n, w);
            c.expect(windows.size() == n / w, "window count" + at);
            for (const auto& win : windows) {
                const auto xl = win.long_context(all), xs = win.short_context(all), y = win.target(all);
                c.expect(xl.size() == 3 * w / 4, "|x_l|" + at);
                c.expect(xs.size() == w / 4, "|x_s|" + at);
                c.expect(y.size() == w / 4, "|y|" + at);
                c.expect(xs.data() + xs.size() == xl.data() + xl.size(), "x_s is a suffix of x_l" + at);
                c.expect(y.data() == xl.data() + xl.size(), "y follows x_l" + at);
                c.expect(win.long_begin == (win.index - 1) * w, "window start" + at);
            }
            const auto m = coherence_metrics(tokens, ContextBlindScorer{}, {.window = w});
            if (windows.empty()) {
                c.expect(!m.acc_l && !m.acc_s && !m.diff, "no windows gives no metrics" + at);
            } else {
                c.expect(*m.acc_l == *m.acc_s, "acc_l == acc_s" + at);
                c.expect(*m.diff == 0.0, "diff == 0" + at);
            }
        }
    }
    return c;
}

Check diff_arithmetic() {
    Check c;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> loss(0.01, 8.0), acc(0.0, 1.0);
    for (int iter = 0; iter < 1000; ++iter) {
        std::vector<WindowScores> w(1 + rng() % 16);
        double hand = 0.0;
        for (auto& s : w) {
            s = {{acc(rng), loss(rng)}, {acc(rng), loss(rng)}};
            hand += (s.long_ctx.mean_nll - s.short_ctx.mean_nll) / s.long_ctx.mean_nll;
        }
        hand /= static_cast<double>(w.size());
        const auto printed = aggregate_windows(w, DiffSign::as_printed);
        const auto improved = aggregate_windows(w, DiffSign::improvement);
        c.expect(std::abs(*printed.diff - hand) <= 1e-12, "as_printed diff");
        c.expect(std::abs(*improved.diff + hand) <= 1e-12, "improvement diff");
        c.expect(*improved.acc_l == *printed.acc_l && *improved.acc_s == *printed.acc_s,
                 "sign flag leaves accuracies unchanged");
    }
    return c;
}

class InjectedPairs final : public PairScorer {
public:
    explicit InjectedPairs(std::vector<double> p) : p_(std::move(p)) {}
    PairProbability score_pair(std::string_view a, std::string_view) const override {
        return {p_.at(std::stoul(std::string(a)))};
    }

private:
    std::vector<double> p_;
};

Check dmr_cohesion() {
    Check c;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t n : {1, 2, 10}) {
        for (int iter = 0; iter < 100; ++iter) {
            std::vector<double> p(n);
            double sum = 0.0;
            for (auto& x : p) sum += (x = unit(rng));
            SentenceList s;
            for (std::size_t i = 0; i <= n; ++i) s.sentences.push_back(std::to_string(i));
            const double got = *cohesion_dmr(s, InjectedPairs(p));
            c.expect(std::abs(got - (1.0 - sum / static_cast<double>(n))) <= 1e-12,
                     "1 - mean(p) for N=" + std::to_string(n));
        }
        SentenceList s;
        for (std::size_t i = 0; i <= n; ++i) s.sentences.push_back(std::to_string(i));
        for (double bad : {-1e-9, 1.0 + 1e-9, std::nan("")}) {
            std::vector<double> p(n, 0.5);
            p.back() = bad;
            bool rejected = false;
            try {
                cohesion_dmr(s, InjectedPairs(p));
            } catch (const ScorerError&) {
                rejected = true;
            }
            c.expect(rejected, "out-of-range probability rejected for N=" + std::to_string(n));
        }
    }
    return c;
}

Check classification() {
    Check c;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(-0.2, 1.2);
    auto stage = [&] {
        std::vector<IntervalPredicate> s(1 + rng() % 4);
        for (auto& p : s) {
            p.metric = kAllMetrics[rng() % kAllMetrics.size()];
            double a = unit(rng), b = unit(rng);
            if (a > b) std::swap(a, b);
            p.lower = rng() % 6 == 0 ? -inf : a;
            p.upper = rng() % 6 == 0 ? inf : b;
            p.mode = rng() % 3 == 0 ? IntervalMode::outside : IntervalMode::inside;
        }
        return s;
    };
    int counts[3] = {0, 0, 0};
    for (int iter = 0; iter < 10000; ++iter) {
        const DomainThresholds d{stage(), stage()};
        const ThresholdConfig cfg({{"default", d}});
        MetricVector m;
        for (auto name : kAllMetrics) m[name] = unit(rng);
        // land some values exactly on a bound
        if (rng() % 4 == 0) {
            const auto& p = d.stage1_holistic[rng() % d.stage1_holistic.size()];
            if (std::isfinite(p.lower)) m[p.metric] = p.lower;
        }
        const Category got = classify(m, "any", cfg);
        const int idx = static_cast<int>(got);
        c.expect(idx >= 0 && idx < 3, "category out of range");
        ++counts[idx];
        const bool s1 = std::all_of(d.stage1_holistic.begin(), d.stage1_holistic.end(),
                                    [&](const auto& p) { return p.passes(*m[p.metric]); });
        const bool s2 = std::all_of(d.stage2_chaotic.begin(), d.stage2_chaotic.end(),
                                    [&](const auto& p) { return p.passes(*m[p.metric]); });
        c.expect(!s1 || got == Category::holistic, "stage-1 pass must be holistic");
        c.expect(got == (s1 ? Category::holistic : s2 ? Category::chaotic : Category::aggregated),
                 "category matches the two-stage rule");
    }
    c.expect(counts[0] > 0 && counts[1] > 0 && counts[2] > 0, "all categories exercised");

    for (double lo : {-1.5, 0.0, 0.05, 0.3333333333333333}) {
        const double hi = lo + 0.25;
        const IntervalPredicate in{MetricName::complexity_ttr, lo, hi, IntervalMode::inside};
        c.expect(in.passes(lo), "value at lower passes");
        c.expect(!in.passes(hi), "value at upper fails");
        DomainThresholds d{{in}, {{MetricName::complexity_ttr, -inf, inf, IntervalMode::inside}}};
        const ThresholdConfig cfg({{"default", d}});
        MetricVector m;
        for (auto name : kAllMetrics) m[name] = 0.0;
        m[MetricName::complexity_ttr] = lo;
        c.expect(classify(m, "x", cfg) == Category::holistic, "classify at lower");
        m[MetricName::complexity_ttr] = hi;
        c.expect(classify(m, "x", cfg) == Category::chaotic, "classify at upper");
    }
    return c;
}

Check byte_gate() {
    Check c;
    auto line = [](std::size_t bytes, const char* id) {
        return std::string(R"({"id":")") + id + R"(","domain":"C4","language":"EN","text":")" +
               std::string(bytes, 'x') + "\"}\n";
    };
    std::istringstream in(line(32768, "at") + line(32769, "over"));
    RecordReader reader(in);
    std::vector<std::string> kept;
    while (auto r = reader.next())
        if (passes_length_gate(r->document)) kept.push_back(r->document.id);
    c.expect(kept == std::vector<std::string>{"over"}, "32768 excluded, 32769 included");
    Document zh{"z", std::string(), "Law", Language::ZH};
    for (int i = 0; i < 10923; ++i) zh.text += "文";  // 32769 bytes
    c.expect(zh.byte_len() == 32769 && passes_length_gate(zh), "multibyte text counted in bytes");
    zh.text.resize(32768);
    c.expect(!passes_length_gate(zh), "32768 bytes excluded");
    return c;
}

std::string manifest_bytes(std::span<const ScoredDocument> pool, const MixtureRecipe& r) {
    std::ostringstream out;
    write_manifest(build_manifest(pool, r), out);
    return out.str();
}

Check mixture() {
    Check c;
    const auto pool = testing::synthetic_pool(10000, 7);
    {
        double tok[3] = {0, 0, 0}, all = 0;
        for (const auto& d : pool) tok[static_cast<int>(*d.category)] += *d.n_tokens, all += *d.n_tokens;
        c.expect(std::abs(tok[0] / all - 0.857) < 0.01 && std::abs(tok[1] / all - 0.136) < 0.01 &&
                     std::abs(tok[2] / all - 0.007) < 0.005,
                 "pool category shares near 85.7/13.6/0.7");
    }
    const auto t0 = Clock::now();
    MixtureRecipe base;
    base.total_tokens = 100'000'000;
    base.seed = 2024;
    for (auto s : {MixtureStrategy::holistic_only, MixtureStrategy::holistic_plus_aggregated,
                   MixtureStrategy::upsample_aggregated}) {
        auto r = base;
        r.strategy = s;
        const auto m = build_manifest(pool, r);
        const auto stats = summarize_manifest(m);
        const std::string name(to_string(s));
        c.expect(stats.category_total(Category::chaotic).tokens == 0, name + " emits chaotic tokens");
        for (const auto& e : m.entries)
            c.expect(e.category != Category::chaotic, name + " manifest lists a chaotic id");
        const double en = static_cast<double>(stats.language_total(Language::EN).tokens);
        const double zh = static_cast<double>(stats.language_total(Language::ZH).tokens);
        c.expect(std::abs(en / zh / 9.0 - 1.0) <= 0.02, name + " EN:ZH " + std::to_string(en / zh));
        if (s == MixtureStrategy::upsample_aggregated) {
            const double share = aggregated_share(stats);
            c.expect(std::abs(share - 0.5) <= 0.02, "aggregated share " + std::to_string(share));
        }
    }
    auto up = base;
    up.strategy = MixtureStrategy::upsample_aggregated;
    const auto a = manifest_bytes(pool, up);
    c.expect(a == manifest_bytes(pool, up), "manifest not byte-identical under the same seed");
    const double t = seconds_since(t0);
    c.expect(t < 5.0, "runtime " + std::to_string(t) + " s");
    return c;
}

Check stats_conservation() {
    Check c;
    std::mt19937_64 rng(8);
    const std::vector<std::string> domains = {"CommonCrawl", "C4", "ArXiv", "Law", "Patent", "Book"};
    std::vector<ScoredDocument> docs;
    std::uint64_t tokens = 0;
    for (int i = 0; i < 1000; ++i) {
        ScoredDocument d;
        d.document = {"s" + std::to_string(i), "", domains[rng() % domains.size()],
                      rng() % 2 ? Language::EN : Language::ZH};
        d.category = kAllCategories[rng() % 3];
        d.n_tokens = i == 0 ? 9000 : rng() % 300000;
        tokens += *d.n_tokens;
        docs.push_back(d);
    }
    const auto r = aggregate(docs);
    std::uint64_t bucket_docs = 0, cell_tokens = 0, cell_docs = 0;
    for (const auto& b : r.buckets()) bucket_docs += b.docs;
    for (const auto& [k, v] : r.cells()) cell_tokens += v.tokens, cell_docs += v.docs;
    c.expect(bucket_docs == 1000, "bucket doc counts sum to total docs");
    c.expect(cell_tokens == tokens, "domain x category tokens sum to total tokens");
    c.expect(cell_docs == 1000, "domain x category docs sum to total docs");
    c.expect(r.total() == Tally{1000, tokens}, "report totals");
    const std::size_t b = length_bucket(9000, r.length_edges());
    c.expect(b == 2 && r.length_edges()[1] == 8192 && r.length_edges()[2] == 16384,
             "9000-token document in [8K,16K)");
    return c;
}

std::string end_to_end(const std::string& corpus, std::size_t jobs) {
    PipelineConfig cfg;
    cfg.stub_lm_scorer = cfg.stub_pair_scorer = true;
    cfg.window_size = 64;
    const Pipeline pipeline(cfg);
    std::istringstream in(corpus);
    std::ostringstream scored;
    score_stream(in, scored, pipeline, jobs, RecordPolicy::abort);

    std::istringstream thr(R"({"domains": {"default": {
        "stage1_holistic": [{"metric": "coherence_diff", "lower": 0.16}],
        "stage2_chaotic": [{"metric": "complexity_ttr", "lower": 0.05, "upper": 0.8, "mode": "outside"}]}}})");
    const auto thresholds = ThresholdConfig::parse(thr);
    std::istringstream scored_in(scored.str());
    RecordReader reader(scored_in);
    std::vector<ScoredDocument> labeled;
    while (auto r = reader.next()) {
        r->category = classify(*r->metrics, r->document.domain, thresholds);
        labeled.push_back(std::move(*r));
    }
    std::ostringstream labeled_out;
    write_scored(labeled, labeled_out);

    MixtureRecipe recipe;
    recipe.strategy = MixtureStrategy::holistic_plus_aggregated;
    recipe.total_tokens = 20000;
    recipe.seed = 99;
    std::ostringstream manifest;
    write_manifest(build_manifest(labeled, recipe), manifest);
    return scored.str() + labeled_out.str() + manifest.str();
}

Check determinism() {
    Check c;
    std::mt19937_64 rng(9);
    std::string corpus;
    for (int i = 0; i < 60; ++i) {
        const Language lang = i % 4 == 0 ? Language::ZH : Language::EN;
        const auto& conn = Lexicon::builtin(lang, LexiconKind::connectives);
        const auto& pron = Lexicon::builtin(lang, LexiconKind::pronouns);
        const auto text = reference::make_synthetic_document(rng, lang, u32(conn.entries()),
                                                             u32(pron.entries()), 100 + rng() % 300);
        ScoredDocument d;
        d.document = {"e2e-" + std::to_string(i), utf8::encode(text), i % 3 ? "C4" : "Book", lang};
        corpus += format_record(d) + "\n";
    }
    const auto first = end_to_end(corpus, 1);
    c.expect(first == end_to_end(corpus, 1), "second run differs");
    c.expect(first == end_to_end(corpus, 4), "run with 4 workers differs");
    return c;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"1 lexical metrics match the brute-force reference", lexical_oracle},
        {"2 coherence window algebra", window_algebra},
        {"3 coherence diff arithmetic and sign flag", diff_arithmetic},
        {"4 DMR cohesion equals 1 - mean(p)", dmr_cohesion},
        {"5 classification partition and precedence", classification},
        {"6 strict 32K byte gate", byte_gate},
        {"7 mixture strategies, shares and determinism", mixture},
        {"8 stats conservation and length buckets", stats_conservation},
        {"9 end-to-end determinism", determinism},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Check c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.ok = false;
            c.why = std::string("exception: ") + e.what();
        }
        std::cout << (c.ok ? "PASS" : "FAIL") << "  criterion " << name;
        if (!c.ok) std::cout << "  [" << c.why << "]";
        std::cout << '\n';
        failed += !c.ok;
    }
    return failed ? 1 : 0;
}
