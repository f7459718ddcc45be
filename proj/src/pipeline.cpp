#include "ltq/pipeline.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "ltq/error.hpp"
#include "ltq/lexical_metrics.hpp"
#include "ltq/parallel.hpp"
#include "ltq/remote.hpp"

namespace ltq {

namespace {

using json = nlohmann::json;

std::optional<std::string> opt_string(const json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw ConfigError(path + key, "expected a string");
    return it->get<std::string>();
}

} // namespace

PipelineConfig PipelineConfig::parse(std::istream& in) {
    json root;
    try {
        root = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid config JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("", "top level must be an object");

    static const std::set<std::string> known = {"tokenizer", "lm_endpoint", "pair_endpoint",
                                                "window_size", "diff_sign", "lexicons",
                                                "abbreviations", "thresholds", "jobs", "seed"};
    for (const auto& [k, v] : root.items())
        if (!known.count(k)) throw ConfigError(k, "unknown field");

    PipelineConfig c;
    try {
        if (auto t = root.find("tokenizer"); t != root.end()) {
            const auto kind = t->value("kind", std::string("builtin_unicode"));
            if (kind == "builtin_unicode")
                c.tokenizer.kind = TokenizerKind::builtin_unicode;
            else if (kind == "external")
                c.tokenizer.kind = TokenizerKind::external;
            else
                throw ConfigError("tokenizer.kind", "unknown tokenizer kind \"" + kind + "\"");
            c.tokenizer.endpoint = opt_string(*t, "endpoint", "tokenizer.");
            c.tokenizer_name = opt_string(*t, "name", "tokenizer.").value_or("");
        }
        c.lm_endpoint = opt_string(root, "lm_endpoint", "");
        c.pair_endpoint = opt_string(root, "pair_endpoint", "");
        if (root.contains("window_size")) c.window_size = root["window_size"].get<std::size_t>();
        if (auto d = opt_string(root, "diff_sign", "")) {
            if (*d == "as_printed")
                c.diff_sign = DiffSign::as_printed;
            else if (*d == "improvement")
                c.diff_sign = DiffSign::improvement;
            else
                throw ConfigError("diff_sign", "expected \"as_printed\" or \"improvement\"");
        }
        if (auto l = root.find("lexicons"); l != root.end()) {
            c.connectives_en = opt_string(*l, "connectives_en", "lexicons.");
            c.connectives_zh = opt_string(*l, "connectives_zh", "lexicons.");
            c.pronouns_en = opt_string(*l, "pronouns_en", "lexicons.");
            c.pronouns_zh = opt_string(*l, "pronouns_zh", "lexicons.");
        }
        c.abbreviations = opt_string(root, "abbreviations", "");
        c.thresholds = opt_string(root, "thresholds", "");
        if (root.contains("jobs")) c.jobs = root["jobs"].get<std::size_t>();
        if (root.contains("seed")) c.seed = root["seed"].get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ConfigError("", std::string("bad config value: ") + e.what());
    }
    return c;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config");
    return parse(in);
}

void PipelineConfig::validate() const {
    tokenizer.validate();
    if (window_size == 0 || window_size % 4 != 0)
        throw ConfigError("window_size", "must be positive and divisible by 4");
    if (jobs < 1) throw ConfigError("jobs", "must be at least 1");
    if (stub_lm_scorer == lm_endpoint.has_value())
        throw ConfigError("lm_scorer", "choose exactly one of --stub-lm-scorer and --lm-endpoint");
    if (stub_pair_scorer == pair_endpoint.has_value())
        throw ConfigError("pair_scorer",
                          "choose exactly one of --stub-pair-scorer and --pair-endpoint");
}

Pipeline::Pipeline(const PipelineConfig& config) : config_(config) {
    config_.validate();
    if (config_.tokenizer_name.empty() && config_.tokenizer.kind == TokenizerKind::builtin_unicode)
        config_.tokenizer_name = "builtin_unicode";
    if (config_.tokenizer.kind == TokenizerKind::external && config_.tokenizer_name.empty())
        throw ConfigError("tokenizer.name", "external tokenizers need a declared name");
    tokenizer_ = make_tokenizer(config_.tokenizer, config_.tokenizer_name);

    if (config_.lm_endpoint) {
        auto remote = std::make_unique<RemoteLmScorer>(*config_.lm_endpoint);
        remote->check_tokenizer(tokenizer_->name());
        lm_ = std::move(remote);
    } else {
        lm_ = std::make_unique<StubBigramScorer>();
    }
    if (config_.pair_endpoint)
        pair_ = std::make_unique<RemotePairScorer>(*config_.pair_endpoint);
    else
        pair_ = std::make_unique<OverlapPairScorer>();

    auto load_override = [&](const std::optional<std::string>& path, Language lang, LexiconKind kind) {
        if (!path) return;
        Lexicon lex = Lexicon::load(*path);
        if (lex.language() != lang || lex.kind() != kind)
            throw ConfigError(*path, "lexicon header does not match its slot");
        lexicons_[static_cast<int>(lang)][static_cast<int>(kind)] = std::move(lex);
    };
    load_override(config_.connectives_en, Language::EN, LexiconKind::connectives);
    load_override(config_.connectives_zh, Language::ZH, LexiconKind::connectives);
    load_override(config_.pronouns_en, Language::EN, LexiconKind::pronouns);
    load_override(config_.pronouns_zh, Language::ZH, LexiconKind::pronouns);
    if (config_.abbreviations) abbreviations_ = AbbreviationList::load(*config_.abbreviations);
}

const Lexicon& Pipeline::lexicon(Language lang, LexiconKind kind) const {
    const auto& slot = lexicons_[static_cast<int>(lang)][static_cast<int>(kind)];
    return slot ? *slot : Lexicon::builtin(lang, kind);
}

ScoredDocument Pipeline::score(const Document& doc) const {
    ScoredDocument out;
    out.document = doc;
    auto& m = out.metrics.emplace();

    const TokenSequence tokens = tokenizer_->tokenize(doc.text);
    out.n_tokens = tokens.n();

    m[MetricName::cohesion_conn] =
        cohesion_conn(doc.text, tokens, lexicon(doc.language, LexiconKind::connectives));
    m[MetricName::cohesion_pron] =
        cohesion_pron(tokens, doc.text, lexicon(doc.language, LexiconKind::pronouns));
    m[MetricName::complexity_ttr] = complexity_ttr(tokens);
    if (tokens.n() > 0)
        m[MetricName::complexity_para] = complexity_para(tokens, split_paragraphs(doc.text));

    if (tokens.n() > 0) {
        const auto& abbr = abbreviations_ ? *abbreviations_ : AbbreviationList::builtin();
        m[MetricName::cohesion_dmr] = cohesion_dmr(split_sentences(doc.text, doc.language, abbr), *pair_);
    }

    const auto coh = coherence_metrics(tokens.tokens, *lm_,
                                       {.window = config_.window_size,
                                        .diff_sign = config_.diff_sign,
                                        .max_in_flight = 1});
    m[MetricName::coherence_acc_l] = coh.acc_l;
    m[MetricName::coherence_acc_s] = coh.acc_s;
    m[MetricName::coherence_diff] = coh.diff;
    return out;
}

std::size_t score_stream(std::istream& in, std::ostream& out, const Pipeline& pipeline,
                         std::size_t jobs, RecordPolicy policy) {
    RecordReader reader(in, policy);
    const std::size_t batch_size = std::max<std::size_t>(jobs, 1) * 4;
    std::size_t written = 0;
    std::vector<Document> batch;
    std::vector<ScoredDocument> scored;
    for (bool more = true; more;) {
        batch.clear();
        while (batch.size() < batch_size) {
            auto rec = reader.next();
            if (!rec) {
                more = false;
                break;
            }
            batch.push_back(std::move(rec->document));
        }
        scored.assign(batch.size(), {});
        parallel_for(batch.size(), jobs, [&](std::size_t i) {
            try {
                scored[i] = pipeline.score(batch[i]);
            } catch (const std::exception& e) {
                throw Error("document \"" + batch[i].id + "\": " + e.what());
            }
        });
        written += write_scored(scored, out);
    }
    return written;
}

} // namespace ltq
