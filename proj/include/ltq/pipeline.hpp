#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>

#include "ltq/coherence.hpp"
#include "ltq/corpus.hpp"
#include "ltq/dmr_cohesion.hpp"
#include "ltq/lexicon.hpp"
#include "ltq/segment.hpp"
#include "ltq/tokenize.hpp"

namespace ltq {

struct PipelineConfig {
    TokenizerSpec tokenizer;
    std::string tokenizer_name;  // defaults to "builtin_unicode" for the builtin tokenizer
    bool stub_lm_scorer = false;
    std::optional<std::string> lm_endpoint;
    bool stub_pair_scorer = false;
    std::optional<std::string> pair_endpoint;
    std::size_t window_size = kDefaultWindow;
    DiffSign diff_sign = DiffSign::as_printed;
    // Overrides for the bundled lexicons / abbreviation list.
    std::optional<std::string> connectives_en, connectives_zh, pronouns_en, pronouns_zh;
    std::optional<std::string> abbreviations;
    std::optional<std::string> thresholds;
    std::size_t jobs = 1;
    std::optional<std::uint64_t> seed;

    // Loads the JSON config file format described in the README. Stub
    // scorers cannot be enabled from a file.
    static PipelineConfig parse(std::istream& in);
    static PipelineConfig load(const std::string& path);

    void validate() const;
};

// Everything needed to score one document; immutable and shareable
// across worker threads once built.
class Pipeline {
public:
    // Builds tokenizer, scorers and lexicons; performs the LM handshake when
    // a remote LM scorer is configured.
    explicit Pipeline(const PipelineConfig& config);

    // Fills the eight metrics and n_tokens; metrics that cannot be computed
    // for this document stay empty.
    ScoredDocument score(const Document& doc) const;

    const Tokenizer& tokenizer() const { return *tokenizer_; }

private:
    const Lexicon& lexicon(Language lang, LexiconKind kind) const;

    PipelineConfig config_;
    std::unique_ptr<Tokenizer> tokenizer_;
    std::unique_ptr<LmScorer> lm_;
    std::unique_ptr<PairScorer> pair_;
    std::optional<Lexicon> lexicons_[2][2];
    std::optional<AbbreviationList> abbreviations_;
};

// Reads records, scores them on config.jobs workers in bounded batches and
// writes them in input order. Returns the number of records written.
std::size_t score_stream(std::istream& in, std::ostream& out, const Pipeline& pipeline,
                         std::size_t jobs, RecordPolicy policy = RecordPolicy::abort);

} // namespace ltq
