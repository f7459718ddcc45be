#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ltq/segment.hpp"

namespace ltq {

struct PairProbability {
    double p_no_conn = 0.0;  // probability the two sentences are unrelated
};

using SentencePair = std::pair<std::string_view, std::string_view>;

class PairScorer {
public:
    virtual ~PairScorer() = default;
    virtual PairProbability score_pair(std::string_view a, std::string_view b) const = 0;
    // Results in input order. The default scores pairs one at a time.
    virtual std::vector<PairProbability> score_pairs(std::span<const SentencePair> pairs) const;
};

class ConstantPairScorer final : public PairScorer {
public:
    explicit ConstantPairScorer(double p) : p_(p) {}
    PairProbability score_pair(std::string_view, std::string_view) const override { return {p_}; }

private:
    double p_;
};

// p_no_conn = 1 - Jaccard similarity of the lowercase builtin-token sets.
class OverlapPairScorer final : public PairScorer {
public:
    PairProbability score_pair(std::string_view a, std::string_view b) const override;
};

struct DmrOptions {
    std::size_t batch_size = 64;
    std::size_t max_in_flight = 1;
};

// 1 - mean p_no_conn over adjacent sentence pairs. Empty with fewer than two
// sentences. Probabilities outside [0, 1] raise ScorerError with the 0-based
// pair index; they are never clamped.
std::optional<double> cohesion_dmr(const SentenceList& sentences, const PairScorer& scorer,
                                   const DmrOptions& options = {});

} // namespace ltq
