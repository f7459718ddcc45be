#include "ltq/dmr_cohesion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ltq/error.hpp"
#include "ltq/parallel.hpp"
#include "ltq/tokenize.hpp"

namespace ltq {

std::vector<PairProbability> PairScorer::score_pairs(std::span<const SentencePair> pairs) const {
    std::vector<PairProbability> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs) out.push_back(score_pair(a, b));
    return out;
}

PairProbability OverlapPairScorer::score_pair(std::string_view a, std::string_view b) const {
    const BuiltinTokenizer tok;
    const auto sa = tok.tokenize(a).surfaces.value();
    const auto sb = tok.tokenize(b).surfaces.value();
    const std::set<std::string> set_a(sa.begin(), sa.end());
    const std::set<std::string> set_b(sb.begin(), sb.end());
    if (set_a.empty() && set_b.empty()) return {0.0};
    std::vector<std::string> common;
    std::set_intersection(set_a.begin(), set_a.end(), set_b.begin(), set_b.end(),
                          std::back_inserter(common));
    const double inter = static_cast<double>(common.size());
    const double uni = static_cast<double>(set_a.size() + set_b.size()) - inter;
    return {1.0 - inter / uni};
}

std::optional<double> cohesion_dmr(const SentenceList& sentences, const PairScorer& scorer,
                                   const DmrOptions& options) {
    const std::size_t n_pairs = sentences.pairs();
    if (n_pairs == 0) return std::nullopt;

    std::vector<SentencePair> pairs;
    pairs.reserve(n_pairs);
    for (std::size_t i = 0; i < n_pairs; ++i)
        pairs.emplace_back(sentences.sentences[i], sentences.sentences[i + 1]);

    const std::size_t batch = std::max<std::size_t>(options.batch_size, 1);
    const std::size_t n_batches = (n_pairs + batch - 1) / batch;
    std::vector<PairProbability> probs(n_pairs);
    parallel_for(n_batches, options.max_in_flight, [&](std::size_t k) {
        const std::size_t begin = k * batch;
        const std::size_t len = std::min(batch, n_pairs - begin);
        std::vector<PairProbability> got;
        try {
            got = scorer.score_pairs(std::span(pairs).subspan(begin, len));
        } catch (const ScorerError&) {
            throw;
        } catch (const std::exception& e) {
            throw ScorerError(begin, std::string("pair scoring failed: ") + e.what());
        }
        if (got.size() != len)
            throw ScorerError(begin, "pair scorer returned " + std::to_string(got.size()) +
                                         " results for " + std::to_string(len) + " pairs");
        std::copy(got.begin(), got.end(), probs.begin() + static_cast<std::ptrdiff_t>(begin));
    });

    double sum = 0.0;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const double p = probs[i].p_no_conn;
        if (!(p >= 0.0 && p <= 1.0))
            throw ScorerError(i, "p_no_conn outside [0, 1]: " + std::to_string(p));
        sum += p;
    }
    return 1.0 - sum / static_cast<double>(n_pairs);
}

} // namespace ltq
