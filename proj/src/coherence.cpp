#include "ltq/coherence.hpp"

#include <cmath>
#include <map>
#include <set>
#include <string>

#include "ltq/error.hpp"
#include "ltq/parallel.hpp"

namespace ltq {

std::vector<WindowSplit> make_windows(std::size_t n, std::size_t w) {
    if (w == 0 || w % 4 != 0)
        throw ConfigError("window_size", "must be positive and divisible by 4, got " +
                                             std::to_string(w));
    const std::size_t q = w / 4;
    std::vector<WindowSplit> out;
    out.reserve(n / w);
    for (std::size_t i = 1; i <= n / w; ++i) {
        const std::size_t end = i * w;
        out.push_back({.index = i,
                       .long_begin = end - w,
                       .short_begin = end - 2 * q,
                       .target_begin = end - q,
                       .target_end = end});
    }
    return out;
}

void check_score_result(const ScoreResult& r, std::size_t index) {
    if (!(r.mean_top1_acc >= 0.0 && r.mean_top1_acc <= 1.0))
        throw ScorerError(index, "accuracy outside [0, 1]: " + std::to_string(r.mean_top1_acc));
    if (!std::isfinite(r.mean_nll) || r.mean_nll < 0.0)
        throw ScorerError(index, "loss must be finite and non-negative: " +
                                     std::to_string(r.mean_nll));
}

ScoreResult StubBigramScorer::score(std::span<const TokenId> context,
                                    std::span<const TokenId> target) const {
    if (context.empty() || target.empty())
        throw Error("LM scorer requires nonempty context and target");

    std::map<TokenId, std::map<TokenId, std::size_t>> bigrams;
    for (std::size_t k = 1; k < context.size(); ++k) ++bigrams[context[k - 1]][context[k]];

    std::set<TokenId> vocab(context.begin(), context.end());
    vocab.insert(target.begin(), target.end());
    const auto v = static_cast<double>(vocab.size());
    const TokenId smallest = *vocab.begin();

    std::size_t correct = 0;
    double nll = 0.0;
    TokenId prev = context.back();
    for (TokenId actual : target) {
        std::size_t row_total = 0;
        std::size_t actual_count = 0;
        TokenId best = smallest;
        std::size_t best_count = 0;
        if (auto row = bigrams.find(prev); row != bigrams.end()) {
            for (const auto& [next, count] : row->second) {
                row_total += count;
                if (count > best_count) {
                    best = next;
                    best_count = count;
                }
            }
            if (auto it = row->second.find(actual); it != row->second.end())
                actual_count = it->second;
        }
        if (best == actual) ++correct;
        nll -= std::log((static_cast<double>(actual_count) + 1.0) /
                        (static_cast<double>(row_total) + v));
        prev = actual;
    }
    const auto m = static_cast<double>(target.size());
    return {static_cast<double>(correct) / m, nll / m};
}

CoherenceMetrics aggregate_windows(std::span<const WindowScores> windows, DiffSign sign) {
    CoherenceMetrics out;
    if (windows.empty()) return out;
    double acc_l = 0.0;
    double acc_s = 0.0;
    double diff = 0.0;
    bool diff_ok = true;
    for (const auto& w : windows) {
        acc_l += w.long_ctx.mean_top1_acc;
        acc_s += w.short_ctx.mean_top1_acc;
        const double l_long = w.long_ctx.mean_nll;
        const double l_short = w.short_ctx.mean_nll;
        if (l_long == 0.0) {
            diff_ok = false;
            continue;
        }
        diff += (sign == DiffSign::as_printed ? l_long - l_short : l_short - l_long) / l_long;
    }
    const auto count = static_cast<double>(windows.size());
    out.acc_l = acc_l / count;
    out.acc_s = acc_s / count;
    if (diff_ok) out.diff = diff / count;
    return out;
}

CoherenceMetrics coherence_metrics(std::span<const TokenId> tokens, const LmScorer& scorer,
                                   const CoherenceOptions& options) {
    const auto windows = make_windows(tokens.size(), options.window);
    std::vector<WindowScores> scores(windows.size());
    parallel_for(windows.size(), options.max_in_flight, [&](std::size_t k) {
        const auto& w = windows[k];
        try {
            scores[k].long_ctx = scorer.score(w.long_context(tokens), w.target(tokens));
            scores[k].short_ctx = scorer.score(w.short_context(tokens), w.target(tokens));
        } catch (const ScorerError&) {
            throw;
        } catch (const std::exception& e) {
            throw ScorerError(w.index, std::string("window scoring failed: ") + e.what());
        }
        check_score_result(scores[k].long_ctx, w.index);
        check_score_result(scores[k].short_ctx, w.index);
    });
    return aggregate_windows(scores, options.diff_sign);
}

} // namespace ltq
