#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ltq/tokenize.hpp"

namespace ltq {

// Window i (1-based) over a token sequence with window size w:
//   long context  [(i-1)w, (i-1/4)w)
//   short context [(i-1/2)w, (i-1/4)w)
//   target        [(i-1/4)w, iw)
struct WindowSplit {
    std::size_t index = 0;
    std::size_t long_begin = 0;
    std::size_t short_begin = 0;
    std::size_t target_begin = 0;
    std::size_t target_end = 0;

    std::span<const TokenId> long_context(std::span<const TokenId> t) const {
        return t.subspan(long_begin, target_begin - long_begin);
    }
    std::span<const TokenId> short_context(std::span<const TokenId> t) const {
        return t.subspan(short_begin, target_begin - short_begin);
    }
    std::span<const TokenId> target(std::span<const TokenId> t) const {
        return t.subspan(target_begin, target_end - target_begin);
    }
};

inline constexpr std::size_t kDefaultWindow = 4096;

// Returns floor(n/w) windows; the trailing partial window is dropped.
// Throws ConfigError unless w > 0 and w % 4 == 0.
std::vector<WindowSplit> make_windows(std::size_t n, std::size_t w);
inline std::vector<WindowSplit> make_windows(const TokenSequence& seq, std::size_t w) {
    return make_windows(seq.n(), w);
}

struct ScoreResult {
    double mean_top1_acc = 0.0;  // [0, 1]
    double mean_nll = 0.0;       // nats per target token, finite, >= 0
};

// Throws ScorerError(index) when `r` breaks the ScoreResult invariants.
void check_score_result(const ScoreResult& r, std::size_t index);

// Causal LM scoring of `target` given `context`. Implementations must be
// deterministic and safe to call concurrently.
class LmScorer {
public:
    virtual ~LmScorer() = default;
    virtual ScoreResult score(std::span<const TokenId> context,
                              std::span<const TokenId> target) const = 0;
};

// Bigram model estimated from the context alone with add-one smoothing over
// the vocabulary of context and target. Each target position is predicted
// from the token before it; ties in the argmax go to the smaller id.
class StubBigramScorer final : public LmScorer {
public:
    ScoreResult score(std::span<const TokenId> context,
                      std::span<const TokenId> target) const override;
};

enum class DiffSign {
    as_printed,   // (l_long - l_short) / l_long
    improvement,  // (l_short - l_long) / l_long
};

struct CoherenceOptions {
    std::size_t window = kDefaultWindow;
    DiffSign diff_sign = DiffSign::as_printed;
    std::size_t max_in_flight = 1;
};

struct CoherenceMetrics {
    std::optional<double> acc_l;
    std::optional<double> acc_s;
    std::optional<double> diff;
};

struct WindowScores {
    ScoreResult long_ctx;
    ScoreResult short_ctx;
};

// Averages per-window scores in ascending window order. diff is empty when
// any window has zero long-context loss; everything is empty with no windows.
CoherenceMetrics aggregate_windows(std::span<const WindowScores> windows, DiffSign sign);

// Scores every window (up to max_in_flight concurrently) and aggregates.
// Scorer failures surface as ScorerError carrying the 1-based window index.
CoherenceMetrics coherence_metrics(std::span<const TokenId> tokens, const LmScorer& scorer,
                                   const CoherenceOptions& options = {});

} // namespace ltq
