#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_set>

#include "ltq/document.hpp"
#include "ltq/metrics.hpp"

namespace ltq {

struct ScoredDocument {
    Document document;
    std::optional<MetricVector> metrics;  // set by scoring
    std::optional<std::size_t> n_tokens;  // tokenizer count n, set by scoring
    std::optional<Category> category;     // set by classification only
};

inline constexpr std::size_t kDefaultMinBytes = 32768;

// True iff the text is strictly longer than min_bytes UTF-8 bytes.
inline bool passes_length_gate(const Document& doc, std::size_t min_bytes = kDefaultMinBytes) {
    return doc.byte_len() > min_bytes;
}

enum class RecordPolicy { abort, skip };

// Lazily reads newline-delimited JSON records. Each record needs string
// fields id, text, domain and language; scored records may also carry
// "n_tokens", "category" and metrics either as flat "metrics.<name>" keys
// or as a nested "metrics" object. Blank lines are ignored.
class RecordReader {
public:
    explicit RecordReader(std::istream& in, RecordPolicy policy = RecordPolicy::abort);

    // Next record, or nullopt at end of stream. Under RecordPolicy::abort a
    // malformed record throws RecordError; under skip it is counted and passed.
    std::optional<ScoredDocument> next();

    std::size_t line() const noexcept { return line_; }
    std::size_t skipped() const noexcept { return skipped_; }

private:
    std::istream& in_;
    RecordPolicy policy_;
    std::size_t line_ = 0;
    std::size_t skipped_ = 0;
    std::unordered_set<std::string> seen_ids_;
};

// Parses one record line; throws RecordError tagged with `line`.
ScoredDocument parse_record(std::string_view json_line, std::size_t line);

// One JSON object per line, without a trailing newline.
std::string format_record(const ScoredDocument& doc);

// Writes one line per document in order. Throws Error (mentioning the count
// written so far) when the sink fails.
std::size_t write_scored(std::span<const ScoredDocument> docs, std::ostream& sink);

} // namespace ltq
