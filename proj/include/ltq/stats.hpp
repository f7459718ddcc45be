#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ltq/corpus.hpp"

namespace ltq {

struct Tally {
    std::uint64_t docs = 0;
    std::uint64_t tokens = 0;

    Tally& operator+=(const Tally& o) {
        docs += o.docs;
        tokens += o.tokens;
        return *this;
    }
    bool operator==(const Tally&) const = default;
};

// Token-length bucket edges: [0,4K), [4K,8K), ..., [96K,128K), [128K,inf).
inline const std::vector<std::uint64_t> kDefaultLengthEdges = {
    4096, 8192, 16384, 32768, 49152, 65536, 98304, 131072};

// Index into the buckets defined by `edges` (one more bucket than edges).
std::size_t length_bucket(std::uint64_t n_tokens, std::span<const std::uint64_t> edges);

class StatsReport {
public:
    explicit StatsReport(std::vector<std::uint64_t> length_edges = kDefaultLengthEdges);

    // Adds one document counted `weight` times.
    void add(const std::string& domain, Language language, Category category,
             std::uint64_t n_tokens, std::uint64_t weight = 1);
    void merge(const StatsReport& other);

    const std::map<std::pair<std::string, Category>, Tally>& cells() const noexcept { return cells_; }
    const std::vector<Tally>& buckets() const noexcept { return buckets_; }
    const std::vector<std::uint64_t>& length_edges() const noexcept { return edges_; }

    Tally total() const;
    Tally domain_total(const std::string& domain) const;
    Tally category_total(Category c) const;
    Tally language_total(Language l) const;
    // Fraction of all tokens in category c; 0 for an empty report.
    double token_share(Category c) const;
    double doc_share(Category c) const;

    bool operator==(const StatsReport&) const = default;

private:
    std::vector<std::uint64_t> edges_;
    std::map<std::pair<std::string, Category>, Tally> cells_;
    std::map<Language, Tally> languages_;
    std::vector<Tally> buckets_;
};

// Every document needs a category and n_tokens; otherwise Error names its id.
StatsReport aggregate(std::span<const ScoredDocument> labeled,
                      std::vector<std::uint64_t> length_edges = kDefaultLengthEdges);

void write_report_json(const StatsReport& r, std::ostream& out);
void write_report_text(const StatsReport& r, std::ostream& out);

struct HistogramCounts {
    std::vector<std::uint64_t> bins;  // bin i is [edges[i], edges[i+1])
    std::uint64_t underflow = 0;      // v < edges.front()
    std::uint64_t overflow = 0;       // v >= edges.back()

    std::uint64_t total() const;
    bool operator==(const HistogramCounts&) const = default;
};

struct HistogramData {
    std::string metric;
    std::vector<double> edges;
    HistogramCounts counts;
    // Present when every input carried a category.
    std::optional<std::map<Category, HistogramCounts>> by_category;
};

// Non-finite values are skipped. Throws Error unless edges are strictly
// ascending with at least two entries.
HistogramData histogram(std::span<const double> values, std::vector<double> edges);

// Histogram of one metric over documents; labeled inputs (all with a
// category) also get the per-category breakdown.
HistogramData histogram(std::span<const ScoredDocument> docs, MetricName metric,
                        std::vector<double> edges);

// Comma-separated rows: edge_lo,edge_hi,count[,holistic,aggregated,chaotic],
// with underflow/overflow rows using -inf/inf as the open edge.
void write_histogram_csv(const HistogramData& h, std::ostream& out);

} // namespace ltq
