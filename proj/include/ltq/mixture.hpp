#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ltq/corpus.hpp"
#include "ltq/stats.hpp"

namespace ltq {

enum class MixtureStrategy {
    all_categories,
    holistic_only,
    holistic_plus_aggregated,
    upsample_aggregated,
};

std::string_view to_string(MixtureStrategy s) noexcept;

// Domain sampling proportions of the LLaMA pre-training mixture.
const std::map<std::string, double>& llama_domain_weights();

struct MixtureRecipe {
    MixtureStrategy strategy = MixtureStrategy::upsample_aggregated;
    // Target EN:ZH token ratio.
    double en_ratio = 9.0;
    double zh_ratio = 1.0;
    // upsample_aggregated only: aggregated / (holistic + aggregated) tokens.
    double aggregated_target_share = 0.5;
    double share_tolerance = 0.02;
    std::uint32_t repeat_cap = 16;
    // Per-language domain weights. An empty map samples the language's pool
    // as a whole, i.e. uniformly over its documents; domains absent from a
    // non-empty map are not sampled.
    std::map<Language, std::map<std::string, double>> domain_weights;
    std::uint64_t total_tokens = 0;
    std::uint64_t seed = 0;

    void validate() const;

    // JSON recipe file; see README for the schema. A language's weights may
    // be the string "llama" to use llama_domain_weights().
    static MixtureRecipe parse(std::istream& in);
    static MixtureRecipe load(const std::string& path);
};

struct ManifestEntry {
    std::string id;
    std::uint32_t repeat_count = 1;
    Language language = Language::EN;
    std::string domain;
    Category category = Category::holistic;
    std::uint64_t n_tokens = 0;
};

struct Manifest {
    std::vector<ManifestEntry> entries;  // in selection order
    MixtureRecipe recipe;
    std::vector<std::string> warnings;
};

// Filters by strategy, splits the budget by language ratio and domain
// weight, then fills each (language, domain[, category]) stratum from a
// seeded shuffle of its documents: one pass without replacement, further
// passes bump repeat counts up to repeat_cap. Rounding overshoot of one
// stratum is deducted from the next so the total stays within one document
// of the budget. A language with positive ratio and no eligible documents
// is an error; shortfalls are recorded as warnings.
Manifest build_manifest(std::span<const ScoredDocument> labeled, const MixtureRecipe& recipe);

// Token totals with each entry counted repeat_count times.
StatsReport summarize_manifest(const Manifest& m);

// Aggregated share of holistic + aggregated tokens; 0 when both are empty.
double aggregated_share(const StatsReport& r);

// One {"id", "repeat_count"} line per entry, then a final {"summary": ...} line.
void write_manifest(const Manifest& m, std::ostream& out);

} // namespace ltq
