#pragma once

#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ltq/corpus.hpp"
#include "ltq/metrics.hpp"

namespace ltq {

enum class IntervalMode {
    inside,   // lower <= v < upper
    outside,  // v < lower || v >= upper
};

struct IntervalPredicate {
    MetricName metric = MetricName::cohesion_conn;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    IntervalMode mode = IntervalMode::inside;

    bool passes(double value) const noexcept;
};

struct DomainThresholds {
    std::vector<IntervalPredicate> stage1_holistic;
    std::vector<IntervalPredicate> stage2_chaotic;
};

// Threshold file (JSON):
//   {"domains": {"default": {"stage1_holistic": [{"metric": "...",
//      "lower": 0.1, "upper": null, "mode": "inside"}, ...],
//      "stage2_chaotic": [...]}, "<domain>": {...}}}
// A missing or null bound is unbounded; "-inf"/"inf" strings are accepted.
// "mode" defaults to "inside".
class ThresholdConfig {
public:
    static ThresholdConfig parse(std::istream& in);
    static ThresholdConfig load(const std::string& path);

    // Entry for `domain`, falling back to "default".
    const DomainThresholds& for_domain(const std::string& domain) const;
    const std::map<std::string, DomainThresholds>& domains() const noexcept { return domains_; }

    // Validates and builds; throws ConfigError with the offending path.
    explicit ThresholdConfig(std::map<std::string, DomainThresholds> domains);

private:
    std::map<std::string, DomainThresholds> domains_;
};

inline ThresholdConfig load_thresholds(std::istream& in) { return ThresholdConfig::parse(in); }

// Holistic if every stage-1 predicate passes, else chaotic if every stage-2
// predicate passes, else aggregated. Every metric either stage references
// must be computable; otherwise Error names the metric.
Category classify(const MetricVector& metrics, const std::string& domain,
                  const ThresholdConfig& config);

// Up to k documents whose `metric` lies in [lo, hi), drawn uniformly with a
// fixed seed and returned in input order.
std::vector<ScoredDocument> sample_around(std::span<const ScoredDocument> scored,
                                          MetricName metric, double lo, double hi,
                                          std::size_t k, std::uint64_t seed);

} // namespace ltq
