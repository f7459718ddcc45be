#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace ltq {

enum class MetricName : std::size_t {
    coherence_acc_l,
    coherence_acc_s,
    coherence_diff,
    cohesion_conn,
    cohesion_pron,
    cohesion_dmr,
    complexity_ttr,
    complexity_para,
};

inline constexpr std::size_t kMetricCount = 8;

inline constexpr std::array<MetricName, kMetricCount> kAllMetrics = {
    MetricName::coherence_acc_l, MetricName::coherence_acc_s, MetricName::coherence_diff,
    MetricName::cohesion_conn,   MetricName::cohesion_pron,   MetricName::cohesion_dmr,
    MetricName::complexity_ttr,  MetricName::complexity_para,
};

std::string_view to_string(MetricName m) noexcept;
std::optional<MetricName> parse_metric_name(std::string_view s) noexcept;

// Empty entries mean "not computable" for that document.
struct MetricVector {
    std::array<std::optional<double>, kMetricCount> values{};

    std::optional<double>& operator[](MetricName m) { return values[static_cast<std::size_t>(m)]; }
    const std::optional<double>& operator[](MetricName m) const {
        return values[static_cast<std::size_t>(m)];
    }

    bool operator==(const MetricVector&) const = default;
};

} // namespace ltq
