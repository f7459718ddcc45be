#include "ltq/document.hpp"

#include <algorithm>
#include <cctype>

#include "ltq/metrics.hpp"

namespace ltq {

namespace {

bool iequals(std::string_view a, std::string_view b) noexcept {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) ==
               std::tolower(static_cast<unsigned char>(y));
    });
}

constexpr std::array<std::string_view, kMetricCount> kMetricNames = {
    "coherence_acc_l", "coherence_acc_s", "coherence_diff",  "cohesion_conn",
    "cohesion_pron",   "cohesion_dmr",    "complexity_ttr",  "complexity_para",
};

} // namespace

std::string_view to_string(Language lang) noexcept { return lang == Language::EN ? "EN" : "ZH"; }

std::optional<Language> parse_language(std::string_view s) noexcept {
    if (iequals(s, "en")) return Language::EN;
    if (iequals(s, "zh")) return Language::ZH;
    return std::nullopt;
}

std::string_view to_string(Category c) noexcept {
    switch (c) {
    case Category::holistic: return "holistic";
    case Category::aggregated: return "aggregated";
    case Category::chaotic: return "chaotic";
    }
    return "?";
}

std::optional<Category> parse_category(std::string_view s) noexcept {
    for (Category c : kAllCategories)
        if (s == to_string(c)) return c;
    return std::nullopt;
}

std::string_view to_string(MetricName m) noexcept {
    return kMetricNames[static_cast<std::size_t>(m)];
}

std::optional<MetricName> parse_metric_name(std::string_view s) noexcept {
    for (std::size_t i = 0; i < kMetricCount; ++i)
        if (kMetricNames[i] == s) return static_cast<MetricName>(i);
    return std::nullopt;
}

} // namespace ltq
