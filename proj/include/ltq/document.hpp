#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace ltq {

enum class Language { EN, ZH };

std::string_view to_string(Language lang) noexcept;
// Accepts "EN"/"ZH" in any case.
std::optional<Language> parse_language(std::string_view s) noexcept;

struct Document {
    std::string id;
    std::string text;
    std::string domain;  // open-world tag, e.g. "CommonCrawl", "Law"
    Language language = Language::EN;

    std::size_t byte_len() const noexcept { return text.size(); }
};

enum class Category { holistic, aggregated, chaotic };

inline constexpr std::array kAllCategories = {Category::holistic, Category::aggregated,
                                              Category::chaotic};

std::string_view to_string(Category c) noexcept;
std::optional<Category> parse_category(std::string_view s) noexcept;

} // namespace ltq
