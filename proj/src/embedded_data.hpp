#pragma once

#include <string_view>

// Contents of data/ compiled into the library (generated at build time).
namespace ltq::embedded {

std::string_view abbreviations_en();
std::string_view connectives_en();
std::string_view connectives_zh();
std::string_view pronouns_en();
std::string_view pronouns_zh();

} // namespace ltq::embedded
