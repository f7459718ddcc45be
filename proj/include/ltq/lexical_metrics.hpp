#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "ltq/lexicon.hpp"
#include "ltq/segment.hpp"
#include "ltq/tokenize.hpp"

namespace ltq {

// Number of lexicon hits in a document under the lexicon's matching mode.
// whole_token needs token surfaces.
std::size_t count_lexicon_matches(std::string_view text, const TokenSequence& tokens,
                                  const Lexicon& lexicon);

// N_conn / n. Empty when n == 0. Throws Error on a non-connective lexicon.
std::optional<double> cohesion_conn(std::string_view text, const TokenSequence& tokens,
                                    const Lexicon& lexicon);

// N_pron / n. Empty when n == 0. Throws Error on a non-pronoun lexicon.
std::optional<double> cohesion_pron(const TokenSequence& tokens, std::string_view text,
                                    const Lexicon& lexicon);

// Distinct tokens (by surface when available, id otherwise).
std::size_t count_unique_tokens(const TokenSequence& tokens);

// N_unique / n. Empty when n == 0.
std::optional<double> complexity_ttr(const TokenSequence& tokens);

// n / N_para. Empty when n == 0 or there are no paragraphs.
std::optional<double> complexity_para(const TokenSequence& tokens, ParagraphCount paras);

} // namespace ltq
