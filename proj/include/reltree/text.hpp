#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace reltree {

/// Longest phrase (in tokens) stored by the gazetteer and the corpus index.
inline constexpr std::size_t kMaxPhraseTokens = 5;

bool is_valid_utf8(std::string_view text);

/// Splits raw text into lowercase tokens. A token is a maximal run of
/// letters/digits; single-character tokens without a digit are dropped.
/// Invalid UTF-8 sequences act as separators.
std::vector<std::string> normalize_text(std::string_view raw);

/// Tokens joined by single spaces, i.e. the canonical phrase form.
std::string join_tokens(const std::vector<std::string>& tokens,
                        std::size_t first = 0,
                        std::size_t count = std::string::npos);

inline std::string normalize_phrase(std::string_view raw) {
  return join_tokens(normalize_text(raw));
}

std::size_t phrase_token_count(std::string_view phrase);

/// Truncates to at most max_chars code points without splitting a sequence.
std::string truncate_utf8(std::string_view text, std::size_t max_chars);

/// Reads every line of a stream, stripping a trailing '\r'.
std::vector<std::string> read_lines(std::istream& in);

}  // namespace reltree
