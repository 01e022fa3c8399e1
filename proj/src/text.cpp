#include "reltree/text.hpp"

#include <algorithm>
#include <istream>
#include <optional>

namespace reltree {
namespace {

struct Decoded {
  char32_t cp;
  std::size_t len;
};

// Returns nullopt on a malformed, overlong or surrogate sequence.
std::optional<Decoded> decode(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return Decoded{b0, 1};

  std::size_t len;
  char32_t cp;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    return std::nullopt;
  }
  if (pos + len > s.size()) return std::nullopt;
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return std::nullopt;
  }
  return Decoded{cp, len};
}

void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

// ASCII letters/digits, plus every non-ASCII code point outside the common
// punctuation, symbol and space blocks.
bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return is_digit(cp) || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  }
  if (cp <= 0xBF) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, arrows, math
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  if (cp == 0xFEFF) return false;
  return true;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

}  // namespace

bool is_valid_utf8(std::string_view text) {
  for (std::size_t pos = 0; pos < text.size();) {
    auto d = decode(text, pos);
    if (!d) return false;
    pos += d->len;
  }
  return true;
}

std::vector<std::string> normalize_text(std::string_view raw) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t chars = 0;
  bool has_digit = false;

  auto flush = [&] {
    if (chars > 1 || (chars == 1 && has_digit)) tokens.push_back(current);
    current.clear();
    chars = 0;
    has_digit = false;
  };

  for (std::size_t pos = 0; pos < raw.size();) {
    auto d = decode(raw, pos);
    if (!d) {
      flush();
      ++pos;
      continue;
    }
    pos += d->len;
    if (!is_word_char(d->cp)) {
      flush();
      continue;
    }
    encode(to_lower(d->cp), current);
    ++chars;
    has_digit = has_digit || is_digit(d->cp);
  }
  flush();
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens,
                        std::size_t first, std::size_t count) {
  std::string out;
  const std::size_t last =
      count == std::string::npos ? tokens.size()
                                 : std::min(tokens.size(), first + count);
  for (std::size_t i = first; i < last; ++i) {
    if (i != first) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::size_t phrase_token_count(std::string_view phrase) {
  if (phrase.empty()) return 0;
  std::size_t n = 1;
  for (char c : phrase) n += c == ' ';
  return n;
}

std::string truncate_utf8(std::string_view text, std::size_t max_chars) {
  std::size_t pos = 0;
  for (std::size_t chars = 0; pos < text.size() && chars < max_chars; ++chars) {
    auto d = decode(text, pos);
    pos += d ? d->len : 1;
  }
  return std::string(text.substr(0, pos));
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace reltree
