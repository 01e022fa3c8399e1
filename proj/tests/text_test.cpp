#include <gtest/gtest.h>

#include "reltree/text.hpp"

using namespace reltree;
using Tokens = std::vector<std::string>;

TEST(NormalizeText, LowercasesAndSplitsOnPunctuation) {
  EXPECT_EQ(normalize_text("Aspirin, therapy!"), (Tokens{"aspirin", "therapy"}));
}

TEST(NormalizeText, DropsSingleLettersButKeepsDigits) {
  EXPECT_EQ(normalize_text("p53 & X"), (Tokens{"p53"}));
  EXPECT_EQ(normalize_text("type 2 diabetes"), (Tokens{"type", "2", "diabetes"}));
}

TEST(NormalizeText, EmptyInput) {
  EXPECT_TRUE(normalize_text("").empty());
  EXPECT_TRUE(normalize_text("  -- ,, ").empty());
}

TEST(NormalizeText, HyphenSplitsTokens) {
  EXPECT_EQ(normalize_text("Low-dose"), (Tokens{"low", "dose"}));
}

TEST(NormalizeText, NonAsciiLettersStayInTokens) {
  EXPECT_EQ(normalize_text("Ménière’s DISEASE"), (Tokens{"ménière", "disease"}));
  EXPECT_EQ(normalize_text("ΑΒΓ"), (Tokens{"αβγ"}));
}

TEST(NormalizeText, InvalidBytesAreSeparators) {
  EXPECT_EQ(normalize_text("ab\xff" "cd"), (Tokens{"ab", "cd"}));
}

TEST(Utf8, Validation) {
  EXPECT_TRUE(is_valid_utf8("plain"));
  EXPECT_TRUE(is_valid_utf8("caf\xc3\xa9"));
  EXPECT_FALSE(is_valid_utf8("\xc3"));
  EXPECT_FALSE(is_valid_utf8("\xc0\xaf"));      // overlong
  EXPECT_FALSE(is_valid_utf8("\xed\xa0\x80"));  // surrogate
}

TEST(Utf8, TruncateRespectsCodePoints) {
  EXPECT_EQ(truncate_utf8("caf\xc3\xa9s", 4), "caf\xc3\xa9");
  EXPECT_EQ(truncate_utf8("abc", 10), "abc");
}

TEST(Phrase, TokenCount) {
  EXPECT_EQ(phrase_token_count(""), 0u);
  EXPECT_EQ(phrase_token_count("heart attack"), 2u);
  EXPECT_EQ(normalize_phrase("  Gene   THERAPY "), "gene therapy");
}
