#include "timeline/text.h"

#include <cctype>

namespace timeline {

namespace {

// Decodes one code point starting at s[i]; returns its byte length or 0 if
// the sequence is malformed.
int SequenceLength(std::string_view s, size_t i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  int len;
  if (c < 0x80) return 1;
  if ((c & 0xE0) == 0xC0) {
    len = 2;
  } else if ((c & 0xF0) == 0xE0) {
    len = 3;
  } else if ((c & 0xF8) == 0xF0) {
    len = 4;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (int k = 1; k < len; ++k) {
    if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 0;
  }
  return len;
}

// Byte offsets of every code point, plus the end offset.
std::optional<std::vector<size_t>> Boundaries(std::string_view s) {
  std::vector<size_t> out;
  size_t i = 0;
  while (i < s.size()) {
    out.push_back(i);
    int len = SequenceLength(s, i);
    if (len == 0) return std::nullopt;
    i += len;
  }
  out.push_back(s.size());
  return out;
}

bool IsWordByte(unsigned char c) {
  // Non-ASCII bytes are treated as word characters.
  return c >= 0x80 || std::isalnum(c) || c == '\'' || c == '-';
}

}  // namespace

std::optional<int> CodePointLength(std::string_view utf8) {
  auto b = Boundaries(utf8);
  if (!b) return std::nullopt;
  return static_cast<int>(b->size()) - 1;
}

std::optional<std::string> CodePointSubstr(std::string_view utf8, int start,
                                           int end) {
  auto b = Boundaries(utf8);
  if (!b) return std::nullopt;
  int n = static_cast<int>(b->size()) - 1;
  if (start < 0 || end < start || end > n) return std::nullopt;
  return std::string(utf8.substr((*b)[start], (*b)[end] - (*b)[start]));
}

std::vector<Token> Tokenize(std::string_view utf8) {
  std::vector<Token> tokens;
  auto bounds = Boundaries(utf8);
  if (!bounds) return tokens;
  const std::vector<size_t> &b = *bounds;
  int n = static_cast<int>(b.size()) - 1;
  auto flush = [&](int start, int end) {
    if (start >= end) return;
    std::string text(utf8.substr(b[start], b[end] - b[start]));
    for (char &c : text) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    // Trim quote characters at the edges ("'cause" stays "cause").
    while (!text.empty() && text.front() == '\'') {
      text.erase(text.begin());
      ++start;
    }
    while (!text.empty() && text.back() == '\'') {
      text.pop_back();
      --end;
    }
    if (text.empty()) return;
    if (text.size() > 3 && text.ends_with("n't")) {
      // Code-point length of an ASCII suffix equals its byte length.
      tokens.push_back({text.substr(0, text.size() - 3), start, end - 3});
      tokens.push_back({"n't", end - 3, end});
      return;
    }
    tokens.push_back({text, start, end});
  };
  int word_start = -1;
  for (int i = 0; i < n; ++i) {
    bool word = IsWordByte(static_cast<unsigned char>(utf8[b[i]]));
    if (word && word_start < 0) word_start = i;
    if (!word && word_start >= 0) {
      flush(word_start, i);
      word_start = -1;
    }
  }
  if (word_start >= 0) flush(word_start, n);
  return tokens;
}

}  // namespace timeline
