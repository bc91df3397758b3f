#ifndef TIMELINE_TEXT_H_
#define TIMELINE_TEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace timeline {

// Number of code points in a UTF-8 string, or nullopt if it is not valid UTF-8.
std::optional<int> CodePointLength(std::string_view utf8);

// Substring by code-point offsets [start, end). nullopt when out of range or
// the input is not valid UTF-8.
std::optional<std::string> CodePointSubstr(std::string_view utf8, int start,
                                           int end);

struct Token {
  std::string text;  // lowercased (ASCII only)
  int start = 0;     // code points
  int end = 0;
};

// Whitespace/punctuation tokenizer used by the eligibility lints. Splits the
// clitic "n't" off its host ("don't" -> "do", "n't").
std::vector<Token> Tokenize(std::string_view utf8);

}  // namespace timeline

#endif  // TIMELINE_TEXT_H_
