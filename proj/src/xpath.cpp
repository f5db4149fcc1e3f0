#include "wex/xpath.hpp"

#include <cctype>

#include "wex/errors.hpp"

namespace wex {

namespace {

bool valid_tag_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
}

}  // namespace

std::string XPath::str() const {
  std::string out;
  for (const auto& u : units) {
    out += '/';
    out += u.tag;
    out += '[';
    out += std::to_string(u.subscript);
    out += ']';
  }
  return out;
}

XPath parse_xpath(const std::string& s) {
  if (s.empty() || s[0] != '/') {
    throw MalformedXPath("xpath must start with '/': \"" + s + "\"");
  }
  XPath path;
  size_t i = 1;
  while (i <= s.size()) {
    size_t end = s.find('/', i);
    if (end == std::string::npos) end = s.size();
    std::string segment = s.substr(i, end - i);
    if (segment.empty()) {
      throw MalformedXPath("empty segment in xpath: \"" + s + "\"");
    }
    std::string tag;
    int subscript = 1;
    size_t bracket = segment.find('[');
    if (bracket == std::string::npos) {
      tag = segment;
    } else {
      tag = segment.substr(0, bracket);
      if (segment.back() != ']' || bracket + 2 > segment.size()) {
        throw MalformedXPath("bad subscript in segment \"" + segment + "\"");
      }
      std::string digits = segment.substr(bracket + 1, segment.size() - bracket - 2);
      if (digits.empty()) {
        throw MalformedXPath("empty subscript in segment \"" + segment + "\"");
      }
      long value = 0;
      for (char c : digits) {
        if (c < '0' || c > '9') {
          throw MalformedXPath("non-numeric subscript in segment \"" + segment + "\"");
        }
        value = value * 10 + (c - '0');
        if (value > 1'000'000'000L) {
          throw MalformedXPath("subscript out of range in segment \"" + segment + "\"");
        }
      }
      if (value < 1) {
        throw MalformedXPath("subscript < 1 in segment \"" + segment + "\"");
      }
      subscript = static_cast<int>(value);
    }
    if (tag.empty()) {
      throw MalformedXPath("empty tag in segment \"" + segment + "\"");
    }
    for (char& c : tag) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      if (!valid_tag_char(c)) {
        throw MalformedXPath("invalid tag character in segment \"" + segment + "\"");
      }
    }
    path.units.push_back({std::move(tag), subscript});
    if (end == s.size()) break;
    i = end + 1;
  }
  return path;
}

}  // namespace wex
