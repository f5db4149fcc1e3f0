#pragma once

#include <compare>
#include <string>
#include <vector>

namespace wex {

// One step of a root-to-node path: element tag plus its 1-based position
// among same-tag element siblings.
struct XPathUnit {
  std::string tag;
  int subscript = 1;

  friend bool operator==(const XPathUnit&, const XPathUnit&) = default;
  friend auto operator<=>(const XPathUnit&, const XPathUnit&) = default;
};

struct XPath {
  std::vector<XPathUnit> units;  // root-first

  bool empty() const { return units.empty(); }
  size_t depth() const { return units.size(); }

  // Canonical form: "/" + units joined by "/", each as tag[subscript],
  // with "[1]" always written out.
  std::string str() const;

  friend bool operator==(const XPath&, const XPath&) = default;
  friend auto operator<=>(const XPath&, const XPath&) = default;
};

// Parses a slash-delimited path. "[1]" may be omitted in the input and
// tags are lowercased; the result renders canonically. Throws
// MalformedXPath on empty segments, non-numeric subscripts or subscript < 1.
XPath parse_xpath(const std::string& s);

inline std::string render_xpath(const XPath& p) { return p.str(); }

}  // namespace wex
