#include "wex/dom.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "wex/errors.hpp"

namespace wex {

namespace {

constexpr const char* kMarkerOpen = "\xE2\x9F\xA8";   // U+27E8
constexpr const char* kMarkerClose = "\xE2\x9F\xA9";  // U+27E9

bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char to_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string lower(std::string s) {
  for (char& c : s) c = to_lower(c);
  return s;
}

const std::set<std::string>& void_elements() {
  static const std::set<std::string> kVoid = {
      "area", "base", "br", "col", "embed", "hr", "img",
      "input", "link", "meta", "param", "source", "track", "wbr"};
  return kVoid;
}

const std::set<std::string>& block_starters() {
  // Opening one of these implicitly closes an open <p>.
  static const std::set<std::string> kBlock = {
      "p", "div", "ul", "ol", "li", "h1", "h2", "h3", "h4", "h5", "h6",
      "section", "article", "blockquote", "table", "nav", "footer",
      "header", "aside", "main", "form", "pre", "figure", "dl"};
  return kBlock;
}

// Deterministic recovery: does opening `next` implicitly close `open`?
bool implicitly_closes(const std::string& open, const std::string& next) {
  if (open == "p") return block_starters().count(next) > 0;
  if (open == "li") return next == "li";
  if (open == "dd" || open == "dt") return next == "dd" || next == "dt";
  if (open == "option") return next == "option";
  if (open == "td" || open == "th") return next == "td" || next == "th" || next == "tr";
  if (open == "tr") return next == "tr";
  return false;
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out += text[i++];
      continue;
    }
    size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out += '&';
      ++i;
      continue;
    }
    std::string_view name = text.substr(i + 1, semi - i - 1);
    if (name == "amp") {
      out += '&';
    } else if (name == "lt") {
      out += '<';
    } else if (name == "gt") {
      out += '>';
    } else if (name == "quot") {
      out += '"';
    } else if (name == "apos") {
      out += '\'';
    } else if (!name.empty() && name[0] == '#') {
      long code = 0;
      bool ok = true;
      if (name.size() > 1 && (name[1] == 'x' || name[1] == 'X')) {
        for (size_t k = 2; k < name.size(); ++k) {
          char c = to_lower(name[k]);
          int d = (c >= '0' && c <= '9') ? c - '0' : (c >= 'a' && c <= 'f') ? c - 'a' + 10 : -1;
          if (d < 0 || code > 0x10FFFF) {
            ok = false;
            break;
          }
          code = code * 16 + d;
        }
        ok = ok && name.size() > 2;
      } else {
        for (size_t k = 1; k < name.size(); ++k) {
          if (name[k] < '0' || name[k] > '9' || code > 0x10FFFF) {
            ok = false;
            break;
          }
          code = code * 10 + (name[k] - '0');
        }
        ok = ok && name.size() > 1;
      }
      if (!ok || code <= 0 || code > 0x10FFFF) {
        out += '&';
        ++i;
        continue;
      }
      // UTF-8 encode.
      if (code < 0x80) {
        out += static_cast<char>(code);
      } else if (code < 0x800) {
        out += static_cast<char>(0xC0 | (code >> 6));
        out += static_cast<char>(0x80 | (code & 0x3F));
      } else if (code < 0x10000) {
        out += static_cast<char>(0xE0 | (code >> 12));
        out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (code & 0x3F));
      } else {
        out += static_cast<char>(0xF0 | (code >> 18));
        out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (code & 0x3F));
      }
    } else {
      out += '&';
      ++i;
      continue;
    }
    i = semi + 1;
  }
  return out;
}

std::string escape_text(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct RawNode {
  std::string tag;
  int parent = -1;
  std::vector<int> children;
  std::string text;
};

struct RawDocument {
  std::vector<RawNode> nodes;
  std::vector<int> top_elements;
  std::string top_text;
};

class Parser {
 public:
  explicit Parser(const std::string& html) : html_(html) {}

  RawDocument run() {
    while (pos_ < html_.size()) {
      if (html_[pos_] == '<') {
        handle_markup();
      } else {
        size_t end = html_.find('<', pos_);
        if (end == std::string::npos) end = html_.size();
        append_text(decode_entities(std::string_view(html_).substr(pos_, end - pos_)));
        pos_ = end;
      }
    }
    return std::move(doc_);
  }

 private:
  void handle_markup() {
    if (html_.compare(pos_, 4, "<!--") == 0) {
      size_t end = html_.find("-->", pos_ + 4);
      pos_ = end == std::string::npos ? html_.size() : end + 3;
      return;
    }
    if (pos_ + 1 < html_.size() && (html_[pos_ + 1] == '!' || html_[pos_ + 1] == '?')) {
      size_t end = html_.find('>', pos_ + 1);
      pos_ = end == std::string::npos ? html_.size() : end + 1;
      return;
    }
    if (pos_ + 1 < html_.size() && html_[pos_ + 1] == '/') {
      handle_close_tag();
      return;
    }
    if (pos_ + 1 < html_.size() && is_alpha(html_[pos_ + 1])) {
      handle_open_tag();
      return;
    }
    append_text("<");
    ++pos_;
  }

  void handle_close_tag() {
    size_t i = pos_ + 2;
    std::string name;
    while (i < html_.size() && (is_alpha(html_[i]) || std::isdigit(static_cast<unsigned char>(html_[i])) ||
                                html_[i] == '-' || html_[i] == '_')) {
      name += to_lower(html_[i]);
      ++i;
    }
    size_t end = html_.find('>', i);
    pos_ = end == std::string::npos ? html_.size() : end + 1;
    if (name.empty()) return;
    // Pop to the matching open tag if any; otherwise the close tag is stray.
    for (size_t k = stack_.size(); k-- > 0;) {
      if (doc_.nodes[stack_[k]].tag == name) {
        stack_.resize(k);
        return;
      }
    }
  }

  void handle_open_tag() {
    size_t i = pos_ + 1;
    std::string name;
    while (i < html_.size() && (is_alpha(html_[i]) || std::isdigit(static_cast<unsigned char>(html_[i])) ||
                                html_[i] == '-' || html_[i] == '_')) {
      name += to_lower(html_[i]);
      ++i;
    }
    bool self_closing = false;
    // Skip over attributes, respecting quotes.
    while (i < html_.size() && html_[i] != '>') {
      if (html_[i] == '"' || html_[i] == '\'') {
        char quote = html_[i];
        size_t close = html_.find(quote, i + 1);
        i = close == std::string::npos ? html_.size() : close + 1;
        continue;
      }
      if (html_[i] == '/' && i + 1 < html_.size() && html_[i + 1] == '>') {
        self_closing = true;
      }
      ++i;
    }
    pos_ = i == html_.size() ? html_.size() : i + 1;

    while (!stack_.empty() && implicitly_closes(doc_.nodes[stack_.back()].tag, name)) {
      stack_.pop_back();
    }

    int idx = static_cast<int>(doc_.nodes.size());
    RawNode node;
    node.tag = name;
    node.parent = stack_.empty() ? -1 : stack_.back();
    doc_.nodes.push_back(std::move(node));
    if (stack_.empty()) {
      doc_.top_elements.push_back(idx);
    } else {
      doc_.nodes[stack_.back()].children.push_back(idx);
    }

    if (self_closing || void_elements().count(name)) return;

    if (name == "script" || name == "style") {
      consume_raw_text(name);
      return;
    }
    stack_.push_back(idx);
  }

  // Raw-text elements: drop content up to the matching close tag.
  void consume_raw_text(const std::string& name) {
    std::string needle = "</" + name;
    size_t i = pos_;
    while (i + needle.size() <= html_.size()) {
      size_t cand = i;
      bool match = true;
      for (size_t k = 0; k < needle.size(); ++k) {
        if (to_lower(html_[cand + k]) != needle[k]) {
          match = false;
          break;
        }
      }
      if (match) {
        size_t end = html_.find('>', cand);
        pos_ = end == std::string::npos ? html_.size() : end + 1;
        return;
      }
      ++i;
    }
    pos_ = html_.size();
  }

  void append_text(const std::string& text) {
    if (text.empty()) return;
    if (stack_.empty()) {
      doc_.top_text += text;
    } else {
      doc_.nodes[stack_.back()].text += text;
    }
  }

  const std::string& html_;
  size_t pos_ = 0;
  RawDocument doc_;
  std::vector<int> stack_;
};

// Preorder renumbering into the final node vector, with subscripts assigned
// by counting same-tag siblings in document order.
void build_subtree(const RawDocument& doc, int raw_id, int parent_id, int subscript,
                   std::vector<DomNode>& out) {
  const RawNode& raw = doc.nodes[raw_id];
  int id = static_cast<int>(out.size());
  DomNode node;
  node.node_id = id;
  node.tag = raw.tag;
  node.subscript = subscript;
  node.parent_id = parent_id;
  node.own_text = normalize_whitespace(raw.text);
  out.push_back(std::move(node));

  std::map<std::string, int> tag_counts;
  for (int child_raw : raw.children) {
    int sub = ++tag_counts[doc.nodes[child_raw].tag];
    int child_id = static_cast<int>(out.size());
    out[id].children.push_back(child_id);
    build_subtree(doc, child_raw, id, sub, out);
  }
}

void emit_node(const DomTree& tree, int id, int depth, std::string& out) {
  const DomNode& node = tree.node(id);
  std::string pad(static_cast<size_t>(depth) * 2, ' ');
  out += pad;
  out += '<';
  out += node.tag;
  out += '>';
  if (!node.own_text.empty()) out += escape_text(node.own_text);
  if (node.children.empty()) {
    out += "</";
    out += node.tag;
    out += ">\n";
    return;
  }
  out += '\n';
  for (int child : node.children) emit_node(tree, child, depth + 1, out);
  out += pad;
  out += "</";
  out += node.tag;
  out += ">\n";
}

}  // namespace

const DomNode& DomTree::node(int id) const {
  if (!contains(id)) {
    throw UnknownNode("node " + std::to_string(id) + " not in page \"" + page_id_ + "\"");
  }
  return nodes_[static_cast<size_t>(id)];
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_ws(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += c;
  }
  return out;
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ws(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !is_ws(text[i])) ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

DomTree parse_html(const std::string& html, const std::string& page_id) {
  RawDocument doc = Parser(html).run();
  std::string top_text = normalize_whitespace(doc.top_text);
  if (doc.nodes.empty() && top_text.empty()) {
    throw EmptyDocument("no element recovered from page \"" + page_id + "\"");
  }

  int root_raw = -1;
  if (doc.top_elements.size() == 1 && doc.nodes[doc.top_elements[0]].tag == "html" &&
      top_text.empty()) {
    root_raw = doc.top_elements[0];
  } else {
    // Wrap stray top-level content in a synthetic root.
    RawNode root;
    root.tag = "html";
    root.children = doc.top_elements;
    root.text = doc.top_text;
    root_raw = static_cast<int>(doc.nodes.size());
    doc.nodes.push_back(std::move(root));
  }

  std::vector<DomNode> nodes;
  nodes.reserve(doc.nodes.size());
  build_subtree(doc, root_raw, -1, 1, nodes);
  return DomTree(page_id, std::move(nodes));
}

std::string to_html(const DomTree& tree) {
  std::string out;
  emit_node(tree, tree.root_id(), 0, out);
  return out;
}

XPath compute_xpath(const DomTree& tree, int node_id) {
  const DomNode* node = &tree.node(node_id);
  XPath path;
  while (true) {
    path.units.push_back({node->tag, node->subscript});
    if (node->parent_id < 0) break;
    node = &tree.node(node->parent_id);
  }
  std::reverse(path.units.begin(), path.units.end());
  return path;
}

int resolve_xpath(const DomTree& tree, const XPath& path) {
  if (path.empty() || tree.size() == 0) return -1;
  const DomNode& root = tree.node(tree.root_id());
  if (path.units[0].tag != root.tag || path.units[0].subscript != root.subscript) return -1;
  int current = tree.root_id();
  for (size_t d = 1; d < path.units.size(); ++d) {
    const XPathUnit& unit = path.units[d];
    int next = -1;
    for (int child : tree.node(current).children) {
      const DomNode& c = tree.node(child);
      if (c.tag == unit.tag && c.subscript == unit.subscript) {
        next = child;
        break;
      }
    }
    if (next < 0) return -1;
    current = next;
  }
  return current;
}

std::string_view policy_name(SerializationPolicy policy) {
  return policy == SerializationPolicy::LeafOnly ? "leaf" : "full";
}

std::string node_token_text(const DomTree& tree, int node_id, SerializationPolicy) {
  const DomNode& node = tree.node(node_id);
  if (node.is_leaf()) return node.own_text;
  return std::string(kMarkerOpen) + node.tag + kMarkerClose;
}

NodeSequence enumerate_nodes(const DomTree& tree, SerializationPolicy policy) {
  NodeSequence seq;
  seq.page_id = tree.page_id();
  seq.policy = policy;
  for (const DomNode& node : tree.nodes()) {  // node ids are preorder
    if (policy == SerializationPolicy::LeafOnly && !node.is_leaf()) continue;
    seq.items.push_back({node.node_id, compute_xpath(tree, node.node_id),
                         node_token_text(tree, node.node_id, policy)});
  }
  return seq;
}

int token_count(const std::string& token_text) {
  int count = 0;
  bool in_word = false;
  for (char c : token_text) {
    if (is_ws(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++count;
    }
  }
  return std::max(1, count);
}

std::vector<SequenceChunk> chunk_sequence(const NodeSequence& seq, int max_tokens, int stride) {
  if (max_tokens < 1 || stride < 1 || stride > max_tokens) {
    throw InvalidChunkParams("max_tokens=" + std::to_string(max_tokens) +
                             " stride=" + std::to_string(stride));
  }
  const size_t n = seq.items.size();
  std::vector<SequenceChunk> chunks;
  if (n == 0) return chunks;

  std::vector<long> prefix(n + 1, 0);
  for (size_t i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i] + token_count(seq.items[i].token_text);
  }
  const long total = prefix[n];

  std::vector<size_t> starts;
  if (total <= max_tokens) {
    starts.push_back(0);
  } else {
    size_t item = 0;
    for (long offset = 0; offset < total; offset += stride) {
      while (item + 1 < n && prefix[item + 1] <= offset) ++item;
      if (starts.empty() || starts.back() != item) starts.push_back(item);
    }
  }

  size_t covered = 0;  // first item index not yet in any chunk
  size_t prev_begin = n + 1, prev_end = n + 1;
  for (size_t s : starts) {
    size_t begin = std::min(s, covered);
    size_t end = begin;
    long tokens = 0;
    while (end < n && tokens + token_count(seq.items[end].token_text) <= max_tokens) {
      tokens += token_count(seq.items[end].token_text);
      ++end;
    }
    if (end == begin) ++end;  // single item longer than max_tokens
    if (begin == prev_begin && end == prev_end) continue;
    SequenceChunk chunk;
    chunk.page_id = seq.page_id;
    chunk.window_index = static_cast<int>(chunks.size());
    chunk.first_item_index = begin;
    chunk.items.assign(seq.items.begin() + static_cast<long>(begin),
                       seq.items.begin() + static_cast<long>(end));
    chunks.push_back(std::move(chunk));
    covered = std::max(covered, end);
    prev_begin = begin;
    prev_end = end;
  }
  return chunks;
}

}  // namespace wex
