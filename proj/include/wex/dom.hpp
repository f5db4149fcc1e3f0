#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wex/xpath.hpp"

namespace wex {

// Element node of a parsed page. Text nodes are folded into their parent's
// own_text; comments, scripts and styles contribute nothing.
struct DomNode {
  int node_id = 0;  // preorder index
  std::string tag;  // lowercase element name
  int subscript = 1;  // 1-based position among same-tag element siblings
  int parent_id = -1;  // -1 for the root
  std::vector<int> children;  // element children in document order
  std::string own_text;  // direct text children, whitespace-normalized

  bool is_leaf() const { return children.empty(); }
};

class DomTree {
 public:
  DomTree() = default;
  DomTree(std::string page_id, std::vector<DomNode> nodes)
      : page_id_(std::move(page_id)), nodes_(std::move(nodes)) {}

  const std::string& page_id() const { return page_id_; }
  int root_id() const { return 0; }
  int size() const { return static_cast<int>(nodes_.size()); }
  bool contains(int id) const { return id >= 0 && id < size(); }
  const DomNode& node(int id) const;  // throws UnknownNode
  const std::vector<DomNode>& nodes() const { return nodes_; }

 private:
  std::string page_id_;
  std::vector<DomNode> nodes_;  // index == node_id, preorder
};

// Lenient parser: unclosed tags are recovered with fixed auto-close rules,
// stray close tags are dropped, script/style/comment content is discarded,
// and the result is wrapped in a synthetic <html> root when needed.
// Throws EmptyDocument when no element (and no text) can be recovered.
DomTree parse_html(const std::string& html, const std::string& page_id);

// Canonical serializer: own_text first, then children, explicit close tags.
// parse_html(to_html(t)) reproduces t for any tree built by parse_html.
std::string to_html(const DomTree& tree);

XPath compute_xpath(const DomTree& tree, int node_id);  // throws UnknownNode

// Node id for a canonical path, -1 when no node matches.
int resolve_xpath(const DomTree& tree, const XPath& path);

enum class SerializationPolicy { LeafOnly, RetainInternal };

std::string_view policy_name(SerializationPolicy policy);

struct SequenceItem {
  int node_id = 0;
  XPath xpath;
  std::string token_text;
};

struct NodeSequence {
  std::string page_id;
  SerializationPolicy policy = SerializationPolicy::LeafOnly;
  std::vector<SequenceItem> items;  // document (preorder) order
};

// Leaf nodes carry their own text; internal nodes are represented by the
// bounded marker token U+27E8 tag U+27E9 rather than any descendant text.
std::string node_token_text(const DomTree& tree, int node_id, SerializationPolicy policy);

NodeSequence enumerate_nodes(const DomTree& tree, SerializationPolicy policy);

struct SequenceChunk {
  std::string page_id;
  int window_index = 0;
  size_t first_item_index = 0;  // offset into the parent sequence
  std::vector<SequenceItem> items;
};

// Whitespace word count of an item's token text, minimum 1.
int token_count(const std::string& token_text);

// Sliding windows over the sequence in token space. A sequence that fits in
// max_tokens yields exactly one chunk; otherwise windows start every
// `stride` tokens until the end of the sequence, and every item lands in at
// least one chunk. An item longer than max_tokens occupies its own chunk.
std::vector<SequenceChunk> chunk_sequence(const NodeSequence& seq, int max_tokens, int stride);

std::string normalize_whitespace(std::string_view text);
std::vector<std::string> split_words(const std::string& text);

}  // namespace wex
