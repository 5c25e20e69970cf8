#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace gossip_age {

// Gossip nodes are 1..n. Index 0 is the source and never belongs to a NodeSet.
using NodeIndex = std::size_t;

// A subset of the gossip nodes {1..n} stored as a bit pattern, bit (i-1) for node i.
//
// Sets compare as unsigned integers over their bit pattern, so sorting a
// container of NodeSets gives ascending bit-pattern order. Only sets over the
// same universe n are meaningfully comparable.
class NodeSet {
public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe);
  NodeSet(std::size_t universe, std::initializer_list<NodeIndex> members);
  NodeSet(std::size_t universe, std::span<const NodeIndex> members);

  static NodeSet full(std::size_t universe);

  std::size_t universe() const { return universe_; }
  bool empty() const;
  std::size_t size() const;

  // Throws InvalidArgument for i outside 1..universe().
  bool contains(NodeIndex i) const;
  void insert(NodeIndex i);
  NodeSet with(NodeIndex i) const;

  bool is_subset_of(const NodeSet& other) const;
  NodeSet operator|(const NodeSet& other) const;

  std::vector<NodeIndex> members() const;

  template <typename F> void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int bit = std::countr_zero(bits);
        f(static_cast<NodeIndex>(w * 64 + static_cast<std::size_t>(bit) + 1));
        bits &= bits - 1;
      }
    }
  }

  std::size_t hash() const;
  std::string to_string() const;

  friend bool operator==(const NodeSet& a, const NodeSet& b) = default;
  friend std::strong_ordering operator<=>(const NodeSet& a, const NodeSet& b);

private:
  void check_index(NodeIndex i) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct NodeSetHash {
  std::size_t operator()(const NodeSet& s) const { return s.hash(); }
};

} // namespace gossip_age
