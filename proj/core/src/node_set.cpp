#include "gossip_age/node_set.hpp"

#include <bit>

#include "gossip_age/errors.hpp"

namespace gossip_age {

namespace {

std::size_t word_count(std::size_t universe) { return (universe + 63) / 64; }

} // namespace

NodeSet::NodeSet(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

NodeSet::NodeSet(std::size_t universe, std::initializer_list<NodeIndex> members)
    : NodeSet(universe, std::span<const NodeIndex>(members.begin(), members.size())) {}

NodeSet::NodeSet(std::size_t universe, std::span<const NodeIndex> members) : NodeSet(universe) {
  for (NodeIndex i : members) insert(i);
}

NodeSet NodeSet::full(std::size_t universe) {
  NodeSet s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (const std::size_t tail = universe % 64; tail != 0) {
    s.words_.back() = (std::uint64_t{1} << tail) - 1;
  }
  return s;
}

bool NodeSet::empty() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t NodeSet::size() const {
  std::size_t count = 0;
  for (auto w : words_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

void NodeSet::check_index(NodeIndex i) const {
  if (i == 0 || i > universe_) {
    throw InvalidArgument("node " + std::to_string(i) + " outside 1.." +
                          std::to_string(universe_));
  }
}

bool NodeSet::contains(NodeIndex i) const {
  check_index(i);
  return (words_[(i - 1) / 64] >> ((i - 1) % 64)) & 1U;
}

void NodeSet::insert(NodeIndex i) {
  check_index(i);
  words_[(i - 1) / 64] |= std::uint64_t{1} << ((i - 1) % 64);
}

NodeSet NodeSet::with(NodeIndex i) const {
  NodeSet out = *this;
  out.insert(i);
  return out;
}

bool NodeSet::is_subset_of(const NodeSet& other) const {
  if (universe_ != other.universe_) return false;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

NodeSet NodeSet::operator|(const NodeSet& other) const {
  if (universe_ != other.universe_) {
    throw InvalidArgument("union of node sets over different universes");
  }
  NodeSet out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] |= other.words_[w];
  return out;
}

std::vector<NodeIndex> NodeSet::members() const {
  std::vector<NodeIndex> out;
  out.reserve(size());
  for_each([&](NodeIndex i) { out.push_back(i); });
  return out;
}

std::size_t NodeSet::hash() const {
  // FNV-1a over the words, then a final avalanche.
  std::uint64_t h = 1469598103934665603ULL ^ universe_;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ULL;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return static_cast<std::size_t>(h);
}

std::string NodeSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each([&](NodeIndex i) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  });
  out += '}';
  return out;
}

std::strong_ordering operator<=>(const NodeSet& a, const NodeSet& b) {
  if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
  for (std::size_t w = a.words_.size(); w-- > 0;) {
    if (auto c = a.words_[w] <=> b.words_[w]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

} // namespace gossip_age
