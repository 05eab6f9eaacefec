#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

namespace kfl {

using Node = std::size_t;

/// Frames are limited to one machine word of nodes.
inline constexpr std::size_t kMaxNodes = 64;

/// A subset of the nodes 0..63 of some frame, stored as a bitmask.
class NodeSet {
 public:
  constexpr NodeSet() = default;
  constexpr NodeSet(std::initializer_list<Node> nodes) {
    for (Node k : nodes) insert(k);
  }

  static constexpr NodeSet from_bits(std::uint64_t bits) {
    NodeSet s;
    s.bits_ = bits;
    return s;
  }
  /// {0, ..., n-1}
  static constexpr NodeSet all(std::size_t n) {
    return from_bits(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(Node k) const { return k < 64 && ((bits_ >> k) & 1u); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool subset_of(NodeSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(NodeSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  /// Smallest member, if any.
  constexpr std::optional<Node> first() const {
    if (bits_ == 0) return std::nullopt;
    return static_cast<Node>(std::countr_zero(bits_));
  }

  constexpr void insert(Node k) { bits_ |= std::uint64_t{1} << k; }
  constexpr void erase(Node k) { bits_ &= ~(std::uint64_t{1} << k); }

  /// Complement relative to {0, ..., n-1}.
  constexpr NodeSet complement(std::size_t n) const {
    return from_bits(~bits_ & all(n).bits_);
  }

  constexpr NodeSet& operator|=(NodeSet o) { bits_ |= o.bits_; return *this; }
  constexpr NodeSet& operator&=(NodeSet o) { bits_ &= o.bits_; return *this; }
  constexpr NodeSet& operator-=(NodeSet o) { bits_ &= ~o.bits_; return *this; }
  friend constexpr NodeSet operator|(NodeSet a, NodeSet b) { return a |= b; }
  friend constexpr NodeSet operator&(NodeSet a, NodeSet b) { return a &= b; }
  friend constexpr NodeSet operator-(NodeSet a, NodeSet b) { return a -= b; }
  friend constexpr bool operator==(NodeSet, NodeSet) = default;
  /// Orders sets by their bitmask; used wherever a deterministic order is needed.
  friend constexpr auto operator<=>(NodeSet a, NodeSet b) { return a.bits_ <=> b.bits_; }

  class iterator {
   public:
    using value_type = Node;
    using difference_type = std::ptrdiff_t;
    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr Node operator*() const { return static_cast<Node>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
    constexpr iterator operator++(int) { auto t = *this; ++*this; return t; }
    friend constexpr bool operator==(iterator, iterator) = default;

   private:
    std::uint64_t rest_ = 0;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<Node> to_vector() const { return {begin(), end()}; }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace kfl
