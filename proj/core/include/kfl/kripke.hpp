#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kfl/node_set.hpp"

namespace kfl {

/// A finite Kripke frame: nodes 0..n-1 and an accessibility relation stored
/// as one bitset row per node. Immutable once built.
class Frame {
 public:
  /// Edgeless frame on n nodes, 1 <= n <= kMaxNodes.
  explicit Frame(std::size_t n);

  static Frame from_edges(std::size_t n, const std::vector<std::pair<Node, Node>>& edges);
  static Frame from_rows(std::span<const NodeSet> rows);

  /// Row-major encoding with the pair (0,0) as the most significant bit,
  /// so increasing codes enumerate relations lexicographically. n <= 7.
  static Frame from_code(std::size_t n, std::uint64_t code);
  std::uint64_t code() const;

  std::size_t size() const { return n_; }
  NodeSet nodes() const { return NodeSet::all(n_); }
  bool has_edge(Node from, Node to) const { return rows_[from].contains(to); }
  /// R[k] without a range check.
  NodeSet row(Node k) const { return rows_[k]; }
  std::vector<std::pair<Node, Node>> edges() const;

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t n_;
  std::array<NodeSet, kMaxNodes> rows_{};
};

/// R restricted to sources in a carrier set: R ∩ (carrier × K).
class Restriction {
 public:
  Restriction(const Frame& frame, NodeSet carrier) : frame_(&frame), carrier_(carrier) {}

  const Frame& frame() const { return *frame_; }
  NodeSet carrier() const { return carrier_; }
  bool has_edge(Node from, Node to) const {
    return carrier_.contains(from) && frame_->has_edge(from, to);
  }
  NodeSet image(Node k) const { return carrier_.contains(k) ? frame_->row(k) : NodeSet{}; }

  bool is_reflexive() const;
  /// For k, k' in the carrier: kRk' and k'Rk'' imply kRk''.
  bool is_transitive() const;

 private:
  const Frame* frame_;
  NodeSet carrier_;
};

/// R[k]. Throws std::out_of_range when k >= f.size().
NodeSet image(const Frame& f, Node k);
/// R^n[k]: endpoints of R-paths of length exactly `steps` (>= 1) from k.
NodeSet n_step_image(const Frame& f, Node k, std::size_t steps);
/// R+[k]: nodes reachable in one or more steps.
NodeSet reach_plus(const Frame& f, Node k);
/// R++[k]: nodes reachable in two or more steps.
NodeSet reach_plusplus(const Frame& f, Node k);
/// Image of a set: the union of R[k] over k in s.
NodeSet image_of_set(const Frame& f, NodeSet s);

bool is_reflexive_on(const Frame& f, NodeSet carrier);
bool is_transitive_on(const Frame& f, NodeSet carrier);
bool is_reflexive(const Frame& f);
bool is_transitive(const Frame& f);
/// For every k and k', k'' in R+[k]: k'Rk'' or k''Rk'. The case k' = k''
/// is included, so connectedness forces loops on every reachable node.
bool is_connected(const Frame& f);

/// Whether every successor of a member of `set` is a member (an up-set).
bool is_successor_closed(const Frame& f, NodeSet set);

/// Shortest walk from `from` to `to` with at least `min_edges` edges,
/// including both endpoints. Ties go to smaller node indices.
std::optional<std::vector<Node>> shortest_walk(const Frame& f, Node from, Node to,
                                               std::size_t min_edges = 1);

}  // namespace kfl
