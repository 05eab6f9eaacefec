#include "kfl/kripke.hpp"

#include <deque>
#include <stdexcept>
#include <string>

#include "kfl/error.hpp"

namespace kfl {

namespace {

void check_size(std::size_t n) {
  if (n == 0 || n > kMaxNodes)
    throw Error("frame size must be between 1 and " + std::to_string(kMaxNodes) + ", got " +
                std::to_string(n));
}

void check_node(const Frame& f, Node k) {
  if (k >= f.size())
    throw std::out_of_range("node " + std::to_string(k) + " out of range for a frame of " +
                            std::to_string(f.size()) + " nodes");
}

}  // namespace

Frame::Frame(std::size_t n) : n_(n) { check_size(n); }

Frame Frame::from_edges(std::size_t n, const std::vector<std::pair<Node, Node>>& edges) {
  Frame f(n);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n)
      throw std::out_of_range("edge (" + std::to_string(a) + "," + std::to_string(b) +
                              ") out of range");
    f.rows_[a].insert(b);
  }
  return f;
}

Frame Frame::from_rows(std::span<const NodeSet> rows) {
  Frame f(rows.size());
  for (Node k = 0; k < rows.size(); ++k) {
    if (!rows[k].subset_of(f.nodes())) throw std::out_of_range("row has out-of-range members");
    f.rows_[k] = rows[k];
  }
  return f;
}

Frame Frame::from_code(std::size_t n, std::uint64_t code) {
  if (n == 0 || n > 7) throw Error("frame codes are defined for 1..7 nodes");
  Frame f(n);
  const std::size_t bits = n * n;
  for (Node i = 0; i < n; ++i)
    for (Node j = 0; j < n; ++j)
      if ((code >> (bits - 1 - (i * n + j))) & 1u) f.rows_[i].insert(j);
  return f;
}

std::uint64_t Frame::code() const {
  if (n_ > 7) throw Error("frame codes are defined for 1..7 nodes");
  const std::size_t bits = n_ * n_;
  std::uint64_t code = 0;
  for (Node i = 0; i < n_; ++i)
    for (Node j : rows_[i]) code |= std::uint64_t{1} << (bits - 1 - (i * n_ + j));
  return code;
}

std::vector<std::pair<Node, Node>> Frame::edges() const {
  std::vector<std::pair<Node, Node>> out;
  for (Node i = 0; i < n_; ++i)
    for (Node j : rows_[i]) out.emplace_back(i, j);
  return out;
}

bool Restriction::is_reflexive() const {
  for (Node k : carrier_)
    if (!frame_->has_edge(k, k)) return false;
  return true;
}

bool Restriction::is_transitive() const {
  for (Node k : carrier_) {
    NodeSet row = frame_->row(k);
    // Successors of k' count only when k' itself is in the carrier.
    if (!image_of_set(*frame_, row & carrier_).subset_of(row)) return false;
  }
  return true;
}

NodeSet image(const Frame& f, Node k) {
  check_node(f, k);
  return f.row(k);
}

NodeSet image_of_set(const Frame& f, NodeSet s) {
  NodeSet out;
  for (Node k : s) out |= f.row(k);
  return out;
}

NodeSet n_step_image(const Frame& f, Node k, std::size_t steps) {
  check_node(f, k);
  if (steps == 0) throw Error("n_step_image needs at least one step");
  NodeSet cur = f.row(k);
  for (std::size_t i = 1; i < steps && !cur.empty(); ++i) cur = image_of_set(f, cur);
  return cur;
}

NodeSet reach_plus(const Frame& f, Node k) {
  check_node(f, k);
  NodeSet reached = f.row(k);
  NodeSet frontier = reached;
  while (!frontier.empty()) {
    NodeSet next = image_of_set(f, frontier) - reached;
    reached |= next;
    frontier = next;
  }
  return reached;
}

NodeSet reach_plusplus(const Frame& f, Node k) {
  check_node(f, k);
  NodeSet out;
  for (Node j : f.row(k)) out |= reach_plus(f, j);
  return out;
}

bool is_reflexive_on(const Frame& f, NodeSet carrier) {
  return Restriction(f, carrier).is_reflexive();
}

bool is_transitive_on(const Frame& f, NodeSet carrier) {
  return Restriction(f, carrier).is_transitive();
}

bool is_reflexive(const Frame& f) { return is_reflexive_on(f, f.nodes()); }
bool is_transitive(const Frame& f) { return is_transitive_on(f, f.nodes()); }

bool is_connected(const Frame& f) {
  for (Node k = 0; k < f.size(); ++k) {
    NodeSet reach = reach_plus(f, k);
    for (Node a : reach)
      for (Node b : reach)
        if (b >= a && !f.has_edge(a, b) && !f.has_edge(b, a)) return false;
  }
  return true;
}

bool is_successor_closed(const Frame& f, NodeSet set) {
  return image_of_set(f, set).subset_of(set);
}

std::optional<std::vector<Node>> shortest_walk(const Frame& f, Node from, Node to,
                                               std::size_t min_edges) {
  check_node(f, from);
  check_node(f, to);
  // State (node, min(edges so far, min_edges)); BFS in increasing node order.
  const std::size_t layers = min_edges + 1;
  auto index = [&](Node k, std::size_t c) { return k * layers + c; };
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(f.size() * layers, kNone);
  std::vector<bool> seen(f.size() * layers, false);
  std::deque<std::pair<Node, std::size_t>> queue;
  seen[index(from, 0)] = true;
  queue.emplace_back(from, 0);
  while (!queue.empty()) {
    auto [k, c] = queue.front();
    queue.pop_front();
    if (k == to && c == min_edges) {
      std::vector<Node> walk;
      for (std::size_t s = index(k, c); s != kNone; s = parent[s]) walk.push_back(s / layers);
      return std::vector<Node>(walk.rbegin(), walk.rend());
    }
    std::size_t nc = c < min_edges ? c + 1 : c;
    for (Node j : f.row(k)) {
      std::size_t s = index(j, nc);
      if (seen[s]) continue;
      seen[s] = true;
      parent[s] = index(k, c);
      queue.emplace_back(j, nc);
    }
  }
  return std::nullopt;
}

}  // namespace kfl
