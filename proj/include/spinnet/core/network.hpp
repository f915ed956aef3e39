#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spinnet {

/// Total angular momentum of a unit in units of hbar/2: label n is spin n/2.
class SpinLabel {
 public:
  constexpr SpinLabel() = default;
  explicit SpinLabel(int value);

  [[nodiscard]] constexpr int value() const noexcept { return value_; }
  /// Dimension of the irreducible representation, n + 1.
  [[nodiscard]] constexpr int dimension() const noexcept { return value_ + 1; }

  friend constexpr auto operator<=>(SpinLabel, SpinLabel) = default;

 private:
  int value_ = 0;
};

/// Triangle inequality plus parity (a + b + c even).
[[nodiscard]] bool vertex_admissible(SpinLabel a, SpinLabel b, SpinLabel c) noexcept;
[[nodiscard]] bool vertex_admissible(int a, int b, int c) noexcept;

/// All c with vertex_admissible(a, b, c), ascending: |a-b|, |a-b|+2, ..., a+b.
[[nodiscard]] std::vector<SpinLabel> admissible_couplings(SpinLabel a, SpinLabel b);

/// One of the two ends of an edge.
struct EndRef {
  std::size_t edge = 0;
  int side = 0;  // 0 or 1

  friend constexpr auto operator<=>(const EndRef&, const EndRef&) = default;
};

struct SlotRef {
  std::size_t vertex = 0;
  int slot = 0;

  friend constexpr auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

struct Edge {
  std::string id;
  SpinLabel label;
};

/// Trivalent vertex. Slots are ordered; the order fixes the cyclic
/// orientation used by the combinatorial evaluator.
struct Vertex {
  std::string id;
  std::array<EndRef, 3> slots;
};

/// Immutable labelled trivalent graph. Edge ends not claimed by any vertex
/// slot are free ends. Construction never rejects input; use
/// validate_network() to check the structural and admissibility invariants.
class SpinNetwork {
 public:
  SpinNetwork() = default;
  SpinNetwork(std::vector<Edge> edges, std::vector<Vertex> vertices);

  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] const std::vector<EndRef>& free_ends() const noexcept { return free_ends_; }

  [[nodiscard]] std::optional<SlotRef> attachment(EndRef end) const;
  [[nodiscard]] bool is_free_end(EndRef end) const;
  [[nodiscard]] bool is_closed() const noexcept { return free_ends_.empty(); }
  [[nodiscard]] bool empty() const noexcept { return edges_.empty() && vertices_.empty(); }

  [[nodiscard]] std::optional<std::size_t> find_edge(std::string_view id) const;
  [[nodiscard]] std::optional<std::size_t> find_vertex(std::string_view id) const;

  [[nodiscard]] SpinLabel label(EndRef end) const { return edges_.at(end.edge).label; }
  [[nodiscard]] SpinLabel slot_label(std::size_t vertex, int slot) const;

  /// "e1" when the edge has a single free end, otherwise "e1:<side>".
  [[nodiscard]] std::string describe(EndRef end) const;

 private:
  std::vector<Edge> edges_;
  std::vector<Vertex> vertices_;
  std::vector<std::array<std::optional<SlotRef>, 2>> attached_;
  std::vector<EndRef> free_ends_;
};

enum class ViolationKind { Structural, Admissibility };

struct Violation {
  ViolationKind kind;
  std::string subject;  // offending vertex or edge id
  std::string message;
};

[[nodiscard]] std::vector<Violation> validate_network(const SpinNetwork& net);
[[nodiscard]] bool is_valid(const SpinNetwork& net);

/// Resolves "e1" (the unique free end of e1) or "e1:0" / "e1:1".
/// Throws Error(NotAFreeEnd) when the reference names no free end.
[[nodiscard]] EndRef resolve_free_end(const SpinNetwork& net, std::string_view ref);

/// Joins two free ends at a new vertex whose third slot carries a fresh edge
/// of `new_label`. The fresh edge is appended last and its side-1 end is free.
[[nodiscard]] SpinNetwork merge_free_ends(const SpinNetwork& net, EndRef a, EndRef b,
                                          SpinLabel new_label);

/// Free end of the edge appended by merge_free_ends (and by every other
/// operation that appends one edge with a free far end).
[[nodiscard]] inline EndRef last_edge_free_end(const SpinNetwork& net) {
  return EndRef{net.edges().size() - 1, 1};
}

/// Smallest "<prefix><k>" not already used as an edge or vertex id.
[[nodiscard]] std::string fresh_id(const SpinNetwork& net, std::string_view prefix);

/// Incremental construction helper. Vertex slots name edges by id; the first
/// use of an edge claims its side 0, the second its side 1.
class NetworkBuilder {
 public:
  NetworkBuilder& edge(std::string id, int label);
  NetworkBuilder& vertex(std::string id, const std::array<std::string, 3>& edge_ids);
  [[nodiscard]] SpinNetwork build() const;

 private:
  std::vector<Edge> edges_;
  std::vector<Vertex> vertices_;
  std::vector<int> uses_;
};

}  // namespace spinnet
