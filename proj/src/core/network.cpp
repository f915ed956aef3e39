#include "spinnet/core/network.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

#include "spinnet/core/error.hpp"

namespace spinnet {

SpinLabel::SpinLabel(int value) : value_(value) {
  if (value < 0) throw std::invalid_argument("SpinLabel must be non-negative");
}

bool vertex_admissible(int a, int b, int c) noexcept {
  if (a < 0 || b < 0 || c < 0) return false;
  return std::abs(a - b) <= c && c <= a + b && (a + b + c) % 2 == 0;
}

bool vertex_admissible(SpinLabel a, SpinLabel b, SpinLabel c) noexcept {
  return vertex_admissible(a.value(), b.value(), c.value());
}

std::vector<SpinLabel> admissible_couplings(SpinLabel a, SpinLabel b) {
  std::vector<SpinLabel> out;
  for (int c = std::abs(a.value() - b.value()); c <= a.value() + b.value(); c += 2) {
    out.emplace_back(c);
  }
  return out;
}

SpinNetwork::SpinNetwork(std::vector<Edge> edges, std::vector<Vertex> vertices)
    : edges_(std::move(edges)), vertices_(std::move(vertices)), attached_(edges_.size()) {
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    for (int s = 0; s < 3; ++s) {
      const EndRef& end = vertices_[v].slots[static_cast<std::size_t>(s)];
      if (end.edge >= edges_.size() || (end.side != 0 && end.side != 1)) continue;
      auto& slot = attached_[end.edge][static_cast<std::size_t>(end.side)];
      if (!slot) slot = SlotRef{v, s};
    }
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    for (int side = 0; side < 2; ++side) {
      if (!attached_[e][static_cast<std::size_t>(side)]) free_ends_.push_back(EndRef{e, side});
    }
  }
}

std::optional<SlotRef> SpinNetwork::attachment(EndRef end) const {
  if (end.edge >= edges_.size() || (end.side != 0 && end.side != 1)) return std::nullopt;
  return attached_[end.edge][static_cast<std::size_t>(end.side)];
}

bool SpinNetwork::is_free_end(EndRef end) const {
  return end.edge < edges_.size() && (end.side == 0 || end.side == 1) &&
         !attached_[end.edge][static_cast<std::size_t>(end.side)];
}

std::optional<std::size_t> SpinNetwork::find_edge(std::string_view id) const {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].id == id) return e;
  }
  return std::nullopt;
}

std::optional<std::size_t> SpinNetwork::find_vertex(std::string_view id) const {
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].id == id) return v;
  }
  return std::nullopt;
}

SpinLabel SpinNetwork::slot_label(std::size_t vertex, int slot) const {
  return edges_.at(vertices_.at(vertex).slots.at(static_cast<std::size_t>(slot)).edge).label;
}

std::string SpinNetwork::describe(EndRef end) const {
  const std::string& id = edges_.at(end.edge).id;
  const bool both_free = is_free_end(EndRef{end.edge, 0}) && is_free_end(EndRef{end.edge, 1});
  return both_free ? id + ":" + std::to_string(end.side) : id;
}

std::vector<Violation> validate_network(const SpinNetwork& net) {
  std::vector<Violation> out;
  const auto& edges = net.edges();
  const auto& vertices = net.vertices();

  std::set<std::string> seen;
  for (const Edge& e : edges) {
    if (e.id.empty()) out.push_back({ViolationKind::Structural, e.id, "edge with empty id"});
    if (!seen.insert(e.id).second) {
      out.push_back({ViolationKind::Structural, e.id, "duplicate id '" + e.id + "'"});
    }
  }
  for (const Vertex& v : vertices) {
    if (v.id.empty()) out.push_back({ViolationKind::Structural, v.id, "vertex with empty id"});
    if (!seen.insert(v.id).second) {
      out.push_back({ViolationKind::Structural, v.id, "duplicate id '" + v.id + "'"});
    }
  }

  std::map<EndRef, std::size_t> claims;
  for (std::size_t vi = 0; vi < vertices.size(); ++vi) {
    const Vertex& v = vertices[vi];
    bool slots_ok = true;
    for (const EndRef& end : v.slots) {
      if (end.edge >= edges.size() || (end.side != 0 && end.side != 1)) {
        out.push_back({ViolationKind::Structural, v.id,
                       "vertex '" + v.id + "' references a nonexistent edge end"});
        slots_ok = false;
        continue;
      }
      auto [it, inserted] = claims.emplace(end, vi);
      if (!inserted) {
        out.push_back({ViolationKind::Structural, v.id,
                       "end " + std::to_string(end.side) + " of edge '" + edges[end.edge].id +
                           "' is claimed by vertex '" + vertices[it->second].id + "' and by '" +
                           v.id + "'"});
      }
    }
    if (!slots_ok) continue;
    const int a = edges[v.slots[0].edge].label.value();
    const int b = edges[v.slots[1].edge].label.value();
    const int c = edges[v.slots[2].edge].label.value();
    if (!vertex_admissible(a, b, c)) {
      out.push_back({ViolationKind::Admissibility, v.id,
                     "vertex '" + v.id + "' has inadmissible labels (" + std::to_string(a) + "," +
                         std::to_string(b) + "," + std::to_string(c) + ")"});
    }
  }
  return out;
}

bool is_valid(const SpinNetwork& net) { return validate_network(net).empty(); }

EndRef resolve_free_end(const SpinNetwork& net, std::string_view ref) {
  std::string_view id = ref;
  std::optional<int> side;
  if (const auto colon = ref.rfind(':'); colon != std::string_view::npos) {
    id = ref.substr(0, colon);
    const std::string_view s = ref.substr(colon + 1);
    if (s == "0") side = 0;
    else if (s == "1") side = 1;
    else throw Error(ErrorCode::NotAFreeEnd, "bad end side in '" + std::string(ref) + "'");
  }
  const auto edge = net.find_edge(id);
  if (!edge) throw Error(ErrorCode::NotAFreeEnd, "no edge '" + std::string(id) + "'");
  if (side) {
    const EndRef end{*edge, *side};
    if (!net.is_free_end(end)) {
      throw Error(ErrorCode::NotAFreeEnd, "'" + std::string(ref) + "' is not a free end");
    }
    return end;
  }
  const bool f0 = net.is_free_end(EndRef{*edge, 0});
  const bool f1 = net.is_free_end(EndRef{*edge, 1});
  if (f0 && f1) {
    throw Error(ErrorCode::NotAFreeEnd,
                "edge '" + std::string(id) + "' has two free ends; use '" + std::string(id) +
                    ":0' or '" + std::string(id) + ":1'");
  }
  if (!f0 && !f1) throw Error(ErrorCode::NotAFreeEnd, "edge '" + std::string(id) + "' has no free end");
  return EndRef{*edge, f0 ? 0 : 1};
}

std::string fresh_id(const SpinNetwork& net, std::string_view prefix) {
  for (int k = 1;; ++k) {
    std::string candidate = std::string(prefix) + std::to_string(k);
    if (!net.find_edge(candidate) && !net.find_vertex(candidate)) return candidate;
  }
}

SpinNetwork merge_free_ends(const SpinNetwork& net, EndRef a, EndRef b, SpinLabel new_label) {
  if (!net.is_free_end(a)) throw Error(ErrorCode::NotAFreeEnd, "first end is not a free end");
  if (!net.is_free_end(b)) throw Error(ErrorCode::NotAFreeEnd, "second end is not a free end");
  if (a == b) throw Error(ErrorCode::NotAFreeEnd, "cannot join a free end with itself");
  const SpinLabel la = net.label(a);
  const SpinLabel lb = net.label(b);
  if (!vertex_admissible(la, lb, new_label)) {
    throw Error(ErrorCode::InadmissibleJoin,
                "(" + std::to_string(la.value()) + "," + std::to_string(lb.value()) + "," +
                    std::to_string(new_label.value()) + ") is not admissible");
  }
  std::vector<Edge> edges = net.edges();
  std::vector<Vertex> vertices = net.vertices();
  const std::string vid = fresh_id(net, "j");
  std::string eid = fresh_id(net, "u");
  if (eid == vid) eid += "_";
  edges.push_back(Edge{eid, new_label});
  vertices.push_back(Vertex{vid, {a, b, EndRef{edges.size() - 1, 0}}});
  return SpinNetwork(std::move(edges), std::move(vertices));
}

NetworkBuilder& NetworkBuilder::edge(std::string id, int label) {
  edges_.push_back(Edge{std::move(id), SpinLabel(label)});
  uses_.push_back(0);
  return *this;
}

NetworkBuilder& NetworkBuilder::vertex(std::string id, const std::array<std::string, 3>& edge_ids) {
  Vertex v{std::move(id), {}};
  for (std::size_t s = 0; s < 3; ++s) {
    const auto it = std::find_if(edges_.begin(), edges_.end(),
                                 [&](const Edge& e) { return e.id == edge_ids[s]; });
    if (it == edges_.end()) throw std::invalid_argument("NetworkBuilder: unknown edge " + edge_ids[s]);
    const auto e = static_cast<std::size_t>(it - edges_.begin());
    if (uses_[e] >= 2) throw std::invalid_argument("NetworkBuilder: edge used thrice " + edge_ids[s]);
    v.slots[s] = EndRef{e, uses_[e]++};
  }
  vertices_.push_back(std::move(v));
  return *this;
}

SpinNetwork NetworkBuilder::build() const { return SpinNetwork(edges_, vertices_); }

}  // namespace spinnet
