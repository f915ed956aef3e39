#include "corpus.hpp"

#include <algorithm>
#include <string>

namespace spinnet::testing {

std::optional<SpinNetwork> random_network(std::mt19937_64& rng, const CorpusSpec& spec) {
  const int nv = std::uniform_int_distribution<int>(spec.min_vertices, spec.max_vertices)(rng);
  std::vector<std::pair<int, int>> slots;
  for (int v = 0; v < nv; ++v) {
    for (int s = 0; s < 3; ++s) slots.emplace_back(v, s);
  }
  std::shuffle(slots.begin(), slots.end(), rng);
  std::bernoulli_distribution pair_up(0.5);

  // each entry: one or two (vertex, slot) ends
  std::vector<std::vector<std::pair<int, int>>> shape;
  for (std::size_t i = 0; i < slots.size();) {
    if (i + 1 < slots.size() && (spec.closed || pair_up(rng))) {
      shape.push_back({slots[i], slots[i + 1]});
      i += 2;
    } else {
      shape.push_back({slots[i]});
      i += 1;
    }
  }
  if (spec.closed && slots.size() % 2 != 0) return std::nullopt;
  // occasionally add a bare edge with two free ends
  if (!spec.closed && std::bernoulli_distribution(0.1)(rng)) shape.push_back({});
  if (static_cast<int>(shape.size()) > spec.max_edges) return std::nullopt;
  int free = 0;
  for (const auto& s : shape) free += 2 - static_cast<int>(s.size());
  if (free < spec.min_free_ends) return std::nullopt;

  std::uniform_int_distribution<int> label(0, spec.max_label);
  for (int attempt = 0; attempt < 4000; ++attempt) {
    std::vector<int> labels(shape.size());
    int strands = 0;
    for (auto& l : labels) {
      l = label(rng);
      strands += l;
    }
    if (strands > spec.max_strands) continue;
    std::vector<std::array<int, 3>> at(static_cast<std::size_t>(nv));
    for (std::size_t e = 0; e < shape.size(); ++e) {
      for (const auto& [v, s] : shape[e]) at[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)] = labels[e];
    }
    const bool ok = std::all_of(at.begin(), at.end(),
                                [](const auto& t) { return vertex_admissible(t[0], t[1], t[2]); });
    if (!ok) continue;

    std::vector<Edge> edges;
    std::vector<Vertex> vertices(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) vertices[static_cast<std::size_t>(v)].id = "v" + std::to_string(v);
    for (std::size_t e = 0; e < shape.size(); ++e) {
      edges.push_back(Edge{"e" + std::to_string(e), SpinLabel(labels[e])});
      for (std::size_t side = 0; side < shape[e].size(); ++side) {
        const auto [v, s] = shape[e][side];
        vertices[static_cast<std::size_t>(v)].slots[static_cast<std::size_t>(s)] = EndRef{e, static_cast<int>(side)};
      }
    }
    return SpinNetwork(std::move(edges), std::move(vertices));
  }
  return std::nullopt;
}

std::vector<SpinNetwork> make_corpus(std::uint64_t seed, std::size_t count, const CorpusSpec& spec) {
  std::mt19937_64 rng(seed);
  std::vector<SpinNetwork> out;
  while (out.size() < count) {
    if (auto net = random_network(rng, spec)) out.push_back(std::move(*net));
  }
  return out;
}

SpinNetwork from_edge_list(int vertex_count, const std::vector<std::pair<int, int>>& ends,
                           const std::vector<int>& labels) {
  std::vector<Edge> edges;
  std::vector<Vertex> vertices(static_cast<std::size_t>(vertex_count));
  std::vector<int> used(static_cast<std::size_t>(vertex_count), 0);
  for (int v = 0; v < vertex_count; ++v) vertices[static_cast<std::size_t>(v)].id = "v" + std::to_string(v);
  for (std::size_t e = 0; e < ends.size(); ++e) {
    edges.push_back(Edge{"e" + std::to_string(e), SpinLabel(labels.at(e))});
    const std::array<int, 2> vs{ends[e].first, ends[e].second};
    for (int side = 0; side < 2; ++side) {
      const auto v = static_cast<std::size_t>(vs[static_cast<std::size_t>(side)]);
      vertices[v].slots[static_cast<std::size_t>(used[v]++)] = EndRef{e, side};
    }
  }
  return SpinNetwork(std::move(edges), std::move(vertices));
}

SpinNetwork theta_network(int a, int b, int c) {
  // v = (e0, e1, e2), w = (e0, e2, e1): the planar embedding
  return NetworkBuilder()
      .edge("a", a)
      .edge("b", b)
      .edge("c", c)
      .vertex("v", {"a", "b", "c"})
      .vertex("w", {"a", "c", "b"})
      .build();
}

SpinNetwork tet_network(int a, int b, int c, int d, int e, int f) {
  return NetworkBuilder()
      .edge("a", a)
      .edge("b", b)
      .edge("c", c)
      .edge("d", d)
      .edge("e", e)
      .edge("f", f)
      .vertex("P", {"a", "b", "c"})
      .vertex("Q", {"a", "e", "f"})
      .vertex("R", {"d", "b", "f"})
      .vertex("S", {"d", "e", "c"})
      .build();
}

SpinNetwork k33_network(const std::vector<int>& labels) {
  std::vector<std::pair<int, int>> ends;
  for (int i = 0; i < 3; ++i) {
    for (int j = 3; j < 6; ++j) ends.emplace_back(i, j);
  }
  return from_edge_list(6, ends, labels);
}

SpinNetwork cube_network(const std::vector<int>& labels) {
  const std::vector<std::pair<int, int>> ends{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
                                              {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
  return from_edge_list(8, ends, labels);
}

SpinNetwork prism_network(const std::vector<int>& labels) {
  const std::vector<std::pair<int, int>> ends{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5},
                                              {5, 3}, {0, 3}, {1, 4}, {2, 5}};
  return from_edge_list(6, ends, labels);
}

SpinNetwork scramble_rotations(const SpinNetwork& net, std::mt19937_64& rng, bool allow_reflection) {
  std::vector<Vertex> vertices = net.vertices();
  for (auto& v : vertices) {
    const int r = std::uniform_int_distribution<int>(0, 2)(rng);
    std::rotate(v.slots.begin(), v.slots.begin() + r, v.slots.end());
    if (allow_reflection && std::bernoulli_distribution(0.5)(rng)) std::swap(v.slots[1], v.slots[2]);
  }
  return SpinNetwork(net.edges(), std::move(vertices));
}

bool same_up_to_edge_reversal(const SpinNetwork& a, const SpinNetwork& b) {
  if (a.edges().size() != b.edges().size() || a.vertices().size() != b.vertices().size()) return false;
  if (a.free_ends().size() != b.free_ends().size()) return false;
  for (const Edge& e : a.edges()) {
    const auto other = b.find_edge(e.id);
    if (!other || b.edges()[*other].label != e.label) return false;
  }
  for (const Vertex& v : a.vertices()) {
    const auto other = b.find_vertex(v.id);
    if (!other) return false;
    const Vertex& w = b.vertices()[*other];
    for (std::size_t s = 0; s < 3; ++s) {
      if (a.edges()[v.slots[s].edge].id != b.edges()[w.slots[s].edge].id) return false;
    }
  }
  return true;
}

}  // namespace spinnet::testing
