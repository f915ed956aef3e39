#include "spinnet/eval/evaluate.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

#include "spinnet/core/error.hpp"
#include "spinnet/eval/primitives.hpp"

namespace spinnet {
namespace {

// Mutable multigraph used while reducing. Dead entries stay in place until
// the graph is compacted.
struct WEdge {
  int label = 0;
  std::array<int, 2> vertex{-1, -1};
  std::array<int, 2> slot{-1, -1};
  bool alive = true;
};

struct WVertex {
  std::array<int, 3> edge{-1, -1, -1};
  std::array<int, 3> side{0, 0, 0};
  bool alive = true;
};

int next_slot(int s) { return (s + 1) % 3; }

struct WorkGraph {
  std::vector<WEdge> edges;
  std::vector<WVertex> vertices;

  void attach(int v, int s, int e, int side) {
    vertices[v].edge[s] = e;
    vertices[v].side[s] = side;
    edges[e].vertex[side] = v;
    edges[e].slot[side] = s;
  }

  [[nodiscard]] int label_at(int v, int s) const { return edges[vertices[v].edge[s]].label; }

  [[nodiscard]] int far_vertex(int v, int s) const {
    const WVertex& x = vertices[v];
    return edges[x.edge[s]].vertex[1 - x.side[s]];
  }

  [[nodiscard]] int orientation_sign(int v) const {
    return reorientation_sign(label_at(v, 0), label_at(v, 1), label_at(v, 2));
  }

  [[nodiscard]] int slot_of(int v, int e) const {
    for (int s = 0; s < 3; ++s) {
      if (vertices[v].edge[s] == e) return s;
    }
    return -1;
  }

  [[nodiscard]] std::vector<int> alive_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(vertices.size()); ++v) {
      if (vertices[v].alive) out.push_back(v);
    }
    return out;
  }
};

struct EndPos {
  int edge;
  int side;
};

WorkGraph from_closed_network(const SpinNetwork& net) {
  WorkGraph g;
  g.edges.resize(net.edges().size());
  for (std::size_t e = 0; e < net.edges().size(); ++e) g.edges[e].label = net.edges()[e].label.value();
  g.vertices.resize(net.vertices().size());
  for (std::size_t v = 0; v < net.vertices().size(); ++v) {
    for (int s = 0; s < 3; ++s) {
      const EndRef& end = net.vertices()[v].slots[static_cast<std::size_t>(s)];
      g.attach(static_cast<int>(v), s, static_cast<int>(end.edge), end.side);
    }
  }
  return g;
}

// Subgraph induced by `keep`, reindexed.
WorkGraph extract(const WorkGraph& g, const std::vector<int>& keep) {
  WorkGraph out;
  std::vector<int> vmap(g.vertices.size(), -1);
  std::vector<int> emap(g.edges.size(), -1);
  for (int v : keep) {
    vmap[v] = static_cast<int>(out.vertices.size());
    out.vertices.emplace_back();
  }
  for (int v : keep) {
    for (int s = 0; s < 3; ++s) {
      const int e = g.vertices[v].edge[s];
      if (emap[e] < 0) {
        emap[e] = static_cast<int>(out.edges.size());
        out.edges.push_back(WEdge{g.edges[e].label, {-1, -1}, {-1, -1}, true});
      }
      out.attach(vmap[v], s, emap[e], g.vertices[v].side[s]);
    }
  }
  return out;
}

struct Bubble {
  int v, w, e1, e2;
};

struct Triangle {
  int p, q, r, pq, qr, rp;
};

struct FMove {
  int u, w, e;
  int keep_at_u;  // cycle edge at u, must end up sharing a vertex with keep_at_w
  int keep_at_w;
};

class Reducer {
 public:
  Reducer(EvalCache& cache, const EvalOptions& options)
      : cache_(cache), randomized_(options.move_order_seed.has_value()),
        rng_(options.move_order_seed.value_or(0)) {}

  ExactScalar eval(WorkGraph g) {
    ExactScalar factor = 1;
    while (true) {
      factor *= dissolve_zero_edges(g);
      const std::vector<int> alive = g.alive_vertices();
      if (alive.empty()) return factor;
      if (has_nonzero_bridge(g)) return 0;

      auto comps = components(g);
      if (comps.size() > 1) {
        for (const auto& comp : comps) {
          factor *= eval(extract(g, comp));
          if (factor.is_zero()) return factor;
        }
        return factor;
      }

      if (randomized_) {
        if (!random_step(g, factor)) return factor;
        if (factor.is_zero()) return factor;
        continue;
      }

      if (auto b = find_bubble(g)) {
        factor *= remove_bubble(g, *b);
        if (factor.is_zero()) return factor;
        continue;
      }
      if (auto t = find_triangle(g)) {
        factor *= remove_triangle(g, *t);
        if (factor.is_zero()) return factor;
        continue;
      }
      const FMove m = cheapest_fmove(g, shortest_cycle(g));
      return factor * recouple(g, m);
    }
  }

 private:
  ExactScalar delta(int n) const { return loop_value(SpinLabel(n)); }
  ExactScalar theta(int a, int b, int c) const {
    return theta_value(SpinLabel(a), SpinLabel(b), SpinLabel(c), cache_);
  }
  ExactScalar tet(int a, int b, int c, int d, int e, int f) const {
    return tet_value(SpinLabel(a), SpinLabel(b), SpinLabel(c), SpinLabel(d), SpinLabel(e),
                     SpinLabel(f), cache_);
  }

  // Label-0 units carry no strands: drop them and splice through the
  // (a, a, 0) vertices they leave behind.
  ExactScalar dissolve_zero_edges(WorkGraph& g) const {
    ExactScalar factor = 1;
    bool any = false;
    for (auto& e : g.edges) {
      if (!e.alive || e.label != 0) continue;
      any = true;
      for (int side = 0; side < 2; ++side) {
        if (e.vertex[side] >= 0) g.vertices[e.vertex[side]].edge[e.slot[side]] = -1;
      }
      e.alive = false;
    }
    if (!any) return factor;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
      WVertex& x = g.vertices[v];
      if (!x.alive) continue;
      std::vector<int> present;
      for (int s = 0; s < 3; ++s) {
        if (x.edge[s] >= 0) present.push_back(s);
      }
      if (present.size() == 3) continue;
      if (present.empty()) {
        x.alive = false;
        continue;
      }
      if (present.size() != 2) throw std::logic_error("dangling strand at a label-0 vertex");
      const int p = x.edge[present[0]];
      const int sp = x.side[present[0]];
      const int q = x.edge[present[1]];
      const int sq = x.side[present[1]];
      x.alive = false;
      if (p == q) {
        factor *= delta(g.edges[p].label);
        g.edges[p].alive = false;
        continue;
      }
      const int far_v = g.edges[q].vertex[1 - sq];
      const int far_s = g.edges[q].slot[1 - sq];
      g.attach(far_v, far_s, p, sp);
      g.edges[q].alive = false;
    }
    return factor;
  }

  static bool has_nonzero_bridge(const WorkGraph& g) {
    const int n = static_cast<int>(g.vertices.size());
    std::vector<int> disc(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0);
    int time = 0;
    bool found = false;
    std::function<void(int, int)> dfs = [&](int v, int parent_edge) {
      disc[v] = low[v] = time++;
      for (int s = 0; s < 3 && !found; ++s) {
        const int e = g.vertices[v].edge[s];
        if (e == parent_edge) continue;
        const int y = g.far_vertex(v, s);
        if (disc[y] < 0) {
          dfs(y, e);
          low[v] = std::min(low[v], low[y]);
          if (low[y] > disc[v] && g.edges[e].label != 0) found = true;
        } else {
          low[v] = std::min(low[v], disc[y]);
        }
      }
    };
    for (int v : g.alive_vertices()) {
      if (disc[v] < 0) dfs(v, -1);
      if (found) return true;
    }
    return false;
  }

  static std::vector<std::vector<int>> components(const WorkGraph& g) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(g.vertices.size(), 0);
    for (int root : g.alive_vertices()) {
      if (seen[root]) continue;
      std::vector<int> comp{root};
      seen[root] = 1;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        for (int s = 0; s < 3; ++s) {
          const int y = g.far_vertex(comp[i], s);
          if (!seen[y]) {
            seen[y] = 1;
            comp.push_back(y);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    return out;
  }

  static std::vector<Bubble> find_bubbles(const WorkGraph& g, bool first_only) {
    std::vector<Bubble> out;
    for (int v : g.alive_vertices()) {
      for (int s = 0; s < 3; ++s) {
        for (int t = s + 1; t < 3; ++t) {
          const int e1 = g.vertices[v].edge[s];
          const int e2 = g.vertices[v].edge[t];
          if (e1 == e2) continue;
          const int w = g.far_vertex(v, s);
          if (w == v || w != g.far_vertex(v, t)) continue;
          if (w < v) continue;  // each bubble once
          out.push_back(Bubble{v, w, e1, e2});
          if (first_only) return out;
        }
      }
    }
    return out;
  }

  static std::optional<Bubble> find_bubble(const WorkGraph& g) {
    auto all = find_bubbles(g, true);
    if (all.empty()) return std::nullopt;
    return all.front();
  }

  static std::vector<Triangle> find_triangles(const WorkGraph& g, bool first_only) {
    std::vector<Triangle> out;
    for (int p : g.alive_vertices()) {
      for (int s = 0; s < 3; ++s) {
        for (int t = 0; t < 3; ++t) {
          if (s == t) continue;
          const int q = g.far_vertex(p, s);
          const int r = g.far_vertex(p, t);
          if (q == p || r == p || q == r) continue;
          if (!(p < q && p < r)) continue;  // rooted at the smallest vertex
          for (int u = 0; u < 3; ++u) {
            if (g.far_vertex(q, u) != r) continue;
            out.push_back(Triangle{p, q, r, g.vertices[p].edge[s], g.vertices[q].edge[u],
                                   g.vertices[p].edge[t]});
            if (first_only) return out;
          }
        }
      }
    }
    return out;
  }

  static std::optional<Triangle> find_triangle(const WorkGraph& g) {
    auto all = find_triangles(g, true);
    if (all.empty()) return std::nullopt;
    return all.front();
  }

  // Cycle as the ordered list of its edges, together with the vertices
  // between consecutive edges: edges[i] joins vertices[i] and vertices[i+1].
  struct Cycle {
    std::vector<int> vertices;
    std::vector<int> edges;
  };

  Cycle shortest_cycle(const WorkGraph& g) {
    std::vector<int> roots = g.alive_vertices();
    if (randomized_) std::shuffle(roots.begin(), roots.end(), rng_);
    int best_len = -1;
    Cycle best;
    const std::size_t n = g.vertices.size();
    for (int root : roots) {
      std::vector<int> dist(n, -1);
      std::vector<int> parent_edge(n, -1);
      std::vector<int> parent(n, -1);
      std::vector<int> queue{root};
      dist[root] = 0;
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const int x = queue[qi];
        if (best_len >= 0 && 2 * dist[x] + 1 >= best_len) break;
        for (int s = 0; s < 3; ++s) {
          const int e = g.vertices[x].edge[s];
          if (e == parent_edge[x]) continue;
          const int y = g.far_vertex(x, s);
          if (y == x) continue;
          if (dist[y] < 0) {
            dist[y] = dist[x] + 1;
            parent_edge[y] = e;
            parent[y] = x;
            queue.push_back(y);
          } else {
            const int len = dist[x] + dist[y] + 1;
            if (best_len < 0 || len < best_len) {
              best_len = len;
              // root .. x, then e, then y .. root
              std::vector<int> up_x{x};
              std::vector<int> ex;
              for (int z = x; z != root; z = parent[z]) {
                ex.push_back(parent_edge[z]);
                up_x.push_back(parent[z]);
              }
              std::vector<int> up_y{y};
              std::vector<int> ey;
              for (int z = y; z != root; z = parent[z]) {
                ey.push_back(parent_edge[z]);
                up_y.push_back(parent[z]);
              }
              Cycle c;
              c.vertices.assign(up_x.rbegin(), up_x.rend());  // root .. x
              c.edges.assign(ex.rbegin(), ex.rend());
              c.edges.push_back(e);
              for (std::size_t i = 0; i < up_y.size(); ++i) c.vertices.push_back(up_y[i]);
              c.edges.insert(c.edges.end(), ey.begin(), ey.end());
              best = std::move(c);  // vertices: root .. x, y .. root
            }
          }
        }
      }
    }
    if (best_len < 0) throw std::logic_error("bridgeless graph without a cycle");
    return best;
  }

  static FMove fmove_on(const Cycle& c, std::size_t i) {
    const std::size_t len = c.edges.size();
    const int u = c.vertices[i];
    const int w = c.vertices[i + 1];
    return FMove{u, w, c.edges[i], c.edges[(i + len - 1) % len], c.edges[(i + 1) % len]};
  }

  // Brings w to the orientation in which the F-move joins keep_at_u and
  // keep_at_w at one new vertex. Returns the sign incurred and the four legs
  // (A, B at u; C, D at w) in canonical order.
  struct Legs {
    EndPos a, b, c, d;
    int sign;
  };

  static Legs canonical_legs(const WorkGraph& g, const FMove& m) {
    const int su = g.slot_of(m.u, m.e);
    const int sw = g.slot_of(m.w, m.e);
    auto end_at = [&](int v, int s) { return EndPos{g.vertices[v].edge[s], g.vertices[v].side[s]}; };
    Legs legs{end_at(m.u, next_slot(su)), end_at(m.u, next_slot(next_slot(su))),
              end_at(m.w, next_slot(sw)), end_at(m.w, next_slot(next_slot(sw))), 1};
    // New vertices pair (A, D) and (B, C).
    const bool p_is_a = legs.a.edge == m.keep_at_u;
    const bool q_is_d = legs.d.edge == m.keep_at_w;
    if (p_is_a != q_is_d) {
      std::swap(legs.c, legs.d);
      legs.sign = g.orientation_sign(m.w);
    }
    return legs;
  }

  static std::vector<int> fmove_channels(const WorkGraph& g, const Legs& l) {
    const int a = g.edges[l.a.edge].label;
    const int b = g.edges[l.b.edge].label;
    const int c = g.edges[l.c.edge].label;
    const int d = g.edges[l.d.edge].label;
    std::vector<int> out;
    const int lo = std::max(std::abs(a - d), std::abs(b - c));
    const int hi = std::min(a + d, b + c);
    for (int f = lo; f <= hi; ++f) {
      if (vertex_admissible(a, d, f) && vertex_admissible(b, c, f)) out.push_back(f);
    }
    return out;
  }

  FMove cheapest_fmove(const WorkGraph& g, const Cycle& c) {
    std::optional<FMove> best;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      const FMove m = fmove_on(c, i);
      const std::size_t count = fmove_channels(g, canonical_legs(g, m)).size();
      if (!best || count < best_count) {
        best = m;
        best_count = count;
      }
    }
    return *best;
  }

  // I-shaped pair u = (e, A, B), w = (e, C, D) becomes the H-shaped pair
  // x = (f, D, A), y = (f, B, C), summed over f with the 6j coefficient
  // delta_f Tet / (theta(A, D, f) theta(B, C, f)).
  ExactScalar recouple(const WorkGraph& g, const FMove& m) {
    const Legs l = canonical_legs(g, m);
    const int le = g.edges[m.e].label;
    const int la = g.edges[l.a.edge].label;
    const int lb = g.edges[l.b.edge].label;
    const int lc = g.edges[l.c.edge].label;
    const int ld = g.edges[l.d.edge].label;
    ExactScalar total = 0;
    for (int f : fmove_channels(g, l)) {
      const ExactScalar coeff = delta(f) * tet(le, la, lb, f, lc, ld) / (theta(la, ld, f) * theta(lb, lc, f));
      if (coeff.is_zero()) continue;
      WorkGraph h = g;
      h.edges[m.e].label = f;
      const int side_u = h.edges[m.e].vertex[0] == m.u ? 0 : 1;
      const int side_w = 1 - side_u;
      h.attach(m.u, 0, m.e, side_u);
      h.attach(m.u, 1, l.d.edge, l.d.side);
      h.attach(m.u, 2, l.a.edge, l.a.side);
      h.attach(m.w, 0, m.e, side_w);
      h.attach(m.w, 1, l.b.edge, l.b.side);
      h.attach(m.w, 2, l.c.edge, l.c.side);
      total += coeff * eval(std::move(h));
    }
    return total * ExactScalar(l.sign);
  }

  // Planar bubble: v = (g, e1, e2), w = (h, e2, e1) collapses to a single
  // strand joining g and h, weighted theta(e1, e2, c) / delta_c.
  ExactScalar remove_bubble(WorkGraph& g, const Bubble& b) {
    const int sv1 = g.slot_of(b.v, b.e1);
    const int sv2 = g.slot_of(b.v, b.e2);
    const int svg = 3 - sv1 - sv2;
    const int sw1 = g.slot_of(b.w, b.e1);
    const int sw2 = g.slot_of(b.w, b.e2);
    const int swh = 3 - sw1 - sw2;
    int sign = 1;
    if (next_slot(svg) != sv1) sign *= g.orientation_sign(b.v);
    if (next_slot(swh) != sw2) sign *= g.orientation_sign(b.w);

    const int eg = g.vertices[b.v].edge[svg];
    const int side_g = g.vertices[b.v].side[svg];
    const int eh = g.vertices[b.w].edge[swh];
    const int side_h = g.vertices[b.w].side[swh];
    const int c = g.edges[eg].label;
    if (c != g.edges[eh].label) return 0;

    ExactScalar factor = theta(g.edges[b.e1].label, g.edges[b.e2].label, c) / delta(c) * ExactScalar(sign);
    g.edges[b.e1].alive = false;
    g.edges[b.e2].alive = false;
    g.vertices[b.v].alive = false;
    g.vertices[b.w].alive = false;
    if (eg == eh) {
      // theta graph: the remaining strand closes on itself
      g.edges[eg].alive = false;
      return factor * delta(c);
    }
    const int far_v = g.edges[eh].vertex[1 - side_h];
    const int far_s = g.edges[eh].slot[1 - side_h];
    g.attach(far_v, far_s, eg, side_g);
    g.edges[eh].alive = false;
    return factor;
  }

  // Planar triangle p = (x, pq, rp), q = (y, qr, pq), r = (z, rp, qr)
  // collapses to one vertex (x, y, z), weighted Tet / theta(x, y, z).
  ExactScalar remove_triangle(WorkGraph& g, const Triangle& t) {
    const int p_pq = g.slot_of(t.p, t.pq);
    const int p_rp = g.slot_of(t.p, t.rp);
    const int p_x = 3 - p_pq - p_rp;
    const int q_qr = g.slot_of(t.q, t.qr);
    const int q_pq = g.slot_of(t.q, t.pq);
    const int q_y = 3 - q_qr - q_pq;
    const int r_rp = g.slot_of(t.r, t.rp);
    const int r_qr = g.slot_of(t.r, t.qr);
    const int r_z = 3 - r_rp - r_qr;
    int sign = 1;
    if (next_slot(p_x) != p_pq) sign *= g.orientation_sign(t.p);
    if (next_slot(q_y) != q_qr) sign *= g.orientation_sign(t.q);
    if (next_slot(r_z) != r_rp) sign *= g.orientation_sign(t.r);

    const EndPos x{g.vertices[t.p].edge[p_x], g.vertices[t.p].side[p_x]};
    const EndPos y{g.vertices[t.q].edge[q_y], g.vertices[t.q].side[q_y]};
    const EndPos z{g.vertices[t.r].edge[r_z], g.vertices[t.r].side[r_z]};
    const int lx = g.edges[x.edge].label;
    const int ly = g.edges[y.edge].label;
    const int lz = g.edges[z.edge].label;
    const int lpq = g.edges[t.pq].label;
    const int lqr = g.edges[t.qr].label;
    const int lrp = g.edges[t.rp].label;
    if (!vertex_admissible(lx, ly, lz)) return 0;

    ExactScalar factor = tet(lx, ly, lz, lqr, lrp, lpq) / theta(lx, ly, lz) * ExactScalar(sign);
    g.edges[t.pq].alive = false;
    g.edges[t.qr].alive = false;
    g.edges[t.rp].alive = false;
    g.vertices[t.q].alive = false;
    g.vertices[t.r].alive = false;
    g.attach(t.p, 0, x.edge, x.side);
    g.attach(t.p, 1, y.edge, y.side);
    g.attach(t.p, 2, z.edge, z.side);
    return factor;
  }

  // One uniformly chosen move among all bubbles, triangles and, when no
  // bubble exists, recouplings along a shortest cycle. Returns false once
  // the value is final (accumulated into factor).
  bool random_step(WorkGraph& g, ExactScalar& factor) {
    const auto bubbles = find_bubbles(g, false);
    const auto triangles = find_triangles(g, false);
    std::vector<FMove> fmoves;
    if (bubbles.empty()) {
      const Cycle c = shortest_cycle(g);
      for (std::size_t i = 0; i < c.edges.size(); ++i) fmoves.push_back(fmove_on(c, i));
    }
    const std::size_t total = bubbles.size() + triangles.size() + fmoves.size();
    std::size_t pick = std::uniform_int_distribution<std::size_t>(0, total - 1)(rng_);
    if (pick < bubbles.size()) {
      factor *= remove_bubble(g, bubbles[pick]);
      return true;
    }
    pick -= bubbles.size();
    if (pick < triangles.size()) {
      factor *= remove_triangle(g, triangles[pick]);
      return true;
    }
    pick -= triangles.size();
    factor *= recouple(g, fmoves[pick]);
    return false;
  }

  EvalCache& cache_;
  bool randomized_;
  std::mt19937_64 rng_;
};

void require_valid(const SpinNetwork& net) {
  const auto violations = validate_network(net);
  if (!violations.empty()) throw Error(ErrorCode::InvalidNetwork, violations.front().message);
}

}  // namespace

ExactScalar evaluate_closed(const SpinNetwork& net, EvalCache& cache, const EvalOptions& options) {
  require_valid(net);
  if (!net.is_closed()) {
    throw Error(ErrorCode::HasFreeEnds,
                "network has " + std::to_string(net.free_ends().size()) + " free ends");
  }
  if (net.vertices().empty()) return 1;
  Reducer reducer(cache, options);
  return reducer.eval(from_closed_network(net));
}

ExactScalar evaluate_closed(const SpinNetwork& net) { return evaluate_closed(net, default_cache()); }

MirrorDouble mirror_double(const SpinNetwork& net) {
  require_valid(net);
  const auto& edges = net.edges();
  std::vector<Edge> out_edges;
  std::vector<SpinLabel> loops;
  // new end for (edge, side) in the original copy and in the mirror copy
  std::vector<std::array<EndRef, 2>> orig(edges.size());
  std::vector<std::array<EndRef, 2>> mirr(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const bool a0 = net.attachment(EndRef{e, 0}).has_value();
    const bool a1 = net.attachment(EndRef{e, 1}).has_value();
    if (a0 && a1) {
      const std::size_t k = out_edges.size();
      out_edges.push_back(edges[e]);
      out_edges.push_back(Edge{edges[e].id + "*", edges[e].label});
      orig[e] = {EndRef{k, 0}, EndRef{k, 1}};
      mirr[e] = {EndRef{k + 1, 0}, EndRef{k + 1, 1}};
    } else if (a0 || a1) {
      const int side = a0 ? 0 : 1;
      const std::size_t k = out_edges.size();
      out_edges.push_back(edges[e]);
      orig[e][static_cast<std::size_t>(side)] = EndRef{k, 0};
      mirr[e][static_cast<std::size_t>(side)] = EndRef{k, 1};
    } else {
      loops.push_back(edges[e].label);
    }
  }
  std::vector<Vertex> out_vertices;
  for (const Vertex& v : net.vertices()) {
    Vertex x{v.id, {}};
    for (std::size_t s = 0; s < 3; ++s) x.slots[s] = orig[v.slots[s].edge][static_cast<std::size_t>(v.slots[s].side)];
    out_vertices.push_back(x);
  }
  for (const Vertex& v : net.vertices()) {
    Vertex x{v.id + "*", {}};
    const std::array<std::size_t, 3> reversed{0, 2, 1};
    for (std::size_t s = 0; s < 3; ++s) {
      const EndRef& src = v.slots[reversed[s]];
      x.slots[s] = mirr[src.edge][static_cast<std::size_t>(src.side)];
    }
    out_vertices.push_back(x);
  }
  return MirrorDouble{SpinNetwork(std::move(out_edges), std::move(out_vertices)), std::move(loops)};
}

ExactScalar mirror_norm(const SpinNetwork& net, EvalCache& cache, const EvalOptions& options) {
  const MirrorDouble d = mirror_double(net);
  ExactScalar value = evaluate_closed(d.network, cache, options);
  for (SpinLabel n : d.detached_loops) value *= loop_value(n);
  return value;
}

ExactScalar mirror_norm(const SpinNetwork& net) { return mirror_norm(net, default_cache()); }

}  // namespace spinnet
