#include "spinnet/hilbert/network_map.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "spinnet/core/error.hpp"
#include "spinnet/core/exact_scalar.hpp"
#include "spinnet/hilbert/angular.hpp"

namespace spinnet {
namespace {

mpq_class weight(int n, int k) { return mpq_class(factorial(k) * factorial(n - k)); }

struct VertexEntry {
  std::array<int, 3> k;
  mpq_class value;
};

std::vector<VertexEntry> vertex_entries(const std::array<int, 3>& n) {
  std::vector<VertexEntry> out;
  for (int k0 = 0; k0 <= n[0]; ++k0) {
    for (int k1 = 0; k1 <= n[1]; ++k1) {
      const int k2x2 = n[0] + n[1] + n[2] - 2 * k0 - 2 * k1;  // 2 * k2
      if (k2x2 < 0 || k2x2 % 2 != 0 || k2x2 / 2 > n[2]) continue;
      const int k2 = k2x2 / 2;
      mpq_class r = three_j_rational(n[0], n[1], n[2], k0, k1, k2);
      if (sgn(r) != 0) out.push_back(VertexEntry{{k0, k1, k2}, std::move(r)});
    }
  }
  return out;
}

// (-1)^(j - m) w(n, k) for the end that sits on side 0 of the edge.
mpq_class metric(int n, int k_side0) {
  mpq_class w = weight(n, k_side0);
  return (n - k_side0) % 2 != 0 ? mpq_class(-w) : w;
}

void require_valid(const SpinNetwork& net) {
  const auto violations = validate_network(net);
  if (!violations.empty()) throw Error(ErrorCode::InvalidNetwork, violations.front().message);
}

void require_partition(const SpinNetwork& net, const std::vector<EndRef>& legs) {
  std::vector<EndRef> sorted = legs;
  std::sort(sorted.begin(), sorted.end());
  std::vector<EndRef> free = net.free_ends();
  std::sort(free.begin(), free.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidPartition, "an end is listed twice");
  }
  if (sorted != free) throw Error(ErrorCode::InvalidPartition, "ends do not partition the free ends");
}

using EntryMap = std::unordered_map<std::string, mpq_class>;

}  // namespace

std::string RationalTensor::key_of(const std::vector<int>& ks) {
  std::string s(ks.size(), '\0');
  for (std::size_t i = 0; i < ks.size(); ++i) s[i] = static_cast<char>(ks[i]);
  return s;
}

RationalTensor contract_network(const SpinNetwork& net, const std::vector<EndRef>& legs) {
  require_valid(net);
  require_partition(net, legs);
  for (const Edge& e : net.edges()) {
    if (e.label.value() > 60) throw Error(ErrorCode::TooLarge, "label too large for the tensor oracle");
  }

  std::vector<EndRef> open;
  EntryMap entries{{std::string(), mpq_class(1)}};
  mpq_class triangles = 1;

  // bare edges: the normalized metric, D = eps / w
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    if (net.attachment(EndRef{e, 0}) || net.attachment(EndRef{e, 1})) continue;
    const int n = net.edges()[e].label.value();
    EntryMap next;
    for (const auto& [key, val] : entries) {
      for (int k = 0; k <= n; ++k) {
        std::string nk = key;
        nk.push_back(static_cast<char>(k));
        nk.push_back(static_cast<char>(n - k));
        next[nk] += val / metric(n, k);
      }
    }
    entries = std::move(next);
    open.push_back(EndRef{e, 0});
    open.push_back(EndRef{e, 1});
  }

  // vertices in breadth-first order keep the open leg set small
  const std::size_t nv = net.vertices().size();
  std::vector<char> placed(nv, 0);
  std::vector<std::size_t> order;
  for (std::size_t root = 0; root < nv; ++root) {
    if (placed[root]) continue;
    placed[root] = 1;
    order.push_back(root);
    for (std::size_t i = order.size() - 1; i < order.size(); ++i) {
      for (const EndRef& end : net.vertices()[order[i]].slots) {
        const auto far = net.attachment(EndRef{end.edge, 1 - end.side});
        if (far && !placed[far->vertex]) {
          placed[far->vertex] = 1;
          order.push_back(far->vertex);
        }
      }
    }
  }

  for (std::size_t v : order) {
    const Vertex& vx = net.vertices()[v];
    std::array<int, 3> n{};
    for (int s = 0; s < 3; ++s) n[static_cast<std::size_t>(s)] = net.slot_label(v, s).value();
    triangles *= triangle_coefficient(n[0], n[1], n[2]);

    // per slot: index of the open leg it contracts with, the slot of this
    // vertex it contracts with (self-loop), or neither
    std::array<int, 3> with_open{-1, -1, -1};
    std::array<int, 3> with_slot{-1, -1, -1};
    for (int s = 0; s < 3; ++s) {
      const EndRef end = vx.slots[static_cast<std::size_t>(s)];
      const EndRef partner{end.edge, 1 - end.side};
      const auto it = std::find(open.begin(), open.end(), partner);
      if (it != open.end()) {
        with_open[static_cast<std::size_t>(s)] = static_cast<int>(it - open.begin());
        continue;
      }
      for (int t = 0; t < 3; ++t) {
        if (t != s && vx.slots[static_cast<std::size_t>(t)] == partner) with_slot[static_cast<std::size_t>(s)] = t;
      }
    }

    std::vector<char> drop(open.size(), 0);
    for (int p : with_open) {
      if (p >= 0) drop[static_cast<std::size_t>(p)] = 1;
    }
    std::vector<EndRef> next_open;
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (!drop[i]) next_open.push_back(open[i]);
    }
    std::vector<int> new_slots;
    for (int s = 0; s < 3; ++s) {
      if (with_open[static_cast<std::size_t>(s)] < 0 && with_slot[static_cast<std::size_t>(s)] < 0) {
        new_slots.push_back(s);
        next_open.push_back(vx.slots[static_cast<std::size_t>(s)]);
      }
    }

    const auto local = vertex_entries(n);
    EntryMap next;
    for (const auto& [key, val] : entries) {
      for (const VertexEntry& ve : local) {
        mpq_class factor = val * ve.value;
        bool ok = true;
        for (int s = 0; s < 3 && ok; ++s) {
          const auto su = static_cast<std::size_t>(s);
          const int ks = ve.k[su];
          const EndRef end = vx.slots[su];
          if (with_open[su] >= 0) {
            const int kp = static_cast<unsigned char>(key[static_cast<std::size_t>(with_open[su])]);
            if (kp != n[su] - ks) {
              ok = false;
              break;
            }
            factor *= metric(n[su], end.side == 0 ? ks : kp);
          } else if (with_slot[su] > s) {
            const auto tu = static_cast<std::size_t>(with_slot[su]);
            if (ve.k[tu] != n[su] - ks) {
              ok = false;
              break;
            }
            factor *= metric(n[su], end.side == 0 ? ks : ve.k[tu]);
          }
        }
        if (!ok || sgn(factor) == 0) continue;
        std::string nk;
        nk.reserve(next_open.size());
        for (std::size_t i = 0; i < key.size(); ++i) {
          if (!drop[i]) nk.push_back(key[i]);
        }
        for (int s : new_slots) nk.push_back(static_cast<char>(ve.k[static_cast<std::size_t>(s)]));
        next[nk] += factor;
      }
    }
    open = std::move(next_open);
    entries = std::move(next);
  }

  // reorder to the requested legs
  std::vector<std::size_t> position(legs.size());
  for (std::size_t i = 0; i < legs.size(); ++i) {
    // a free end hanging off a vertex is represented by the vertex's leg
    auto it = std::find(open.begin(), open.end(), legs[i]);
    if (it == open.end()) it = std::find(open.begin(), open.end(), EndRef{legs[i].edge, 1 - legs[i].side});
    if (it == open.end()) throw std::logic_error("free end lost during contraction");
    position[i] = static_cast<std::size_t>(it - open.begin());
  }
  RationalTensor out;
  out.legs = legs;
  out.triangles = triangles;
  for (const EndRef& l : legs) out.labels.push_back(net.label(l).value());
  for (auto& [key, val] : entries) {
    if (sgn(val) == 0) continue;
    std::string nk(legs.size(), '\0');
    for (std::size_t i = 0; i < legs.size(); ++i) nk[i] = key[position[i]];
    out.entries.emplace(std::move(nk), std::move(val));
  }
  return out;
}

namespace {

std::size_t dim_product(const std::vector<SpinLabel>& labels) {
  std::size_t d = 1;
  for (SpinLabel l : labels) d *= static_cast<std::size_t>(l.dimension());
  return d;
}

// Applies op (acting on factor `leg`) to every column of m, rows indexed by
// the tensor product of `labels`.
Eigen::MatrixXcd apply_on_leg(const Eigen::MatrixXcd& m, const std::vector<SpinLabel>& labels, std::size_t leg,
                              const Eigen::MatrixXcd& op) {
  std::size_t inner = 1;
  for (std::size_t i = leg + 1; i < labels.size(); ++i) inner *= static_cast<std::size_t>(labels[i].dimension());
  const auto d = static_cast<std::size_t>(labels[leg].dimension());
  const std::size_t outer = static_cast<std::size_t>(m.rows()) / (inner * d);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        const std::complex<double> c = op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (c == std::complex<double>(0.0, 0.0)) continue;
        for (std::size_t i = 0; i < inner; ++i) {
          const auto ra = static_cast<Eigen::Index>((o * d + a) * inner + i);
          const auto rb = static_cast<Eigen::Index>((o * d + b) * inner + i);
          out.row(ra) += c * m.row(rb);
        }
      }
    }
  }
  return out;
}

Eigen::MatrixXcd total_on_rows(const Eigen::MatrixXcd& m, const std::vector<SpinLabel>& labels, char axis) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
  for (std::size_t leg = 0; leg < labels.size(); ++leg) out += apply_on_leg(m, labels, leg, spin_matrix(labels[leg], axis));
  return out;
}

}  // namespace

Eigen::MatrixXcd spin_matrix(SpinLabel n, char axis) {
  const int d = n.dimension();
  const double j = n.value() / 2.0;
  Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = j - i;
    jz(i, i) = m;
    // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> has index i-1
    if (i > 0) jp(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  switch (axis) {
    case 'z':
      return jz;
    case 'x':
      return (jp + jp.adjoint()) / 2.0;
    case 'y':
      return (jp - jp.adjoint()) / std::complex<double>(0.0, 2.0);
    default:
      throw Error(ErrorCode::MalformedArguments, std::string("unknown axis ") + axis);
  }
}

LinearMapRep network_to_linear_map(const SpinNetwork& net, const std::vector<EndRef>& in_ends,
                                   const std::vector<EndRef>& out_ends) {
  std::vector<EndRef> legs = out_ends;
  legs.insert(legs.end(), in_ends.begin(), in_ends.end());
  const RationalTensor t = contract_network(net, legs);

  LinearMapRep rep;
  for (const EndRef& e : in_ends) rep.in_labels.push_back(net.label(e));
  for (const EndRef& e : out_ends) rep.out_labels.push_back(net.label(e));
  const auto rows = static_cast<Eigen::Index>(dim_product(rep.out_labels));
  const auto cols = static_cast<Eigen::Index>(dim_product(rep.in_labels));
  rep.matrix = Eigen::MatrixXcd::Zero(rows, cols);
  const double global = std::sqrt(t.triangles.get_d());

  for (const auto& [key, d] : t.entries) {
    double amp = global * d.get_d();
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    for (std::size_t i = 0; i < legs.size(); ++i) {
      const int n = t.labels[i];
      const int k = static_cast<unsigned char>(key[i]);
      amp *= std::sqrt(weight(n, k).get_d());
      if (i < out_ends.size()) {
        row = row * (n + 1) + (n - k);  // index of m = k - n/2
      } else {
        // input index i carries m_in = n/2 - i; the tensor is read at -m_in,
        // i.e. k = i, through the metric of the edge the end belongs to
        col = col * (n + 1) + k;
        const int flips = legs[i].side == 1 ? k : n - k;
        if (flips % 2 != 0) amp = -amp;
      }
    }
    rep.matrix(row, col) += amp;
  }
  return rep;
}

StateVector network_to_state(const SpinNetwork& net) {
  const LinearMapRep rep = network_to_linear_map(net, {}, net.free_ends());
  StateVector s{rep.out_labels, rep.matrix.col(0)};
  const double nrm = s.amplitudes.norm();
  if (nrm > 0) s.amplitudes /= nrm;
  return s;
}

double intertwiner_defect(const LinearMapRep& rep) {
  double worst = 0.0;
  for (char axis : {'x', 'y', 'z'}) {
    const Eigen::MatrixXcd left = total_on_rows(rep.matrix, rep.out_labels, axis);
    // M J_in = (J_in^T M^T)^T
    const Eigen::MatrixXcd mt = rep.matrix.transpose();
    Eigen::MatrixXcd right_t = Eigen::MatrixXcd::Zero(mt.rows(), mt.cols());
    for (std::size_t leg = 0; leg < rep.in_labels.size(); ++leg) {
      right_t += apply_on_leg(mt, rep.in_labels, leg, spin_matrix(rep.in_labels[leg], axis).transpose());
    }
    const Eigen::MatrixXcd diff = left - right_t.transpose();
    if (diff.size() > 0) worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  return worst;
}

OutcomeDistribution born_join_distribution(const SpinNetwork& net, EndRef a, EndRef b) {
  require_valid(net);
  if (!net.is_free_end(a)) throw Error(ErrorCode::NotAFreeEnd, net.describe(a) + " is not a free end");
  if (!net.is_free_end(b)) throw Error(ErrorCode::NotAFreeEnd, net.describe(b) + " is not a free end");
  if (a == b) throw Error(ErrorCode::NotAFreeEnd, "cannot join an end with itself");

  std::vector<EndRef> legs{a, b};
  for (const EndRef& e : net.free_ends()) {
    if (e != a && e != b) legs.push_back(e);
  }
  const RationalTensor t = contract_network(net, legs);
  const int la = t.labels[0];
  const int lb = t.labels[1];

  // denominator: sum over all basis states of |T|^2 without the global factor
  mpq_class norm = 0;
  // per outcome c, per (rest, 2M): coupled amplitude S, and the rest weight
  struct Group {
    mpq_class rest_weight;
    std::map<int, mpq_class> s_by_c;
  };
  std::map<std::string, Group> groups;
  const std::vector<SpinLabel> outcomes = admissible_couplings(SpinLabel(la), SpinLabel(lb));

  for (const auto& [key, d] : t.entries) {
    mpq_class w_all = 1;
    for (std::size_t i = 0; i < legs.size(); ++i) w_all *= weight(t.labels[i], static_cast<unsigned char>(key[i]));
    norm += w_all * d * d;

    const int ka = static_cast<unsigned char>(key[0]);
    const int kb = static_cast<unsigned char>(key[1]);
    const int tm = (2 * ka - la) + (2 * kb - lb);
    std::string gkey = key.substr(2);
    gkey.push_back(static_cast<char>(tm + 128));
    auto [it, fresh] = groups.try_emplace(gkey);
    Group& g = it->second;
    if (fresh) {
      g.rest_weight = 1;
      for (std::size_t i = 2; i < legs.size(); ++i) g.rest_weight *= weight(t.labels[i], static_cast<unsigned char>(key[i]));
    }
    const mpq_class wab_d = weight(la, ka) * weight(lb, kb) * d;
    for (SpinLabel c : outcomes) {
      const int lc = c.value();
      if (std::abs(tm) > lc) continue;
      const int kc = (lc + tm) / 2;
      // CG = (-1)^(ja - jb + M) sqrt(c + 1) 3j(a b c; ma mb -M)
      mpq_class r = three_j_rational(la, lb, lc, ka, kb, lc - kc);
      if (sgn(r) == 0) continue;
      if (((la - lb + tm) / 2) % 2 != 0) r = -r;
      g.s_by_c[lc] += r * wab_d;
    }
  }
  if (sgn(norm) == 0) throw Error(ErrorCode::ZeroNorm, "the network prepares the zero state");

  OutcomeDistribution dist;
  for (SpinLabel c : outcomes) dist.entries[c] = ExactScalar(0);
  for (const auto& [gkey, g] : groups) {
    const int tm = static_cast<unsigned char>(gkey.back()) - 128;
    for (const auto& [lc, s] : g.s_by_c) {
      const int kc = (lc + tm) / 2;
      const mpq_class contrib = mpq_class(lc + 1) * triangle_coefficient(la, lb, lc) * weight(lc, kc) *
                                g.rest_weight * s * s / norm;
      dist.entries[SpinLabel(lc)] += ExactScalar(contrib);
    }
  }
  std::erase_if(dist.entries, [](const auto& kv) { return kv.second.is_zero(); });
  return dist;
}

}  // namespace spinnet
