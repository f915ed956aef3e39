#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "../support/corpus.hpp"
#include "../support/fixtures.hpp"
#include "spinnet/core/error.hpp"
#include "spinnet/eval/primitives.hpp"
#include "spinnet/hilbert/angular.hpp"
#include "spinnet/hilbert/network_map.hpp"

namespace spinnet {
namespace {

HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }

TEST(HalfInteger, AcceptsHalfIntegersOnly) {
  EXPECT_EQ(HalfInteger(1.5).twice(), 3);
  EXPECT_EQ(HalfInteger(-0.5).twice(), -1);
  EXPECT_THROW(HalfInteger(0.3), Error);
  EXPECT_THROW(HalfInteger(std::nan("")), Error);
}

TEST(ClebschGordan, SingletComponent) {
  const SqrtRational cg = clebsch_gordan(h(1), h(1), h(1), h(-1), h(0), h(0));
  EXPECT_EQ(cg.sign, 1);
  EXPECT_EQ(cg.square, mpq_class(1, 2));
  EXPECT_NEAR(cg.to_double(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(clebsch_gordan(h(1), h(-1), h(1), h(1), h(0), h(0)).sign, -1);
}

TEST(ClebschGordan, SelectionRuleGivesZero) {
  EXPECT_TRUE(clebsch_gordan(h(1), h(1), h(1), h(1), h(2), h(0)).is_zero());
  EXPECT_TRUE(clebsch_gordan(h(2), h(2), h(2), h(0), h(6), h(2)).is_zero());  // J > j1 + j2
}

TEST(ClebschGordan, StretchedStateIsOne) {
  for (int t = 0; t <= 10; ++t) {
    const SqrtRational cg = clebsch_gordan(h(t), h(t), h(t), h(t), h(2 * t), h(2 * t));
    EXPECT_EQ(cg.sign, 1);
    EXPECT_EQ(cg.square, mpq_class(1));
  }
}

TEST(ClebschGordan, MalformedArgumentsThrow) {
  try {
    (void)clebsch_gordan(h(1), h(0), h(1), h(1), h(1), h(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedArguments);
  }
  EXPECT_THROW((void)clebsch_gordan(h(-2), h(0), h(1), h(1), h(1), h(1)), Error);
}

TEST(ClebschGordan, CompletenessIsExact) {
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; b <= 6; ++b) {
      for (int ma = -a; ma <= a; ma += 2) {
        for (int mb = -b; mb <= b; mb += 2) {
          mpq_class total = 0;
          for (int J = std::abs(a - b); J <= a + b; J += 2) {
            total += clebsch_gordan(h(a), h(ma), h(b), h(mb), h(J), h(ma + mb)).square;
          }
          ASSERT_EQ(total, mpq_class(1)) << a << ' ' << b << ' ' << ma << ' ' << mb;
        }
      }
    }
  }
}

TEST(ClebschGordan, ColumnsAreOrthonormal) {
  const int a = 3;
  const int b = 4;
  for (int J1 = 1; J1 <= 7; J1 += 2) {
    for (int J2 = 1; J2 <= 7; J2 += 2) {
      for (int M = -std::min(J1, J2); M <= std::min(J1, J2); M += 2) {
        double dot = 0.0;
        for (int ma = -a; ma <= a; ma += 2) {
          const int mb = M - ma;
          if (std::abs(mb) > b) continue;
          dot += clebsch_gordan(h(a), h(ma), h(b), h(mb), h(J1), h(M)).to_double() *
                 clebsch_gordan(h(a), h(ma), h(b), h(mb), h(J2), h(M)).to_double();
        }
        EXPECT_NEAR(dot, J1 == J2 ? 1.0 : 0.0, 1e-13);
      }
    }
  }
}

TEST(SixJ, TriadViolationGivesZero) {
  EXPECT_TRUE(wigner_6j(h(1), h(1), h(1), h(1), h(1), h(1)).is_zero());
  EXPECT_TRUE(wigner_6j(h(2), h(2), h(6), h(2), h(2), h(2)).is_zero());
}

TEST(SixJ, FrozenValue) {
  const SqrtRational v = wigner_6j(h(1), h(1), h(0), h(1), h(1), h(0));
  EXPECT_EQ(v.sign, -1);
  EXPECT_EQ(v.square, mpq_class(1, 4));
  EXPECT_NEAR(v.to_double(), wigner_6j_by_cg_sum(h(1), h(1), h(0), h(1), h(1), h(0)), 1e-14);
}

TEST(SixJ, RacahAgreesWithCgContraction) {
  int checked = 0;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c)
        for (int d = 0; d <= 4; ++d)
          for (int e = 0; e <= 4; ++e)
            for (int f = 0; f <= 4; ++f) {
              const SqrtRational v = wigner_6j(h(a), h(b), h(c), h(d), h(e), h(f));
              if (v.is_zero()) continue;
              ASSERT_NEAR(v.to_double(), wigner_6j_by_cg_sum(h(a), h(b), h(c), h(d), h(e), h(f)), 1e-12);
              ++checked;
            }
  EXPECT_GT(checked, 200);
}

TEST(SixJ, ColumnPermutationsAndRowSwaps) {
  const std::array<int, 6> j{3, 4, 5, 4, 3, 2};
  const SqrtRational base = wigner_6j(h(j[0]), h(j[1]), h(j[2]), h(j[3]), h(j[4]), h(j[5]));
  ASSERT_FALSE(base.is_zero());
  EXPECT_EQ(base, wigner_6j(h(j[1]), h(j[0]), h(j[2]), h(j[4]), h(j[3]), h(j[5])));
  EXPECT_EQ(base, wigner_6j(h(j[2]), h(j[1]), h(j[0]), h(j[5]), h(j[4]), h(j[3])));
  EXPECT_EQ(base, wigner_6j(h(j[1]), h(j[2]), h(j[0]), h(j[4]), h(j[5]), h(j[3])));
  // upper and lower entries swapped in two columns
  EXPECT_EQ(base, wigner_6j(h(j[3]), h(j[4]), h(j[2]), h(j[0]), h(j[1]), h(j[5])));
}

TEST(SixJ, RecouplingMatrixIsOrthogonal) {
  for (int j1 = 1; j1 <= 3; ++j1)
    for (int j2 = 1; j2 <= 3; ++j2)
      for (int j3 = 1; j3 <= 3; ++j3)
        for (int J = 0; J <= j1 + j2 + j3; ++J) {
          if ((j1 + j2 + j3 + J) % 2 != 0) continue;
          std::vector<int> a_vals;
          std::vector<int> b_vals;
          for (int x = std::abs(j1 - j2); x <= j1 + j2; x += 2) {
            if (triad(h(x), h(j3), h(J))) a_vals.push_back(x);
          }
          for (int y = std::abs(j2 - j3); y <= j2 + j3; y += 2) {
            if (triad(h(j1), h(y), h(J))) b_vals.push_back(y);
          }
          ASSERT_EQ(a_vals.size(), b_vals.size());
          const auto n = static_cast<Eigen::Index>(a_vals.size());
          Eigen::MatrixXd u(n, n);
          for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) {
              const int x = a_vals[static_cast<std::size_t>(r)];
              const int y = b_vals[static_cast<std::size_t>(c)];
              const int phase = (j1 + j2 + j3 + J) / 2;
              u(r, c) = (phase % 2 != 0 ? -1.0 : 1.0) * std::sqrt((x + 1.0) * (y + 1.0)) *
                        wigner_6j(h(j1), h(j2), h(x), h(j3), h(J), h(y)).to_double();
            }
          }
          EXPECT_LT((u * u.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
        }
}

TEST(SixJ, SquareMatchesTetrahedronOverThetas) {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c)
        for (int d = 0; d <= 4; ++d)
          for (int e = 0; e <= 4; ++e)
            for (int f = 0; f <= 4; ++f) {
              if (!vertex_admissible(a, b, c) || !vertex_admissible(a, e, f) || !vertex_admissible(d, b, f) ||
                  !vertex_admissible(d, e, c))
                continue;
              const ExactScalar tet = tet_value(SpinLabel(a), SpinLabel(b), SpinLabel(c), SpinLabel(d),
                                                SpinLabel(e), SpinLabel(f));
              const ExactScalar thetas = theta_value(SpinLabel(a), SpinLabel(b), SpinLabel(c)) *
                                         theta_value(SpinLabel(a), SpinLabel(e), SpinLabel(f)) *
                                         theta_value(SpinLabel(d), SpinLabel(b), SpinLabel(f)) *
                                         theta_value(SpinLabel(d), SpinLabel(e), SpinLabel(c));
              const SqrtRational six = wigner_6j(h(a), h(b), h(c), h(d), h(e), h(f));
              ASSERT_EQ(ExactScalar(six.square), tet * tet / abs(thetas));
            }
}

TEST(SpinMatrix, SatisfiesTheAngularMomentumAlgebra) {
  const std::complex<double> i(0.0, 1.0);
  for (int n = 0; n <= 6; ++n) {
    const auto x = spin_matrix(SpinLabel(n), 'x');
    const auto y = spin_matrix(SpinLabel(n), 'y');
    const auto z = spin_matrix(SpinLabel(n), 'z');
    EXPECT_LT((x * y - y * x - i * z).cwiseAbs().maxCoeff(), 1e-13);
    const double j = n / 2.0;
    const Eigen::MatrixXcd casimir = x * x + y * y + z * z;
    EXPECT_LT((casimir - j * (j + 1) * Eigen::MatrixXcd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(LinearMap, SingleEdgeIsIdentity) {
  for (int n = 0; n <= 5; ++n) {
    const auto net = NetworkBuilder().edge("e", n).build();
    for (int in_side = 0; in_side < 2; ++in_side) {
      const LinearMapRep rep = network_to_linear_map(net, {EndRef{0, in_side}}, {EndRef{0, 1 - in_side}});
      ASSERT_EQ(rep.matrix.rows(), n + 1);
      EXPECT_LT((rep.matrix - Eigen::MatrixXcd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff(), 1e-14)
          << n << ' ' << in_side;
    }
  }
}

TEST(LinearMap, SingletProjectionRow) {
  const auto net = testing::singlet_fixture();
  const LinearMapRep rep = network_to_linear_map(net, {EndRef{0, 1}, EndRef{1, 1}}, {EndRef{2, 1}});
  ASSERT_EQ(rep.matrix.rows(), 1);
  ASSERT_EQ(rep.matrix.cols(), 4);
  const std::complex<double> phase = rep.matrix(0, 1) / std::abs(rep.matrix(0, 1));
  const Eigen::RowVector4cd expected(0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0);
  EXPECT_LT((rep.matrix.row(0) / phase - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(LinearMap, RejectsBadInput) {
  const auto bad = NetworkBuilder().edge("a", 1).edge("b", 1).edge("c", 1).vertex("v", {"a", "b", "c"}).build();
  try {
    (void)network_to_linear_map(bad, {}, bad.free_ends());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidNetwork);
  }
  const auto net = testing::triplet_fixture();
  try {
    (void)network_to_linear_map(net, {EndRef{0, 0}}, {EndRef{1, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidPartition);
  }
  EXPECT_THROW((void)network_to_linear_map(net, {EndRef{0, 0}}, {EndRef{0, 1}, EndRef{1, 1}, EndRef{2, 0}}), Error);
}

TEST(LinearMap, CorpusMapsAreIntertwiners) {
  testing::CorpusSpec spec;
  spec.max_vertices = 4;
  spec.max_label = 4;
  std::mt19937_64 rng(99);
  for (const auto& net : testing::make_corpus(7, 120, spec)) {
    std::vector<EndRef> in;
    std::vector<EndRef> out;
    for (const EndRef& e : net.free_ends()) (std::bernoulli_distribution(0.5)(rng) ? in : out).push_back(e);
    const LinearMapRep rep = network_to_linear_map(net, in, out);
    ASSERT_LT(intertwiner_defect(rep), 1e-12);
  }
}

TEST(LinearMap, DefectDetectsANonIntertwiner) {
  LinearMapRep rep{{SpinLabel(1)}, {SpinLabel(1)}, Eigen::MatrixXcd::Identity(2, 2)};
  rep.matrix(0, 0) = 2.0;
  EXPECT_GT(intertwiner_defect(rep), 0.1);
}

TEST(State, IsNormalizedAndRotationInvariantForAClosedUnitPair) {
  const StateVector s = network_to_state(testing::singlet_fixture());
  EXPECT_NEAR(s.norm(), 1.0, 1e-14);
  EXPECT_EQ(s.labels.size(), 3U);
}

// Independent floating-point Born rule: reduced state from the amplitudes,
// projected with numerically assembled coupled states.
std::map<int, double> numeric_born(const SpinNetwork& net, EndRef a, EndRef b) {
  std::vector<EndRef> rest;
  for (const EndRef& e : net.free_ends()) {
    if (e != a && e != b) rest.push_back(e);
  }
  std::vector<EndRef> out{a, b};
  out.insert(out.end(), rest.begin(), rest.end());
  const LinearMapRep rep = network_to_linear_map(net, {}, out);
  const int la = net.label(a).value();
  const int lb = net.label(b).value();
  const Eigen::Index dab = (la + 1) * (lb + 1);
  const Eigen::Index drest = rep.matrix.rows() / dab;
  Eigen::MatrixXcd psi(dab, drest);
  for (Eigen::Index r = 0; r < dab; ++r) {
    for (Eigen::Index c = 0; c < drest; ++c) psi(r, c) = rep.matrix(r * drest + c, 0);
  }
  const double total = psi.squaredNorm();
  std::map<int, double> out_p;
  for (int c = std::abs(la - lb); c <= la + lb; c += 2) {
    double p = 0.0;
    for (int M = -c; M <= c; M += 2) {
      Eigen::RowVectorXcd bra = Eigen::RowVectorXcd::Zero(dab);
      for (int ia = 0; ia <= la; ++ia) {
        for (int ib = 0; ib <= lb; ++ib) {
          const int ma = la - 2 * ia;
          const int mb = lb - 2 * ib;
          if (ma + mb != M) continue;
          bra(ia * (lb + 1) + ib) = clebsch_gordan(h(la), h(ma), h(lb), h(mb), h(c), h(M)).to_double();
        }
      }
      p += (bra * psi).squaredNorm();
    }
    out_p[c] = p / total;
  }
  return out_p;
}

TEST(Born, PairFixtures) {
  const auto singlet = born_join_distribution(testing::singlet_fixture(), EndRef{0, 1}, EndRef{1, 1});
  EXPECT_EQ(singlet.entries.size(), 1U);
  EXPECT_EQ(singlet.probability(SpinLabel(0)), ExactScalar(1));
  EXPECT_EQ(singlet.probability(SpinLabel(2)), ExactScalar(0));
  const auto triplet = born_join_distribution(testing::triplet_fixture(), EndRef{0, 1}, EndRef{1, 1});
  EXPECT_EQ(triplet.probability(SpinLabel(2)), ExactScalar(1));
}

TEST(Born, LabelZeroPartnerIsCertain) {
  const auto net = testing::pair_fixture(3, 3, 0);
  const auto d = born_join_distribution(net, EndRef{0, 1}, EndRef{2, 1});
  ASSERT_EQ(d.entries.size(), 1U);
  EXPECT_EQ(d.probability(SpinLabel(3)), ExactScalar(1));
}

TEST(Born, SplitVertexFrozen) {
  // ends of a (2,2,2) vertex: coupling two of them back
  const auto net = testing::pair_fixture(2, 2, 2);
  const auto d = born_join_distribution(net, EndRef{0, 1}, EndRef{1, 1});
  EXPECT_EQ(d.probability(SpinLabel(2)), ExactScalar(1));
  // the free end of a bare edge against a vertex end is uncorrelated
  const auto two = NetworkBuilder().edge("a", 1).edge("b", 1).edge("c", 2).edge("d", 1).vertex("v", {"a", "b", "c"}).build();
  const auto u = born_join_distribution(two, EndRef{0, 1}, EndRef{3, 0});
  EXPECT_EQ(u.probability(SpinLabel(0)), ExactScalar(1, 4));
  EXPECT_EQ(u.probability(SpinLabel(2)), ExactScalar(3, 4));
}

TEST(Born, RejectsNonFreeEnds) {
  const auto net = testing::triplet_fixture();
  EXPECT_THROW((void)born_join_distribution(net, EndRef{0, 1}, EndRef{1, 0}), Error);
  try {
    (void)born_join_distribution(net, EndRef{0, 1}, EndRef{0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAFreeEnd);
  }
}

TEST(Born, ExactMatchesFloatingPointAndSumsToOne) {
  testing::CorpusSpec spec;
  spec.max_vertices = 3;
  spec.max_label = 4;
  spec.min_free_ends = 2;
  std::mt19937_64 rng(17);
  for (const auto& net : testing::make_corpus(3, 100, spec)) {
    const auto& ends = net.free_ends();
    std::uniform_int_distribution<std::size_t> pick(0, ends.size() - 1);
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    while (j == i) j = pick(rng);
    OutcomeDistribution exact;
    try {
      exact = born_join_distribution(net, ends[i], ends[j]);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::ZeroNorm);
      continue;
    }
    EXPECT_EQ(exact.total(), ExactScalar(1));
    const auto approx = numeric_born(net, ends[i], ends[j]);
    for (const auto& [c, p] : approx) EXPECT_NEAR(exact.probability(SpinLabel(c)).to_double(), p, 1e-12);
  }
}

}  // namespace
}  // namespace spinnet
