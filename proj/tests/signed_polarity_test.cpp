#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "mlcore/mlcore.hpp"
#include "test_util.hpp"

using namespace mlcore;
using namespace mlcore::testing;

namespace {

Eigen::MatrixXd dense(const SignedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = e.sign;
  return a;
}

double dense_lambda_max(const SignedGraph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(g));
  return es.eigenvalues().maxCoeff();
}

// x'Ax / x'x from the dense matrix.
double dense_polarity(const SignedGraph& g, const Assignment& x) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<Eigen::Index>(i)) = x[i];
  return v.dot(dense(g) * v) / v.squaredNorm();
}

Assignment negate(Assignment x) {
  for (auto& v : x) v = static_cast<std::int8_t>(-v);
  return x;
}

SignedGraph single_edge(int sign) { return SignedGraph::from_edges(2, {{0, 1, sign}}); }

}  // namespace

TEST(Polarity, Examples) {
  auto g = polarized_example();
  Assignment x(4);
  for (const char* u : {"1", "2"}) x[g.labels().id(u)] = 1;
  for (const char* u : {"3", "4"}) x[g.labels().id(u)] = -1;
  EXPECT_DOUBLE_EQ(polarity(g, x), 3.0);
  EXPECT_DOUBLE_EQ(polarity(g, negate(x)), 3.0);

  auto e = single_edge(1);
  EXPECT_DOUBLE_EQ(polarity(e, Assignment{1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(polarity(e, Assignment{1, -1}), -1.0);
  EXPECT_THROW(polarity(e, Assignment{0, 0}), ContractViolation);
  EXPECT_THROW(polarity(e, Assignment{1}), ContractViolation);
}

TEST(Polarity, MatchesDenseQuadraticFormAndIsSignSymmetric) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_signed(10, 0.4, seed);
    Rng rng(seed);
    Assignment x(10);
    for (auto& v : x) v = static_cast<std::int8_t>(static_cast<int>(uniform_below(rng, 3)) - 1);
    if (std::all_of(x.begin(), x.end(), [](std::int8_t v) { return v == 0; })) x[0] = 1;
    EXPECT_NEAR(polarity(g, x), dense_polarity(g, x), 1e-12);
    EXPECT_DOUBLE_EQ(polarity(g, x), polarity(g, negate(x)));
  }
}

TEST(LeadingEigenvector, Examples) {
  auto e = leading_eigenvector(single_edge(1));
  EXPECT_NEAR(e.lambda1, 1.0, 1e-8);
  EXPECT_NEAR(e.v[0], 1 / std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(e.v[1], 1 / std::sqrt(2.0), 1e-6);

  auto g = polarized_example();
  auto p = leading_eigenvector(g);
  EXPECT_NEAR(p.lambda1, 3.0, 1e-8);
  EXPECT_NEAR(p.lambda1, dense_lambda_max(g), 1e-8);
  const double s = p.v[g.labels().id("1")] > 0 ? 1.0 : -1.0;
  for (const char* u : {"1", "2"}) EXPECT_NEAR(s * p.v[g.labels().id(u)], 0.5, 1e-6);
  for (const char* u : {"3", "4"}) EXPECT_NEAR(s * p.v[g.labels().id(u)], -0.5, 1e-6);

  auto none = leading_eigenvector(SignedGraph::from_edges(3, {}));
  EXPECT_TRUE(none.degenerate);
  EXPECT_EQ(none.lambda1, 0.0);
}

TEST(LeadingEigenvector, MatchesDenseSolver) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = random_signed(25, 0.25, seed);
    if (g.edge_count() == 0) continue;
    auto r = leading_eigenvector(g);
    EXPECT_NEAR(r.lambda1, dense_lambda_max(g), 1e-6) << "seed " << seed;
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(r.v.data(), static_cast<Eigen::Index>(r.v.size()));
    EXPECT_NEAR(v.norm(), 1.0, 1e-9);
    EXPECT_LE((dense(g) * v - r.lambda1 * v).norm(), 1e-4) << "seed " << seed;
  }
}

TEST(LeadingEigenvector, LargestMagnitudeTarget) {
  // All-negative triangle: eigenvalues 1, 1, -2.
  auto g = SignedGraph::from_edges(3, {{0, 1, -1}, {1, 2, -1}, {0, 2, -1}});
  EXPECT_NEAR(leading_eigenvector(g).lambda1, 1.0, 1e-8);
  EigenOptions opt;
  opt.target = EigenTarget::largest_magnitude;
  EXPECT_NEAR(std::abs(leading_eigenvector(g, opt).lambda1), 2.0, 1e-8);
}

TEST(LeadingEigenvector, IterationLimitIsAConvergenceError) {
  auto g = random_signed(30, 0.3, 1);
  EigenOptions opt;
  opt.max_iter = 1;
  opt.tol = 1e-15;
  EXPECT_THROW(leading_eigenvector(g, opt), ConvergenceError);
}

TEST(RoundDeterministic, Examples) {
  auto g = polarized_example();
  auto r = round_deterministic(g, leading_eigenvector(g));
  EXPECT_DOUBLE_EQ(r.polarity, 3.0);
  EXPECT_EQ(r.community(1), ids_of(g.labels(), {"1", "2"}));
  EXPECT_EQ(r.community(-1), ids_of(g.labels(), {"3", "4"}));
  EXPECT_EQ(r.neutral_count(), 0u);

  auto e = single_edge(1);
  auto re = round_deterministic(e, leading_eigenvector(e));
  EXPECT_EQ(re.assignment, (Assignment{1, 1}));
  EXPECT_DOUBLE_EQ(re.polarity, 1.0);
}

TEST(RoundDeterministic, TwoOpposedCliquesGetOppositeSigns) {
  std::vector<SignedEdge> edges;
  for (VertexId u = 0; u < 8; ++u)
    for (VertexId v = u + 1; v < 8; ++v) edges.push_back({u, v, (u < 4) == (v < 4) ? 1 : -1});
  auto g = SignedGraph::from_edges(10, edges);
  auto r = round_deterministic(g, leading_eigenvector(g));
  EXPECT_EQ(r.community(1), (VertexSet{0, 1, 2, 3}));
  EXPECT_EQ(r.community(-1), (VertexSet{4, 5, 6, 7}));
  EXPECT_DOUBLE_EQ(r.polarity, brute_force_polarity(g).polarity);
  EXPECT_NEAR(r.polarity, leading_eigenvector(g).lambda1, 1e-8);
}

TEST(RoundDeterministic, ScaleInvariant) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_signed(15, 0.3, seed);
    if (g.edge_count() == 0) continue;
    auto spec = leading_eigenvector(g);
    auto base = round_deterministic(g, spec);
    for (double c : {0.001, 2.0, 1e6}) {
      auto scaled = spec;
      for (auto& x : scaled.v) x *= c;
      EXPECT_EQ(round_deterministic(g, scaled).assignment, base.assignment);
    }
  }
}

TEST(RoundDeterministic, DegenerateSpectrumFallsBack) {
  auto none = SignedGraph::from_edges(3, {});
  EXPECT_THROW(round_deterministic(none, leading_eigenvector(none)), NoSolution);
}

TEST(RoundRandomized, ExamplesAndDeterminism) {
  auto g = polarized_example();
  auto spec = leading_eigenvector(g);
  auto r = round_randomized(g, spec, {32, 7, 1});
  EXPECT_DOUBLE_EQ(r.polarity, 3.0);

  auto e = single_edge(1);
  EXPECT_DOUBLE_EQ(round_randomized(e, leading_eigenvector(e), {16, 0, 1}).polarity, 1.0);

  auto big = random_signed(40, 0.2, 5);
  auto bspec = leading_eigenvector(big);
  auto a = round_randomized(big, bspec, {32, 11, 1});
  auto b = round_randomized(big, bspec, {32, 11, 1});
  auto c = round_randomized(big, bspec, {32, 11, 8});
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.assignment, c.assignment);
  EXPECT_THROW(round_randomized(big, bspec, {0, 0, 1}), ContractViolation);
}

TEST(BruteForce, Examples) {
  EXPECT_DOUBLE_EQ(brute_force_polarity(polarized_example()).polarity, 3.0);
  auto neg = brute_force_polarity(single_edge(-1));
  EXPECT_EQ(neg.assignment, (Assignment{1, -1}));
  EXPECT_DOUBLE_EQ(neg.polarity, 1.0);
  auto tri = brute_force_polarity(SignedGraph::from_edges(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}));
  EXPECT_EQ(tri.assignment, (Assignment{1, 1, 1}));
  EXPECT_DOUBLE_EQ(tri.polarity, 2.0);
  EXPECT_THROW(brute_force_polarity(random_signed(13, 0.2, 0)), CapExceeded);
}

TEST(Guarantees, AgainstBruteForceAndSpectralBound) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 4 + seed % 7;
    auto g = random_signed(n, 0.5, seed);
    if (g.edge_count() == 0) continue;
    const double opt = brute_force_polarity(g).polarity;
    auto spec = leading_eigenvector(g);
    EXPECT_LE(opt, spec.lambda1 + 1e-6);
    auto det = round_deterministic(g, spec);
    auto rnd = round_randomized(g, spec, {32, seed, 1});
    EXPECT_GE(det.polarity, opt / static_cast<double>(n));
    EXPECT_GE(rnd.polarity, opt / std::sqrt(static_cast<double>(n)));
    EXPECT_LE(det.polarity, opt);
    EXPECT_LE(rnd.polarity, opt);
    // Canonical sign: first nonzero entry is +1.
    for (const auto* x : {&det.assignment, &rnd.assignment}) {
      auto first = std::find_if(x->begin(), x->end(), [](std::int8_t v) { return v != 0; });
      ASSERT_NE(first, x->end());
      EXPECT_EQ(*first, 1);
    }
  }
}

TEST(Planted, Construction) {
  auto inst = generate_planted({100, 15, 15, 0.9, 0.9, 0.01, 3});
  EXPECT_EQ(std::count_if(inst.truth.begin(), inst.truth.end(), [](std::int8_t v) { return v != 0; }), 30);
  EXPECT_TRUE(inst.truth_valid);

  auto noise_only = generate_planted({20, 0, 0, 0.9, 0.9, 0.2, 3});
  EXPECT_FALSE(noise_only.truth_valid);

  EXPECT_THROW(generate_planted({10, 6, 6, 0.9, 0.9, 0.0, 0}), ContractViolation);
  EXPECT_THROW(generate_planted({10, 3, 3, 1.5, 0.9, 0.0, 0}), ContractViolation);

  auto a = generate_planted({50, 8, 8, 0.9, 0.9, 0.05, 9});
  auto b = generate_planted({50, 8, 8, 0.9, 0.9, 0.05, 9});
  EXPECT_EQ(a.truth, b.truth);
  std::ostringstream sa, sb;
  write_signed(sa, a.graph);
  write_signed(sb, b.graph);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Planted, NoiseFreeRecoveryIsExactAndBalanced) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = generate_planted({60, 10, 10, 1.0, 1.0, 0.0, seed});
    auto spec = leading_eigenvector(inst.graph);
    auto r = round_deterministic(inst.graph, spec);
    EXPECT_DOUBLE_EQ(support_jaccard(r.assignment, inst.truth), 1.0);
    // Complete balanced split: polarity equals lambda1 of the planted block.
    EXPECT_NEAR(r.polarity, spec.lambda1, 1e-8);
    EXPECT_DOUBLE_EQ(r.polarity, 19.0);
  }
}

TEST(SupportJaccard, Examples) {
  EXPECT_DOUBLE_EQ(support_jaccard(Assignment{1, 0, -1}, Assignment{-1, 0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(support_jaccard(Assignment{1, 1, 0}, Assignment{0, 1, 1}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(support_jaccard(Assignment{0, 0}, Assignment{0, 0}), 1.0);
}
