#include <gtest/gtest.h>

#include <cmath>

#include "blockfiedler/generators.hpp"
#include "blockfiedler/spectral.hpp"
#include "blockfiedler/verify.hpp"
#include "support/oracles.hpp"

using namespace blockfiedler;

namespace {

std::vector<Graph> starlike_grid() {
    std::vector<Graph> out;
    for (std::size_t r : {3u, 4u})
        for (std::size_t k : {3u, 4u})
            for (const auto &arms : detail::sorted_tuples(r, 3)) out.push_back(gen_block_starlike({r, k, arms}));
    return out;
}

}  // namespace

TEST(SpectralSummary, CompleteGraph) {
    auto s = spectral_summary(gen_complete(4));
    EXPECT_NEAR(s.lambda2, 4.0, 1e-12);
    EXPECT_EQ(s.multiplicity, 3u);
    EXPECT_EQ(s.fiedler_basis.size(), 3u);
    EXPECT_TRUE(s.connected);
}

TEST(SpectralSummary, DisconnectedIsFlagged) {
    auto s = spectral_summary(build_graph(4, {{1, 2}, {3, 4}}));
    EXPECT_FALSE(s.connected);
    EXPECT_NEAR(s.lambda2, 0.0, 1e-12);
}

TEST(SpectralSummary, BlockPathFourByThree) {
    auto s = spectral_summary(gen_block_path({4, 3}));
    EXPECT_NEAR(s.lambda2, 0.32938, 5e-6);
    EXPECT_EQ(s.multiplicity, 1u);
    EXPECT_EQ(s.spectrum.size(), 13u);
    EXPECT_DOUBLE_EQ(s.lambda2, s.spectrum[1]);
}

TEST(SpectralSummary, BasisIsOrthogonalToOnes) {
    for (const auto &g : {gen_block_starlike({4, 3, {1, 1, 1, 1}}), gen_block_path({5, 4}), gen_star(5)}) {
        auto s = spectral_summary(g);
        ASSERT_GE(s.multiplicity, 1u);
        for (const auto &y : s.fiedler_basis) {
            double sum = 0.0;
            for (double x : y) sum += x;
            EXPECT_NEAR(sum, 0.0, 1e-10);
        }
    }
}

TEST(ClassifyPerron, OddBlockPathIsCaseB) {
    auto pc = classify_perron(gen_block_path({4, 3}));
    ASSERT_EQ(pc.classification.verdict, CaseVerdict::B);
    EXPECT_EQ(pc.classification.z, Vertex{7});
    EXPECT_EQ(pc.classification.perron_components.size(), 2u);
    EXPECT_EQ(pc.classification.predicted_multiplicity, 1u);
    ASSERT_EQ(pc.report.vertices.size(), 3u);
    for (const auto &pv : pc.report.vertices) {
        EXPECT_FALSE(pv.maximizers.empty());
        for (const auto &d : pv.perron) EXPECT_GT(d.value, 0.0);
    }
}

TEST(ClassifyPerron, EvenBlockPathIsCaseA) {
    auto pc = classify_perron(gen_block_path({4, 2}));
    EXPECT_EQ(pc.classification.verdict, CaseVerdict::A);
    EXPECT_FALSE(pc.classification.z.has_value());
    for (const auto &pv : pc.report.vertices) EXPECT_EQ(pv.maximizers.size(), 1u);
}

TEST(ClassifyPerron, EqualArmsIsCaseBAtCentral) {
    auto pc = classify_perron(gen_block_starlike({3, 4, {1, 1, 1}}));
    ASSERT_EQ(pc.classification.verdict, CaseVerdict::B);
    EXPECT_EQ(pc.classification.z, Vertex{1});
    EXPECT_EQ(pc.classification.perron_components.size(), 3u);
}

TEST(ClassifyPerron, RejectsGraphsWithoutCutVertex) {
    EXPECT_THROW(classify_perron(gen_complete(4)), PreconditionError);
    EXPECT_THROW(classify_perron(build_graph(4, {{1, 2}, {3, 4}})), PreconditionError);
}

TEST(ClassifyPerron, HugeTieToleranceIsReportedNotResolved) {
    Tolerances tol;
    tol.tie_tol = 0.9;
    EXPECT_THROW(classify_perron(gen_block_path({3, 4}), tol), ConsistencyError);
}

TEST(ClassifyStructural, PathOnThree) {
    const double h = 1.0 / std::sqrt(2.0);
    auto cls = classify_structural(gen_path(3), Vector{h, 0.0, -h});
    EXPECT_EQ(cls.verdict, CaseVerdict::B);
    EXPECT_EQ(cls.z, Vertex{2});
}

TEST(ClassifyStructural, EvenBlockPathMixedMiddleBlock) {
    Graph g = gen_block_path({4, 2});
    auto s = spectral_summary(g);
    ASSERT_EQ(s.multiplicity, 1u);
    auto cls = classify_structural(g, s.fiedler_basis[0], {}, s.lambda2);
    EXPECT_EQ(cls.verdict, CaseVerdict::A);
    ASSERT_TRUE(cls.mixed_block.has_value());
    EXPECT_EQ(*cls.mixed_block, (VertexSet{4, 5, 6, 7}));
    // Either sign of the Fiedler vector gives the same answer.
    Vector neg = s.fiedler_basis[0];
    for (double &x : neg) x = -x;
    EXPECT_EQ(classify_structural(g, neg).mixed_block, cls.mixed_block);
}

TEST(ClassifyStructural, OddBlockPathZeroAtCenter) {
    Graph g = gen_block_path({4, 3});
    auto cls = classify_structural(g, spectral_summary(g));
    EXPECT_EQ(cls.verdict, CaseVerdict::B);
    EXPECT_EQ(cls.z, Vertex{7});
}

TEST(ClassifyStructural, RejectsNonEigenvectors) {
    Graph g = gen_path(3);
    EXPECT_THROW(classify_structural(g, Vector{1, 2, 3}), PreconditionError);
    EXPECT_THROW(classify_structural(g, Vector{1, 1, 1}), PreconditionError);
    EXPECT_THROW(classify_structural(g, Vector{0, 0, 0}), PreconditionError);
    EXPECT_THROW(classify_structural(g, Vector{1, 0}), PreconditionError);
    // Eigenvector for lambda = 3, not lambda2.
    EXPECT_THROW(classify_structural(g, Vector{1, -2, 1}, {}, 1.0), PreconditionError);
}

TEST(ClassifyStructural, FlagsUnclassifiablePatterns) {
    // (1,-2,1) is an eigenvector of P_3 but two blocks are mixed.
    EXPECT_THROW(classify_structural(gen_path(3), Vector{1, -2, 1}), ConsistencyError);
    // Zero tolerance so large every entry reads as zero except the peaks.
    Tolerances tol;
    tol.zero_tol = 0.99;
    Graph g = gen_block_path({2, 6});
    auto s = spectral_summary(g);
    EXPECT_THROW(classify_structural(g, s.fiedler_basis[0], tol), ConsistencyError);
}

TEST(PerronFiedlerBasis, PathOnThree) {
    auto b = perron_fiedler_basis(gen_path(3), 2);
    ASSERT_EQ(b.vectors.size(), 1u);
    EXPECT_EQ(b.vectors[0], (Vector{1.0, 0.0, -1.0}));
    EXPECT_NEAR(b.lambda2, 1.0, 1e-12);
}

TEST(PerronFiedlerBasis, EqualArmsGiveTwoVectors) {
    Graph g = gen_block_starlike({3, 4, {1, 1, 1}});
    auto b = perron_fiedler_basis(g, 1);
    EXPECT_EQ(b.vectors.size(), 2u);
    EXPECT_EQ(spectral_summary(g).multiplicity, 2u);
    EXPECT_LE(b.max_residual, 1e-8);
}

TEST(PerronFiedlerBasis, SpansTheEigensolverEigenspace) {
    Graph g = gen_block_path({4, 3});
    auto b = perron_fiedler_basis(g, 7);
    ASSERT_EQ(b.vectors.size(), 1u);
    auto s = spectral_summary(g);
    EXPECT_LE(detail::projection_residual(b.vectors[0], s.fiedler_basis), 1e-9);
    EXPECT_NEAR(b.lambda2, s.lambda2, 1e-10);
}

TEST(PerronFiedlerBasis, RejectsVertexWithoutTie) {
    EXPECT_THROW(perron_fiedler_basis(gen_block_path({4, 3}), 4), PreconditionError);
    EXPECT_THROW(perron_fiedler_basis(gen_block_path({4, 2}), 4), PreconditionError);
}

TEST(TreeType, Paths) {
    auto t3 = tree_type(gen_path(3));
    EXPECT_EQ(t3.type, 1);
    EXPECT_EQ(t3.characteristic_vertex, Vertex{2});
    auto t4 = tree_type(gen_path(4));
    EXPECT_EQ(t4.type, 2);
    ASSERT_TRUE(t4.characteristic_edge.has_value());
    EXPECT_EQ(*t4.characteristic_edge, (VertexPair{2, 3}));
    for (std::size_t n = 2; n <= 12; ++n) EXPECT_EQ(tree_type(gen_path(n)).type, n % 2 == 1 ? 1 : 2) << n;
}

TEST(TreeType, BroomWithHandleThree) {
    auto t = tree_type(gen_broom(3, 3));
    EXPECT_EQ(t.type, 2);
    // Stars are degenerate brooms with a zero hub.
    EXPECT_EQ(tree_type(gen_star(4)).type, 1);
}

TEST(TreeType, RejectsNonTrees) {
    EXPECT_THROW(tree_type(gen_complete(3)), PreconditionError);
    EXPECT_THROW(tree_type(build_graph(4, {{1, 2}, {3, 4}})), PreconditionError);
    EXPECT_THROW(tree_type(gen_path(1)), PreconditionError);
}

// The two classifiers share no code path past the Laplacian; they must agree.
TEST(Invariants, ClassifiersAgreeOnBlockPaths) {
    for (std::size_t k = 2; k <= 6; ++k)
        for (std::size_t p = 1; p <= 8; ++p) {
            Graph g = gen_block_path({k, p});
            auto perron = classify_perron(g).classification;
            auto structural = classify_structural(g, spectral_summary(g));
            EXPECT_EQ(perron.verdict, structural.verdict) << k << "," << p;
            EXPECT_EQ(perron.z, structural.z) << k << "," << p;
        }
}

TEST(Invariants, ClassifiersAgreeOnStarlike) {
    for (const auto &g : starlike_grid()) {
        auto perron = classify_perron(g).classification;
        auto s = spectral_summary(g);
        auto structural = classify_structural(g, s);
        EXPECT_EQ(perron.verdict, structural.verdict);
        EXPECT_EQ(perron.z, structural.z);
        if (perron.verdict == CaseVerdict::B) {
            EXPECT_EQ(s.multiplicity, perron.predicted_multiplicity);
        }
    }
}

TEST(Invariants, CaseBIdentities) {
    std::vector<Graph> graphs = starlike_grid();
    for (std::size_t k = 2; k <= 6; ++k)
        for (std::size_t p = 1; p <= 7; p += 2) graphs.push_back(gen_block_path({k, p}));
    for (const auto &g : graphs) {
        auto pc = classify_perron(g);
        if (pc.classification.verdict != CaseVerdict::B) continue;
        const Vertex z = *pc.classification.z;
        auto s = spectral_summary(g);
        const auto &pz = *pc.report.at(z);
        for (auto i : pz.maximizers) EXPECT_LE(std::abs(s.lambda2 - 1.0 / pz.value(i)), 1e-8);
        for (const auto &y : s.fiedler_basis) {
            const double scale = max_abs(y);
            EXPECT_LE(std::abs(y[z - 1]), 1e-8 * scale);
            for (std::size_t c = 0; c < pz.components.size(); ++c) {
                if (std::find(pz.maximizers.begin(), pz.maximizers.end(), c) != pz.maximizers.end()) continue;
                for (Vertex v : pz.components[c]) EXPECT_LE(std::abs(y[v - 1]), 1e-8 * scale);
            }
        }
        for (const auto &pv : pc.report.vertices) {
            if (pv.vertex == z) continue;
            ASSERT_EQ(pv.maximizers.size(), 1u);
            const auto &c = pv.components[pv.maximizers[0]];
            EXPECT_TRUE(std::binary_search(c.begin(), c.end(), z));
        }
    }
}

TEST(Invariants, AlgebraicConnectivityBoundedByConnectivity) {
    std::vector<Graph> graphs = starlike_grid();
    for (std::size_t k = 2; k <= 6; ++k)
        for (std::size_t p = 1; p <= 6; ++p) graphs.push_back(gen_block_path({k, p}));
    // The bound fails only for complete graphs, where lambda2 = n > n - 1.
    for (const auto &g : graphs) {
        const double l2 = spectral_summary(g).lambda2;
        const auto kappa = block_graph_vertex_connectivity(g);
        EXPECT_LE(l2, static_cast<double>(kappa) + 1e-12);
        if (kappa == 1) {
            EXPECT_LE(l2, 1.0 + 1e-12);
        }
    }
}

TEST(Invariants, WeightedGraphsRunThroughThePipeline) {
    std::map<VertexPair, double> w{{{1, 2}, 2.0}, {{2, 3}, 2.0}};
    Graph g = build_graph(3, {{1, 2}, {2, 3}}, w);
    auto s = spectral_summary(g);
    EXPECT_NEAR(s.lambda2, 2.0, 1e-12);
    auto pc = classify_perron(g);
    EXPECT_EQ(pc.classification.verdict, CaseVerdict::B);
    EXPECT_NEAR(1.0 / pc.report.at(2)->value(0), 2.0, 1e-12);
}
