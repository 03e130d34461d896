#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace perspace;

TEST(BoundaryMatrix, E1Degree1) {
    auto K = oracle::e1();
    auto d1 = boundary_matrix(K, full_selection(K), 1);
    EXPECT_EQ(d1.matrix.rows(), 3u);
    EXPECT_EQ(d1.matrix.cols(), 2u);
    for (std::size_t c = 0; c < 2; ++c) {
        int nonzero = 0;
        for (std::size_t r = 0; r < 3; ++r) nonzero += d1.matrix.at(r, c) != 0;
        EXPECT_EQ(nonzero, 2);
    }
    EXPECT_EQ(rank_mod_p(d1), 2u);
    EXPECT_EQ(kernel_basis(d1.matrix).cols(), 0u);
}

TEST(BoundaryMatrix, EdgeCases) {
    auto K = oracle::e1();
    auto top = boundary_matrix(K, full_selection(K), 3);
    EXPECT_EQ(top.matrix.cols(), 0u);

    auto point = make_complex(1, {Simplex{0}}, {{0}});
    auto d0 = boundary_matrix(point, full_selection(point), 0);
    EXPECT_EQ(d0.matrix.rows(), 0u);
    EXPECT_EQ(d0.matrix.cols(), 1u);

    SubcomplexSelection open{std::vector<bool>(K.size(), false)};
    open.mask[*K.index_of(Simplex{0, 1})] = true;
    EXPECT_THROW(boundary_matrix(K, open, 1), PreconditionError);
}

TEST(BoundaryMatrix, SquaresToZeroAnyPrime) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        FieldPrime field(p);
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            RandomComplexSpec spec;
            spec.dimension = 3;
            spec.vertices = 7;
            spec.edge_percent = 70;
            auto K = random_complex(spec, seed);
            auto sel = full_selection(K);
            for (int k = 1; k <= 3; ++k) {
                auto dk = boundary_matrix(K, sel, k, field);
                auto dk1 = boundary_matrix(K, sel, k + 1, field);
                if (dk.matrix.cols() == 0 || dk1.matrix.cols() == 0) continue;
                for (std::size_t c = 0; c < dk1.matrix.cols(); ++c) {
                    auto y = dk.matrix.multiply(dk1.matrix.column(c));
                    EXPECT_TRUE(std::all_of(y.begin(), y.end(), [](auto x) { return x == 0; }));
                }
            }
        }
    }
}

TEST(Linalg, RankAndKernel) {
    EXPECT_EQ(rank_mod_p(FpMatrix(3, 4)), 0u);
    EXPECT_EQ(rank_mod_p(FpMatrix::identity(3)), 3u);
    EXPECT_EQ(kernel_basis(FpMatrix::identity(3)).cols(), 0u);
    EXPECT_EQ(kernel_basis(FpMatrix(1, 2)).cols(), 2u);

    // [1 2; 2 1] is singular over F_3 but not over F_5.
    FieldPrime f3(3);
    FpMatrix m(2, 2, f3);
    m.set(0, 0, 1), m.set(0, 1, 2), m.set(1, 0, 2), m.set(1, 1, 1);
    EXPECT_EQ(rank_mod_p(m), 1u);
    FpMatrix m5(2, 2, FieldPrime(5));
    m5.set(0, 0, 1), m5.set(0, 1, 2), m5.set(1, 0, 2), m5.set(1, 1, 1);
    EXPECT_EQ(rank_mod_p(m5), 2u);
    EXPECT_THROW(FieldPrime(4), std::invalid_argument);
}

TEST(Linalg, KernelColumnsAreIndependentNullVectors) {
    Sampler rng(3);
    for (std::uint32_t p : {2u, 3u, 7u}) {
        for (int trial = 0; trial < 20; ++trial) {
            FpMatrix m(4, 6, FieldPrime(p));
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 6; ++c) m.set(r, c, rng.integer(0, p - 1) * rng.integer(0, 1));
            auto ker = kernel_basis(m);
            EXPECT_EQ(ker.cols(), 6 - rank_mod_p(m));
            EXPECT_EQ(rank_mod_p(ker), ker.cols());
            for (std::size_t c = 0; c < ker.cols(); ++c) {
                auto y = m.multiply(ker.column(c));
                EXPECT_TRUE(std::all_of(y.begin(), y.end(), [](auto x) { return x == 0; }));
            }
        }
    }
}

TEST(Betti, E1Examples) {
    auto K = oracle::e1();
    EXPECT_EQ(betti(K, full_selection(K), 0), 1u);
    EXPECT_EQ(betti(K, sublevel(K, Grade{0, 0}), 0), 2u);
    EXPECT_EQ(betti(K, full_selection(K), 1), 0u);
    EXPECT_EQ(betti(K, full_selection(K), 2), 0u);
    EXPECT_EQ(betti(oracle::c1(), full_selection(oracle::c1()), 1), 1u);
}

TEST(Pbn, E1Examples) {
    auto K = oracle::e1();
    EXPECT_EQ(pbn(K, 0, Grade{0, 0}, Grade{2, 1}).value, 1u);
    EXPECT_EQ(pbn(K, 0, Grade{Rational(1, 4), Rational(1, 4)}, Grade{Rational(7, 4), Rational(3, 4)}).value, 2u);
    EXPECT_EQ(pbn(K, 0, Grade{0, 0}, Grade{0, 0}).value, 2u);
    EXPECT_THROW(pbn(K, 0, Grade{1, 1}, Grade{0, 0}), PreconditionError);
    EXPECT_THROW(pbn(K, 0, Grade{1}, Grade{0, 0}), DimensionMismatch);
}

TEST(Pbn, MatchesBruteForceOracle) {
    Sampler rng(17);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        RandomComplexSpec spec;
        spec.max_simplices = 30;
        auto K = random_complex(spec, seed);
        PbnEvaluator beta(K);
        for (int q = 0; q < 12; ++q) {
            auto [u, v] = random_proper_pair(rng, K.grid());
            for (int k = 0; k <= 2; ++k) {
                auto expected = oracle::pbn_bruteforce(K, k, u, v);
                EXPECT_EQ(pbn(K, k, u, v).value, expected) << "seed " << seed << " k " << k;
                EXPECT_EQ(beta(k, u, v), expected);
            }
        }
    }
}

TEST(Pbn, IdentityAndUpperBound) {
    Sampler rng(4);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto K = random_complex({}, seed);
        for (int q = 0; q < 10; ++q) {
            auto [u, v] = random_proper_pair(rng, K.grid());
            for (int k = 0; k <= 2; ++k) {
                auto bu = betti(K, sublevel(K, u), k), bv = betti(K, sublevel(K, v), k);
                EXPECT_EQ(pbn(K, k, u, u).value, bu);
                EXPECT_LE(pbn(K, k, u, v).value, std::min(bu, bv));
            }
        }
    }
}

TEST(Pbn, HollowTetrahedronOverSeveralPrimes) {
    // Hollow tetrahedron: β_2 = 1 over every field.
    std::vector<Simplex> s;
    for (VertexId a = 0; a < 4; ++a) s.push_back(Simplex{a});
    for (VertexId a = 0; a < 4; ++a)
        for (VertexId b = a + 1; b < 4; ++b) s.push_back(Simplex{a, b});
    s.push_back(Simplex{0, 1, 2}), s.push_back(Simplex{0, 1, 3}), s.push_back(Simplex{0, 2, 3}),
        s.push_back(Simplex{1, 2, 3});
    auto K = make_complex(1, s, std::vector<Grade>(s.size(), Grade{0}));
    for (std::uint32_t p : {2u, 3u, 5u}) {
        EXPECT_EQ(betti(K, full_selection(K), 2, FieldPrime(p)), 1u);
        EXPECT_EQ(betti(K, full_selection(K), 1, FieldPrime(p)), 0u);
    }
}

TEST(Pbn, ZeroAboveDimension) {
    for (const auto& K : {oracle::e1(), oracle::c1()}) {
        PbnEvaluator beta(K);
        for (int k = K.dimension() + 1; k <= K.dimension() + 3; ++k) {
            EXPECT_EQ(betti(K, full_selection(K), k), 0u);
            EXPECT_EQ(pbn(K, k, Grade{-1, -1}, Grade{5, 5}).value, 0u);
            EXPECT_EQ(beta(k, Grade{0, 0}, Grade{5, 5}), 0u);
        }
    }
}

TEST(Diagram1d, Examples) {
    auto point = make_complex(1, {Simplex{0}}, {{0}});
    auto d = diagram_1d(point, 0);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].birth, 0);
    EXPECT_FALSE(d[0].death);

    auto interval = make_complex(1, {Simplex{0}, Simplex{1}, Simplex{0, 1}}, {{0}, {0}, {1}});
    auto d2 = diagram_1d(interval, 0);
    std::vector<DiagramPair> expected{{0, Rational(1)}, {0, std::nullopt}};
    EXPECT_EQ(d2, expected);

    std::vector<Simplex> tri{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
    auto hollow = make_complex(1, tri, std::vector<Grade>(6, Grade{0}));
    auto d3 = diagram_1d(hollow, 1);
    ASSERT_EQ(d3.size(), 1u);
    EXPECT_EQ(d3[0].birth, 0);
    EXPECT_FALSE(d3[0].death);

    EXPECT_THROW(diagram_1d(oracle::e1(), 0), PreconditionError);
}

TEST(Diagram1d, AgreesWithPbnOnEveryGridPair) {
    for (std::uint32_t p : {2u, 3u}) {
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            RandomComplexSpec spec;
            spec.parameters = 1;
            spec.grid_size = 6;
            spec.dimension = 3;
            auto K = random_complex(spec, seed);
            PbnEvaluator beta(K, FieldPrime(p));
            const auto& g = K.grid().axes[0];
            for (int k = 0; k <= 3; ++k) {
                auto dgm = diagram_1d(K, k, FieldPrime(p));
                for (std::size_t i = 0; i < g.size(); ++i)
                    for (std::size_t j = i; j < g.size(); ++j)
                        EXPECT_EQ(beta(k, Grade{g[i]}, Grade{g[j]}), oracle::pbn_from_diagram(dgm, g[i], g[j]));
            }
        }
    }
}
