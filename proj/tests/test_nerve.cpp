#include <catch_amalgamated.hpp>

#include <desc2/fixtures.hpp>
#include <desc2/nerve.hpp>

#include <set>

using namespace desc2;

namespace
{

std::vector<TwoGroupoid> fixture_groupoids()
{
    return {TwoGroupoid(),
            delooping(cyclic_group(2)),
            delooping(cyclic_group(3)),
            double_delooping(cyclic_group(2)),
            double_delooping(cyclic_group(3)),
            codiscrete(2),
            discrete_on_blocks(3, {{0, 1}}),
            adjoined_object_fixture(),
            crossed_module_2group(trivial_crossed_module(cyclic_group(2), cyclic_group(2)))};
}

/// All boundary-compatible tetrahedra that satisfy the equation, found by
/// trying every tuple of cells.
std::set<std::vector<Id>> brute_tetrahedra(const TwoGroupoid& G)
{
    std::set<std::vector<Id>> out;
    const Id n1 = static_cast<Id>(G.num_one_cells()), n2 = static_cast<Id>(G.num_two_cells());
    for (Id g01 = 0; g01 < n1; ++g01)
        for (Id g12 = 0; g12 < n1; ++g12)
            for (Id g23 = 0; g23 < n1; ++g23) {
                if (G.tgt(g01) != G.src(g12) || G.tgt(g12) != G.src(g23))
                    continue;
                for (Id g02 = 0; g02 < n1; ++g02)
                    for (Id g13 = 0; g13 < n1; ++g13)
                        for (Id g03 = 0; g03 < n1; ++g03)
                            for (Id a012 = 0; a012 < n2; ++a012)
                                for (Id a013 = 0; a013 < n2; ++a013)
                                    for (Id a023 = 0; a023 < n2; ++a023)
                                        for (Id a123 = 0; a123 < n2; ++a123) {
                                            NerveTetrahedron t{g01, g02, g03, g12, g13, g23, a012, a013, a023, a123};
                                            if (tetrahedron_typed(G, t) && tetrahedron_commutes(G, t))
                                                out.insert({g01, g02, g03, g12, g13, g23, a012, a013, a023, a123});
                                        }
            }
    return out;
}

/// 4-simplices computed algebraically: 1-cells g_ij and 2-cells a_ijk on
/// [4] with all five tetrahedra commutative; returned as their boundaries
/// in the nerve's ids.
std::set<std::array<Id, 5>> algebraic_level4(const TwoGroupoid& G, const TwoNerve& N)
{
    std::set<std::array<Id, 5>> out;
    const auto& tets = N.keys[3];
    // A 4-simplex is determined by the tetrahedra d_4 (on 0123) and the
    // cells g_i4, a_ij4; enumerate those directly.
    for (const auto& t : tets) {
        std::array<std::array<Id, 5>, 5> g{};
        g[0][1] = t[0], g[0][2] = t[1], g[0][3] = t[2], g[1][2] = t[3], g[1][3] = t[4], g[2][3] = t[5];
        const Id x3 = G.tgt(g[2][3]);
        for (Id g34 : G.one_cells_from(x3))
            for (Id g24 : G.hom1(G.src(g[2][3]), G.tgt(g34)))
                for (Id g14 : G.hom1(G.src(g[1][2]), G.tgt(g34)))
                    for (Id g04 : G.hom1(G.src(g[0][1]), G.tgt(g34))) {
                        g[3][4] = g34, g[2][4] = g24, g[1][4] = g14, g[0][4] = g04;
                        // a_ij4 for ij in 01,02,03,12,13,23
                        std::vector<std::pair<int, int>> pairs{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
                        std::vector<std::vector<Id>> choices;
                        for (auto [i, j] : pairs)
                            choices.push_back(G.hom2(g[i][4], G.c1(g[j][4], g[i][j])));
                        std::vector<std::size_t> idx(6, 0);
                        bool empty = false;
                        for (const auto& c : choices)
                            empty = empty || c.empty();
                        if (empty)
                            continue;
                        while (true) {
                            std::array<std::array<std::array<Id, 5>, 5>, 5> a{};
                            a[0][1][2] = t[6], a[0][1][3] = t[7], a[0][2][3] = t[8], a[1][2][3] = t[9];
                            for (int p = 0; p < 6; ++p)
                                a[pairs[p].first][pairs[p].second][4] = choices[p][idx[p]];
                            bool ok = true;
                            std::array<Id, 5> faces{};
                            for (int skip = 0; skip <= 4 && ok; ++skip) {
                                std::array<int, 4> v{};
                                int q = 0;
                                for (int i = 0; i <= 4; ++i)
                                    if (i != skip)
                                        v[q++] = i;
                                NerveTetrahedron T{g[v[0]][v[1]],       g[v[0]][v[2]],       g[v[0]][v[3]],
                                                   g[v[1]][v[2]],       g[v[1]][v[3]],       g[v[2]][v[3]],
                                                   a[v[0]][v[1]][v[2]], a[v[0]][v[1]][v[3]], a[v[0]][v[2]][v[3]],
                                                   a[v[1]][v[2]][v[3]]};
                                ok = tetrahedron_commutes(G, T);
                                if (ok)
                                    faces[skip] = N.find(3, {T.g01, T.g02, T.g03, T.g12, T.g13, T.g23, T.a012, T.a013,
                                                             T.a023, T.a123});
                            }
                            if (ok)
                                out.insert(faces);
                            int p = 5;
                            while (p >= 0 && ++idx[p] == choices[p].size())
                                idx[p--] = 0;
                            if (p < 0)
                                break;
                        }
                    }
    }
    return out;
}

} // namespace

TEST_CASE("nerve level counts")
{
    auto T = two_nerve(TwoGroupoid()).sset;
    for (int n = 0; n <= 3; ++n)
        CHECK(T.count(n) == 1);

    auto B = two_nerve(delooping(cyclic_group(2))).sset;
    CHECK(B.count(0) == 1);
    CHECK(B.count(1) == 2);
    CHECK(B.count(2) == 4);
    CHECK(B.count(3) == 8);

    auto BB = two_nerve(double_delooping(cyclic_group(2))).sset;
    CHECK(BB.count(0) == 1);
    CHECK(BB.count(1) == 1);
    CHECK(BB.count(2) == 2);
    CHECK(BB.count(3) == 8);
    // Independent count: a013 + a123 = a023 + a012 over Z/2.
    int solutions = 0;
    for (int m = 0; m < 16; ++m) {
        int a012 = m & 1, a013 = (m >> 1) & 1, a023 = (m >> 2) & 1, a123 = (m >> 3) & 1;
        solutions += ((a013 + a123) % 2) == ((a023 + a012) % 2);
    }
    CHECK(solutions == 8);
}

TEST_CASE("nerves are valid Kan complexes and tetrahedra match the equation")
{
    for (const auto& G : fixture_groupoids()) {
        auto N = two_nerve(G);
        CHECK(validate_sset(N.sset).ok());
        CHECK(kan_check(N.sset, 4).ok());
        std::set<std::vector<Id>> fast(N.keys[3].begin(), N.keys[3].end());
        if (G.num_two_cells() <= 6)
            CHECK(fast == brute_tetrahedra(G));
        for (Id t = 0; t < N.sset.count(2); ++t)
            CHECK(triangle_typed(G, N.triangle(t)));
        for (Id t = 0; t < N.sset.count(3); ++t)
            CHECK(tetrahedron_commutes(G, N.tetrahedron(t)));
    }
}

TEST_CASE("level-4 matching families are the algebraic 4-simplices")
{
    for (const auto& G : {delooping(cyclic_group(2)), double_delooping(cyclic_group(2)), codiscrete(2),
                          delooping(cyclic_group(3))}) {
        auto N = two_nerve(G);
        auto l4 = level4_simplices(N.sset);
        std::set<std::array<Id, 5>> s(l4.begin(), l4.end());
        CHECK(s == algebraic_level4(G, N));
    }
}

TEST_CASE("nerve of functors")
{
    auto B = double_delooping(cyclic_group(2));
    auto NB = two_nerve(B);
    CHECK(nerve_of_functor(identity_functor(B), NB, NB) == identity_map(NB.sset));

    TwoGroupoid T;
    auto NT = two_nerve(T);
    auto c = nerve_of_functor(collapse_functor(B), NB, NT);
    CHECK(validate_simplicial_map(c, NB.sset, NT.sset).ok());
    REQUIRE(c.level[2].size() == 2);
    CHECK(c.level[2][0] == 0);
    CHECK(c.level[2][1] == 0);

    // Functoriality: A -> B2(Z/2) -> terminal.
    auto A = adjoined_object_fixture();
    auto NA = two_nerve(A);
    auto [pc, pb] = product_projections(codiscrete(2), B);
    auto lhs = nerve_of_functor(compose_functors(collapse_functor(B), pb), NA, NT);
    auto rhs = compose_maps(c, nerve_of_functor(pb, NA, NB));
    CHECK(lhs == rhs);
    CHECK(validate_simplicial_map(nerve_of_functor(pb, NA, NB), NA.sset, NB.sset).ok());
}

TEST_CASE("nerve preserves products")
{
    TwoGroupoid T;
    CHECK(check_nerve_product(T, T).ok);
    auto r = check_nerve_product(delooping(cyclic_group(2)), double_delooping(cyclic_group(2)));
    CHECK(r.ok);
    CHECK(r.nerve_of_product[2] == 8);
    auto fx = fixture_groupoids();
    for (std::size_t i = 0; i < fx.size(); ++i)
        for (std::size_t j = 0; j < fx.size(); ++j) {
            if (fx[i].num_two_cells() * fx[j].num_two_cells() > 16)
                continue;
            CHECK(check_nerve_product(fx[i], fx[j]).ok);
        }
}
