#include <catch_amalgamated.hpp>

#include <desc2/fixtures.hpp>
#include <desc2/nerve.hpp>
#include <desc2/sset.hpp>

#include <set>

using namespace desc2;

namespace
{

std::size_t nondegenerate(const FiniteCoskSSet& X, int n)
{
    std::set<Id> degenerate;
    if (n > 0)
        for (int i = 0; i < n; ++i)
            for (Id y = 0; y < X.count(n - 1); ++y)
                degenerate.insert(X.degen(n - 1, i, y));
    return X.count(n) - degenerate.size();
}

/// Removes the 2-simplex t and every 3-simplex having it as a face.
FiniteCoskSSet delete_triangle(const FiniteCoskSSet& X, Id t)
{
    std::vector<Id> new2(X.count(2), kNone), new3(X.count(3), kNone);
    Id k = 0;
    for (Id y = 0; y < X.count(2); ++y)
        if (y != t)
            new2[y] = k++;
    Id m = 0;
    for (Id z = 0; z < X.count(3); ++z) {
        bool keep = true;
        for (int i = 0; i <= 3; ++i)
            keep = keep && X.face(3, i, z) != t;
        if (keep)
            new3[z] = m++;
    }
    std::array<std::size_t, 4> counts{X.count(0), X.count(1), k, m};
    auto faces = X.faces();
    auto degens = X.degens();
    for (int i = 0; i <= 2; ++i) {
        std::vector<Id> d;
        for (Id y = 0; y < X.count(2); ++y)
            if (new2[y] != kNone)
                d.push_back(faces[2][i][y]);
        faces[2][i] = d;
    }
    for (int i = 0; i <= 3; ++i) {
        std::vector<Id> d;
        for (Id z = 0; z < X.count(3); ++z)
            if (new3[z] != kNone)
                d.push_back(new2[faces[3][i][z]]);
        faces[3][i] = d;
    }
    for (int i = 0; i <= 1; ++i)
        for (auto& y : degens[1][i])
            y = new2[y];
    for (int i = 0; i <= 2; ++i) {
        std::vector<Id> s;
        for (Id y = 0; y < X.count(2); ++y)
            if (new2[y] != kNone)
                s.push_back(new3[degens[2][i][y]]);
        degens[2][i] = s;
    }
    return FiniteCoskSSet(counts, faces, degens);
}

} // namespace

TEST_CASE("standard simplices")
{
    auto D0 = standard_simplex(0);
    for (int n = 0; n <= 3; ++n)
        CHECK(D0.count(n) == 1);
    CHECK(validate_sset(D0).ok());

    auto D1 = standard_simplex(1);
    CHECK(D1.count(1) == 3);
    CHECK(nondegenerate(D1, 1) == 1);

    auto D3 = standard_simplex(3);
    CHECK(D3.count(3) == 35);  // weakly increasing 4-tuples in [3]: C(7,4)
    CHECK(nondegenerate(D3, 3) == 1);
    for (int n = 0; n <= 3; ++n)
        CHECK(validate_sset(standard_simplex(n)).ok());
    CHECK_THROWS(standard_simplex(4));
}

TEST_CASE("rewiring one face pointer only breaks identities through it")
{
    auto X = two_nerve(delooping(cyclic_group(2))).sset;
    REQUIRE(validate_sset(X).ok());
    // Pick a nondegenerate triangle and redirect its d_1.
    Id t = 3;
    Id old = X.face(2, 1, t);
    Id other = old == 0 ? 1 : 0;
    auto M = X;
    M.rewire_face(2, 1, t, other);
    auto r = validate_sset(M);
    REQUIRE_FALSE(r.ok());
    CHECK(r.families() == std::set<std::string>{"simplicial"});
    for (const auto& v : r.violations()) {
        const int n = static_cast<int>(v.witness[0]);
        const Id x = static_cast<Id>(v.witness[1]);
        bool through = false;
        if (n == 2)
            through = x == t;
        else if (n == 3)
            for (int i = 0; i <= 3; ++i)
                through = through || X.face(3, i, x) == t;
        else if (n == 1)
            for (int i = 0; i <= 1; ++i)
                through = through || X.degen(1, i, x) == t;
        CHECK(through);
    }
    M.rewire_face(2, 1, t, old);
    CHECK(validate_sset(M).ok());
}

TEST_CASE("level-4 simplices")
{
    CHECK(level4_simplices(standard_simplex(0)).size() == 1);
    auto NZ2 = two_nerve(delooping(cyclic_group(2))).sset;
    CHECK(level4_simplices(NZ2).size() == 16);  // |G|^4

    // Independent enumeration: t4 first, then descend.
    auto X = two_nerve(double_delooping(cyclic_group(2))).sset;
    std::set<std::array<Id, 5>> brute;
    const Id n3 = static_cast<Id>(X.count(3));
    for (Id t4 = 0; t4 < n3; ++t4)
        for (Id t3 = 0; t3 < n3; ++t3)
            for (Id t2 = 0; t2 < n3; ++t2)
                for (Id t1 = 0; t1 < n3; ++t1)
                    for (Id t0 = 0; t0 < n3; ++t0) {
                        std::array<Id, 5> t{t0, t1, t2, t3, t4};
                        bool ok = true;
                        for (int j = 0; j < 5 && ok; ++j)
                            for (int i = 0; i < j && ok; ++i)
                                ok = X.face(3, i, t[j]) == X.face(3, j - 1, t[i]);
                        if (ok)
                            brute.insert(t);
                    }
    auto fast = level4_simplices(X);
    CHECK(std::set<std::array<Id, 5>>(fast.begin(), fast.end()) == brute);
    CHECK(fast.size() == brute.size());
    // B2(Z/2): a 4-simplex is free in the six 2-cells a_0jk.. determined by a_{01k}, a_{0jk}: 2^6.
    CHECK(fast.size() == 64);
}

TEST_CASE("Kan check")
{
    CHECK(kan_check(standard_simplex(0), 4).ok());
    auto X = two_nerve(delooping(cyclic_group(2))).sset;
    CHECK(kan_check(X, 4).ok());
    // Triangle 3 of N(B(Z/2)) is nondegenerate (g01 = g12 = 1).
    auto Y = delete_triangle(X, 3);
    CHECK(validate_sset(Y).ok());
    auto rep = kan_check(Y, 2);
    REQUIRE_FALSE(rep.ok());
    bool two_dim = false;
    for (const auto& h : rep.unfillable)
        two_dim = two_dim || h.n == 2;
    CHECK(two_dim);
    CHECK_FALSE(rep.note.empty());
}

TEST_CASE("path components")
{
    CHECK(sset_pi0(standard_simplex(3)).size() == 1);
    CHECK(sset_pi0(disjoint_union(standard_simplex(0), standard_simplex(0))).size() == 2);
    auto N = two_nerve(discrete_on_blocks(3, {{0, 1}})).sset;
    auto p = sset_pi0(N);
    REQUIRE(p.size() == 2);
    CHECK(p.blocks[0] == std::vector<Id>{0, 1});
    CHECK(p.blocks[1] == std::vector<Id>{2});
}

TEST_CASE("products of simplicial sets")
{
    auto X = two_nerve(adjoined_object_fixture()).sset;
    auto P = sset_product(X, standard_simplex(0));
    for (int n = 0; n <= 3; ++n)
        CHECK(P.count(n) == X.count(n));
    CHECK(P.faces() == X.faces());
    CHECK(P.degens() == X.degens());

    auto Y = standard_simplex(2);
    auto Q = sset_product(X, Y);
    for (int n = 0; n <= 3; ++n)
        CHECK(Q.count(n) == X.count(n) * Y.count(n));
    CHECK(validate_sset(Q).ok());
    CHECK(validate_sset(sset_product(standard_simplex(1), two_nerve(delooping(cyclic_group(3))).sset)).ok());
}

TEST_CASE("malformed tables are structural errors")
{
    auto X = standard_simplex(1);
    auto faces = X.faces();
    faces[1][0][0] = 99;
    std::array<std::size_t, 4> counts{X.count(0), X.count(1), X.count(2), X.count(3)};
    CHECK_THROWS_AS(FiniteCoskSSet(counts, faces, X.degens()), StructuralError);
}
