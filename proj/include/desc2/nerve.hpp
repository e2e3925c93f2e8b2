#pragma once

#include <array>
#include <map>
#include <vector>

#include "functor.hpp"
#include "product.hpp"
#include "sset.hpp"

namespace desc2
{

/// a012: g02 => g12∘g01.
struct NerveTriangle
{
    Id g01, g02, g12, a012;
    bool operator==(const NerveTriangle&) const = default;
};

/// a_ijk: g_ik => g_jk∘g_ij, subject to
/// (a123∘1_{g01}) * a013 = (1_{g23}∘a012) * a023.
struct NerveTetrahedron
{
    Id g01, g02, g03, g12, g13, g23;
    Id a012, a013, a023, a123;
    bool operator==(const NerveTetrahedron&) const = default;
};

inline bool triangle_typed(const TwoGroupoid& G, const NerveTriangle& t)
{
    if (G.tgt(t.g01) != G.src(t.g12) || G.src(t.g02) != G.src(t.g01) || G.tgt(t.g02) != G.tgt(t.g12))
        return false;
    return G.src1(t.a012) == t.g02 && G.tgt1(t.a012) == G.c1(t.g12, t.g01);
}

/// The two sides of the tetrahedron equation.
inline std::pair<Id, Id> tetrahedron_sides(const TwoGroupoid& G, const NerveTetrahedron& t)
{
    Id lhs = G.vc(G.hc(t.a123, G.id2(t.g01)), t.a013);
    Id rhs = G.vc(G.hc(G.id2(t.g23), t.a012), t.a023);
    return {lhs, rhs};
}

inline bool tetrahedron_typed(const TwoGroupoid& G, const NerveTetrahedron& t)
{
    return triangle_typed(G, {t.g01, t.g02, t.g12, t.a012}) && triangle_typed(G, {t.g01, t.g03, t.g13, t.a013}) &&
           triangle_typed(G, {t.g02, t.g03, t.g23, t.a023}) && triangle_typed(G, {t.g12, t.g13, t.g23, t.a123});
}

inline bool tetrahedron_commutes(const TwoGroupoid& G, const NerveTetrahedron& t)
{
    auto [l, r] = tetrahedron_sides(G, t);
    return l == r;
}

namespace detail
{

/// An n-simplex (n <= 3) of a 2-nerve spelled out in full: vertices x_i,
/// 1-cells g_ij (i < j) and 2-cells a_ijk (i < j < k).
struct NerveCells
{
    int n = 0;
    std::array<Id, 4> x{};
    std::array<std::array<Id, 4>, 4> g{};
    std::array<std::array<std::array<Id, 4>, 4>, 4> a{};
};

/// Key layout: level 0 {x0}; level 1 {g01}; level 2 {g01,g02,g12,a012};
/// level 3 {g01,g02,g03,g12,g13,g23,a012,a013,a023,a123}.
inline NerveCells expand_key(const TwoGroupoid& G, int n, const std::vector<Id>& k)
{
    NerveCells c;
    c.n = n;
    switch (n) {
    case 0:
        c.x[0] = k[0];
        break;
    case 1:
        c.g[0][1] = k[0];
        break;
    case 2:
        c.g[0][1] = k[0];
        c.g[0][2] = k[1];
        c.g[1][2] = k[2];
        c.a[0][1][2] = k[3];
        break;
    default:
        c.g[0][1] = k[0];
        c.g[0][2] = k[1];
        c.g[0][3] = k[2];
        c.g[1][2] = k[3];
        c.g[1][3] = k[4];
        c.g[2][3] = k[5];
        c.a[0][1][2] = k[6];
        c.a[0][1][3] = k[7];
        c.a[0][2][3] = k[8];
        c.a[1][2][3] = k[9];
    }
    if (n >= 1) {
        for (int j = 1; j <= n; ++j)
            c.x[j] = G.tgt(c.g[0][j]);
        c.x[0] = G.src(c.g[0][1]);
    }
    return c;
}

inline std::vector<Id> make_key(const NerveCells& c)
{
    switch (c.n) {
    case 0:
        return {c.x[0]};
    case 1:
        return {c.g[0][1]};
    case 2:
        return {c.g[0][1], c.g[0][2], c.g[1][2], c.a[0][1][2]};
    default:
        return {c.g[0][1], c.g[0][2], c.g[0][3], c.g[1][2], c.g[1][3], c.g[2][3],
                c.a[0][1][2], c.a[0][1][3], c.a[0][2][3], c.a[1][2][3]};
    }
}

/// Pullback of an n-simplex along a monotone theta: [m] -> [n]. Repeated
/// vertices get identity 1-cells and identity 2-cells.
inline NerveCells pull_back(const TwoGroupoid& G, const NerveCells& c, int m, const std::array<int, 5>& theta)
{
    NerveCells out;
    out.n = m;
    for (int i = 0; i <= m; ++i)
        out.x[i] = c.x[theta[i]];
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            out.g[i][j] = theta[i] == theta[j] ? G.id1(out.x[i]) : c.g[theta[i]][theta[j]];
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            for (int k = j + 1; k <= m; ++k)
                out.a[i][j][k] = (theta[i] < theta[j] && theta[j] < theta[k]) ? c.a[theta[i]][theta[j]][theta[k]]
                                                                              : G.id2(out.g[i][k]);
    return out;
}

inline std::array<int, 5> coface_map(int n, int i)
{
    std::array<int, 5> t{};
    for (int p = 0; p < n; ++p)
        t[p] = p < i ? p : p + 1;
    return t;
}

inline std::array<int, 5> codegeneracy_map(int n, int i)
{
    std::array<int, 5> t{};
    for (int p = 0; p <= n + 1; ++p)
        t[p] = p <= i ? p : p - 1;
    return t;
}

/// Cell kind (0 object, 1 one-cell, 2 two-cell) of each key position.
inline std::vector<int> key_kinds(int n)
{
    switch (n) {
    case 0:
        return {0};
    case 1:
        return {1};
    case 2:
        return {1, 1, 1, 2};
    default:
        return {1, 1, 1, 1, 1, 1, 2, 2, 2, 2};
    }
}

} // namespace detail

/// The 2-nerve with its content-addressed simplices.
struct TwoNerve
{
    FiniteCoskSSet sset;
    std::array<std::vector<std::vector<Id>>, 4> keys;
    std::array<std::map<std::vector<Id>, Id>, 4> index;

    Id find(int n, const std::vector<Id>& key) const
    {
        auto it = index[n].find(key);
        return it == index[n].end() ? kNone : it->second;
    }

    NerveTriangle triangle(Id t) const
    {
        const auto& k = keys[2][t];
        return {k[0], k[1], k[2], k[3]};
    }

    NerveTetrahedron tetrahedron(Id t) const
    {
        const auto& k = keys[3][t];
        return {k[0], k[1], k[2], k[3], k[4], k[5], k[6], k[7], k[8], k[9]};
    }
};

/// Objects, 1-cells, typed triangles and commutative tetrahedra of G, with
/// faces and degeneracies induced by monotone maps.
inline TwoNerve two_nerve(const TwoGroupoid& G, Budget& budget)
{
    TwoNerve N;
    for (Id x = 0; x < G.num_objects(); ++x)
        N.keys[0].push_back({x});
    for (Id f = 0; f < G.num_one_cells(); ++f)
        N.keys[1].push_back({f});
    for (Id g01 = 0; g01 < G.num_one_cells(); ++g01)
        for (Id g12 : G.one_cells_from(G.tgt(g01)))
            for (Id g02 : G.hom1(G.src(g01), G.tgt(g12)))
                for (Id a : G.hom2(g02, G.c1(g12, g01))) {
                    budget.tick();
                    N.keys[2].push_back({g01, g02, g12, a});
                }
    // The tetrahedron equation solves for a023 given the other three faces.
    for (const auto& t : N.keys[2]) {
        const Id g01 = t[0], g02 = t[1], g12 = t[2], a012 = t[3];
        const Id x0 = G.src(g01), x1 = G.tgt(g01);
        for (Id g23 : G.one_cells_from(G.tgt(g12))) {
            const Id x3 = G.tgt(g23);
            for (Id g13 : G.hom1(x1, x3))
                for (Id g03 : G.hom1(x0, x3))
                    for (Id a123 : G.hom2(g13, G.c1(g23, g12)))
                        for (Id a013 : G.hom2(g03, G.c1(g13, g01))) {
                            budget.tick();
                            const Id lhs = G.vc(G.hc(a123, G.id2(g01)), a013);
                            const Id w = G.hc(G.id2(g23), a012);
                            const Id a023 = G.vc(G.vertical_inverse(w), lhs);
                            N.keys[3].push_back({g01, g02, g03, g12, g13, g23, a012, a013, a023, a123});
                        }
        }
    }
    for (int n = 0; n <= 3; ++n)
        for (Id i = 0; i < N.keys[n].size(); ++i)
            N.index[n].emplace(N.keys[n][i], i);
    N.sset = detail::sset_from_keys(
        N.keys,
        [&](int n, int i, const std::vector<Id>& k) {
            auto c = detail::expand_key(G, n, k);
            return detail::make_key(detail::pull_back(G, c, n - 1, detail::coface_map(n, i)));
        },
        [&](int n, int i, const std::vector<Id>& k) {
            auto c = detail::expand_key(G, n, k);
            return detail::make_key(detail::pull_back(G, c, n + 1, detail::codegeneracy_map(n, i)));
        });
    return N;
}

inline TwoNerve two_nerve(const TwoGroupoid& G)
{
    Budget b;
    return two_nerve(G, b);
}

/// Level-wise image of the simplices of N(G) under F.
inline SimplicialMap nerve_of_functor(const TwoFunctor& F, const TwoNerve& NG, const TwoNerve& NH)
{
    SimplicialMap m;
    for (int n = 0; n <= 3; ++n) {
        const auto kinds = detail::key_kinds(n);
        for (const auto& k : NG.keys[n]) {
            std::vector<Id> img(k.size());
            for (std::size_t p = 0; p < k.size(); ++p)
                img[p] = kinds[p] == 0 ? F.obj(k[p]) : kinds[p] == 1 ? F.one(k[p]) : F.two(k[p]);
            const Id y = NH.find(n, img);
            if (y == kNone)
                throw StructuralError("functor image of a level-" + std::to_string(n) + " simplex is not a simplex");
            m.level[n].push_back(y);
        }
    }
    return m;
}

struct NerveProductCheck
{
    bool ok = false;
    std::array<std::size_t, 4> nerve_of_product{};
    std::array<std::size_t, 4> product_of_nerves{};
    std::string detail;
};

/// Builds the comparison N(G×H) -> N(G) × N(H) simplex by simplex and
/// checks that it is bijective on every level and simplicial.
inline NerveProductCheck check_nerve_product(const TwoGroupoid& G, const TwoGroupoid& H, Budget& budget)
{
    NerveProductCheck out;
    const TwoGroupoid P = product(G, H);
    const TwoNerve NP = two_nerve(P, budget), NG = two_nerve(G, budget), NH = two_nerve(H, budget);
    const FiniteCoskSSet S = sset_product(NG.sset, NH.sset);
    const std::array<Id, 3> hsize{static_cast<Id>(H.num_objects()), static_cast<Id>(H.num_one_cells()),
                                  static_cast<Id>(H.num_two_cells())};
    SimplicialMap phi;
    for (int n = 0; n <= 3; ++n) {
        out.nerve_of_product[n] = NP.sset.count(n);
        out.product_of_nerves[n] = S.count(n);
        const auto kinds = detail::key_kinds(n);
        std::vector<char> hit(S.count(n), 0);
        for (const auto& k : NP.keys[n]) {
            budget.tick();
            std::vector<Id> kg(k.size()), kh(k.size());
            for (std::size_t p = 0; p < k.size(); ++p) {
                kg[p] = k[p] / hsize[kinds[p]];
                kh[p] = k[p] % hsize[kinds[p]];
            }
            const Id u = NG.find(n, kg), v = NH.find(n, kh);
            if (u == kNone || v == kNone) {
                out.detail = "a simplex of N(G×H) does not project to simplices at level " + std::to_string(n);
                return out;
            }
            const Id s = u * static_cast<Id>(NH.sset.count(n)) + v;
            if (hit[s]) {
                out.detail = "comparison is not injective at level " + std::to_string(n);
                return out;
            }
            hit[s] = 1;
            phi.level[n].push_back(s);
        }
        for (char h : hit)
            if (!h) {
                out.detail = "comparison is not surjective at level " + std::to_string(n);
                return out;
            }
    }
    if (!validate_simplicial_map(phi, NP.sset, S).ok()) {
        out.detail = "comparison does not commute with faces/degeneracies";
        return out;
    }
    out.ok = true;
    return out;
}

inline NerveProductCheck check_nerve_product(const TwoGroupoid& G, const TwoGroupoid& H)
{
    Budget b;
    return check_nerve_product(G, H, b);
}

} // namespace desc2
