#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cosimplicial.hpp"
#include "product.hpp"

namespace desc2
{

/// Finite group by multiplication table; mul[g][h] = g·h.
struct FiniteGroup
{
    std::vector<std::vector<Id>> mul;
    Id identity = 0;

    std::size_t order() const { return mul.size(); }
    Id operator()(Id g, Id h) const { return mul[g][h]; }
    Id inverse(Id g) const
    {
        for (Id h = 0; h < order(); ++h)
            if (mul[g][h] == identity)
                return h;
        throw StructuralError("element without inverse");
    }
    bool abelian() const
    {
        for (Id g = 0; g < order(); ++g)
            for (Id h = 0; h < g; ++h)
                if (mul[g][h] != mul[h][g])
                    return false;
        return true;
    }
};

/// Closure, associativity, identity and inverses. Family "group".
inline ValidationReport validate_group(const FiniteGroup& G)
{
    ValidationReport r;
    const Id n = static_cast<Id>(G.order());
    if (n == 0 || G.identity >= n)
        throw StructuralError("group needs at least one element and a valid identity");
    for (const auto& row : G.mul) {
        if (row.size() != n)
            throw StructuralError("group table is not square");
        for (Id v : row)
            if (v >= n)
                throw StructuralError("group table entry out of range");
    }
    for (Id a = 0; a < n; ++a) {
        if (G(G.identity, a) != a || G(a, G.identity) != a)
            r.add("group", "identity law", {a});
        bool inv = false;
        for (Id b = 0; b < n && !inv; ++b)
            inv = G(a, b) == G.identity && G(b, a) == G.identity;
        if (!inv)
            r.add("group", "no inverse", {a});
        for (Id b = 0; b < n; ++b)
            for (Id c = 0; c < n; ++c)
                if (G(G(a, b), c) != G(a, G(b, c)))
                    r.add("group", "associativity", {a, b, c});
    }
    return r;
}

inline FiniteGroup cyclic_group(Id n)
{
    FiniteGroup G;
    G.mul.assign(n, std::vector<Id>(n));
    for (Id a = 0; a < n; ++a)
        for (Id b = 0; b < n; ++b)
            G.mul[a][b] = (a + b) % n;
    return G;
}

/// S_3 as permutations of {0,1,2} in lexicographic order; composition
/// (g·h)(i) = g(h(i)).
inline FiniteGroup symmetric_group3()
{
    std::vector<std::array<Id, 3>> perms;
    std::array<Id, 3> p{0, 1, 2};
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    FiniteGroup G;
    G.mul.assign(6, std::vector<Id>(6));
    for (Id a = 0; a < 6; ++a)
        for (Id b = 0; b < 6; ++b) {
            std::array<Id, 3> c{perms[a][perms[b][0]], perms[a][perms[b][1]], perms[a][perms[b][2]]};
            G.mul[a][b] = static_cast<Id>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return G;
}

/// One object, 1-cells the elements (g∘f = g·f), identity 2-cells only.
inline TwoGroupoid delooping(const FiniteGroup& G)
{
    if (!validate_group(G).ok())
        throw StructuralError("delooping: not a group");
    const Id n = static_cast<Id>(G.order());
    std::vector<OneCell> ones(n, OneCell{0, 0});
    std::vector<TwoCell> twos;
    std::vector<Id> id2;
    for (Id g = 0; g < n; ++g) {
        twos.push_back({g, g});
        id2.push_back(g);
    }
    return TwoGroupoid::generate(
        1, std::move(ones), {G.identity}, std::move(twos), std::move(id2), [&](Id q, Id p) { return G(q, p); },
        [](Id, Id p) { return p; }, [&](Id q, Id p) { return G(q, p); });
}

/// One object, one 1-cell, 2-cells the elements of A; both compositions
/// are the group law, which requires A abelian.
inline TwoGroupoid double_delooping(const FiniteGroup& A)
{
    if (!validate_group(A).ok())
        throw StructuralError("double_delooping: not a group");
    if (!A.abelian())
        throw StructuralError("double_delooping needs an abelian group (interchange would fail)");
    const Id n = static_cast<Id>(A.order());
    std::vector<TwoCell> twos(n, TwoCell{0, 0});
    return TwoGroupoid::generate(
        1, {{0, 0}}, {0}, std::move(twos), {A.identity}, [](Id, Id) { return Id{0}; },
        [&](Id q, Id p) { return A(q, p); }, [&](Id q, Id p) { return A(q, p); });
}

/// Codiscrete groupoid on [0, n): exactly one 1-cell x -> y for every pair,
/// identity 2-cells only. The 1-cell x -> y has id x·n + y.
inline TwoGroupoid codiscrete(Id n)
{
    std::vector<OneCell> ones;
    for (Id x = 0; x < n; ++x)
        for (Id y = 0; y < n; ++y)
            ones.push_back({x, y});
    std::vector<Id> id1;
    for (Id x = 0; x < n; ++x)
        id1.push_back(x * n + x);
    std::vector<TwoCell> twos;
    std::vector<Id> id2;
    for (Id f = 0; f < n * n; ++f) {
        twos.push_back({f, f});
        id2.push_back(f);
    }
    auto c1 = [n](Id q, Id p) { return (p / n) * n + q % n; };
    return TwoGroupoid::generate(n, std::move(ones), std::move(id1), std::move(twos), std::move(id2), c1,
                                 [](Id, Id p) { return p; }, c1);
}

/// Discrete 2-groupoid (identity 2-cells only) on objects [0, n) whose only
/// non-identity 1-cells are the isomorphisms between the listed blocks of
/// objects (each block codiscrete).
inline TwoGroupoid discrete_on_blocks(Id n, const std::vector<std::vector<Id>>& blocks)
{
    std::vector<Id> block(n, kNone);
    for (Id b = 0; b < blocks.size(); ++b)
        for (Id x : blocks[b])
            block[x] = b;
    std::vector<OneCell> ones;
    std::map<std::pair<Id, Id>, Id> index;
    for (Id x = 0; x < n; ++x)
        for (Id y = 0; y < n; ++y)
            if (x == y || (block[x] != kNone && block[x] == block[y])) {
                index[{x, y}] = static_cast<Id>(ones.size());
                ones.push_back({x, y});
            }
    std::vector<Id> id1;
    for (Id x = 0; x < n; ++x)
        id1.push_back(index[{x, x}]);
    std::vector<TwoCell> twos;
    std::vector<Id> id2;
    for (Id f = 0; f < ones.size(); ++f) {
        twos.push_back({f, f});
        id2.push_back(f);
    }
    auto c1 = [&](Id q, Id p) { return index.at({ones[p].src, ones[q].tgt}); };
    return TwoGroupoid::generate(n, ones, std::move(id1), std::move(twos), std::move(id2), c1,
                                 [](Id, Id p) { return p; }, c1);
}

/// ∂: H -> G with a left action of G on H by automorphisms;
/// action[g][h] = ᵍh.
struct CrossedModule
{
    FiniteGroup H;
    FiniteGroup G;
    std::vector<Id> boundary;
    std::vector<std::vector<Id>> action;
};

/// Families "crossed_module" for: ∂ a homomorphism, action by
/// automorphisms, equivariance ∂(ᵍh) = g∂(h)g⁻¹, Peiffer ^{∂h}h' = hh'h⁻¹.
inline ValidationReport validate_crossed_module(const CrossedModule& X)
{
    ValidationReport r = validate_group(X.H);
    r.merge(validate_group(X.G));
    const Id nh = static_cast<Id>(X.H.order()), ng = static_cast<Id>(X.G.order());
    if (X.boundary.size() != nh || X.action.size() != ng)
        throw StructuralError("crossed module tables have the wrong size");
    for (const auto& row : X.action)
        if (row.size() != nh)
            throw StructuralError("crossed module action table has the wrong size");
    const auto& H = X.H;
    const auto& G = X.G;
    for (Id h = 0; h < nh; ++h)
        for (Id k = 0; k < nh; ++k)
            if (X.boundary[H(h, k)] != G(X.boundary[h], X.boundary[k]))
                r.add("crossed_module", "boundary is not a homomorphism", {h, k});
    for (Id g = 0; g < ng; ++g)
        for (Id h = 0; h < nh; ++h) {
            for (Id k = 0; k < nh; ++k)
                if (X.action[g][H(h, k)] != H(X.action[g][h], X.action[g][k]))
                    r.add("crossed_module", "action is not by homomorphisms", {g, h, k});
            for (Id g2 = 0; g2 < ng; ++g2)
                if (X.action[G(g, g2)][h] != X.action[g][X.action[g2][h]])
                    r.add("crossed_module", "action is not a left action", {g, g2, h});
            if (X.boundary[X.action[g][h]] != G(G(g, X.boundary[h]), G.inverse(g)))
                r.add("crossed_module", "equivariance", {g, h});
        }
    for (Id h = 0; h < nh; ++h)
        if (X.action[G.identity][h] != h)
            r.add("crossed_module", "identity does not act trivially", {h});
    for (Id h = 0; h < nh; ++h)
        for (Id k = 0; k < nh; ++k)
            if (X.action[X.boundary[h]][k] != H(H(h, k), H.inverse(h)))
                r.add("crossed_module", "Peiffer identity", {h, k});
    return r;
}

/// One object, 1-cells G, 2-cells (h, g): g => ∂(h)g with id g·|H| + h;
/// vertical composition multiplies in H, horizontal composition is
/// (h2, g2)∘(h1, g1) = (h2·^{g2}h1, g2g1).
inline TwoGroupoid crossed_module_2group(const CrossedModule& X)
{
    if (!validate_crossed_module(X).ok())
        throw StructuralError("crossed_module_2group: invalid crossed module");
    const auto& H = X.H;
    const auto& G = X.G;
    const Id nh = static_cast<Id>(H.order()), ng = static_cast<Id>(G.order());
    std::vector<OneCell> ones(ng, OneCell{0, 0});
    std::vector<TwoCell> twos;
    std::vector<Id> id2;
    for (Id g = 0; g < ng; ++g) {
        id2.push_back(g * nh + H.identity);
        for (Id h = 0; h < nh; ++h)
            twos.push_back({g, G(X.boundary[h], g)});
    }
    auto h_of = [nh](Id a) { return a % nh; };
    auto g_of = [nh](Id a) { return a / nh; };
    return TwoGroupoid::generate(
        1, std::move(ones), {G.identity}, std::move(twos), std::move(id2), [&](Id q, Id p) { return G(q, p); },
        [&](Id b, Id a) { return g_of(a) * nh + H(h_of(b), h_of(a)); },
        [&](Id b, Id a) {
            const Id g2 = g_of(b), g1 = g_of(a);
            return G(g2, g1) * nh + H(h_of(b), X.action[g2][h_of(a)]);
        });
}

/// ∂ trivial and G acting trivially; a crossed module iff A is abelian.
inline CrossedModule trivial_crossed_module(const FiniteGroup& A, const FiniteGroup& G)
{
    CrossedModule X{A, G, std::vector<Id>(A.order(), G.identity), {}};
    for (Id g = 0; g < G.order(); ++g) {
        X.action.emplace_back();
        for (Id h = 0; h < A.order(); ++h)
            X.action.back().push_back(h);
    }
    return X;
}

/// Abstract simplicial complex on vertices [0, n): the downward closure of
/// the listed maximal simplices.
struct CoverComplex
{
    std::size_t vertices = 0;
    std::vector<std::string> names;
    std::set<std::vector<Id>> simplices;  // sorted vertex lists

    static CoverComplex from_maximal(std::size_t n, const std::vector<std::vector<Id>>& maximal,
                                     std::vector<std::string> names = {})
    {
        CoverComplex K;
        K.vertices = n;
        K.names = std::move(names);
        if (K.names.empty())
            for (Id v = 0; v < n; ++v)
                K.names.push_back(std::to_string(v));
        for (auto s : maximal) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            if (s.empty())
                throw ParseError("cover: empty simplex");
            for (Id v : s)
                if (v >= n)
                    throw ParseError("cover: unknown vertex " + std::to_string(v));
            for (unsigned mask = 1; mask < (1u << s.size()); ++mask) {
                std::vector<Id> face;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (mask & (1u << i))
                        face.push_back(s[i]);
                K.simplices.insert(face);
            }
        }
        for (Id v = 0; v < n; ++v)
            if (!K.simplices.count({v}))
                throw ParseError("cover: vertex " + K.names[v] + " lies in no simplex");
        return K;
    }

    bool contains(const std::vector<Id>& s) const { return simplices.count(s) > 0; }

    /// Simplices with d+1 vertices in lexicographic order.
    std::vector<std::vector<Id>> of_dim(int d) const
    {
        std::vector<std::vector<Id>> out;
        for (const auto& s : simplices)
            if (s.size() == static_cast<std::size_t>(d + 1))
                out.push_back(s);
        return out;
    }

    /// Downward closure and singletons. Family "cover".
    ValidationReport validate() const
    {
        ValidationReport r;
        for (const auto& s : simplices)
            for (std::size_t i = 0; s.size() > 1 && i < s.size(); ++i) {
                auto f = s;
                f.erase(f.begin() + i);
                if (!contains(f))
                    r.add("cover", "not downward closed");
            }
        for (Id v = 0; v < vertices; ++v)
            if (!contains({v}))
                r.add("cover", "missing singleton", {v});
        return r;
    }
};

inline CoverComplex point_cover() { return CoverComplex::from_maximal(1, {{0}}); }

/// Proper faces of the n-simplex on n+1 opens: ∂Δ² covers S¹, ∂Δ³ covers S².
inline CoverComplex boundary_cover(Id n)
{
    std::vector<std::vector<Id>> maximal;
    for (Id skip = 0; skip <= n; ++skip) {
        std::vector<Id> s;
        for (Id v = 0; v <= n; ++v)
            if (v != skip)
                s.push_back(v);
        maximal.push_back(s);
    }
    return CoverComplex::from_maximal(n + 1, maximal);
}

inline CoverComplex full_simplex_cover(Id n)
{
    std::vector<Id> s;
    for (Id v = 0; v <= n; ++v)
        s.push_back(v);
    return CoverComplex::from_maximal(n + 1, {s});
}

/// The 6-vertex real projective plane (half icosahedron), 10 triangles.
inline CoverComplex rp2_cover()
{
    const std::vector<std::vector<Id>> one_based{{1, 2, 4}, {1, 2, 6}, {1, 3, 5}, {1, 3, 6}, {1, 4, 5},
                                                 {2, 3, 4}, {2, 3, 5}, {2, 5, 6}, {3, 4, 6}, {4, 5, 6}};
    std::vector<std::vector<Id>> tri;
    for (const auto& t : one_based)
        tri.push_back({t[0] - 1, t[1] - 1, t[2] - 1});
    return CoverComplex::from_maximal(6, tri, {"1", "2", "3", "4", "5", "6"});
}

/// Čech object of K with constant coefficients T: level n has one copy of T
/// per strictly increasing (n+1)-tuple of opens spanning a simplex of K;
/// d^i deletes the i-th open of the tuple (so reads that coordinate through
/// the identity).
inline RestrictedCosimplicial2Groupoid cech_cosimplicial(const CoverComplex& K, const TwoGroupoid& T)
{
    if (!K.validate().ok())
        throw StructuralError("cech_cosimplicial: invalid cover complex");
    RestrictedCosimplicial2Groupoid C;
    C.bases = {T};
    C.maps = {identity_functor(T)};
    C.map_ends = {{0, 0}};
    std::array<std::map<std::vector<Id>, Id>, 4> index;
    for (int n = 0; n <= 3; ++n) {
        C.labels[n] = K.of_dim(n);
        C.coord_base[n].assign(C.labels[n].size(), 0);
        for (Id p = 0; p < C.labels[n].size(); ++p)
            index[n][C.labels[n][p]] = p;
    }
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i <= n; ++i) {
            typename RestrictedCosimplicial2Groupoid::Coface d;
            for (const auto& t : C.labels[n]) {
                auto s = t;
                s.erase(s.begin() + i);
                d.source.push_back(index[n - 1].at(s));
                d.map.push_back(0);
            }
            C.cofaces[n].push_back(std::move(d));
        }
    return C;
}

/// B²(Z/2) with one more object isomorphic to the basepoint: the product
/// of the codiscrete groupoid on two objects with B²(Z/2).
inline TwoGroupoid adjoined_object_fixture() { return product(codiscrete(2), double_delooping(cyclic_group(2))); }

} // namespace desc2
