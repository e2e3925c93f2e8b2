// Independent brute-force oracles shared by the test binaries. Nothing in
// here calls the library routine it is used to check.
#pragma once

#include <desc2/nerve.hpp>
#include <desc2/partition.hpp>

#include <functional>
#include <map>
#include <vector>

namespace oracle
{

using desc2::Id;

/// Every functor G -> H found by trying all object/1-cell/2-cell maps that
/// respect sources and targets, then keeping those that validate.
inline std::size_t count_functors_brute(const desc2::TwoGroupoid& G, const desc2::TwoGroupoid& H)
{
    std::size_t count = 0;
    desc2::TwoFunctor F;
    F.obj_map.assign(G.num_objects(), 0);
    F.one_map.assign(G.num_one_cells(), 0);
    F.two_map.assign(G.num_two_cells(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        const std::size_t n0 = G.num_objects(), n1 = G.num_one_cells(), n2 = G.num_two_cells();
        if (pos == n0 + n1 + n2) {
            if (desc2::validate_functor(F, G, H).ok())
                ++count;
            return;
        }
        if (pos < n0) {
            for (Id y = 0; y < H.num_objects(); ++y) {
                F.obj_map[pos] = y;
                rec(pos + 1);
            }
        } else if (pos < n0 + n1) {
            const Id f = static_cast<Id>(pos - n0);
            for (Id g = 0; g < H.num_one_cells(); ++g)
                if (H.src(g) == F.obj(G.src(f)) && H.tgt(g) == F.obj(G.tgt(f))) {
                    F.one_map[f] = g;
                    rec(pos + 1);
                }
        } else {
            const Id a = static_cast<Id>(pos - n0 - n1);
            for (Id b = 0; b < H.num_two_cells(); ++b)
                if (H.src1(b) == F.one(G.src1(a)) && H.tgt1(b) == F.one(G.tgt1(a))) {
                    F.two_map[a] = b;
                    rec(pos + 1);
                }
        }
    };
    rec(0);
    return count;
}

/// Homotopy classes of n-simplices (n = 1, 2) all of whose faces are the
/// degenerate base simplex at v: x ~ y iff some (n+1)-simplex z has
/// d_i z = base for i < n, d_n z = x, d_{n+1} z = y. Valid for Kan X.
struct SimplicialGroup
{
    std::vector<Id> members;     // the spherical simplices
    std::map<Id, Id> class_of;   // simplex -> class number
    std::size_t classes = 0;
};

inline SimplicialGroup kan_homotopy(const desc2::FiniteCoskSSet& X, Id v, int n)
{
    SimplicialGroup out;
    Id base_n = v;
    for (int k = 0; k < n; ++k)
        base_n = X.degen(k, 0, base_n);
    Id base_lower = v;
    for (int k = 0; k < n - 1; ++k)
        base_lower = X.degen(k, 0, base_lower);
    for (Id x = 0; x < X.count(n); ++x) {
        bool spherical = true;
        for (int i = 0; i <= n; ++i)
            spherical = spherical && X.face(n, i, x) == base_lower;
        if (spherical)
            out.members.push_back(x);
    }
    std::map<Id, Id> pos;
    for (Id i = 0; i < out.members.size(); ++i)
        pos[out.members[i]] = i;
    desc2::UnionFind uf(out.members.size());
    for (Id z = 0; z < X.count(n + 1); ++z) {
        bool ok = true;
        for (int i = 0; i < n; ++i)
            ok = ok && X.face(n + 1, i, z) == base_n;
        if (!ok)
            continue;
        auto a = pos.find(X.face(n + 1, n, z)), b = pos.find(X.face(n + 1, n + 1, z));
        if (a != pos.end() && b != pos.end())
            uf.unite(a->second, b->second);
    }
    auto P = desc2::Partition::from(uf);
    out.classes = P.size();
    for (Id i = 0; i < out.members.size(); ++i)
        out.class_of[out.members[i]] = P.block_of[i];
    return out;
}

/// f: X -> Y bijective on pi0 and on the homotopy classes of spherical 1-
/// and 2-simplices at every vertex of X.
inline bool simplicial_weak_equivalence(const desc2::SimplicialMap& f, const desc2::FiniteCoskSSet& X,
                                        const desc2::FiniteCoskSSet& Y)
{
    auto px = desc2::sset_pi0(X), py = desc2::sset_pi0(Y);
    if (px.size() != py.size())
        return false;
    std::vector<char> hit(py.size(), 0);
    for (const auto& b : px.blocks) {
        Id c = py.block_of[f(0, b.front())];
        if (hit[c])
            return false;
        hit[c] = 1;
    }
    for (Id v = 0; v < X.count(0); ++v)
        for (int n = 1; n <= 2; ++n) {
            auto gx = kan_homotopy(X, v, n), gy = kan_homotopy(Y, f(0, v), n);
            if (gx.classes != gy.classes)
                return false;
            std::vector<char> seen(gy.classes, 0);
            std::map<Id, Id> image;
            for (Id x : gx.members) {
                Id cx = gx.class_of[x], cy = gy.class_of.at(f(n, x));
                auto it = image.find(cx);
                if (it != image.end()) {
                    if (it->second != cy)
                        return false;
                    continue;
                }
                if (seen[cy])
                    return false;
                seen[cy] = 1;
                image[cx] = cy;
            }
        }
    return true;
}

} // namespace oracle
