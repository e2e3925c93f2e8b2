#pragma once

#include <string>
#include <vector>

#include "functor.hpp"
#include "partition.hpp"

namespace desc2
{

/// A finite group given by its elements (cell ids of some 2-groupoid, used
/// as labels) and a multiplication table on their positions.
struct GroupTable
{
    std::vector<Id> elements;
    std::vector<std::vector<Id>> mul;  // mul[i][j] = position of elements[i]·elements[j]
    Id identity = 0;

    std::size_t order() const { return elements.size(); }
    bool abelian() const
    {
        for (std::size_t i = 0; i < mul.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (mul[i][j] != mul[j][i])
                    return false;
        return true;
    }
};

struct HomotopyGroups
{
    Partition pi0;
    Id basepoint = 0;
    /// pi1: loops at the basepoint up to 2-cells; class_of_loop maps each
    /// 1-cell x -> x to its position in pi1.elements (kNone for others).
    GroupTable pi1;
    std::vector<Id> class_of_loop;
    /// pi2: 2-cells 1_x => 1_x under vertical composition.
    GroupTable pi2;
    bool pi2_abelian = true;
};

/// pi0, pi1 and pi2 of G at x.
inline HomotopyGroups homotopy_groups(const TwoGroupoid& G, Id x)
{
    if (x >= G.num_objects())
        throw StructuralError("basepoint " + std::to_string(x) + " is not an object");
    HomotopyGroups out;
    out.basepoint = x;

    UnionFind uf(G.num_objects());
    for (Id f = 0; f < G.num_one_cells(); ++f)
        uf.unite(G.src(f), G.tgt(f));
    out.pi0 = Partition::from(uf);

    // Loops at x, grouped by the existence of a 2-cell between them.
    const auto loops = G.hom1(x, x);
    out.class_of_loop.assign(G.num_one_cells(), kNone);
    for (Id f : loops) {
        if (out.class_of_loop[f] != kNone)
            continue;
        const Id k = static_cast<Id>(out.pi1.elements.size());
        out.pi1.elements.push_back(f);
        for (Id a : G.two_cells_from(f))
            out.class_of_loop[G.tgt1(a)] = k;
    }
    const std::size_t n1 = out.pi1.elements.size();
    out.pi1.mul.assign(n1, std::vector<Id>(n1));
    for (Id i = 0; i < n1; ++i)
        for (Id j = 0; j < n1; ++j)
            out.pi1.mul[i][j] = out.class_of_loop[G.c1(out.pi1.elements[i], out.pi1.elements[j])];
    out.pi1.identity = out.class_of_loop[G.id1(x)];

    const Id e = G.id1(x);
    out.pi2.elements = G.hom2(e, e);
    const std::size_t n2 = out.pi2.elements.size();
    std::vector<Id> pos(G.num_two_cells(), kNone);
    for (Id i = 0; i < n2; ++i)
        pos[out.pi2.elements[i]] = i;
    out.pi2.mul.assign(n2, std::vector<Id>(n2));
    for (Id i = 0; i < n2; ++i)
        for (Id j = 0; j < n2; ++j)
            out.pi2.mul[i][j] = pos[G.vc(out.pi2.elements[i], out.pi2.elements[j])];
    out.pi2.identity = pos[G.id2(e)];
    out.pi2_abelian = out.pi2.abelian();
    return out;
}

struct WeakEquivalenceResult
{
    bool equivalence = true;
    /// "pi0", "pi1" or "pi2" when not an equivalence; empty otherwise.
    std::string failing;
    /// Source object at which pi1 or pi2 fails.
    Id at = kNone;
};

/// F: G -> H is a weak equivalence iff it is bijective on pi0 and induces
/// bijections (hence isomorphisms) on pi1 and pi2 at every source object.
inline WeakEquivalenceResult is_weak_equivalence(const TwoFunctor& F, const TwoGroupoid& G, const TwoGroupoid& H)
{
    WeakEquivalenceResult r;
    if (G.num_objects() == 0 || H.num_objects() == 0) {
        if (G.num_objects() != H.num_objects())
            r = {false, "pi0", kNone};
        return r;
    }
    const auto hg = homotopy_groups(G, 0);
    const auto hh = homotopy_groups(H, 0);
    std::vector<Id> image(hg.pi0.size(), kNone);
    std::vector<char> hit(hh.pi0.size(), 0);
    for (Id b = 0; b < hg.pi0.size(); ++b) {
        Id c = hh.pi0.block_of[F.obj(hg.pi0.blocks[b].front())];
        if (hit[c])
            return {false, "pi0", kNone};
        hit[c] = 1;
    }
    for (char h : hit)
        if (!h)
            return {false, "pi0", kNone};

    for (Id x = 0; x < G.num_objects(); ++x) {
        const auto gx = homotopy_groups(G, x);
        const auto hx = homotopy_groups(H, F.obj(x));
        if (gx.pi1.order() != hx.pi1.order())
            return {false, "pi1", x};
        std::vector<char> seen(hx.pi1.order(), 0);
        for (Id f : gx.pi1.elements) {
            Id c = hx.class_of_loop[F.one(f)];
            if (seen[c])
                return {false, "pi1", x};
            seen[c] = 1;
        }
        if (gx.pi2.order() != hx.pi2.order())
            return {false, "pi2", x};
        std::vector<char> seen2(H.num_two_cells(), 0);
        for (Id a : gx.pi2.elements) {
            if (seen2[F.two(a)])
                return {false, "pi2", x};
            seen2[F.two(a)] = 1;
        }
    }
    return r;
}

} // namespace desc2
