#pragma once

#include <utility>

#include "functor.hpp"

namespace desc2
{

/// Component-wise product G × H. A pair (u, v) of cells of the same
/// dimension gets identifier u * |H_k| + v.
inline TwoGroupoid product(const TwoGroupoid& G, const TwoGroupoid& H)
{
    const Id h0 = static_cast<Id>(H.num_objects());
    const Id h1 = static_cast<Id>(H.num_one_cells());
    const Id h2 = static_cast<Id>(H.num_two_cells());
    auto o = [=](Id x, Id y) { return x * h0 + y; };
    auto p1 = [=](Id f, Id g) { return f * h1 + g; };
    auto p2 = [=](Id a, Id b) { return a * h2 + b; };

    std::vector<OneCell> ones;
    for (Id f = 0; f < G.num_one_cells(); ++f)
        for (Id g = 0; g < h1; ++g)
            ones.push_back({o(G.src(f), H.src(g)), o(G.tgt(f), H.tgt(g))});
    std::vector<Id> id1;
    for (Id x = 0; x < G.num_objects(); ++x)
        for (Id y = 0; y < h0; ++y)
            id1.push_back(p1(G.id1(x), H.id1(y)));
    std::vector<TwoCell> twos;
    for (Id a = 0; a < G.num_two_cells(); ++a)
        for (Id b = 0; b < h2; ++b)
            twos.push_back({p1(G.src1(a), H.src1(b)), p1(G.tgt1(a), H.tgt1(b))});
    std::vector<Id> id2;
    for (Id f = 0; f < G.num_one_cells(); ++f)
        for (Id g = 0; g < h1; ++g)
            id2.push_back(p2(G.id2(f), H.id2(g)));

    return TwoGroupoid::generate(
        G.num_objects() * h0, std::move(ones), std::move(id1), std::move(twos), std::move(id2),
        [&](Id q, Id p) { return p1(G.c1(q / h1, p / h1), H.c1(q % h1, p % h1)); },
        [&](Id q, Id p) { return p2(G.vc(q / h2, p / h2), H.vc(q % h2, p % h2)); },
        [&](Id q, Id p) { return p2(G.hc(q / h2, p / h2), H.hc(q % h2, p % h2)); });
}

/// The two projections out of product(G, H).
inline std::pair<TwoFunctor, TwoFunctor> product_projections(const TwoGroupoid& G, const TwoGroupoid& H)
{
    TwoFunctor first, second;
    for (Id x = 0; x < G.num_objects() * H.num_objects(); ++x) {
        first.obj_map.push_back(x / static_cast<Id>(H.num_objects()));
        second.obj_map.push_back(x % static_cast<Id>(H.num_objects()));
    }
    for (Id f = 0; f < G.num_one_cells() * H.num_one_cells(); ++f) {
        first.one_map.push_back(f / static_cast<Id>(H.num_one_cells()));
        second.one_map.push_back(f % static_cast<Id>(H.num_one_cells()));
    }
    for (Id a = 0; a < G.num_two_cells() * H.num_two_cells(); ++a) {
        first.two_map.push_back(a / static_cast<Id>(H.num_two_cells()));
        second.two_map.push_back(a % static_cast<Id>(H.num_two_cells()));
    }
    return {std::move(first), std::move(second)};
}

} // namespace desc2
