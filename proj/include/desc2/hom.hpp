#pragma once

#include <map>
#include <vector>

#include "functor.hpp"

namespace desc2
{

namespace detail
{

/// For each 1-cell (2-cell) index i, the composable pairs whose largest
/// participating index is i, so a backtracking search can check each
/// equation as soon as it becomes decidable.
struct FunctorSearch
{
    const TwoGroupoid& G;
    const TwoGroupoid& H;
    Budget& budget;
    std::vector<TwoFunctor> found;

    std::vector<std::vector<std::array<Id, 3>>> comp1_at;  // {f, g, g∘f}
    std::vector<std::vector<std::array<Id, 3>>> vcomp_at;  // {a, b, b*a}
    std::vector<std::vector<std::array<Id, 3>>> hcomp_at;  // {a, b, b∘a}
    TwoFunctor cur;

    FunctorSearch(const TwoGroupoid& g, const TwoGroupoid& h, Budget& b) : G(g), H(h), budget(b)
    {
        comp1_at.resize(G.num_one_cells());
        for (Id f = 0; f < G.num_one_cells(); ++f)
            for (Id k : G.one_cells_from(G.tgt(f))) {
                Id c = G.c1(k, f);
                comp1_at[std::max({f, k, c})].push_back({f, k, c});
            }
        vcomp_at.resize(G.num_two_cells());
        hcomp_at.resize(G.num_two_cells());
        for (Id a = 0; a < G.num_two_cells(); ++a) {
            for (Id b : G.two_cells_from(G.tgt1(a))) {
                Id c = G.vc(b, a);
                vcomp_at[std::max({a, b, c})].push_back({a, b, c});
            }
            for (Id g : G.one_cells_from(G.tgt0(a)))
                for (Id b : G.two_cells_from(g)) {
                    Id c = G.hc(b, a);
                    hcomp_at[std::max({a, b, c})].push_back({a, b, c});
                }
        }
        cur.obj_map.assign(G.num_objects(), kNone);
        cur.one_map.assign(G.num_one_cells(), kNone);
        cur.two_map.assign(G.num_two_cells(), kNone);
    }

    void objects(Id x)
    {
        if (x == G.num_objects())
            return ones(0);
        for (Id y = 0; y < H.num_objects(); ++y) {
            budget.tick();
            cur.obj_map[x] = y;
            objects(x + 1);
        }
    }

    void ones(Id f)
    {
        if (f == G.num_one_cells())
            return twos(0);
        for (Id g : H.hom1(cur.obj(G.src(f)), cur.obj(G.tgt(f)))) {
            budget.tick();
            cur.one_map[f] = g;
            bool ok = true;
            for (const auto& [p, q, c] : comp1_at[f])
                if (cur.one(c) != H.c1(cur.one(q), cur.one(p))) {
                    ok = false;
                    break;
                }
            for (Id x = 0; ok && x < G.num_objects(); ++x)
                if (G.id1(x) == f && g != H.id1(cur.obj(x)))
                    ok = false;
            if (ok)
                ones(f + 1);
        }
        cur.one_map[f] = kNone;
    }

    void twos(Id a)
    {
        if (a == G.num_two_cells()) {
            found.push_back(cur);
            return;
        }
        for (Id b : H.hom2(cur.one(G.src1(a)), cur.one(G.tgt1(a)))) {
            budget.tick();
            cur.two_map[a] = b;
            bool ok = true;
            for (const auto& [p, q, c] : vcomp_at[a])
                if (cur.two(c) != H.vc(cur.two(q), cur.two(p))) {
                    ok = false;
                    break;
                }
            for (const auto& [p, q, c] : hcomp_at[a])
                if (ok && cur.two(c) != H.hc(cur.two(q), cur.two(p)))
                    ok = false;
            for (Id f = 0; ok && f < G.num_one_cells(); ++f)
                if (G.id2(f) == a && b != H.id2(cur.one(f)))
                    ok = false;
            if (ok)
                twos(a + 1);
        }
        cur.two_map[a] = kNone;
    }
};

template <class Fn>
void for_each_tuple(const std::vector<std::vector<Id>>& choices, Budget& budget, Fn&& fn)
{
    std::vector<Id> cur(choices.size());
    std::vector<std::size_t> idx(choices.size(), 0);
    for (const auto& c : choices)
        if (c.empty())
            return;
    while (true) {
        budget.tick();
        for (std::size_t i = 0; i < choices.size(); ++i)
            cur[i] = choices[i][idx[i]];
        fn(cur);
        std::size_t i = choices.size();
        while (i > 0) {
            --i;
            if (++idx[i] < choices[i].size())
                break;
            idx[i] = 0;
            if (i == 0)
                return;
        }
        if (choices.empty())
            return;
    }
}

} // namespace detail

/// Every strict 2-functor G → H, in lexicographic order of their tables.
inline std::vector<TwoFunctor> enumerate_functors(const TwoGroupoid& G, const TwoGroupoid& H, Budget& budget)
{
    detail::FunctorSearch s(G, H, budget);
    s.objects(0);
    return std::move(s.found);
}

/// hom_2gpd(G, H) together with the cells it was built from.
struct HomTwoGroupoid
{
    TwoGroupoid groupoid;
    std::vector<TwoFunctor> functors;
    /// 1-cell k is transformations[k], 2-cell m is modifications[m].
    std::vector<TwoNaturalTransformation> transformations;
    std::vector<Modification> modifications;
};

/// Functors, 2-natural transformations and modifications G → H, with
/// pointwise compositions.
inline HomTwoGroupoid hom_2gpd(const TwoGroupoid& G, const TwoGroupoid& H, Budget& budget)
{
    if (G.num_objects() == 0)
        throw StructuralError("hom_2gpd needs a source with at least one object");
    HomTwoGroupoid out;
    out.functors = enumerate_functors(G, H, budget);
    const auto& Fs = out.functors;
    const Id n0 = static_cast<Id>(G.num_objects());

    std::vector<OneCell> ones;
    std::map<std::vector<Id>, Id> one_index;  // (src, tgt, eta...) -> id
    auto one_key = [](Id s, Id t, const std::vector<Id>& eta) {
        std::vector<Id> k{s, t};
        k.insert(k.end(), eta.begin(), eta.end());
        return k;
    };
    for (Id i = 0; i < Fs.size(); ++i)
        for (Id j = 0; j < Fs.size(); ++j) {
            std::vector<std::vector<Id>> choices(n0);
            for (Id x = 0; x < n0; ++x)
                choices[x] = H.hom1(Fs[i].obj(x), Fs[j].obj(x));
            detail::for_each_tuple(choices, budget, [&](const std::vector<Id>& eta) {
                TwoNaturalTransformation t{eta};
                if (validate_natural_transformation(t, Fs[i], Fs[j], G, H).ok()) {
                    one_index[one_key(i, j, eta)] = static_cast<Id>(ones.size());
                    ones.push_back({i, j});
                    out.transformations.push_back(std::move(t));
                }
            });
        }

    std::vector<TwoCell> twos;
    std::map<std::vector<Id>, Id> two_index;  // (src1, tgt1, mu...) -> id
    for (Id p = 0; p < ones.size(); ++p)
        for (Id q = 0; q < ones.size(); ++q) {
            if (ones[p] != ones[q])
                continue;
            const auto& eta = out.transformations[p].eta;
            const auto& theta = out.transformations[q].eta;
            std::vector<std::vector<Id>> choices(n0);
            for (Id x = 0; x < n0; ++x)
                choices[x] = H.hom2(eta[x], theta[x]);
            detail::for_each_tuple(choices, budget, [&](const std::vector<Id>& mu) {
                Modification m{mu};
                if (validate_modification(m, out.transformations[p], out.transformations[q], Fs[ones[p].src],
                                          Fs[ones[p].tgt], G, H)
                        .ok()) {
                    two_index[one_key(p, q, mu)] = static_cast<Id>(twos.size());
                    twos.push_back({p, q});
                    out.modifications.push_back(std::move(m));
                }
            });
        }

    auto lookup = [](const std::map<std::vector<Id>, Id>& index, std::vector<Id> key) {
        auto it = index.find(key);
        if (it == index.end())
            throw StructuralError("hom_2gpd: pointwise composite is not a cell");
        return it->second;
    };
    std::vector<Id> id1, id2;
    for (Id i = 0; i < Fs.size(); ++i) {
        std::vector<Id> eta(n0);
        for (Id x = 0; x < n0; ++x)
            eta[x] = H.id1(Fs[i].obj(x));
        id1.push_back(lookup(one_index, one_key(i, i, eta)));
    }
    for (Id p = 0; p < ones.size(); ++p) {
        std::vector<Id> mu(n0);
        for (Id x = 0; x < n0; ++x)
            mu[x] = H.id2(out.transformations[p].eta[x]);
        id2.push_back(lookup(two_index, one_key(p, p, mu)));
    }

    const auto& T = out.transformations;
    const auto& M = out.modifications;
    auto comp1 = [&](Id q, Id p) {
        std::vector<Id> eta(n0);
        for (Id x = 0; x < n0; ++x)
            eta[x] = H.c1(T[q].eta[x], T[p].eta[x]);
        return lookup(one_index, one_key(ones[p].src, ones[q].tgt, eta));
    };
    auto vcomp = [&](Id b, Id a) {
        std::vector<Id> mu(n0);
        for (Id x = 0; x < n0; ++x)
            mu[x] = H.vc(M[b].mu[x], M[a].mu[x]);
        return lookup(two_index, one_key(twos[a].src1, twos[b].tgt1, mu));
    };
    auto hcomp = [&](Id b, Id a) {
        std::vector<Id> mu(n0);
        for (Id x = 0; x < n0; ++x)
            mu[x] = H.hc(M[b].mu[x], M[a].mu[x]);
        Id s = comp1(twos[b].src1, twos[a].src1);
        Id t = comp1(twos[b].tgt1, twos[a].tgt1);
        return lookup(two_index, one_key(s, t, mu));
    };
    out.groupoid = TwoGroupoid::generate(Fs.size(), ones, std::move(id1), twos, std::move(id2),
                                         comp1, vcomp, hcomp);
    return out;
}

} // namespace desc2
