#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "functor.hpp"
#include "nerve.hpp"
#include "sset.hpp"

namespace desc2
{

/// A restricted cosimplicial object truncated to degrees 0..3, stored in
/// coordinate form: level n is a product of base objects, one per
/// coordinate, and output coordinate p of the coface d^i reads one source
/// coordinate through one base map.
///
/// An explicitly tabulated cosimplicial 2-groupoid has one coordinate per
/// level; a Čech object has one coordinate per tuple of opens. Products
/// are never materialized, which keeps powers like (B²Z/3)^15 usable.
template <class Base, class Map>
struct CoordinateCosimplicial
{
    struct Coface
    {
        std::vector<Id> source;  // source coordinate in level n-1, per output coordinate
        std::vector<Id> map;     // index into maps, per output coordinate
        bool operator==(const Coface&) const = default;
    };

    std::vector<Base> bases;
    std::vector<Map> maps;
    std::vector<std::pair<Id, Id>> map_ends;  // (source base, target base)
    std::array<std::vector<Id>, 4> coord_base;
    std::array<std::vector<Coface>, 4> cofaces;  // cofaces[n][i], n = 1..3, i = 0..n
    /// Optional names of coordinates (the tuple of opens for Čech objects).
    std::array<std::vector<std::vector<Id>>, 4> labels;

    std::size_t arity(int n) const { return coord_base[n].size(); }
    const Base& base(int n, Id j) const { return bases[coord_base[n][j]]; }
    const Coface& coface(int n, int i) const { return cofaces[n][i]; }
    const Map& coface_map(int n, int i, Id p) const { return maps[cofaces[n][i].map[p]]; }
    Id coface_source(int n, int i, Id p) const { return cofaces[n][i].source[p]; }
};

using RestrictedCosimplicial2Groupoid = CoordinateCosimplicial<TwoGroupoid, TwoFunctor>;
using RestrictedCosimplicialSSet = CoordinateCosimplicial<FiniteCoskSSet, SimplicialMap>;

/// Cells of a level in coordinate form.
using CellVec = std::vector<Id>;

namespace detail
{

inline bool is_constant(const TwoFunctor& F)
{
    auto constant = [](const std::vector<Id>& v) {
        return std::all_of(v.begin(), v.end(), [&](Id y) { return y == v.front(); });
    };
    return constant(F.obj_map) && constant(F.one_map) && constant(F.two_map);
}

inline bool is_constant(const SimplicialMap& f)
{
    for (const auto& v : f.level)
        if (!std::all_of(v.begin(), v.end(), [&](Id y) { return y == v.front(); }))
            return false;
    return true;
}

inline TwoFunctor compose(const TwoFunctor& after, const TwoFunctor& before) { return compose_functors(after, before); }
inline SimplicialMap compose(const SimplicialMap& after, const SimplicialMap& before)
{
    return compose_maps(after, before);
}

/// A map from a product into one factor-shaped target: read coordinate
/// `source` and apply `map`. Two such maps agree iff they read the same
/// coordinate through the same map, or both are constant with equal value.
template <class Map>
bool same_coordinate_map(Id s1, const Map& f1, Id s2, const Map& f2)
{
    if (!(f1 == f2))
        return false;
    return s1 == s2 || is_constant(f1);
}

template <class Base, class Map>
void check_coordinate_structure(const CoordinateCosimplicial<Base, Map>& C)
{
    for (const auto& e : C.map_ends)
        if (e.first >= C.bases.size() || e.second >= C.bases.size())
            throw StructuralError("coface map refers to an unknown base");
    if (C.map_ends.size() != C.maps.size())
        throw StructuralError("every base map needs its (source, target) bases");
    for (int n = 0; n <= 3; ++n)
        for (Id b : C.coord_base[n])
            if (b >= C.bases.size())
                throw StructuralError("coordinate of level " + std::to_string(n) + " has an unknown base");
    for (int n = 1; n <= 3; ++n) {
        if (C.cofaces[n].size() != static_cast<std::size_t>(n + 1))
            throw StructuralError("level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " cofaces");
        for (int i = 0; i <= n; ++i) {
            const auto& d = C.cofaces[n][i];
            if (d.source.size() != C.arity(n) || d.map.size() != C.arity(n))
                throw StructuralError("coface (" + std::to_string(n) + "," + std::to_string(i) +
                                      ") has the wrong number of coordinates");
            for (Id p = 0; p < C.arity(n); ++p) {
                if (d.source[p] >= C.arity(n - 1) || d.map[p] >= C.maps.size())
                    throw StructuralError("coface (" + std::to_string(n) + "," + std::to_string(i) +
                                          ") refers to an unknown coordinate or map");
                const auto& e = C.map_ends[d.map[p]];
                if (e.first != C.coord_base[n - 1][d.source[p]] || e.second != C.coord_base[n][p])
                    throw StructuralError("coface (" + std::to_string(n) + "," + std::to_string(i) +
                                          ") does not match the levels it connects");
            }
        }
    }
}

/// Cosimplicial identities d^j d^i = d^i d^{j-1} (i < j) into levels 2, 3.
template <class Base, class Map>
void scan_cosimplicial_identities(const CoordinateCosimplicial<Base, Map>& C, ValidationReport& r)
{
    for (int n = 2; n <= 3; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                for (Id p = 0; p < C.arity(n); ++p) {
                    // d^j ∘ d^i
                    const Id q1 = C.coface_source(n, j, p);
                    const Id s1 = C.coface_source(n - 1, i, q1);
                    const Map f1 = compose(C.coface_map(n, j, p), C.coface_map(n - 1, i, q1));
                    // d^i ∘ d^{j-1}
                    const Id q2 = C.coface_source(n, i, p);
                    const Id s2 = C.coface_source(n - 1, j - 1, q2);
                    const Map f2 = compose(C.coface_map(n, i, p), C.coface_map(n - 1, j - 1, q2));
                    if (!same_coordinate_map(s1, f1, s2, f2))
                        r.add("cosimplicial", "d^j d^i != d^i d^{j-1}", {i, j, n, p});
                }
}

} // namespace detail

/// Every level valid, every coface a 2-functor, and all cosimplicial
/// identities. Family "cosimplicial" for the identities (witness
/// i, j, degree, coordinate).
inline ValidationReport validate_cosimplicial(const RestrictedCosimplicial2Groupoid& C)
{
    detail::check_coordinate_structure(C);
    ValidationReport r;
    for (const auto& B : C.bases)
        r.merge(validate_two_groupoid(B));
    for (Id m = 0; m < C.maps.size(); ++m)
        r.merge(validate_functor(C.maps[m], C.bases[C.map_ends[m].first], C.bases[C.map_ends[m].second]));
    detail::scan_cosimplicial_identities(C, r);
    return r;
}

inline ValidationReport validate_cosimplicial(const RestrictedCosimplicialSSet& X)
{
    detail::check_coordinate_structure(X);
    ValidationReport r;
    for (const auto& B : X.bases)
        r.merge(validate_sset(B));
    for (Id m = 0; m < X.maps.size(); ++m)
        r.merge(validate_simplicial_map(X.maps[m], X.bases[X.map_ends[m].first], X.bases[X.map_ends[m].second]));
    detail::scan_cosimplicial_identities(X, r);
    return r;
}

/// Wraps four explicitly tabulated 2-groupoids and their nine cofaces
/// (cofaces[n][i], n = 1..3) as a one-coordinate-per-level object.
inline RestrictedCosimplicial2Groupoid explicit_cosimplicial(std::array<TwoGroupoid, 4> levels,
                                                             const std::array<std::vector<TwoFunctor>, 4>& cofaces)
{
    RestrictedCosimplicial2Groupoid C;
    for (int n = 0; n <= 3; ++n) {
        C.bases.push_back(std::move(levels[n]));
        C.coord_base[n] = {static_cast<Id>(n)};
    }
    for (int n = 1; n <= 3; ++n) {
        if (cofaces[n].size() != static_cast<std::size_t>(n + 1))
            throw StructuralError("level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " cofaces");
        for (int i = 0; i <= n; ++i) {
            C.cofaces[n].push_back({{0}, {static_cast<Id>(C.maps.size())}});
            C.maps.push_back(cofaces[n][i]);
            C.map_ends.push_back({static_cast<Id>(n - 1), static_cast<Id>(n)});
        }
    }
    return C;
}

/// Every level is G and every coface the identity.
inline RestrictedCosimplicial2Groupoid constant_cosimplicial(const TwoGroupoid& G)
{
    RestrictedCosimplicial2Groupoid C;
    C.bases = {G};
    C.maps = {identity_functor(G)};
    C.map_ends = {{0, 0}};
    for (int n = 0; n <= 3; ++n)
        C.coord_base[n] = {0};
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i <= n; ++i)
            C.cofaces[n].push_back({{0}, {0}});
    return C;
}

/// Level-wise nerve; keeps the content-addressed nerves of the bases so
/// callers can translate simplices back into cells.
struct LevelwiseNerve
{
    RestrictedCosimplicialSSet sset;
    std::vector<TwoNerve> nerves;  // nerves[b] = N(bases[b])
};

inline LevelwiseNerve levelwise_nerve(const RestrictedCosimplicial2Groupoid& C, Budget& budget)
{
    detail::check_coordinate_structure(C);
    LevelwiseNerve out;
    for (const auto& B : C.bases) {
        out.nerves.push_back(two_nerve(B, budget));
        out.sset.bases.push_back(out.nerves.back().sset);
    }
    for (Id m = 0; m < C.maps.size(); ++m) {
        const auto [s, t] = C.map_ends[m];
        out.sset.maps.push_back(nerve_of_functor(C.maps[m], out.nerves[s], out.nerves[t]));
    }
    out.sset.map_ends = C.map_ends;
    out.sset.coord_base = C.coord_base;
    out.sset.labels = C.labels;
    for (int n = 1; n <= 3; ++n)
        for (const auto& d : C.cofaces[n])
            out.sset.cofaces[n].push_back({d.source, d.map});
    return out;
}

inline LevelwiseNerve levelwise_nerve(const RestrictedCosimplicial2Groupoid& C)
{
    Budget b;
    return levelwise_nerve(C, b);
}

/// Coordinate-wise evaluation of cofaces and level operations.
class LevelOps
{
public:
    explicit LevelOps(const RestrictedCosimplicial2Groupoid& C) : C_(C) {}

    const RestrictedCosimplicial2Groupoid& cosimplicial() const { return C_; }

    /// d^i applied to a level-(n-1) cell of the given kind (0, 1, 2).
    CellVec coface(int n, int i, int kind, const CellVec& v) const
    {
        CellVec out(C_.arity(n));
        for (Id p = 0; p < out.size(); ++p) {
            const auto& F = C_.coface_map(n, i, p);
            const Id y = v[C_.coface_source(n, i, p)];
            out[p] = kind == 0 ? F.obj(y) : kind == 1 ? F.one(y) : F.two(y);
        }
        return out;
    }

    /// Composite of cofaces, outermost last: cofaces({i, j}, n0, ...) is d^j d^i
    /// starting from level n0.
    CellVec cofaces(std::initializer_list<int> is, int n0, int kind, CellVec v) const
    {
        int n = n0;
        for (int i : is)
            v = coface(++n, i, kind, v);
        return v;
    }

    template <class Fn>
    CellVec map(int n, const CellVec& v, Fn fn) const
    {
        CellVec out(v.size());
        for (Id p = 0; p < v.size(); ++p)
            out[p] = fn(C_.base(n, p), v[p]);
        return out;
    }

    template <class Fn>
    CellVec zip(int n, const CellVec& a, const CellVec& b, Fn fn) const
    {
        CellVec out(a.size());
        for (Id p = 0; p < a.size(); ++p)
            out[p] = fn(C_.base(n, p), a[p], b[p]);
        return out;
    }

    CellVec src(int n, const CellVec& f) const { return map(n, f, [](const TwoGroupoid& G, Id y) { return G.src(y); }); }
    CellVec tgt(int n, const CellVec& f) const { return map(n, f, [](const TwoGroupoid& G, Id y) { return G.tgt(y); }); }
    CellVec src1(int n, const CellVec& a) const
    {
        return map(n, a, [](const TwoGroupoid& G, Id y) { return G.src1(y); });
    }
    CellVec tgt1(int n, const CellVec& a) const
    {
        return map(n, a, [](const TwoGroupoid& G, Id y) { return G.tgt1(y); });
    }
    CellVec id1(int n, const CellVec& x) const { return map(n, x, [](const TwoGroupoid& G, Id y) { return G.id1(y); }); }
    CellVec id2(int n, const CellVec& f) const { return map(n, f, [](const TwoGroupoid& G, Id y) { return G.id2(y); }); }
    CellVec inv1(int n, const CellVec& f) const
    {
        return map(n, f, [](const TwoGroupoid& G, Id y) { return G.inverse1(y); });
    }
    CellVec vinv(int n, const CellVec& a) const
    {
        return map(n, a, [](const TwoGroupoid& G, Id y) { return G.vertical_inverse(y); });
    }
    /// g∘f, b*a, b∘a; kNone entries mark non-composable coordinates.
    CellVec c1(int n, const CellVec& g, const CellVec& f) const
    {
        return zip(n, g, f, [](const TwoGroupoid& G, Id q, Id p) { return G.c1(q, p); });
    }
    CellVec vc(int n, const CellVec& b, const CellVec& a) const
    {
        return zip(n, b, a, [](const TwoGroupoid& G, Id q, Id p) { return G.vc(q, p); });
    }
    CellVec hc(int n, const CellVec& b, const CellVec& a) const
    {
        return zip(n, b, a, [](const TwoGroupoid& G, Id q, Id p) { return G.hc(q, p); });
    }
    /// 1_g ∘ a and a ∘ 1_f.
    CellVec whisker_after(int n, const CellVec& g, const CellVec& a) const { return hc(n, id2(n, g), a); }
    CellVec whisker_before(int n, const CellVec& a, const CellVec& f) const { return hc(n, a, id2(n, f)); }

private:
    const RestrictedCosimplicial2Groupoid& C_;
};

inline bool has_none(const CellVec& v)
{
    return std::find(v.begin(), v.end(), kNone) != v.end();
}

} // namespace desc2
