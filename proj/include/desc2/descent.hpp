#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cosimplicial.hpp"
#include "homotopy.hpp"
#include "partition.hpp"

namespace desc2
{

/// x in G⁰, g: d¹x → d⁰x in G¹, a: d¹g ⇒ d⁰g∘d²g in G², all in coordinate form.
struct DescentDatum
{
    CellVec x, g, a;
    auto operator<=>(const DescentDatum&) const = default;
};

/// f: x → x′ in G⁰ and c: d⁰f∘g ⇒ g′∘d¹f in G¹.
struct GaugeTransformation
{
    CellVec f, c;
    auto operator<=>(const GaugeTransformation&) const = default;
};

/// m: f ⇒ f′ in G⁰ between two parallel gauge transformations.
struct DescentCell2
{
    CellVec m;
    auto operator<=>(const DescentCell2&) const = default;
};

namespace detail
{

inline void hash_into(std::size_t& h, const CellVec& v)
{
    for (Id y : v)
        h = h * 1000003u ^ (y + 0x9e3779b9u + (h << 6) + (h >> 2));
    h = h * 31 + v.size();
}

struct DatumHash
{
    std::size_t operator()(const DescentDatum& d) const
    {
        std::size_t h = 0;
        hash_into(h, d.x);
        hash_into(h, d.g);
        hash_into(h, d.a);
        return h;
    }
};

struct CellVecHash
{
    std::size_t operator()(const CellVec& v) const
    {
        std::size_t h = 0;
        hash_into(h, v);
        return h;
    }
};

inline Id apply_functor(const TwoFunctor& F, int kind, Id y)
{
    return kind == 0 ? F.obj(y) : kind == 1 ? F.one(y) : F.two(y);
}

/// Single coordinates of coface images, without building whole vectors.
class CofaceCells
{
public:
    explicit CofaceCells(const RestrictedCosimplicial2Groupoid& C) : C_(C) {}

    const TwoGroupoid& base(int n, Id p) const { return C_.base(n, p); }

    /// (d^i v)_p at level n.
    Id d(int n, int i, int kind, const CellVec& v, Id p) const
    {
        return apply_functor(C_.coface_map(n, i, p), kind, v[C_.coface_source(n, i, p)]);
    }

    /// (d^j d^i v)_p at level n, v at level n-2.
    Id dd(int n, int i, int j, int kind, const CellVec& v, Id p) const
    {
        const Id q = C_.coface_source(n, j, p);
        return apply_functor(C_.coface_map(n, j, p), kind, d(n - 1, i, kind, v, q));
    }

private:
    const RestrictedCosimplicial2Groupoid& C_;
};

inline std::string arrow(const char* what, int n, Id p)
{
    return std::string(what) + " at degree " + std::to_string(n) + ", coordinate " + std::to_string(p);
}

inline void check_lengths(const RestrictedCosimplicial2Groupoid& C, const DescentDatum& d)
{
    if (d.x.size() != C.arity(0) || d.g.size() != C.arity(1) || d.a.size() != C.arity(2))
        throw StructuralError("descent datum has the wrong number of coordinates");
    for (Id p = 0; p < d.x.size(); ++p)
        if (d.x[p] >= C.base(0, p).num_objects())
            throw StructuralError(arrow("unknown object", 0, p));
    for (Id p = 0; p < d.g.size(); ++p)
        if (d.g[p] >= C.base(1, p).num_one_cells())
            throw StructuralError(arrow("unknown 1-cell", 1, p));
    for (Id p = 0; p < d.a.size(); ++p)
        if (d.a[p] >= C.base(2, p).num_two_cells())
            throw StructuralError(arrow("unknown 2-cell", 2, p));
}

/// Odometer over a product of choice lists, first coordinate most
/// significant. Calls fn(first_changed_position) after each step.
template <class Fn>
void odometer(const std::vector<const std::vector<Id>*>& choices, std::vector<Id>& cur, Budget& budget, Fn&& fn)
{
    const std::size_t n = choices.size();
    for (const auto* c : choices)
        if (c->empty())
            return;
    std::vector<std::size_t> idx(n, 0);
    cur.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        cur[i] = (*choices[i])[0];
    std::size_t changed = 0;
    while (true) {
        budget.tick();
        fn(changed);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++idx[i] < choices[i]->size()) {
                cur[i] = (*choices[i])[idx[i]];
                break;
            }
            idx[i] = 0;
            cur[i] = (*choices[i])[0];
            if (i == 0)
                return;
        }
        if (n == 0)
            return;
        changed = i;
    }
}

} // namespace detail

/// Throws TypingError naming the first arrow whose source or target is wrong.
inline void check_datum_typing(const RestrictedCosimplicial2Groupoid& C, const DescentDatum& d)
{
    detail::check_lengths(C, d);
    detail::CofaceCells D(C);
    for (Id p = 0; p < d.g.size(); ++p) {
        const auto& B = C.base(1, p);
        if (B.src(d.g[p]) != D.d(1, 1, 0, d.x, p) || B.tgt(d.g[p]) != D.d(1, 0, 0, d.x, p))
            throw TypingError(detail::arrow("g is not d¹x → d⁰x", 1, p));
    }
    for (Id q = 0; q < d.a.size(); ++q) {
        const auto& B = C.base(2, q);
        const Id want = B.c1(D.d(2, 0, 1, d.g, q), D.d(2, 2, 1, d.g, q));
        if (B.src1(d.a[q]) != D.d(2, 1, 1, d.g, q) || B.tgt1(d.a[q]) != want)
            throw TypingError(detail::arrow("a is not d¹g ⇒ d⁰g∘d²g", 2, q));
    }
}

struct CocycleCheck
{
    bool holds = false;
    CellVec lhs, rhs;  // (1_{d¹d⁰g}∘d³a)*d¹a and (d⁰a∘1_{d²d²g})*d²a in G³
};

/// Both sides of the twisted 2-cocycle equation in G³.
inline CocycleCheck check_cocycle(const RestrictedCosimplicial2Groupoid& C, const CellVec& x, const CellVec& g,
                                  const CellVec& a)
{
    DescentDatum d{x, g, a};
    check_datum_typing(C, d);
    detail::CofaceCells D(C);
    CocycleCheck out;
    out.holds = true;
    for (Id r = 0; r < C.arity(3); ++r) {
        const auto& B = C.base(3, r);
        const Id g23 = D.dd(3, 0, 1, 1, g, r);
        const Id g01 = D.dd(3, 2, 2, 1, g, r);
        const Id l = B.vc(B.hc(B.id2(g23), D.d(3, 3, 2, a, r)), D.d(3, 1, 2, a, r));
        const Id rr = B.vc(B.hc(D.d(3, 0, 2, a, r), B.id2(g01)), D.d(3, 2, 2, a, r));
        if (l == kNone || rr == kNone)
            throw TypingError(detail::arrow("cocycle composite undefined", 3, r));
        out.lhs.push_back(l);
        out.rhs.push_back(rr);
        out.holds = out.holds && l == rr;
    }
    return out;
}

/// Family "cocycle", witness the degree-3 coordinate.
inline ValidationReport validate_descent_datum(const RestrictedCosimplicial2Groupoid& C, const DescentDatum& d)
{
    ValidationReport r;
    auto c = check_cocycle(C, d.x, d.g, d.a);
    for (Id p = 0; p < c.lhs.size(); ++p)
        if (c.lhs[p] != c.rhs[p])
            r.add("cocycle", "twisted 2-cocycle equation fails", {static_cast<long long>(p)});
    return r;
}

/// All descent data in lexicographic order of (x, g, a), coordinates
/// ascending and cells ascending within a coordinate.
inline std::vector<DescentDatum> enumerate_descent_data(const RestrictedCosimplicial2Groupoid& C, Budget& budget)
{
    detail::check_coordinate_structure(C);
    detail::CofaceCells D(C);
    const Id n0 = static_cast<Id>(C.arity(0)), n1 = static_cast<Id>(C.arity(1)), n2 = static_cast<Id>(C.arity(2)),
             n3 = static_cast<Id>(C.arity(3));

    // Degree-3 coordinates become checkable once the largest a-coordinate
    // they read is assigned.
    std::vector<std::vector<Id>> checks_at(n2);
    for (Id r = 0; r < n3; ++r) {
        Id last = 0;
        for (int i = 0; i <= 3; ++i)
            last = std::max(last, C.coface_source(3, i, r));
        checks_at[last].push_back(r);
    }

    std::vector<DescentDatum> out;
    DescentDatum cur{CellVec(n0), CellVec(n1), CellVec(n2)};
    std::vector<std::vector<Id>> object_choices(n0);
    for (Id p = 0; p < n0; ++p)
        for (Id y = 0; y < C.base(0, p).num_objects(); ++y)
            object_choices[p].push_back(y);
    std::vector<const std::vector<Id>*> xc;
    for (auto& v : object_choices)
        xc.push_back(&v);

    auto cocycle_at = [&](Id r) {
        const auto& B = C.base(3, r);
        const Id g23 = D.dd(3, 0, 1, 1, cur.g, r);
        const Id g01 = D.dd(3, 2, 2, 1, cur.g, r);
        const Id l = B.vc(B.hc(B.id2(g23), D.d(3, 3, 2, cur.a, r)), D.d(3, 1, 2, cur.a, r));
        const Id rr = B.vc(B.hc(D.d(3, 0, 2, cur.a, r), B.id2(g01)), D.d(3, 2, 2, cur.a, r));
        return l != kNone && l == rr;
    };

    std::vector<std::vector<Id>> a_choices(n2);
    std::function<void(Id)> assign_a = [&](Id q) {
        if (q == n2) {
            out.push_back(cur);
            return;
        }
        for (Id b : a_choices[q]) {
            budget.tick();
            cur.a[q] = b;
            bool ok = true;
            for (Id r : checks_at[q])
                if (!(ok = cocycle_at(r)))
                    break;
            if (ok)
                assign_a(q + 1);
        }
    };

    detail::odometer(xc, cur.x, budget, [&](std::size_t) {
        std::vector<std::vector<Id>> g_choices(n1);
        for (Id p = 0; p < n1; ++p)
            g_choices[p] = C.base(1, p).hom1(D.d(1, 1, 0, cur.x, p), D.d(1, 0, 0, cur.x, p));
        std::vector<const std::vector<Id>*> gc;
        for (auto& v : g_choices)
            gc.push_back(&v);
        detail::odometer(gc, cur.g, budget, [&](std::size_t) {
            for (Id q = 0; q < n2; ++q) {
                const auto& B = C.base(2, q);
                a_choices[q] = B.hom2(D.d(2, 1, 1, cur.g, q), B.c1(D.d(2, 0, 1, cur.g, q), D.d(2, 2, 1, cur.g, q)));
            }
            if (n3 > 0 && n2 == 0) {
                for (Id r = 0; r < n3; ++r)
                    if (!cocycle_at(r))
                        return;
            }
            assign_a(0);
        });
    });
    return out;
}

inline std::vector<DescentDatum> enumerate_descent_data(const RestrictedCosimplicial2Groupoid& C)
{
    Budget b;
    return enumerate_descent_data(C, b);
}

/// Position of each datum in an enumeration.
class DatumIndex
{
public:
    explicit DatumIndex(const std::vector<DescentDatum>& data)
    {
        index_.reserve(data.size());
        for (Id i = 0; i < data.size(); ++i)
            index_.emplace(data[i], i);
    }
    Id find(const DescentDatum& d) const
    {
        auto it = index_.find(d);
        return it == index_.end() ? kNone : it->second;
    }

private:
    std::unordered_map<DescentDatum, Id, detail::DatumHash> index_;
};

struct PrismCheck
{
    bool holds = false;
    CellVec lhs, rhs;  // (a′∘1_{f₀}) * c₀₂ and (1_{g′₁₂}∘c₀₁) * (c₁₂∘1_{g₀₁}) * (1_{f₂}∘a) in G²
};

/// Throws TypingError unless f: x → x′ and c: d⁰f∘g ⇒ g′∘d¹f.
inline void check_gauge_typing(const RestrictedCosimplicial2Groupoid& C, const DescentDatum& d,
                               const DescentDatum& d2, const GaugeTransformation& t)
{
    if (t.f.size() != C.arity(0) || t.c.size() != C.arity(1))
        throw StructuralError("gauge transformation has the wrong number of coordinates");
    detail::CofaceCells D(C);
    for (Id p = 0; p < t.f.size(); ++p) {
        const auto& B = C.base(0, p);
        if (t.f[p] >= B.num_one_cells())
            throw StructuralError(detail::arrow("unknown 1-cell", 0, p));
        if (B.src(t.f[p]) != d.x[p] || B.tgt(t.f[p]) != d2.x[p])
            throw TypingError(detail::arrow("f is not x → x′", 0, p));
    }
    for (Id p = 0; p < t.c.size(); ++p) {
        const auto& B = C.base(1, p);
        if (t.c[p] >= B.num_two_cells())
            throw StructuralError(detail::arrow("unknown 2-cell", 1, p));
        const Id from = B.c1(D.d(1, 0, 1, t.f, p), d.g[p]);
        const Id to = B.c1(d2.g[p], D.d(1, 1, 1, t.f, p));
        if (B.src1(t.c[p]) != from || B.tgt1(t.c[p]) != to)
            throw TypingError(detail::arrow("c is not d⁰f∘g ⇒ g′∘d¹f", 1, p));
    }
}

inline PrismCheck prism_sides(const RestrictedCosimplicial2Groupoid& C, const DescentDatum& d,
                              const DescentDatum& d2, const GaugeTransformation& t)
{
    check_datum_typing(C, d);
    check_datum_typing(C, d2);
    check_gauge_typing(C, d, d2, t);
    detail::CofaceCells D(C);
    PrismCheck out;
    out.holds = true;
    for (Id q = 0; q < C.arity(2); ++q) {
        const auto& B = C.base(2, q);
        const Id f0 = D.dd(2, 1, 2, 1, t.f, q), f2 = D.dd(2, 0, 1, 1, t.f, q);
        const Id c01 = D.d(2, 2, 2, t.c, q), c02 = D.d(2, 1, 2, t.c, q), c12 = D.d(2, 0, 2, t.c, q);
        const Id g01 = D.d(2, 2, 1, d.g, q), g12p = D.d(2, 0, 1, d2.g, q);
        const Id l = B.vc(B.hc(d2.a[q], B.id2(f0)), c02);
        const Id r = B.vc(B.hc(B.id2(g12p), c01), B.vc(B.hc(c12, B.id2(g01)), B.hc(B.id2(f2), d.a[q])));
        if (l == kNone || r == kNone)
            throw TypingError(detail::arrow("prism composite undefined", 2, q));
        out.lhs.push_back(l);
        out.rhs.push_back(r);
        out.holds = out.holds && l == r;
    }
    return out;
}

inline bool is_gauge(const RestrictedCosimplicial2Groupoid& C, const DescentDatum& d, const DescentDatum& d2,
                     const GaugeTransformation& t)
{
    return prism_sides(C, d, d2, t).holds;
}

/// Family "prism", witness the degree-2 coordinate.
inline ValidationReport validate_gauge(const RestrictedCosimplicial2Groupoid& C, const DescentDatum& d,
                                       const DescentDatum& d2, const GaugeTransformation& t)
{
    ValidationReport r;
    auto p = prism_sides(C, d, d2, t);
    for (Id q = 0; q < p.lhs.size(); ++q)
        if (p.lhs[q] != p.rhs[q])
            r.add("prism", "prism equation fails", {static_cast<long long>(q)});
    return r;
}

/// The unique d′ for which (f, c) is a gauge transformation d ⇝ d′:
/// x′ = tgt f, g′ = tgt₁(c)∘(d¹f)⁻¹, and a′ solved from the prism.
/// Empty if f does not start at x or c does not start at d⁰f∘g.
inline std::optional<DescentDatum> gauge_target(const RestrictedCosimplicial2Groupoid& C, const DescentDatum& d,
                                                const GaugeTransformation& t)
{
    detail::CofaceCells D(C);
    DescentDatum out{CellVec(C.arity(0)), CellVec(C.arity(1)), CellVec(C.arity(2))};
    for (Id p = 0; p < C.arity(0); ++p) {
        const auto& B = C.base(0, p);
        if (B.src(t.f[p]) != d.x[p])
            return std::nullopt;
        out.x[p] = B.tgt(t.f[p]);
    }
    for (Id p = 0; p < C.arity(1); ++p) {
        const auto& B = C.base(1, p);
        if (B.src1(t.c[p]) != B.c1(D.d(1, 0, 1, t.f, p), d.g[p]))
            return std::nullopt;
        out.g[p] = B.c1(B.tgt1(t.c[p]), B.inverse1(D.d(1, 1, 1, t.f, p)));
    }
    for (Id q = 0; q < C.arity(2); ++q) {
        const auto& B = C.base(2, q);
        const Id f0 = D.dd(2, 1, 2, 1, t.f, q), f2 = D.dd(2, 0, 1, 1, t.f, q);
        const Id c01 = D.d(2, 2, 2, t.c, q), c02 = D.d(2, 1, 2, t.c, q), c12 = D.d(2, 0, 2, t.c, q);
        const Id g01 = D.d(2, 2, 1, d.g, q), g12p = D.d(2, 0, 1, out.g, q);
        const Id rhs = B.vc(B.hc(B.id2(g12p), c01), B.vc(B.hc(c12, B.id2(g01)), B.hc(B.id2(f2), d.a[q])));
        out.a[q] = B.hc(B.vc(rhs, B.vertical_inverse(c02)), B.id2(B.inverse1(f0)));
    }
    return out;
}

/// Calls fn(f, c, target) for every gauge transformation out of d, f
/// ascending then c ascending. Targets are updated incrementally: each c
/// coordinate only touches the degree-2 coordinates that read it.
template <class Fn>
void for_each_gauge(const RestrictedCosimplicial2Groupoid& C, const DescentDatum& d, Budget& budget, Fn&& fn)
{
    detail::CofaceCells D(C);
    const Id n0 = static_cast<Id>(C.arity(0)), n1 = static_cast<Id>(C.arity(1)), n2 = static_cast<Id>(C.arity(2));
    std::vector<const std::vector<Id>*> fc;
    for (Id p = 0; p < n0; ++p)
        fc.push_back(&C.base(0, p).one_cells_from(d.x[p]));

    // readers[p]: degree-2 coordinates whose prism reads c_p.
    std::vector<std::vector<Id>> readers(n1);
    for (Id q = 0; q < n2; ++q)
        for (int i = 0; i <= 2; ++i) {
            auto& v = readers[C.coface_source(2, i, q)];
            if (v.empty() || v.back() != q)
                v.push_back(q);
        }

    GaugeTransformation t;
    DescentDatum target{CellVec(n0), CellVec(n1), CellVec(n2)};
    std::vector<Id> inv_d1f(n1), f0(n2), f2inv(n2), whisk_a(n2), id_g01(n2);
    std::vector<Id> stamp(n2, kNone);
    Id epoch = 0;

    auto solve_a = [&](Id q) {
        const auto& B = C.base(2, q);
        const Id c01 = D.d(2, 2, 2, t.c, q), c02 = D.d(2, 1, 2, t.c, q), c12 = D.d(2, 0, 2, t.c, q);
        const Id g12p = D.d(2, 0, 1, target.g, q);
        const Id rhs = B.vc(B.hc(B.id2(g12p), c01), B.vc(B.hc(c12, id_g01[q]), whisk_a[q]));
        target.a[q] = B.hc(B.vc(rhs, B.vertical_inverse(c02)), f2inv[q]);
    };

    detail::odometer(fc, t.f, budget, [&](std::size_t) {
        for (Id p = 0; p < n0; ++p)
            target.x[p] = C.base(0, p).tgt(t.f[p]);
        std::vector<std::vector<Id>> c_choices(n1);
        for (Id p = 0; p < n1; ++p) {
            const auto& B = C.base(1, p);
            c_choices[p] = B.two_cells_from(B.c1(D.d(1, 0, 1, t.f, p), d.g[p]));
            inv_d1f[p] = B.inverse1(D.d(1, 1, 1, t.f, p));
        }
        for (Id q = 0; q < n2; ++q) {
            const auto& B = C.base(2, q);
            f0[q] = D.dd(2, 1, 2, 1, t.f, q);
            f2inv[q] = B.id2(B.inverse1(f0[q]));
            whisk_a[q] = B.hc(B.id2(D.dd(2, 0, 1, 1, t.f, q)), d.a[q]);
            id_g01[q] = B.id2(D.d(2, 2, 1, d.g, q));
        }
        std::vector<const std::vector<Id>*> cc;
        for (auto& v : c_choices)
            cc.push_back(&v);
        detail::odometer(cc, t.c, budget, [&](std::size_t changed) {
            ++epoch;
            for (Id p = static_cast<Id>(changed); p < n1; ++p)
                target.g[p] = C.base(1, p).c1(C.base(1, p).tgt1(t.c[p]), inv_d1f[p]);
            for (Id p = static_cast<Id>(changed); p < n1; ++p)
                for (Id q : readers[p])
                    if (stamp[q] != epoch) {
                        stamp[q] = epoch;
                        solve_a(q);
                    }
            if (changed == 0)
                for (Id q = 0; q < n2; ++q)
                    if (stamp[q] != epoch) {
                        stamp[q] = epoch;
                        solve_a(q);
                    }
            fn(t, target);
        });
    });
}

/// One recorded gauge transformation, source → target by enumeration index.
struct GaugeWitness
{
    Id source = 0, target = 0;
    GaugeTransformation gauge;
};

struct GaugeClasses
{
    std::vector<DescentDatum> data;
    Partition partition;
    /// The witnesses that merged two classes, in discovery order.
    std::vector<GaugeWitness> witnesses;
};

/// How gauge_classes explores (f, c).
/// orbits: from the least datum of each not yet reached class only; relies
/// on gauge equivalence being an equivalence relation.
/// exhaustive: from every datum.
enum class GaugeSearch
{
    orbits,
    exhaustive
};

/// Partition of the descent data into gauge classes by union-find over the
/// witnesses found, f ascending then c ascending.
inline GaugeClasses gauge_classes(const RestrictedCosimplicial2Groupoid& C, Budget& budget,
                                  GaugeSearch mode = GaugeSearch::orbits)
{
    GaugeClasses out;
    out.data = enumerate_descent_data(C, budget);
    DatumIndex index(out.data);
    UnionFind uf(out.data.size());
    std::vector<char> reached(out.data.size(), 0);
    for (Id s = 0; s < out.data.size(); ++s) {
        if (mode == GaugeSearch::orbits && reached[s])
            continue;
        reached[s] = 1;
        for_each_gauge(C, out.data[s], budget, [&](const GaugeTransformation& t, const DescentDatum& target) {
            const Id j = index.find(target);
            if (j == kNone)
                throw std::logic_error("gauge target is not a descent datum");
            reached[j] = 1;
            if (uf.unite(s, j))
                out.witnesses.push_back({s, j, t});
        });
    }
    out.partition = Partition::from(uf);
    return out;
}

inline GaugeClasses gauge_classes(const RestrictedCosimplicial2Groupoid& C)
{
    Budget b;
    return gauge_classes(C, b);
}

/// Composite (f′, c′) ∘ (f, c) = (f′∘f, (c′∘1_{d¹f}) * (1_{d⁰f′}∘c)).
inline GaugeTransformation compose_gauges(const RestrictedCosimplicial2Groupoid& C, const GaugeTransformation& after,
                                          const GaugeTransformation& before)
{
    detail::CofaceCells D(C);
    GaugeTransformation out{CellVec(C.arity(0)), CellVec(C.arity(1))};
    for (Id p = 0; p < C.arity(0); ++p)
        out.f[p] = C.base(0, p).c1(after.f[p], before.f[p]);
    for (Id p = 0; p < C.arity(1); ++p) {
        const auto& B = C.base(1, p);
        const Id l = B.hc(after.c[p], B.id2(D.d(1, 1, 1, before.f, p)));
        const Id r = B.hc(B.id2(D.d(1, 0, 1, after.f, p)), before.c[p]);
        out.c[p] = B.vc(l, r);
    }
    return out;
}

inline GaugeTransformation identity_gauge(const RestrictedCosimplicial2Groupoid& C, const DescentDatum& d)
{
    GaugeTransformation out{CellVec(C.arity(0)), CellVec(C.arity(1))};
    for (Id p = 0; p < C.arity(0); ++p)
        out.f[p] = C.base(0, p).id1(d.x[p]);
    for (Id p = 0; p < C.arity(1); ++p)
        out.c[p] = C.base(1, p).id2(d.g[p]);
    return out;
}

/// For m: f ⇒ f′ out of the gauge (f, c): d ⇝ d′, the unique c′ making
/// the cylinder (1_{g′}∘d¹m) * c = c′ * (d⁰m∘1_g) commute.
inline CellVec cylinder_partner(const RestrictedCosimplicial2Groupoid& C, const DescentDatum& d,
                                const DescentDatum& d2, const GaugeTransformation& t, const CellVec& m)
{
    detail::CofaceCells D(C);
    CellVec out(C.arity(1));
    for (Id p = 0; p < C.arity(1); ++p) {
        const auto& B = C.base(1, p);
        const Id l = B.vc(B.hc(B.id2(d2.g[p]), D.d(1, 1, 2, m, p)), t.c[p]);
        out[p] = B.vc(l, B.vertical_inverse(B.hc(D.d(1, 0, 2, m, p), B.id2(d.g[p]))));
    }
    return out;
}

/// Family "cylinder", witness the degree-1 coordinate.
inline ValidationReport validate_descent_cell(const RestrictedCosimplicial2Groupoid& C, const DescentDatum& d,
                                              const DescentDatum& d2, const GaugeTransformation& t,
                                              const GaugeTransformation& t2, const DescentCell2& m)
{
    ValidationReport r;
    detail::CofaceCells D(C);
    for (Id p = 0; p < C.arity(0); ++p) {
        const auto& B = C.base(0, p);
        if (B.src1(m.m[p]) != t.f[p] || B.tgt1(m.m[p]) != t2.f[p])
            throw TypingError(detail::arrow("m is not f ⇒ f′", 0, p));
    }
    for (Id p = 0; p < C.arity(1); ++p) {
        const auto& B = C.base(1, p);
        const Id l = B.vc(B.hc(B.id2(d2.g[p]), D.d(1, 1, 2, m.m, p)), t.c[p]);
        const Id rr = B.vc(t2.c[p], B.hc(D.d(1, 0, 2, m.m, p), B.id2(d.g[p])));
        if (l == kNone || rr == kNone)
            throw TypingError(detail::arrow("cylinder composite undefined", 1, p));
        if (l != rr)
            r.add("cylinder", "cylinder equation fails", {static_cast<long long>(p)});
    }
    return r;
}

/// Desc(C) with the cells it was built from.
struct DescentTwoGroupoid
{
    TwoGroupoid groupoid;
    std::vector<DescentDatum> data;
    std::vector<GaugeTransformation> gauges;  // 1-cell k
    std::vector<DescentCell2> cells;          // 2-cell k
};

/// Descent data, gauge transformations and cylinder 2-cells, composed by
/// pasting and pointwise in G⁰. Tabulates every cell; small inputs only.
inline DescentTwoGroupoid descent_2groupoid(const RestrictedCosimplicial2Groupoid& C, Budget& budget)
{
    DescentTwoGroupoid out;
    out.data = enumerate_descent_data(C, budget);
    DatumIndex index(out.data);

    std::vector<OneCell> ones;
    std::map<std::pair<Id, GaugeTransformation>, Id> one_index;
    for (Id s = 0; s < out.data.size(); ++s)
        for_each_gauge(C, out.data[s], budget, [&](const GaugeTransformation& t, const DescentDatum& target) {
            const Id j = index.find(target);
            if (j == kNone)
                throw std::logic_error("gauge target is not a descent datum");
            one_index.emplace(std::make_pair(s, t), static_cast<Id>(ones.size()));
            ones.push_back({s, j});
            out.gauges.push_back(t);
        });

    std::vector<TwoCell> twos;
    std::map<std::pair<Id, CellVec>, Id> two_index;  // (source gauge, m)
    auto find_one = [&](Id s, const GaugeTransformation& t) {
        auto it = one_index.find({s, t});
        if (it == one_index.end())
            throw std::logic_error("pasted gauge transformation is not a 1-cell of Desc");
        return it->second;
    };
    for (Id u = 0; u < ones.size(); ++u) {
        const auto& t = out.gauges[u];
        const auto& d = out.data[ones[u].src];
        const auto& d2 = out.data[ones[u].tgt];
        std::vector<const std::vector<Id>*> mc;
        for (Id p = 0; p < C.arity(0); ++p)
            mc.push_back(&C.base(0, p).two_cells_from(t.f[p]));
        CellVec m;
        detail::odometer(mc, m, budget, [&](std::size_t) {
            GaugeTransformation t2{CellVec(C.arity(0)), cylinder_partner(C, d, d2, t, m)};
            for (Id p = 0; p < C.arity(0); ++p)
                t2.f[p] = C.base(0, p).tgt1(m[p]);
            const Id v = find_one(ones[u].src, t2);
            two_index.emplace(std::make_pair(u, m), static_cast<Id>(twos.size()));
            twos.push_back({u, v});
            out.cells.push_back({m});
        });
    }

    auto find_two = [&](Id u, const CellVec& m) {
        auto it = two_index.find({u, m});
        if (it == two_index.end())
            throw std::logic_error("composite 2-cell is not a 2-cell of Desc");
        return it->second;
    };
    std::vector<Id> id1, id2;
    for (Id s = 0; s < out.data.size(); ++s)
        id1.push_back(find_one(s, identity_gauge(C, out.data[s])));
    for (Id u = 0; u < ones.size(); ++u) {
        CellVec m(C.arity(0));
        for (Id p = 0; p < C.arity(0); ++p)
            m[p] = C.base(0, p).id2(out.gauges[u].f[p]);
        id2.push_back(find_two(u, m));
    }
    auto comp1 = [&](Id v, Id u) {
        budget.tick();
        return find_one(ones[u].src, compose_gauges(C, out.gauges[v], out.gauges[u]));
    };
    auto vcomp = [&](Id b, Id a) {
        budget.tick();
        CellVec m(C.arity(0));
        for (Id p = 0; p < C.arity(0); ++p)
            m[p] = C.base(0, p).vc(out.cells[b].m[p], out.cells[a].m[p]);
        return find_two(twos[a].src1, m);
    };
    auto hcomp = [&](Id b, Id a) {
        budget.tick();
        CellVec m(C.arity(0));
        for (Id p = 0; p < C.arity(0); ++p)
            m[p] = C.base(0, p).hc(out.cells[b].m[p], out.cells[a].m[p]);
        return find_two(comp1(twos[b].src1, twos[a].src1), m);
    };
    out.groupoid = TwoGroupoid::generate(out.data.size(), ones, std::move(id1), twos, std::move(id2), comp1, vcomp,
                                         hcomp);
    return out;
}

inline DescentTwoGroupoid descent_2groupoid(const RestrictedCosimplicial2Groupoid& C)
{
    Budget b;
    return descent_2groupoid(C, b);
}

/// π₁ and π₂ of Desc(C) at one datum, computed from the gauge loops and
/// cylinder 2-cells at that datum without tabulating all of Desc(C).
struct DescentHomotopy
{
    DescentDatum datum;
    std::vector<GaugeTransformation> loops;
    std::vector<Id> class_of_loop;  // loop -> position in pi1.elements
    GroupTable pi1;                 // elements: least loop of each class
    std::vector<CellVec> spheres;   // m: 1_x ⇒ 1_x with c′ = c = 1_g
    GroupTable pi2;
};

inline DescentHomotopy descent_homotopy(const RestrictedCosimplicial2Groupoid& C, const DescentDatum& d,
                                        Budget& budget)
{
    check_datum_typing(C, d);
    DescentHomotopy out;
    out.datum = d;
    for_each_gauge(C, d, budget, [&](const GaugeTransformation& t, const DescentDatum& target) {
        if (target == d)
            out.loops.push_back(t);
    });
    std::map<GaugeTransformation, Id> loop_index;
    for (Id i = 0; i < out.loops.size(); ++i)
        loop_index.emplace(out.loops[i], i);
    UnionFind uf(out.loops.size());
    for (Id i = 0; i < out.loops.size(); ++i) {
        const auto& t = out.loops[i];
        std::vector<const std::vector<Id>*> mc;
        for (Id p = 0; p < C.arity(0); ++p)
            mc.push_back(&C.base(0, p).two_cells_from(t.f[p]));
        CellVec m;
        detail::odometer(mc, m, budget, [&](std::size_t) {
            GaugeTransformation t2{CellVec(C.arity(0)), cylinder_partner(C, d, d, t, m)};
            for (Id p = 0; p < C.arity(0); ++p)
                t2.f[p] = C.base(0, p).tgt1(m[p]);
            uf.unite(i, loop_index.at(t2));
        });
    }
    auto P = Partition::from(uf);
    out.class_of_loop = P.block_of;
    for (const auto& b : P.blocks)
        out.pi1.elements.push_back(b.front());
    out.pi1.mul.assign(P.size(), std::vector<Id>(P.size()));
    for (Id i = 0; i < P.size(); ++i)
        for (Id j = 0; j < P.size(); ++j) {
            const auto prod = compose_gauges(C, out.loops[out.pi1.elements[i]], out.loops[out.pi1.elements[j]]);
            out.pi1.mul[i][j] = P.block_of[loop_index.at(prod)];
        }
    out.pi1.identity = P.block_of[loop_index.at(identity_gauge(C, d))];

    const auto id = identity_gauge(C, d);
    std::vector<const std::vector<Id>*> mc;
    std::vector<std::vector<Id>> loops2(C.arity(0));
    for (Id p = 0; p < C.arity(0); ++p) {
        loops2[p] = C.base(0, p).hom2(id.f[p], id.f[p]);
        mc.push_back(&loops2[p]);
    }
    CellVec m;
    detail::odometer(mc, m, budget, [&](std::size_t) {
        if (cylinder_partner(C, d, d, id, m) == id.c)
            out.spheres.push_back(m);
    });
    std::map<CellVec, Id> sphere_index;
    for (Id i = 0; i < out.spheres.size(); ++i) {
        sphere_index.emplace(out.spheres[i], i);
        out.pi2.elements.push_back(i);
    }
    out.pi2.mul.assign(out.spheres.size(), std::vector<Id>(out.spheres.size()));
    for (Id i = 0; i < out.spheres.size(); ++i)
        for (Id j = 0; j < out.spheres.size(); ++j) {
            CellVec v(C.arity(0));
            for (Id p = 0; p < C.arity(0); ++p)
                v[p] = C.base(0, p).vc(out.spheres[i][p], out.spheres[j][p]);
            out.pi2.mul[i][j] = sphere_index.at(v);
        }
    CellVec unit(C.arity(0));
    for (Id p = 0; p < C.arity(0); ++p)
        unit[p] = C.base(0, p).id2(id.f[p]);
    out.pi2.identity = sphere_index.at(unit);
    return out;
}

/// A map of cosimplicial objects in coordinate form: coordinate p of the
/// target level n reads coordinate source[n][p] of the source level through
/// maps[map[n][p]].
struct LevelwiseMap
{
    std::vector<TwoFunctor> maps;
    std::vector<std::pair<Id, Id>> map_ends;  // (source base, target base)
    std::array<std::vector<Id>, 4> source;
    std::array<std::vector<Id>, 4> map;

    Id image(const RestrictedCosimplicial2Groupoid&, int n, int kind, const CellVec& v, Id p) const
    {
        return detail::apply_functor(maps[map[n][p]], kind, v[source[n][p]]);
    }

    CellVec apply(int n, int kind, const CellVec& v) const
    {
        CellVec out(source[n].size());
        for (Id p = 0; p < out.size(); ++p)
            out[p] = detail::apply_functor(maps[map[n][p]], kind, v[source[n][p]]);
        return out;
    }

    DescentDatum apply(const DescentDatum& d) const { return {apply(0, 0, d.x), apply(1, 1, d.g), apply(2, 2, d.a)}; }
    GaugeTransformation apply(const GaugeTransformation& t) const { return {apply(0, 1, t.f), apply(1, 2, t.c)}; }
    DescentCell2 apply(const DescentCell2& m) const { return {apply(0, 2, m.m)}; }
};

/// Structure and functor checks throw or report as usual; commutation with
/// the cofaces is family "levelwise_map" with witness (n, i, coordinate).
inline ValidationReport validate_levelwise_map(const LevelwiseMap& F, const RestrictedCosimplicial2Groupoid& C,
                                               const RestrictedCosimplicial2Groupoid& D)
{
    detail::check_coordinate_structure(C);
    detail::check_coordinate_structure(D);
    if (F.map_ends.size() != F.maps.size())
        throw StructuralError("level-wise map: every functor needs its (source, target) bases");
    for (int n = 0; n <= 3; ++n) {
        if (F.source[n].size() != D.arity(n) || F.map[n].size() != D.arity(n))
            throw StructuralError("level-wise map: degree " + std::to_string(n) + " has the wrong number of coordinates");
        for (Id p = 0; p < D.arity(n); ++p) {
            if (F.source[n][p] >= C.arity(n) || F.map[n][p] >= F.maps.size())
                throw StructuralError("level-wise map: unknown coordinate or functor at degree " + std::to_string(n));
            const auto [s, t] = F.map_ends[F.map[n][p]];
            if (s != C.coord_base[n][F.source[n][p]] || t != D.coord_base[n][p])
                throw StructuralError("level-wise map: functor does not match the bases at degree " +
                                      std::to_string(n));
        }
    }
    ValidationReport r;
    for (Id k = 0; k < F.maps.size(); ++k)
        r.merge(validate_functor(F.maps[k], C.bases[F.map_ends[k].first], D.bases[F.map_ends[k].second]));
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i <= n; ++i)
            for (Id p = 0; p < D.arity(n); ++p) {
                // F ∘ d^i
                const Id s = F.source[n][p];
                const Id s1 = C.coface_source(n, i, s);
                const auto f1 = compose_functors(F.maps[F.map[n][p]], C.coface_map(n, i, s));
                // d^i ∘ F
                const Id q = D.coface_source(n, i, p);
                const Id s2 = F.source[n - 1][q];
                const auto f2 = compose_functors(D.coface_map(n, i, p), F.maps[F.map[n - 1][q]]);
                if (!detail::same_coordinate_map(s1, f1, s2, f2))
                    r.add("levelwise_map", "does not commute with d^i", {n, i, static_cast<long long>(p)});
            }
    return r;
}

inline LevelwiseMap identity_levelwise_map(const RestrictedCosimplicial2Groupoid& C)
{
    LevelwiseMap F;
    for (Id b = 0; b < C.bases.size(); ++b) {
        F.maps.push_back(identity_functor(C.bases[b]));
        F.map_ends.push_back({b, b});
    }
    for (int n = 0; n <= 3; ++n)
        for (Id p = 0; p < C.arity(n); ++p) {
            F.source[n].push_back(p);
            F.map[n].push_back(C.coord_base[n][p]);
        }
    return F;
}

/// Applies one functor per base coordinate-by-coordinate; C and D must have
/// the same coordinates (e.g. Čech objects of one cover with coefficients
/// T and T′, and phi[b]: C.bases[b] → D.bases[b]).
inline LevelwiseMap coefficient_map(const RestrictedCosimplicial2Groupoid& C, const RestrictedCosimplicial2Groupoid& D,
                                    const std::vector<TwoFunctor>& phi)
{
    if (phi.size() != C.bases.size() || C.bases.size() != D.bases.size())
        throw StructuralError("coefficient map: need one functor per base");
    LevelwiseMap F;
    F.maps = phi;
    for (Id b = 0; b < phi.size(); ++b)
        F.map_ends.push_back({b, b});
    for (int n = 0; n <= 3; ++n) {
        if (C.arity(n) != D.arity(n) || C.coord_base[n] != D.coord_base[n])
            throw StructuralError("coefficient map: coordinates differ at degree " + std::to_string(n));
        for (Id p = 0; p < C.arity(n); ++p) {
            F.source[n].push_back(p);
            F.map[n].push_back(C.coord_base[n][p]);
        }
    }
    return F;
}

/// Verdict on whether a level-wise map is a level-wise weak equivalence.
/// Recognized when every degree reads each source coordinate exactly once
/// (a product of coordinate functors); then it is one iff every coordinate
/// functor is a weak equivalence.
struct LevelwiseEquivalence
{
    bool recognized = false;
    bool equivalence = false;
    std::string detail;
};

inline LevelwiseEquivalence levelwise_weak_equivalence(const LevelwiseMap& F, const RestrictedCosimplicial2Groupoid& C,
                                                       const RestrictedCosimplicial2Groupoid& D)
{
    LevelwiseEquivalence out;
    if (!validate_levelwise_map(F, C, D).ok()) {
        out.detail = "not a map of cosimplicial 2-groupoids";
        return out;
    }
    for (int n = 0; n <= 3; ++n) {
        std::vector<Id> hits(C.arity(n), 0);
        for (Id s : F.source[n])
            ++hits[s];
        if (!std::all_of(hits.begin(), hits.end(), [](Id h) { return h == 1; })) {
            out.detail = "degree " + std::to_string(n) + " is not a product of coordinate functors; not recognized";
            return out;
        }
    }
    out.recognized = true;
    for (int n = 0; n <= 3; ++n)
        for (Id p = 0; p < D.arity(n); ++p) {
            const auto& Phi = F.maps[F.map[n][p]];
            auto w = is_weak_equivalence(Phi, C.base(n, F.source[n][p]), D.base(n, p));
            if (!w.equivalence) {
                out.detail = "degree " + std::to_string(n) + ", coordinate " + std::to_string(p) + ": " + w.failing +
                             " not bijective";
                return out;
            }
        }
    out.equivalence = true;
    out.detail = "level-wise weak equivalence";
    return out;
}

/// Post-composition with a level-wise map, as a 2-functor Desc(C) → Desc(D).
inline TwoFunctor induced_descent_map(const LevelwiseMap& F, const RestrictedCosimplicial2Groupoid& C,
                                      const RestrictedCosimplicial2Groupoid& D, const DescentTwoGroupoid& DC,
                                      const DescentTwoGroupoid& DD)
{
    auto r = validate_levelwise_map(F, C, D);
    for (const auto& v : r.violations())
        if (v.family == "levelwise_map")
            throw TypingError("level-wise map does not commute with d^" + std::to_string(v.witness[1]) +
                              " at degree " + std::to_string(v.witness[0]));
    if (!r.ok())
        throw TypingError("level-wise map has an invalid coordinate functor");
    DatumIndex di(DD.data);
    std::map<std::pair<Id, GaugeTransformation>, Id> ones;
    for (Id u = 0; u < DD.gauges.size(); ++u)
        ones.emplace(std::make_pair(DD.groupoid.src(u), DD.gauges[u]), u);
    std::map<std::pair<Id, CellVec>, Id> twos;
    for (Id k = 0; k < DD.cells.size(); ++k)
        twos.emplace(std::make_pair(DD.groupoid.src1(k), DD.cells[k].m), k);
    TwoFunctor out;
    for (const auto& d : DC.data)
        out.obj_map.push_back(di.find(F.apply(d)));
    for (Id u = 0; u < DC.gauges.size(); ++u)
        out.one_map.push_back(ones.at({out.obj_map[DC.groupoid.src(u)], F.apply(DC.gauges[u])}));
    for (Id k = 0; k < DC.cells.size(); ++k)
        out.two_map.push_back(twos.at({out.one_map[DC.groupoid.src1(k)], F.apply(DC.cells[k]).m}));
    return out;
}

/// Gauge classes of both sides compared through F.
struct InvarianceReport
{
    LevelwiseEquivalence levelwise;
    std::size_t classes_source = 0, classes_target = 0;
    std::vector<Id> class_map;  // source class -> target class
    bool bijection = false;
    /// Invariance is only asserted for level-wise weak equivalences.
    bool asserted() const { return levelwise.equivalence && bijection; }
};

inline InvarianceReport check_invariance(const LevelwiseMap& F, const RestrictedCosimplicial2Groupoid& C,
                                         const RestrictedCosimplicial2Groupoid& D, Budget& budget)
{
    InvarianceReport out;
    out.levelwise = levelwise_weak_equivalence(F, C, D);
    auto r = validate_levelwise_map(F, C, D);
    if (!r.ok())
        return out;
    const auto gc = gauge_classes(C, budget);
    const auto gd = gauge_classes(D, budget);
    DatumIndex di(gd.data);
    out.classes_source = gc.partition.size();
    out.classes_target = gd.partition.size();
    out.class_map.assign(out.classes_source, kNone);
    bool well_defined = true;
    for (Id i = 0; i < gc.data.size(); ++i) {
        const Id j = di.find(F.apply(gc.data[i]));
        if (j == kNone)
            throw std::logic_error("image of a descent datum is not a descent datum");
        Id& slot = out.class_map[gc.partition.block_of[i]];
        const Id cls = gd.partition.block_of[j];
        if (slot != kNone && slot != cls)
            well_defined = false;
        slot = cls;
    }
    std::vector<Id> hit(out.classes_target, 0);
    for (Id c : out.class_map)
        ++hit[c];
    out.bijection = well_defined && out.classes_source == out.classes_target &&
                    std::all_of(hit.begin(), hit.end(), [](Id h) { return h == 1; });
    return out;
}

/// Weak equivalence of Desc(C) → Desc(D) checked through gauge classes and
/// the homotopy groups at one datum per class, without tabulating Desc.
inline WeakEquivalenceResult descent_weak_equivalence(const LevelwiseMap& F, const RestrictedCosimplicial2Groupoid& C,
                                                      const RestrictedCosimplicial2Groupoid& D, Budget& budget)
{
    WeakEquivalenceResult out;
    out.equivalence = false;
    const auto gc = gauge_classes(C, budget);
    const auto gd = gauge_classes(D, budget);
    DatumIndex di(gd.data);
    std::vector<Id> class_map(gc.partition.size(), kNone);
    std::vector<Id> hit(gd.partition.size(), 0);
    for (Id c = 0; c < gc.partition.size(); ++c) {
        const Id j = di.find(F.apply(gc.data[gc.partition.blocks[c].front()]));
        class_map[c] = gd.partition.block_of[j];
        ++hit[class_map[c]];
    }
    for (Id i = 0; i < gc.data.size(); ++i)
        if (class_map[gc.partition.block_of[i]] != gd.partition.block_of[di.find(F.apply(gc.data[i]))]) {
            out.failing = "pi0";
            out.at = i;
            return out;
        }
    if (!std::all_of(hit.begin(), hit.end(), [](Id h) { return h == 1; })) {
        out.failing = "pi0";
        return out;
    }
    for (Id c = 0; c < gc.partition.size(); ++c) {
        const Id s = gc.partition.blocks[c].front();
        const auto hc = descent_homotopy(C, gc.data[s], budget);
        const auto hd = descent_homotopy(D, F.apply(gc.data[s]), budget);
        std::map<GaugeTransformation, Id> loops;
        for (Id i = 0; i < hd.loops.size(); ++i)
            loops.emplace(hd.loops[i], i);
        std::vector<Id> image(hc.pi1.order(), kNone), seen(hd.pi1.order(), 0);
        for (Id i = 0; i < hc.loops.size(); ++i) {
            const Id k = hd.class_of_loop[loops.at(F.apply(hc.loops[i]))];
            Id& slot = image[hc.class_of_loop[i]];
            if (slot != kNone && slot != k) {
                out.failing = "pi1";
                out.at = s;
                return out;
            }
            slot = k;
        }
        for (Id k : image)
            ++seen[k];
        if (hc.pi1.order() != hd.pi1.order() || !std::all_of(seen.begin(), seen.end(), [](Id h) { return h == 1; })) {
            out.failing = "pi1";
            out.at = s;
            return out;
        }
        std::set<CellVec> images;
        for (const auto& m : hc.spheres)
            images.insert(F.apply(0, 2, m));
        if (hc.spheres.size() != hd.spheres.size() || images.size() != hd.spheres.size()) {
            out.failing = "pi2";
            out.at = s;
            return out;
        }
    }
    out.equivalence = true;
    return out;
}

} // namespace desc2
