#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "report.hpp"

namespace desc2
{

struct OneCell
{
    Id src;
    Id tgt;
    bool operator==(const OneCell&) const = default;
};

struct TwoCell
{
    Id src1;
    Id tgt1;
    bool operator==(const TwoCell&) const = default;
};

/// Raw tables of a finite strict 2-groupoid. Composition entries are
/// listed first-applied first: comp1 {f, g, g∘f}, vcomp {a, b, b*a},
/// hcomp {a, b, b∘a}.
struct TwoGroupoidTables
{
    std::size_t objects = 0;
    std::vector<OneCell> one_cells;
    std::vector<Id> id1;
    std::vector<std::array<Id, 3>> comp1;
    std::vector<TwoCell> two_cells;
    std::vector<Id> id2;
    std::vector<std::array<Id, 3>> vcomp;
    std::vector<std::array<Id, 3>> hcomp;
};

namespace detail
{

/// Partial binary operation on [0, n). Dense storage while it stays small,
/// hashed beyond that.
class CompTable
{
public:
    static constexpr std::size_t kDenseLimit = std::size_t{1} << 22;

    CompTable() = default;
    explicit CompTable(std::size_t n) : n_(n)
    {
        if (n_ * n_ <= kDenseLimit)
            dense_.assign(n_ * n_, kNone);
    }

    Id get(Id i, Id j) const
    {
        if (!dense_.empty() || n_ == 0)
            return n_ == 0 ? kNone : dense_[std::size_t{i} * n_ + j];
        auto it = sparse_.find(key(i, j));
        return it == sparse_.end() ? kNone : it->second;
    }

    void set(Id i, Id j, Id v)
    {
        if (!dense_.empty())
            dense_[std::size_t{i} * n_ + j] = v;
        else
            sparse_[key(i, j)] = v;
    }

    std::size_t size() const { return n_; }

private:
    static std::uint64_t key(Id i, Id j) { return (std::uint64_t{i} << 32) | j; }

    std::size_t n_ = 0;
    std::vector<Id> dense_;
    std::unordered_map<std::uint64_t, Id> sparse_;
};

} // namespace detail

/// Finite, table-driven strict 2-groupoid. Immutable after construction.
///
/// Notation follows the usual "after" convention: c1(g, f) = g∘f where f is
/// applied first, vc(b, a) = b*a for a: f⇒g, b: g⇒h, hc(b, a) = b∘a where
/// the 1-cells under a come first. These return kNone when the table has no
/// entry; the checked spellings compose1 / vertical_compose /
/// horizontal_compose throw instead.
class TwoGroupoid
{
public:
    TwoGroupoid() : TwoGroupoid(terminal_tables()) {}

    explicit TwoGroupoid(TwoGroupoidTables t) : t_(std::move(t))
    {
        check_structure();
        build_tables();
        build_indexes();
        find_inverses();
    }

    /// Fills composition tables from callbacks evaluated on every composable
    /// pair. Callbacks receive (second, first) in "after" order.
    static TwoGroupoid generate(std::size_t objects, std::vector<OneCell> one_cells, std::vector<Id> id1,
                                std::vector<TwoCell> two_cells, std::vector<Id> id2,
                                const std::function<Id(Id, Id)>& comp1,
                                const std::function<Id(Id, Id)>& vcomp,
                                const std::function<Id(Id, Id)>& hcomp);

    static TwoGroupoidTables terminal_tables()
    {
        TwoGroupoidTables t;
        t.objects = 1;
        t.one_cells = {{0, 0}};
        t.id1 = {0};
        t.comp1 = {{0, 0, 0}};
        t.two_cells = {{0, 0}};
        t.id2 = {0};
        t.vcomp = {{0, 0, 0}};
        t.hcomp = {{0, 0, 0}};
        return t;
    }

    std::size_t num_objects() const { return t_.objects; }
    std::size_t num_one_cells() const { return t_.one_cells.size(); }
    std::size_t num_two_cells() const { return t_.two_cells.size(); }

    Id src(Id f) const { return t_.one_cells[f].src; }
    Id tgt(Id f) const { return t_.one_cells[f].tgt; }
    Id src1(Id a) const { return t_.two_cells[a].src1; }
    Id tgt1(Id a) const { return t_.two_cells[a].tgt1; }
    /// Source and target objects of the 1-cells under a 2-cell.
    Id src0(Id a) const { return src(src1(a)); }
    Id tgt0(Id a) const { return tgt(src1(a)); }
    Id id1(Id x) const { return t_.id1[x]; }
    Id id2(Id f) const { return t_.id2[f]; }

    Id c1(Id g, Id f) const { return comp1_.get(f, g); }
    Id vc(Id b, Id a) const { return vcomp_.get(a, b); }
    Id hc(Id b, Id a) const { return hcomp_.get(a, b); }

    Id compose1(Id g, Id f) const
    {
        check_one(f);
        check_one(g);
        if (tgt(f) != src(g))
            throw CompositionError("1-cells " + std::to_string(f) + " and " + std::to_string(g) +
                                   " are not composable");
        return c1(g, f);
    }

    /// b*a; requires target1(a) = source1(b).
    Id vertical_compose(Id a, Id b) const
    {
        check_two(a);
        check_two(b);
        if (tgt1(a) != src1(b))
            throw CompositionError("2-cells " + std::to_string(a) + " and " + std::to_string(b) +
                                   " are not vertically composable");
        return vc(b, a);
    }

    /// b∘a; requires the 1-cells under a to end where those under b start.
    Id horizontal_compose(Id a, Id b) const
    {
        check_two(a);
        check_two(b);
        if (tgt0(a) != src0(b))
            throw CompositionError("2-cells " + std::to_string(a) + " and " + std::to_string(b) +
                                   " are not horizontally composable");
        return hc(b, a);
    }

    /// Whiskering: 1_g ∘ a and a ∘ 1_f.
    Id whisker_after(Id g, Id a) const { return hc(id2(g), a); }
    Id whisker_before(Id a, Id f) const { return hc(a, id2(f)); }

    Id inverse1(Id f) const { return inv1_[f]; }
    Id vertical_inverse(Id a) const { return vinv_[a]; }
    Id horizontal_inverse(Id a) const { return hinv_[a]; }

    const std::vector<Id>& one_cells_from(Id x) const { return out1_[x]; }
    const std::vector<Id>& one_cells_into(Id x) const { return in1_[x]; }
    const std::vector<Id>& two_cells_from(Id f) const { return out2_[f]; }
    const std::vector<Id>& two_cells_into(Id f) const { return in2_[f]; }
    /// 1-cells x → y in ascending order.
    std::vector<Id> hom1(Id x, Id y) const
    {
        std::vector<Id> out;
        for (Id f : out1_[x])
            if (tgt(f) == y)
                out.push_back(f);
        return out;
    }
    /// 2-cells f ⇒ g in ascending order.
    std::vector<Id> hom2(Id f, Id g) const
    {
        std::vector<Id> out;
        for (Id a : out2_[f])
            if (tgt1(a) == g)
                out.push_back(a);
        return out;
    }

    const TwoGroupoidTables& tables() const { return t_; }

private:
    void check_one(Id f) const
    {
        if (f >= num_one_cells())
            throw StructuralError("unknown 1-cell " + std::to_string(f));
    }
    void check_two(Id a) const
    {
        if (a >= num_two_cells())
            throw StructuralError("unknown 2-cell " + std::to_string(a));
    }

    void check_structure() const
    {
        const auto n0 = t_.objects, n1 = t_.one_cells.size(), n2 = t_.two_cells.size();
        auto bad = [](const std::string& what) { throw StructuralError(what); };
        if (t_.id1.size() != n0)
            bad("id1 must have one entry per object");
        if (t_.id2.size() != n1)
            bad("id2 must have one entry per 1-cell");
        for (std::size_t f = 0; f < n1; ++f)
            if (t_.one_cells[f].src >= n0 || t_.one_cells[f].tgt >= n0)
                bad("1-cell " + std::to_string(f) + " has a dangling endpoint");
        for (Id x : t_.id1)
            if (x >= n1)
                bad("id1 refers to unknown 1-cell " + std::to_string(x));
        for (std::size_t a = 0; a < n2; ++a)
            if (t_.two_cells[a].src1 >= n1 || t_.two_cells[a].tgt1 >= n1)
                bad("2-cell " + std::to_string(a) + " has a dangling boundary");
        for (Id a : t_.id2)
            if (a >= n2)
                bad("id2 refers to unknown 2-cell " + std::to_string(a));
        for (const auto& e : t_.comp1)
            for (Id v : e)
                if (v >= n1)
                    bad("comp1 entry refers to unknown 1-cell " + std::to_string(v));
        for (const auto* table : {&t_.vcomp, &t_.hcomp})
            for (const auto& e : *table)
                for (Id v : e)
                    if (v >= n2)
                        bad("composition entry refers to unknown 2-cell " + std::to_string(v));
    }

    void build_tables()
    {
        const auto n1 = t_.one_cells.size(), n2 = t_.two_cells.size();
        comp1_ = detail::CompTable(n1);
        vcomp_ = detail::CompTable(n2);
        hcomp_ = detail::CompTable(n2);
        auto fill = [](detail::CompTable& table, const std::vector<std::array<Id, 3>>& entries,
                       const std::function<bool(Id, Id)>& composable, const char* name) {
            for (const auto& [first, second, result] : entries) {
                if (!composable(first, second))
                    throw StructuralError(std::string(name) + " entry for non-composable pair (" +
                                          std::to_string(first) + ", " + std::to_string(second) + ")");
                Id prev = table.get(first, second);
                if (prev != kNone && prev != result)
                    throw StructuralError(std::string(name) + " has conflicting entries for (" +
                                          std::to_string(first) + ", " + std::to_string(second) + ")");
                table.set(first, second, result);
            }
        };
        fill(comp1_, t_.comp1, [&](Id f, Id g) { return tgt(f) == src(g); }, "comp1");
        fill(vcomp_, t_.vcomp, [&](Id a, Id b) { return tgt1(a) == src1(b); }, "vcomp");
        fill(hcomp_, t_.hcomp, [&](Id a, Id b) { return tgt0(a) == src0(b); }, "hcomp");
    }

    void build_indexes()
    {
        const auto n0 = t_.objects, n1 = t_.one_cells.size(), n2 = t_.two_cells.size();
        out1_.assign(n0, {});
        in1_.assign(n0, {});
        out2_.assign(n1, {});
        in2_.assign(n1, {});
        for (Id f = 0; f < n1; ++f) {
            out1_[src(f)].push_back(f);
            in1_[tgt(f)].push_back(f);
        }
        for (Id a = 0; a < n2; ++a) {
            out2_[src1(a)].push_back(a);
            in2_[tgt1(a)].push_back(a);
        }
        // Totality on composable pairs.
        for (Id y = 0; y < n0; ++y)
            for (Id f : in1_[y])
                for (Id g : out1_[y])
                    if (c1(g, f) == kNone)
                        throw StructuralError("comp1 is missing the entry for (" + std::to_string(f) + ", " +
                                              std::to_string(g) + ")");
        for (Id g = 0; g < n1; ++g)
            for (Id a : in2_[g])
                for (Id b : out2_[g])
                    if (vc(b, a) == kNone)
                        throw StructuralError("vcomp is missing the entry for (" + std::to_string(a) + ", " +
                                              std::to_string(b) + ")");
        for (Id y = 0; y < n0; ++y)
            for (Id f : in1_[y])
                for (Id a : out2_[f])
                    for (Id g : out1_[y])
                        for (Id b : out2_[g])
                            if (hc(b, a) == kNone)
                                throw StructuralError("hcomp is missing the entry for (" + std::to_string(a) +
                                                      ", " + std::to_string(b) + ")");
    }

    void find_inverses()
    {
        const auto n1 = t_.one_cells.size(), n2 = t_.two_cells.size();
        inv1_.assign(n1, kNone);
        vinv_.assign(n2, kNone);
        hinv_.assign(n2, kNone);
        for (Id f = 0; f < n1; ++f)
            for (Id g : hom1(tgt(f), src(f)))
                if (c1(g, f) == id1(src(f)) && c1(f, g) == id1(tgt(f))) {
                    inv1_[f] = g;
                    break;
                }
        for (Id a = 0; a < n2; ++a)
            for (Id b : out2_[tgt1(a)])
                if (tgt1(b) == src1(a) && vc(b, a) == id2(src1(a)) && vc(a, b) == id2(tgt1(a))) {
                    vinv_[a] = b;
                    break;
                }
        for (Id a = 0; a < n2; ++a) {
            const Id x = src0(a), y = tgt0(a);
            const Id f_inv = inv1_[src1(a)];
            if (f_inv == kNone)
                continue;
            for (Id b : out2_[f_inv])
                if (hc(b, a) == id2(id1(x)) && hc(a, b) == id2(id1(y))) {
                    hinv_[a] = b;
                    break;
                }
        }
    }

    TwoGroupoidTables t_;
    detail::CompTable comp1_, vcomp_, hcomp_;
    std::vector<std::vector<Id>> out1_, in1_, out2_, in2_;
    std::vector<Id> inv1_, vinv_, hinv_;
};

inline TwoGroupoid TwoGroupoid::generate(std::size_t objects, std::vector<OneCell> one_cells, std::vector<Id> id1,
                                         std::vector<TwoCell> two_cells, std::vector<Id> id2,
                                         const std::function<Id(Id, Id)>& comp1,
                                         const std::function<Id(Id, Id)>& vcomp,
                                         const std::function<Id(Id, Id)>& hcomp)
{
    TwoGroupoidTables t;
    t.objects = objects;
    t.one_cells = std::move(one_cells);
    t.id1 = std::move(id1);
    t.two_cells = std::move(two_cells);
    t.id2 = std::move(id2);

    const auto n1 = t.one_cells.size(), n2 = t.two_cells.size();
    std::vector<std::vector<Id>> in1(objects), out1(objects), in2(n1), out2(n1);
    for (Id f = 0; f < n1; ++f) {
        out1[t.one_cells[f].src].push_back(f);
        in1[t.one_cells[f].tgt].push_back(f);
    }
    for (Id a = 0; a < n2; ++a) {
        out2[t.two_cells[a].src1].push_back(a);
        in2[t.two_cells[a].tgt1].push_back(a);
    }
    for (Id y = 0; y < objects; ++y)
        for (Id f : in1[y])
            for (Id g : out1[y])
                t.comp1.push_back({f, g, comp1(g, f)});
    for (Id g = 0; g < n1; ++g)
        for (Id a : in2[g])
            for (Id b : out2[g])
                t.vcomp.push_back({a, b, vcomp(b, a)});
    for (Id y = 0; y < objects; ++y)
        for (Id f : in1[y])
            for (Id a : out2[f])
                for (Id g : out1[y])
                    for (Id b : out2[g])
                        t.hcomp.push_back({a, b, hcomp(b, a)});
    return TwoGroupoid(std::move(t));
}

/// Free-function spellings of the two compositions.
inline Id vertical_compose(const TwoGroupoid& G, Id a, Id b) { return G.vertical_compose(a, b); }
inline Id horizontal_compose(const TwoGroupoid& G, Id a, Id b) { return G.horizontal_compose(a, b); }

/// Scans every axiom instance of a strict 2-groupoid. Families reported:
/// "typing", "units", "associativity", "inverses", "interchange".
/// Structural problems are rejected earlier, by the constructor.
inline ValidationReport validate_two_groupoid(const TwoGroupoid& G, Budget* budget = nullptr)
{
    ValidationReport r;
    auto tick = [&](std::uint64_t n = 1) {
        if (budget)
            budget->tick(n);
    };
    using W = std::vector<long long>;
    const Id n0 = static_cast<Id>(G.num_objects());
    const Id n1 = static_cast<Id>(G.num_one_cells());
    const Id n2 = static_cast<Id>(G.num_two_cells());

    // typing
    for (Id x = 0; x < n0; ++x)
        if (G.src(G.id1(x)) != x || G.tgt(G.id1(x)) != x)
            r.add("typing", "id1 is not a loop at its object", W{x});
    for (Id f = 0; f < n1; ++f)
        if (G.src1(G.id2(f)) != f || G.tgt1(G.id2(f)) != f)
            r.add("typing", "id2 is not an endo-2-cell of its 1-cell", W{f});
    for (Id a = 0; a < n2; ++a) {
        Id f = G.src1(a), g = G.tgt1(a);
        if (G.src(f) != G.src(g) || G.tgt(f) != G.tgt(g))
            r.add("typing", "2-cell between non-parallel 1-cells", W{a});
    }
    for (Id y = 0; y < n0; ++y)
        for (Id f : G.one_cells_into(y))
            for (Id g : G.one_cells_from(y)) {
                tick();
                Id h = G.c1(g, f);
                if (G.src(h) != G.src(f) || G.tgt(h) != G.tgt(g))
                    r.add("typing", "comp1 result has wrong endpoints", W{f, g, h});
            }
    for (Id g = 0; g < n1; ++g)
        for (Id a : G.two_cells_into(g))
            for (Id b : G.two_cells_from(g)) {
                tick();
                Id c = G.vc(b, a);
                if (G.src1(c) != G.src1(a) || G.tgt1(c) != G.tgt1(b))
                    r.add("typing", "vcomp result has wrong boundary", W{a, b, c});
            }
    for (Id a = 0; a < n2; ++a)
        for (Id g : G.one_cells_from(G.tgt0(a)))
            for (Id b : G.two_cells_from(g)) {
                tick();
                Id c = G.hc(b, a);
                if (G.src1(c) != G.c1(G.src1(b), G.src1(a)) || G.tgt1(c) != G.c1(G.tgt1(b), G.tgt1(a)))
                    r.add("typing", "hcomp result has wrong boundary", W{a, b, c});
            }

    // units
    for (Id f = 0; f < n1; ++f) {
        if (G.c1(f, G.id1(G.src(f))) != f || G.c1(G.id1(G.tgt(f)), f) != f)
            r.add("units", "id1 is not a unit for comp1", W{f});
    }
    for (Id a = 0; a < n2; ++a) {
        if (G.vc(a, G.id2(G.src1(a))) != a || G.vc(G.id2(G.tgt1(a)), a) != a)
            r.add("units", "id2 is not a unit for vcomp", W{a});
        if (G.hc(a, G.id2(G.id1(G.src0(a)))) != a || G.hc(G.id2(G.id1(G.tgt0(a))), a) != a)
            r.add("units", "identity of an identity 1-cell is not a unit for hcomp", W{a});
    }
    for (Id y = 0; y < n0; ++y)
        for (Id f : G.one_cells_into(y))
            for (Id g : G.one_cells_from(y))
                if (G.id2(G.c1(g, f)) != G.hc(G.id2(g), G.id2(f)))
                    r.add("units", "id2(g∘f) differs from id2(g)∘id2(f)", W{f, g});

    // associativity
    for (Id f = 0; f < n1; ++f)
        for (Id g : G.one_cells_from(G.tgt(f)))
            for (Id h : G.one_cells_from(G.tgt(g))) {
                tick();
                if (G.c1(h, G.c1(g, f)) != G.c1(G.c1(h, g), f))
                    r.add("associativity", "comp1", W{f, g, h});
            }
    for (Id a = 0; a < n2; ++a)
        for (Id b : G.two_cells_from(G.tgt1(a)))
            for (Id c : G.two_cells_from(G.tgt1(b))) {
                tick();
                if (G.vc(c, G.vc(b, a)) != G.vc(G.vc(c, b), a))
                    r.add("associativity", "vcomp", W{a, b, c});
            }
    for (Id a = 0; a < n2; ++a)
        for (Id g : G.one_cells_from(G.tgt0(a)))
            for (Id b : G.two_cells_from(g))
                for (Id h : G.one_cells_from(G.tgt(g)))
                    for (Id c : G.two_cells_from(h)) {
                        tick();
                        if (G.hc(c, G.hc(b, a)) != G.hc(G.hc(c, b), a))
                            r.add("associativity", "hcomp", W{a, b, c});
                    }

    // inverses
    for (Id f = 0; f < n1; ++f)
        if (G.inverse1(f) == kNone)
            r.add("inverses", "1-cell without a comp1 inverse", W{f});
    for (Id a = 0; a < n2; ++a) {
        if (G.vertical_inverse(a) == kNone)
            r.add("inverses", "2-cell without a vertical inverse", W{a});
        if (G.horizontal_inverse(a) == kNone)
            r.add("inverses", "2-cell without a horizontal inverse", W{a});
    }

    // interchange: hc(b2*a2, b1*a1) = hc(b2,b1) * hc(a2,a1)
    for (Id a1 = 0; a1 < n2; ++a1)
        for (Id b1 : G.two_cells_from(G.tgt1(a1)))
            for (Id g2 : G.one_cells_from(G.tgt0(a1)))
                for (Id a2 : G.two_cells_from(g2))
                    for (Id b2 : G.two_cells_from(G.tgt1(a2))) {
                        tick();
                        Id lhs = G.hc(G.vc(b2, a2), G.vc(b1, a1));
                        Id rhs = G.vc(G.hc(b2, b1), G.hc(a2, a1));
                        if (lhs != rhs)
                            r.add("interchange", "(b2*a2)∘(b1*a1) != (b2∘b1)*(a2∘a1)", W{a1, b1, a2, b2});
                    }
    return r;
}

} // namespace desc2
