#pragma once

#include <array>
#include <bitset>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cosimplicial.hpp"
#include "descent.hpp"
#include "nerve.hpp"

namespace desc2
{

/// A k-simplex of Tot_r: for every degree n ≤ 3 and coordinate p, the
/// images of the strict chains of [n]×[k] (sizes 1..4) in Xⁿ_p. Higher
/// chains are filled uniquely because every base is 3-coskeletal.
struct TotSimplex
{
    int k = 0;
    std::array<std::vector<std::vector<Id>>, 4> values;  // [n][p][chain]
    auto operator<=>(const TotSimplex&) const = default;
};

namespace detail
{

/// Strict chains of the poset [n]×[k], points encoded as i*(k+1)+j.
struct ChainTable
{
    int n = 0, k = 0;
    std::vector<std::vector<int>> chains;  // by size, then lexicographic
    std::map<std::vector<int>, Id> index;
    std::vector<std::vector<Id>> faces;    // faces[c][t]: c without its t-th point
    std::vector<int> forced_i;             // least i missed by the first projection, or -1
    std::vector<Id> forced_src;            // the chain of [n-1]×[k] it comes from

    ChainTable() = default;
    ChainTable(int n_, int k_) : n(n_), k(k_)
    {
        const int w = k + 1, pts = (n + 1) * w;
        std::vector<std::vector<int>> all;
        std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& c) {
            all.push_back(c);
            if (c.size() == 4)
                return;
            const int last = c.back();
            for (int q = last + 1; q < pts; ++q)
                if (q / w >= last / w && q % w >= last % w) {
                    c.push_back(q);
                    grow(c);
                    c.pop_back();
                }
        };
        for (int q = 0; q < pts; ++q) {
            std::vector<int> c{q};
            grow(c);
        }
        std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        chains = all;
        for (Id c = 0; c < chains.size(); ++c)
            index.emplace(chains[c], c);
        faces.resize(chains.size());
        forced_i.assign(chains.size(), -1);
        forced_src.assign(chains.size(), kNone);
        for (Id c = 0; c < chains.size(); ++c) {
            const auto& ch = chains[c];
            for (std::size_t t = 0; ch.size() > 1 && t < ch.size(); ++t) {
                auto f = ch;
                f.erase(f.begin() + t);
                faces[c].push_back(index.at(f));
            }
            std::vector<char> hit(n + 1, 0);
            for (int q : ch)
                hit[q / w] = 1;
            for (int i = 0; i <= n; ++i)
                if (!hit[i]) {
                    forced_i[c] = i;
                    break;
                }
        }
    }

    int size(Id c) const { return static_cast<int>(chains[c].size()); }
};

struct BoundaryHash
{
    std::size_t operator()(const std::array<Id, 4>& a) const
    {
        std::size_t h = 0;
        for (Id y : a)
            h = h * 0x100000001b3ull ^ (y + 0x9e3779b97f4a7c15ull);
        return h;
    }
};

/// Simplices of one base grouped by their boundary.
struct BoundaryIndex
{
    std::array<std::unordered_map<std::array<Id, 4>, std::vector<Id>, BoundaryHash>, 4> by_boundary;
    std::vector<Id> vertices;

    explicit BoundaryIndex(const FiniteCoskSSet& X)
    {
        for (Id v = 0; v < X.count(0); ++v)
            vertices.push_back(v);
        for (int d = 1; d <= 3; ++d)
            for (Id s = 0; s < X.count(d); ++s) {
                std::array<Id, 4> b{kNone, kNone, kNone, kNone};
                for (int t = 0; t <= d; ++t)
                    b[t] = X.face(d, t, s);
                by_boundary[d][b].push_back(s);
            }
    }

    const std::vector<Id>& with_boundary(int d, const std::array<Id, 4>& b) const
    {
        static const std::vector<Id> none;
        auto it = by_boundary[d].find(b);
        return it == by_boundary[d].end() ? none : it->second;
    }
};

} // namespace detail

/// Prescribed chain values for a search, kNone where free.
using TotPrescription = std::array<std::vector<std::vector<Id>>, 4>;

/// Backtracking search for the k-simplices of Tot_r X. Blocks (n, p) are
/// visited in a fixed greedy order: any block whose sources are placed and
/// whose degree is at least 2 first (these mostly check), otherwise the
/// block that completes the most sources of other blocks.
class TotSearch
{
public:
    enum class Status
    {
        completed,  // every solution visited
        stopped,    // the callback asked to stop
        limit       // node limit reached first
    };

    TotSearch(const RestrictedCosimplicialSSet& X, int k) : X_(X), k_(k)
    {
        if (k < 0 || k > 2)
            throw StructuralError("Tot_r simplices are available for k = 0, 1, 2");
        detail::check_coordinate_structure(X);
        for (int n = 0; n <= 3; ++n)
            tables_[n] = detail::ChainTable(n, k);
        for (const auto& B : X.bases)
            indices_.emplace_back(B);
        for (int n = 0; n <= 3; ++n) {
            const auto& T = tables_[n];
            for (Id c = 0; c < T.chains.size(); ++c)
                if (T.forced_i[c] >= 0) {
                    std::vector<int> shifted;
                    for (int q : T.chains[c]) {
                        const int i = q / (k + 1), j = q % (k + 1);
                        shifted.push_back((i > T.forced_i[c] ? i - 1 : i) * (k + 1) + j);
                    }
                    tables_[n].forced_src[c] = tables_[n - 1].index.at(shifted);
                } else {
                    unknown_[n].push_back(c);
                }
        }
        plan_order();
        plan_conflicts();
    }

    int k() const { return k_; }
    const detail::ChainTable& table(int n) const { return tables_[n]; }
    const RestrictedCosimplicialSSet& sset() const { return X_; }

    /// An empty prescription of the right shape.
    TotPrescription blank() const
    {
        TotPrescription P;
        for (int n = 0; n <= 3; ++n)
            P[n].assign(X_.arity(n), std::vector<Id>(tables_[n].chains.size(), kNone));
        return P;
    }

    /// Pins every chain inside [n]×{j} to the vertex ends[j].
    TotPrescription pin_vertices(const std::vector<const TotSimplex*>& ends) const
    {
        auto P = blank();
        for (int n = 0; n <= 3; ++n) {
            const auto& T = tables_[n];
            for (Id c = 0; c < T.chains.size(); ++c) {
                const int j = T.chains[c][0] % (k_ + 1);
                bool flat = true;
                std::vector<int> at0;
                for (int q : T.chains[c]) {
                    flat = flat && q % (k_ + 1) == j;
                    at0.push_back(q / (k_ + 1));
                }
                if (!flat || !ends[j])
                    continue;
                const Id c0 = vertex_table(n).index.at(at0);
                for (Id p = 0; p < X_.arity(n); ++p)
                    P[n][p][c] = ends[j]->values[n][p][c0];
            }
        }
        return P;
    }

    /// Visits solutions in a deterministic order; fn returns false to stop.
    template <class Fn>
    Status run(const TotPrescription* pre, Budget& budget, std::uint64_t node_limit, Fn&& fn)
    {
        cur_.k = k_;
        for (int n = 0; n <= 3; ++n)
            cur_.values[n].assign(X_.arity(n), std::vector<Id>(tables_[n].chains.size(), kNone));
        pre_ = pre;
        budget_ = &budget;
        nodes_ = 0;
        limit_ = node_limit;
        status_ = Status::completed;
        emit_ = [&](const TotSimplex& s) { return fn(s); };
        block(0);
        return status_;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    const detail::ChainTable& vertex_table(int n) const
    {
        static const std::array<detail::ChainTable, 4> t0{detail::ChainTable(0, 0), detail::ChainTable(1, 0),
                                                           detail::ChainTable(2, 0), detail::ChainTable(3, 0)};
        return t0[n];
    }

    void plan_order()
    {
        std::vector<std::pair<int, Id>> blocks;
        for (int n = 0; n <= 3; ++n)
            for (Id p = 0; p < X_.arity(n); ++p)
                blocks.push_back({n, p});
        std::map<std::pair<int, Id>, std::vector<std::pair<int, Id>>> deps, users;
        for (auto [n, p] : blocks)
            for (int i = 0; n > 0 && i <= n; ++i) {
                std::pair<int, Id> s{n - 1, X_.coface_source(n, i, p)};
                auto& d = deps[{n, p}];
                if (std::find(d.begin(), d.end(), s) == d.end()) {
                    d.push_back(s);
                    users[s].push_back({n, p});
                }
            }
        std::map<std::pair<int, Id>, int> missing;
        for (auto b : blocks)
            missing[b] = static_cast<int>(deps[b].size());
        std::set<std::pair<int, Id>> placed;
        while (order_.size() < blocks.size()) {
            std::optional<std::pair<int, Id>> best;
            long long best_score = -1;
            for (auto b : blocks) {
                if (placed.count(b) || missing[b] != 0)
                    continue;
                long long score = 0;
                if (b.first >= 2)
                    score = 1'000'000'000LL + b.first;
                else
                    for (auto u : users[b])
                        score += missing[u] == 1 ? 1000LL * u.first : 1;
                if (score > best_score) {
                    best_score = score;
                    best = b;
                }
            }
            placed.insert(*best);
            order_.push_back(*best);
            for (auto u : users[*best])
                --missing[u];
        }
    }

    bool tick()
    {
        budget_->tick();
        if (++nodes_ > limit_) {
            status_ = Status::limit;
            return false;
        }
        return true;
    }

    bool halted() const { return status_ != Status::completed; }

    // Conflict-directed backjumping over blocks: a failed subtree reports the
    // block positions its failure depends on, and a block not in that set is
    // skipped on the way back. A subtree that emitted a solution reports every
    // position, so enumeration never loses solutions.
    static constexpr std::size_t kMaxBlocks = 256;
    using Conflict = std::bitset<kMaxBlocks>;

    void plan_conflicts()
    {
        dep_pos_.assign(order_.size(), Conflict{});
        if (order_.size() >= kMaxBlocks) {
            for (auto& d : dep_pos_)
                d.set();
            return;
        }
        std::map<std::pair<int, Id>, std::size_t> at;
        for (std::size_t q = 0; q < order_.size(); ++q)
            at[order_[q]] = q;
        for (std::size_t q = 0; q < order_.size(); ++q) {
            const auto [n, p] = order_[q];
            for (int i = 0; n > 0 && i <= n; ++i)
                dep_pos_[q].set(at.at({n - 1, X_.coface_source(n, i, p)}));
        }
    }

    Conflict block(std::size_t pos)
    {
        if (pos == order_.size()) {
            if (!emit_(cur_))
                status_ = Status::stopped;
            return Conflict{}.set();
        }
        const auto [n, p] = order_[pos];
        const auto& T = tables_[n];
        auto& val = cur_.values[n][p];
        for (Id c = 0; c < T.chains.size(); ++c) {
            if (T.forced_i[c] < 0)
                continue;
            const int i = T.forced_i[c];
            const Id q = X_.coface_source(n, i, p);
            val[c] = X_.coface_map(n, i, p).level[T.size(c) - 1][cur_.values[n - 1][q][T.forced_src[c]]];
            if (pre_ && (*pre_)[n][p][c] != kNone && (*pre_)[n][p][c] != val[c])
                return dep_pos_[pos];
        }
        Conflict r = local(pos, 0);
        if (r.test(pos)) {
            r.reset(pos);
            r |= dep_pos_[pos];
        }
        return r;
    }

    Conflict local(std::size_t pos, std::size_t u)
    {
        const auto [n, p] = order_[pos];
        if (u == unknown_[n].size())
            return block(pos + 1);
        Conflict own = dep_pos_[pos];
        own.set(pos);
        const auto& T = tables_[n];
        const Id c = unknown_[n][u];
        auto& val = cur_.values[n][p];
        const auto& X = X_.bases[X_.coord_base[n][p]];
        const auto& I = indices_[X_.coord_base[n][p]];
        const int d = T.size(c) - 1;
        const Id want = pre_ ? (*pre_)[n][p][c] : kNone;
        if (d == 0) {
            if (want != kNone) {
                if (want >= X.count(0) || !tick())
                    return own;
                val[c] = want;
                return local(pos, u + 1);
            }
            Conflict acc = own;
            for (Id v : I.vertices) {
                if (!tick())
                    return acc;
                val[c] = v;
                Conflict r = local(pos, u + 1);
                if (halted())
                    return r;
                if (!r.test(pos))
                    return r;
                acc |= r;
            }
            return acc;
        }
        std::array<Id, 4> b{kNone, kNone, kNone, kNone};
        for (int t = 0; t <= d; ++t)
            b[t] = val[T.faces[c][t]];
        if (want != kNone) {
            if (!tick())
                return own;
            for (int t = 0; t <= d; ++t)
                if (X.face(d, t, want) != b[t])
                    return own;
            val[c] = want;
            return local(pos, u + 1);
        }
        Conflict acc = own;
        for (Id s : I.with_boundary(d, b)) {
            if (!tick())
                return acc;
            val[c] = s;
            Conflict r = local(pos, u + 1);
            if (halted())
                return r;
            if (!r.test(pos))
                return r;
            acc |= r;
        }
        return acc;
    }

    std::vector<Conflict> dep_pos_;

    const RestrictedCosimplicialSSet& X_;
    int k_;
    std::array<detail::ChainTable, 4> tables_;
    std::array<std::vector<Id>, 4> unknown_;
    std::vector<detail::BoundaryIndex> indices_;
    std::vector<std::pair<int, Id>> order_;

    TotSimplex cur_;
    const TotPrescription* pre_ = nullptr;
    Budget* budget_ = nullptr;
    std::uint64_t nodes_ = 0, limit_ = 0;
    Status status_ = Status::completed;
    std::function<bool(const TotSimplex&)> emit_;
};

constexpr std::uint64_t kNoNodeLimit = ~std::uint64_t{0};

/// All k-simplices of Tot_r X, k = 0, 1, 2.
inline std::vector<TotSimplex> tot_r_direct(const RestrictedCosimplicialSSet& X, int k, Budget& budget)
{
    TotSearch S(X, k);
    std::vector<TotSimplex> out;
    S.run(nullptr, budget, kNoNodeLimit, [&](const TotSimplex& s) {
        out.push_back(s);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<TotSimplex> tot_r_direct(const RestrictedCosimplicialSSet& X, int k)
{
    Budget b;
    return tot_r_direct(X, k, b);
}

/// Face map δ_t of a k-simplex (vertex t of Δᵏ deleted); with k = 1 and
/// t = 1 this is the source vertex, t = 0 the target.
inline TotSimplex tot_face(const TotSimplex& s, int t)
{
    if (s.k < 1 || t < 0 || t > s.k)
        throw StructuralError("face index out of range");
    const int k = s.k, k1 = s.k - 1;
    TotSimplex out;
    out.k = k1;
    for (int n = 0; n <= 3; ++n) {
        detail::ChainTable from(n, k), to(n, k1);
        out.values[n].assign(s.values[n].size(), std::vector<Id>(to.chains.size()));
        for (Id c = 0; c < to.chains.size(); ++c) {
            std::vector<int> up;
            for (int q : to.chains[c]) {
                const int i = q / (k1 + 1), j = q % (k1 + 1);
                up.push_back(i * (k + 1) + (j < t ? j : j + 1));
            }
            const Id cu = from.index.at(up);
            for (Id p = 0; p < s.values[n].size(); ++p)
                out.values[n][p][c] = s.values[n][p][cu];
        }
    }
    return out;
}

/// Vertex j of a simplex: the chains inside [n]×{j}.
inline TotSimplex tot_vertex(const TotSimplex& s, int j)
{
    if (j < 0 || j > s.k)
        throw StructuralError("vertex index out of range");
    TotSimplex out;
    for (int n = 0; n <= 3; ++n) {
        detail::ChainTable from(n, s.k), to(n, 0);
        out.values[n].assign(s.values[n].size(), std::vector<Id>(to.chains.size()));
        for (Id c = 0; c < to.chains.size(); ++c) {
            std::vector<int> up;
            for (int q : to.chains[c])
                up.push_back(q * (s.k + 1) + j);
            const Id cu = from.index.at(up);
            for (Id p = 0; p < s.values[n].size(); ++p)
                out.values[n][p][c] = s.values[n][p][cu];
        }
    }
    return out;
}

namespace detail
{

inline Id chain_id(const ChainTable& T, std::initializer_list<std::pair<int, int>> pts)
{
    std::vector<int> c;
    for (auto [i, j] : pts)
        c.push_back(i * (T.k + 1) + j);
    return T.index.at(c);
}

} // namespace detail

/// Reads (x, g, a) off a vertex of Tot_r of a level-wise nerve.
inline DescentDatum vertex_to_datum(const LevelwiseNerve& N, const TotSimplex& v)
{
    if (v.k != 0)
        throw StructuralError("vertex_to_datum needs a 0-simplex");
    DescentDatum d;
    const detail::ChainTable T1(1, 0), T2(2, 0);
    const Id e = detail::chain_id(T1, {{0, 0}, {1, 0}});
    const Id tri = detail::chain_id(T2, {{0, 0}, {1, 0}, {2, 0}});
    for (Id p = 0; p < v.values[0].size(); ++p)
        d.x.push_back(v.values[0][p][0]);
    for (Id p = 0; p < v.values[1].size(); ++p)
        d.g.push_back(v.values[1][p][e]);
    for (Id p = 0; p < v.values[2].size(); ++p)
        d.a.push_back(N.nerves[N.sset.coord_base[2][p]].keys[2][v.values[2][p][tri]][3]);
    return d;
}

/// The unique vertex of Tot_r N(C) whose top chains carry (x, g, a).
inline TotSimplex datum_to_vertex(const RestrictedCosimplicial2Groupoid& C, const LevelwiseNerve& N,
                                  TotSearch& S0, const DescentDatum& d, Budget& budget)
{
    check_datum_typing(C, d);
    detail::CofaceCells D(C);
    auto P = S0.blank();
    const auto& T1 = S0.table(1);
    const auto& T2 = S0.table(2);
    const Id e = detail::chain_id(T1, {{0, 0}, {1, 0}});
    const Id tri = detail::chain_id(T2, {{0, 0}, {1, 0}, {2, 0}});
    for (Id p = 0; p < C.arity(0); ++p)
        P[0][p][0] = d.x[p];
    for (Id p = 0; p < C.arity(1); ++p)
        P[1][p][e] = d.g[p];
    for (Id q = 0; q < C.arity(2); ++q) {
        const auto& Nq = N.nerves[C.coord_base[2][q]];
        P[2][q][tri] = Nq.find(2, {D.d(2, 2, 1, d.g, q), D.d(2, 1, 1, d.g, q), D.d(2, 0, 1, d.g, q), d.a[q]});
        if (P[2][q][tri] == kNone)
            throw std::logic_error("descent datum triangle missing from the nerve");
    }
    std::optional<TotSimplex> found;
    std::size_t count = 0;
    S0.run(&P, budget, kNoNodeLimit, [&](const TotSimplex& s) {
        found = s;
        return ++count < 2;
    });
    if (count != 1)
        throw std::logic_error("descent datum does not extend uniquely to a vertex of Tot_r");
    return *found;
}

/// The path of a gauge transformation (f, c): d ⇝ d′. In each degree-1
/// coordinate the square (00,10,11,01) gets the diagonal d⁰f∘g, the
/// identity filler in the triangle through (1,0), and c in the triangle
/// through (0,1); degree-2 interiors are the unique completion.
inline TotSimplex gauge_to_path(const RestrictedCosimplicial2Groupoid& C, const LevelwiseNerve& N, TotSearch& S1,
                                const TotSimplex& from, const TotSimplex& to, const DescentDatum& d,
                                const DescentDatum& d2, const GaugeTransformation& t, Budget& budget)
{
    check_gauge_typing(C, d, d2, t);
    detail::CofaceCells D(C);
    auto P = S1.pin_vertices({&from, &to});
    const auto& T0 = S1.table(0);
    const auto& T1 = S1.table(1);
    const Id f_chain = detail::chain_id(T0, {{0, 0}, {0, 1}});
    const Id diag = detail::chain_id(T1, {{0, 0}, {1, 1}});
    const Id low = detail::chain_id(T1, {{0, 0}, {1, 0}, {1, 1}});
    const Id up = detail::chain_id(T1, {{0, 0}, {0, 1}, {1, 1}});
    for (Id p = 0; p < C.arity(0); ++p)
        P[0][p][f_chain] = t.f[p];
    for (Id p = 0; p < C.arity(1); ++p) {
        const auto& B = C.base(1, p);
        const auto& Np = N.nerves[C.coord_base[1][p]];
        const Id d0f = D.d(1, 0, 1, t.f, p), d1f = D.d(1, 1, 1, t.f, p);
        const Id dg = B.c1(d0f, d.g[p]);
        P[1][p][diag] = dg;
        P[1][p][low] = Np.find(2, {d.g[p], dg, d0f, B.id2(dg)});
        P[1][p][up] = Np.find(2, {d1f, dg, d2.g[p], t.c[p]});
        if (P[1][p][low] == kNone || P[1][p][up] == kNone)
            throw std::logic_error("gauge square triangle missing from the nerve");
    }
    std::optional<TotSimplex> found;
    std::size_t count = 0;
    S1.run(&P, budget, kNoNodeLimit, [&](const TotSimplex& s) {
        found = s;
        return ++count < 2;
    });
    if (count != 1)
        throw std::logic_error("gauge square does not extend uniquely to a path in Tot_r");
    return *found;
}

/// Reads (f, c) off a path: f from degree 0, and c = (upper filler) *
/// (lower filler)⁻¹ in each degree-1 square.
inline GaugeTransformation path_to_gauge(const RestrictedCosimplicial2Groupoid& C, const LevelwiseNerve& N,
                                         const TotSimplex& path)
{
    if (path.k != 1)
        throw StructuralError("path_to_gauge needs a 1-simplex");
    const detail::ChainTable T0(0, 1), T1(1, 1);
    const Id f_chain = detail::chain_id(T0, {{0, 0}, {0, 1}});
    const Id low = detail::chain_id(T1, {{0, 0}, {1, 0}, {1, 1}});
    const Id up = detail::chain_id(T1, {{0, 0}, {0, 1}, {1, 1}});
    GaugeTransformation t;
    for (Id p = 0; p < C.arity(0); ++p)
        t.f.push_back(path.values[0][p][f_chain]);
    for (Id p = 0; p < C.arity(1); ++p) {
        const auto& B = C.base(1, p);
        const auto& keys = N.nerves[C.coord_base[1][p]].keys[2];
        const Id l = keys[path.values[1][p][low]][3];
        const Id u = keys[path.values[1][p][up]][3];
        t.c.push_back(B.vc(u, B.vertical_inverse(l)));
    }
    return t;
}

/// Whether some edge of Tot_r X runs from v to w; nullopt when the node
/// limit ran out first.
inline std::optional<bool> tot_edge_exists(TotSearch& S1, const TotSimplex& v, const TotSimplex& w, Budget& budget,
                                           std::uint64_t node_limit = kNoNodeLimit)
{
    auto P = S1.pin_vertices({&v, &w});
    bool found = false;
    auto st = S1.run(&P, budget, node_limit, [&](const TotSimplex&) {
        found = true;
        return false;
    });
    if (found)
        return true;
    if (st == TotSearch::Status::limit)
        return std::nullopt;
    return false;
}

/// How tot_pi0 relates vertices.
/// pairwise: an edge search in both directions for every pair not yet
/// joined; exact for any simplicial set.
/// representatives: each vertex is tested against one vertex per class
/// found so far, with growing node limits; a vertex opens a new class only
/// after complete negative searches against every representative. Exact
/// when Tot_r X is Kan, since then an edge joins any two vertices in one
/// component.
enum class Pi0Search
{
    pairwise,
    representatives
};

struct TotPi0
{
    std::vector<TotSimplex> vertices;
    Partition partition;
    std::uint64_t edge_searches = 0;
};

inline TotPi0 tot_pi0(const RestrictedCosimplicialSSet& X, Budget& budget, Pi0Search mode = Pi0Search::representatives)
{
    TotPi0 out;
    out.vertices = tot_r_direct(X, 0, budget);
    const Id nv = static_cast<Id>(out.vertices.size());
    TotSearch S1(X, 1);
    UnionFind uf(nv);
    if (mode == Pi0Search::pairwise) {
        for (Id i = 0; i < nv; ++i)
            for (Id j = i + 1; j < nv; ++j) {
                if (uf.find(i) == uf.find(j))
                    continue;
                out.edge_searches += 2;
                if (*tot_edge_exists(S1, out.vertices[i], out.vertices[j], budget) ||
                    *tot_edge_exists(S1, out.vertices[j], out.vertices[i], budget))
                    uf.unite(i, j);
            }
        out.partition = Partition::from(uf);
        return out;
    }
    std::vector<Id> reps;
    std::set<std::pair<Id, Id>> refuted;  // (vertex, representative) with no edge
    // Returns true once v is joined to a class or opens a new one.
    auto settle = [&](Id v, std::uint64_t limit) {
        bool open = false;
        for (Id r : reps) {
            if (refuted.count({v, r}))
                continue;
            ++out.edge_searches;
            auto e = tot_edge_exists(S1, out.vertices[v], out.vertices[r], budget, limit);
            if (!e) {
                open = true;
            } else if (*e) {
                uf.unite(v, r);
                return true;
            } else {
                refuted.insert({v, r});
            }
        }
        if (open)
            return false;
        reps.push_back(v);
        return true;
    };
    std::vector<Id> pending(nv);
    for (Id i = 0; i < nv; ++i)
        pending[i] = i;
    std::uint64_t limit = 1 << 16;
    while (!pending.empty()) {
        std::vector<Id> next;
        for (Id v : pending)
            if (!settle(v, limit))
                next.push_back(v);
        // Decide the first leftover completely (joined or a new
        // representative) and retry the rest with a larger limit.
        if (!next.empty()) {
            settle(next.front(), kNoNodeLimit);
            next.erase(next.begin());
            limit *= 4;
        }
        pending = std::move(next);
    }
    out.partition = Partition::from(uf);
    return out;
}

/// One degree of the nerve/Tot comparison.
struct NerveTotDegree
{
    int k = 0;
    std::size_t nerve_cells = 0;  // cells of N(Desc) examined
    std::size_t tot_cells = 0;    // simplices of Tot_r N(C) examined
    bool complete = false;        // every fiber was examined
    bool bijection = false;
    std::string detail;
};

struct NerveTotComparison
{
    bool ok = false;
    std::vector<NerveTotDegree> degrees;
};

/// Looks for a face-compatible bijection N(Desc C)_k ≅ (Tot_r N(C))_k:
/// k = 0 through the datum translation, k = 1 through path_to_gauge on
/// each fiber over a pair of data, k = 2 on each fiber over a boundary of
/// three gauges (tabulating Desc, small inputs only). Stops at the first
/// fiber whose sizes differ, since then no bijection commutes with faces.
inline NerveTotComparison compare_nerve_tot(const RestrictedCosimplicial2Groupoid& C, const std::vector<int>& dims,
                                            Budget& budget)
{
    NerveTotComparison out;
    out.ok = true;
    const auto N = levelwise_nerve(C, budget);
    const auto data = enumerate_descent_data(C, budget);
    DatumIndex index(data);
    TotSearch S0(N.sset, 0);
    std::vector<TotSimplex> verts;
    verts.reserve(data.size());
    for (const auto& d : data)
        verts.push_back(datum_to_vertex(C, N, S0, d, budget));

    for (int k : dims) {
        NerveTotDegree r;
        r.k = k;
        if (k == 0) {
            auto tot = tot_r_direct(N.sset, 0, budget);
            r.nerve_cells = data.size();
            r.tot_cells = tot.size();
            r.complete = true;
            std::set<DescentDatum> seen;
            bool ok = tot.size() == data.size();
            for (const auto& v : tot) {
                const auto d = vertex_to_datum(N, v);
                ok = ok && index.find(d) != kNone && seen.insert(d).second;
            }
            r.bijection = ok;
            r.detail = ok ? "vertices are exactly the descent data" : "vertices and descent data differ";
        } else if (k == 1) {
            TotSearch S1(N.sset, 1);
            r.bijection = true;
            r.complete = true;
            for (Id s = 0; s < data.size() && r.bijection; ++s) {
                std::map<Id, std::set<GaugeTransformation>> by_target;
                for_each_gauge(C, data[s], budget, [&](const GaugeTransformation& t, const DescentDatum& target) {
                    by_target[index.find(target)].insert(t);
                });
                for (Id e = 0; e < data.size(); ++e) {
                    const auto& fiber = by_target[e];
                    auto P = S1.pin_vertices({&verts[s], &verts[e]});
                    std::set<GaugeTransformation> hit;
                    std::size_t tot = 0;
                    bool outside = false;
                    S1.run(&P, budget, kNoNodeLimit, [&](const TotSimplex& path) {
                        ++tot;
                        const auto t = path_to_gauge(C, N, path);
                        if (!fiber.count(t))
                            outside = true;
                        hit.insert(t);
                        return tot <= fiber.size() && !outside;
                    });
                    r.nerve_cells += fiber.size();
                    r.tot_cells += tot;
                    if (tot != fiber.size() || outside || hit.size() != fiber.size()) {
                        r.bijection = false;
                        r.complete = s + 1 == data.size() && e + 1 == data.size();
                        r.detail = "fiber over data (" + std::to_string(s) + ", " + std::to_string(e) + "): " +
                                   std::to_string(fiber.size()) + " gauge transformations, " +
                                   (tot > fiber.size() ? "more than " + std::to_string(fiber.size())
                                                       : std::to_string(tot)) +
                                   " paths";
                        break;
                    }
                }
            }
            if (r.bijection)
                r.detail = "path_to_gauge is bijective on every fiber";
        } else if (k == 2) {
            const auto Desc = descent_2groupoid(C, budget);
            const auto ND = two_nerve(Desc.groupoid, budget);
            const auto tri = tot_r_direct(N.sset, 2, budget);
            r.nerve_cells = ND.sset.count(2);
            r.tot_cells = tri.size();
            r.complete = true;
            // Fibers keyed by the three edges read through path_to_gauge.
            std::map<std::array<Id, 3>, std::size_t> tot_fiber, nerve_fiber;
            std::map<std::pair<Id, GaugeTransformation>, Id> ones;
            for (Id u = 0; u < Desc.gauges.size(); ++u)
                ones.emplace(std::make_pair(Desc.groupoid.src(u), Desc.gauges[u]), u);
            bool typed = true;
            for (const auto& s : tri) {
                std::array<Id, 3> key{};
                for (int t = 0; t <= 2; ++t) {
                    const auto edge = tot_face(s, t);
                    const Id src = index.find(vertex_to_datum(N, tot_vertex(edge, 0)));
                    auto it = ones.find({src, path_to_gauge(C, N, edge)});
                    if (it == ones.end()) {
                        typed = false;
                        break;
                    }
                    key[t] = it->second;
                }
                ++tot_fiber[key];
            }
            for (Id t = 0; t < ND.sset.count(2); ++t) {
                const auto& key = ND.keys[2][t];  // {u01, u02, u12, α}
                ++nerve_fiber[{key[2], key[1], key[0]}];
            }
            r.bijection = typed && tot_fiber == nerve_fiber;
            r.detail = !typed ? "an edge of a Tot_r triangle is not a gauge transformation"
                       : r.bijection ? "fiber sizes agree over every boundary"
                                     : "fiber sizes differ over some boundary";
        } else {
            throw StructuralError("compare_nerve_tot: degrees are 0, 1, 2");
        }
        out.ok = out.ok && r.bijection;
        out.degrees.push_back(r);
    }
    return out;
}

inline NerveTotComparison compare_nerve_tot(const RestrictedCosimplicial2Groupoid& C, const std::vector<int>& dims)
{
    Budget b;
    return compare_nerve_tot(C, dims, b);
}

} // namespace desc2
