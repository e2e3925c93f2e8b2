#pragma once

#include <array>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "partition.hpp"
#include "report.hpp"

namespace desc2
{

/// A 3-coskeletal simplicial set stored through level 3. Simplices of each
/// level are the ids [0, count(n)). Level 4 is never stored; see
/// level4_simplices.
class FiniteCoskSSet
{
public:
    static constexpr int kTop = 3;

    FiniteCoskSSet() = default;

    /// faces[n][i] for n = 1..3 (faces[0] unused), degens[n][i] for n = 0..2.
    FiniteCoskSSet(std::array<std::size_t, 4> counts, std::array<std::vector<std::vector<Id>>, 4> faces,
                   std::array<std::vector<std::vector<Id>>, 3> degens)
        : counts_(counts), faces_(std::move(faces)), degens_(std::move(degens))
    {
        check_structure();
    }

    std::size_t count(int n) const { return counts_[n]; }
    Id face(int n, int i, Id x) const { return faces_[n][i][x]; }
    Id degen(int n, int i, Id x) const { return degens_[n][i][x]; }

    const std::array<std::vector<std::vector<Id>>, 4>& faces() const { return faces_; }
    const std::array<std::vector<std::vector<Id>>, 3>& degens() const { return degens_; }

    /// All faces of x in order d_0 .. d_n.
    std::vector<Id> boundary(int n, Id x) const
    {
        std::vector<Id> b(n + 1);
        for (int i = 0; i <= n; ++i)
            b[i] = face(n, i, x);
        return b;
    }

    /// Direct mutation hook for fault-injection tests.
    void rewire_face(int n, int i, Id x, Id to) { faces_[n][i][x] = to; }

private:
    void check_structure() const
    {
        for (int n = 1; n <= kTop; ++n) {
            if (faces_[n].size() != static_cast<std::size_t>(n + 1))
                throw StructuralError("level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " face maps");
            for (const auto& d : faces_[n]) {
                if (d.size() != counts_[n])
                    throw StructuralError("face table size mismatch at level " + std::to_string(n));
                for (Id y : d)
                    if (y >= counts_[n - 1])
                        throw StructuralError("dangling face at level " + std::to_string(n));
            }
        }
        for (int n = 0; n < kTop; ++n) {
            if (degens_[n].size() != static_cast<std::size_t>(n + 1))
                throw StructuralError("level " + std::to_string(n) + " needs " + std::to_string(n + 1) +
                                      " degeneracy maps");
            for (const auto& s : degens_[n]) {
                if (s.size() != counts_[n])
                    throw StructuralError("degeneracy table size mismatch at level " + std::to_string(n));
                for (Id y : s)
                    if (y >= counts_[n + 1])
                        throw StructuralError("dangling degeneracy at level " + std::to_string(n));
            }
        }
    }

    std::array<std::size_t, 4> counts_{};
    std::array<std::vector<std::vector<Id>>, 4> faces_;
    std::array<std::vector<std::vector<Id>>, 3> degens_;
};

/// Level-wise maps of a simplicial map, levels 0..3.
struct SimplicialMap
{
    std::array<std::vector<Id>, 4> level;
    Id operator()(int n, Id x) const { return level[n][x]; }
    bool operator==(const SimplicialMap&) const = default;
};

inline SimplicialMap identity_map(const FiniteCoskSSet& X)
{
    SimplicialMap f;
    for (int n = 0; n <= 3; ++n)
        for (Id x = 0; x < X.count(n); ++x)
            f.level[n].push_back(x);
    return f;
}

inline SimplicialMap compose_maps(const SimplicialMap& after, const SimplicialMap& before)
{
    SimplicialMap f;
    for (int n = 0; n <= 3; ++n)
        for (Id x : before.level[n])
            f.level[n].push_back(after(n, x));
    return f;
}

/// Scans the simplicial identities on levels 0..3. Family "simplicial".
inline ValidationReport validate_sset(const FiniteCoskSSet& X)
{
    ValidationReport r;
    using W = std::vector<long long>;
    auto fail = [&](const std::string& what, int n, Id x, int i, int j) {
        r.add("simplicial", what + " at level " + std::to_string(n), W{n, x, i, j});
    };
    // d_i d_j = d_{j-1} d_i for i < j
    for (int n = 2; n <= 3; ++n)
        for (Id x = 0; x < X.count(n); ++x)
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i)
                    if (X.face(n - 1, i, X.face(n, j, x)) != X.face(n - 1, j - 1, X.face(n, i, x)))
                        fail("d_i d_j != d_{j-1} d_i", n, x, i, j);
    for (int n = 0; n <= 2; ++n)
        for (Id x = 0; x < X.count(n); ++x)
            for (int j = 0; j <= n; ++j) {
                const Id s = X.degen(n, j, x);
                // d_j s_j = d_{j+1} s_j = id
                if (X.face(n + 1, j, s) != x || X.face(n + 1, j + 1, s) != x)
                    fail("d_j s_j or d_{j+1} s_j != id", n, x, j, j);
                for (int i = 0; i <= n + 1; ++i) {
                    if (i < j) {
                        if (X.face(n + 1, i, s) != X.degen(n - 1, j - 1, X.face(n, i, x)))
                            fail("d_i s_j != s_{j-1} d_i", n, x, i, j);
                    } else if (i > j + 1) {
                        if (X.face(n + 1, i, s) != X.degen(n - 1, j, X.face(n, i - 1, x)))
                            fail("d_i s_j != s_j d_{i-1}", n, x, i, j);
                    }
                }
                // s_i s_j = s_{j+1} s_i for i <= j
                if (n <= 1)
                    for (int i = 0; i <= j; ++i)
                        if (X.degen(n + 1, i, s) != X.degen(n + 1, j + 1, X.degen(n, i, x)))
                            fail("s_i s_j != s_{j+1} s_i", n, x, i, j);
            }
    return r;
}

/// Checks that f: X -> Y commutes with all faces and degeneracies.
/// Family "simplicial_map".
inline ValidationReport validate_simplicial_map(const SimplicialMap& f, const FiniteCoskSSet& X,
                                                const FiniteCoskSSet& Y)
{
    ValidationReport r;
    using W = std::vector<long long>;
    for (int n = 0; n <= 3; ++n) {
        if (f.level[n].size() != X.count(n))
            throw StructuralError("simplicial map table size mismatch at level " + std::to_string(n));
        for (Id y : f.level[n])
            if (y >= Y.count(n))
                throw StructuralError("simplicial map leaves the target at level " + std::to_string(n));
    }
    for (int n = 1; n <= 3; ++n)
        for (Id x = 0; x < X.count(n); ++x)
            for (int i = 0; i <= n; ++i)
                if (f(n - 1, X.face(n, i, x)) != Y.face(n, i, f(n, x)))
                    r.add("simplicial_map", "does not commute with d_" + std::to_string(i), W{n, x});
    for (int n = 0; n <= 2; ++n)
        for (Id x = 0; x < X.count(n); ++x)
            for (int i = 0; i <= n; ++i)
                if (f(n + 1, X.degen(n, i, x)) != Y.degen(n, i, f(n, x)))
                    r.add("simplicial_map", "does not commute with s_" + std::to_string(i), W{n, x});
    return r;
}

namespace detail
{

/// Builds a simplicial set whose simplices are keys, given key lists per
/// level and the face/degeneracy operations on keys.
template <class Key, class FaceFn, class DegenFn>
FiniteCoskSSet sset_from_keys(const std::array<std::vector<Key>, 4>& keys, FaceFn face, DegenFn degen)
{
    std::array<std::map<Key, Id>, 4> index;
    std::array<std::size_t, 4> counts{};
    for (int n = 0; n <= 3; ++n) {
        counts[n] = keys[n].size();
        for (Id x = 0; x < keys[n].size(); ++x)
            index[n].emplace(keys[n][x], x);
    }
    auto lookup = [&](int n, const Key& k) {
        auto it = index[n].find(k);
        if (it == index[n].end())
            throw StructuralError("simplex key not found at level " + std::to_string(n));
        return it->second;
    };
    std::array<std::vector<std::vector<Id>>, 4> faces;
    std::array<std::vector<std::vector<Id>>, 3> degens;
    for (int n = 1; n <= 3; ++n) {
        faces[n].assign(n + 1, std::vector<Id>(counts[n]));
        for (int i = 0; i <= n; ++i)
            for (Id x = 0; x < counts[n]; ++x)
                faces[n][i][x] = lookup(n - 1, face(n, i, keys[n][x]));
    }
    for (int n = 0; n <= 2; ++n) {
        degens[n].assign(n + 1, std::vector<Id>(counts[n]));
        for (int i = 0; i <= n; ++i)
            for (Id x = 0; x < counts[n]; ++x)
                degens[n][i][x] = lookup(n + 1, degen(n, i, keys[n][x]));
    }
    return FiniteCoskSSet(counts, std::move(faces), std::move(degens));
}

} // namespace detail

/// Δ^n for n = 0..3: k-simplices are weakly increasing (k+1)-tuples in
/// {0..n}, in lexicographic order.
inline FiniteCoskSSet standard_simplex(int n)
{
    if (n < 0 || n > 3)
        throw std::invalid_argument("standard_simplex: n must be in 0..3");
    using Key = std::vector<Id>;
    std::array<std::vector<Key>, 4> keys;
    for (int k = 0; k <= 3; ++k) {
        Key t(k + 1, 0);
        while (true) {
            keys[k].push_back(t);
            int p = k;
            while (p >= 0 && t[p] == static_cast<Id>(n))
                --p;
            if (p < 0)
                break;
            ++t[p];
            for (int q = p + 1; q <= k; ++q)
                t[q] = t[p];
        }
    }
    return detail::sset_from_keys(
        keys,
        [](int, int i, const Key& t) {
            Key s = t;
            s.erase(s.begin() + i);
            return s;
        },
        [](int, int i, const Key& t) {
            Key s = t;
            s.insert(s.begin() + i, t[i]);
            return s;
        });
}

/// Level-wise product; the pair (u, v) gets id u * |Y_n| + v.
inline FiniteCoskSSet sset_product(const FiniteCoskSSet& X, const FiniteCoskSSet& Y)
{
    std::array<std::size_t, 4> counts{};
    for (int n = 0; n <= 3; ++n)
        counts[n] = X.count(n) * Y.count(n);
    std::array<std::vector<std::vector<Id>>, 4> faces;
    std::array<std::vector<std::vector<Id>>, 3> degens;
    for (int n = 1; n <= 3; ++n) {
        faces[n].assign(n + 1, std::vector<Id>(counts[n]));
        const Id yn = static_cast<Id>(Y.count(n)), ym = static_cast<Id>(Y.count(n - 1));
        for (int i = 0; i <= n; ++i)
            for (Id p = 0; p < counts[n]; ++p)
                faces[n][i][p] = X.face(n, i, p / yn) * ym + Y.face(n, i, p % yn);
    }
    for (int n = 0; n <= 2; ++n) {
        degens[n].assign(n + 1, std::vector<Id>(counts[n]));
        const Id yn = static_cast<Id>(Y.count(n)), ym = static_cast<Id>(Y.count(n + 1));
        for (int i = 0; i <= n; ++i)
            for (Id p = 0; p < counts[n]; ++p)
                degens[n][i][p] = X.degen(n, i, p / yn) * ym + Y.degen(n, i, p % yn);
    }
    return FiniteCoskSSet(counts, std::move(faces), std::move(degens));
}

/// X ⊔ Y; simplices of Y are shifted past those of X.
inline FiniteCoskSSet disjoint_union(const FiniteCoskSSet& X, const FiniteCoskSSet& Y)
{
    std::array<std::size_t, 4> counts{};
    for (int n = 0; n <= 3; ++n)
        counts[n] = X.count(n) + Y.count(n);
    std::array<std::vector<std::vector<Id>>, 4> faces;
    std::array<std::vector<std::vector<Id>>, 3> degens;
    for (int n = 1; n <= 3; ++n) {
        faces[n].resize(n + 1);
        for (int i = 0; i <= n; ++i) {
            for (Id x = 0; x < X.count(n); ++x)
                faces[n][i].push_back(X.face(n, i, x));
            for (Id y = 0; y < Y.count(n); ++y)
                faces[n][i].push_back(static_cast<Id>(X.count(n - 1)) + Y.face(n, i, y));
        }
    }
    for (int n = 0; n <= 2; ++n) {
        degens[n].resize(n + 1);
        for (int i = 0; i <= n; ++i) {
            for (Id x = 0; x < X.count(n); ++x)
                degens[n][i].push_back(X.degen(n, i, x));
            for (Id y = 0; y < Y.count(n); ++y)
                degens[n][i].push_back(static_cast<Id>(X.count(n + 1)) + Y.degen(n, i, y));
        }
    }
    return FiniteCoskSSet(counts, std::move(faces), std::move(degens));
}

/// Lookup of simplices by (some of) their faces.
class FaceIndex
{
public:
    explicit FaceIndex(const FiniteCoskSSet& X) : X_(X)
    {
        for (int n = 1; n <= 3; ++n) {
            by_face_[n].assign(n + 1, std::vector<std::vector<Id>>(X.count(n - 1)));
            for (Id x = 0; x < X.count(n); ++x) {
                for (int i = 0; i <= n; ++i)
                    by_face_[n][i][X.face(n, i, x)].push_back(x);
                by_boundary_[n][X.boundary(n, x)].push_back(x);
            }
        }
    }

    /// n-simplices whose i-th face is y.
    const std::vector<Id>& with_face(int n, int i, Id y) const { return by_face_[n][i][y]; }

    /// n-simplices with exactly this boundary (d_0 .. d_n).
    const std::vector<Id>& with_boundary(int n, const std::vector<Id>& b) const
    {
        static const std::vector<Id> kEmpty;
        auto it = by_boundary_[n].find(b);
        return it == by_boundary_[n].end() ? kEmpty : it->second;
    }

    const FiniteCoskSSet& sset() const { return X_; }

private:
    const FiniteCoskSSet& X_;
    std::array<std::vector<std::vector<std::vector<Id>>>, 4> by_face_;
    std::array<std::map<std::vector<Id>, std::vector<Id>>, 4> by_boundary_;
};

namespace detail
{

/// Enumerates families (x_i)_{i in idx} of (n-1)-simplices satisfying
/// d_i x_j = d_{j-1} x_i for i < j, calling fn on each complete family
/// (indexed by position in idx, absent entries kNone).
template <class Fn>
void compatible_families(const FaceIndex& I, int n, const std::vector<int>& idx, Budget& budget, Fn&& fn)
{
    const auto& X = I.sset();
    const int m = n - 1;
    std::vector<Id> fam(n + 1, kNone);
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == idx.size())
            return fn(fam);
        const int j = idx[pos];
        auto consistent = [&](Id y) {
            for (std::size_t q = 0; q < pos; ++q) {
                const int i = idx[q];
                if (X.face(m, i, y) != X.face(m, j - 1, fam[i]))
                    return false;
            }
            return true;
        };
        auto take = [&](Id y) {
            budget.tick();
            if (!consistent(y))
                return;
            fam[j] = y;
            rec(pos + 1);
            fam[j] = kNone;
        };
        if (pos == 0 || m == 0) {
            for (Id y = 0; y < X.count(m); ++y)
                take(y);
        } else {
            const int i = idx[0];
            for (Id y : I.with_face(m, i, X.face(m, j - 1, fam[i])))
                take(y);
        }
    };
    rec(0);
}

} // namespace detail

/// Every 5-tuple (t_0..t_4) of 3-simplices with d_i t_j = d_{j-1} t_i for
/// i < j; these are the 4-simplices of the 3-coskeletal extension.
inline std::vector<std::array<Id, 5>> level4_simplices(const FiniteCoskSSet& X, Budget& budget)
{
    FaceIndex I(X);
    std::vector<std::array<Id, 5>> out;
    detail::compatible_families(I, 4, {0, 1, 2, 3, 4}, budget, [&](const std::vector<Id>& f) {
        out.push_back({f[0], f[1], f[2], f[3], f[4]});
    });
    return out;
}

inline std::vector<std::array<Id, 5>> level4_simplices(const FiniteCoskSSet& X)
{
    Budget b;
    return level4_simplices(X, b);
}

struct Horn
{
    int n = 0;
    int k = 0;
    /// faces[i] for i != k; faces[k] = kNone.
    std::vector<Id> faces;
};

struct KanReport
{
    std::vector<Horn> unfillable;
    std::uint64_t horns_checked = 0;
    int dim_max = 0;
    std::string note;
    bool ok() const { return unfillable.empty(); }
};

/// Searches a filler for every horn Λ^n_k with 1 <= n <= dim_max (<= 4).
/// Horns of dimension 4 are filled through the coskeletal extension, so a
/// filler exists iff the missing face exists as a 3-simplex.
inline KanReport kan_check(const FiniteCoskSSet& X, int dim_max, Budget& budget)
{
    if (dim_max < 1 || dim_max > 4)
        throw std::invalid_argument("kan_check: dim_max must be in 1..4");
    KanReport rep;
    rep.dim_max = dim_max;
    rep.note = "3-coskeletal: horns of dimension >= 5 have unique automatic fillers and are not enumerated";
    FaceIndex I(X);
    for (int n = 1; n <= dim_max; ++n)
        for (int k = 0; k <= n; ++k) {
            std::vector<int> idx;
            for (int i = 0; i <= n; ++i)
                if (i != k)
                    idx.push_back(i);
            std::set<std::vector<Id>> realized;
            if (n <= 3)
                for (Id y = 0; y < X.count(n); ++y) {
                    auto b = X.boundary(n, y);
                    b[k] = kNone;
                    realized.insert(std::move(b));
                }
            detail::compatible_families(I, n, idx, budget, [&](const std::vector<Id>& fam) {
                ++rep.horns_checked;
                bool filled;
                if (n <= 3) {
                    filled = realized.count(fam) > 0;
                } else {
                    std::vector<Id> missing(4);
                    for (int i = 0; i < 4; ++i)
                        missing[i] = i < k ? X.face(3, k - 1, fam[i]) : X.face(3, k, fam[i + 1]);
                    filled = !I.with_boundary(3, missing).empty();
                }
                if (!filled)
                    rep.unfillable.push_back({n, k, fam});
            });
        }
    return rep;
}

inline KanReport kan_check(const FiniteCoskSSet& X, int dim_max = 4)
{
    Budget b;
    return kan_check(X, dim_max, b);
}

/// Vertices modulo the equivalence relation generated by the edges.
inline Partition sset_pi0(const FiniteCoskSSet& X)
{
    UnionFind uf(X.count(0));
    for (Id e = 0; e < X.count(1); ++e)
        uf.unite(X.face(1, 0, e), X.face(1, 1, e));
    return Partition::from(uf);
}

/// Counts per level, optionally followed by the face tables.
inline void write_sset_text(std::ostream& os, const FiniteCoskSSet& X, bool tables)
{
    for (int n = 0; n <= 3; ++n)
        os << "level" << n << " " << X.count(n) << "\n";
    if (!tables)
        return;
    for (int n = 1; n <= 3; ++n)
        for (Id x = 0; x < X.count(n); ++x) {
            os << "d " << n << " " << x << ":";
            for (int i = 0; i <= n; ++i)
                os << " " << X.face(n, i, x);
            os << "\n";
        }
}

} // namespace desc2
