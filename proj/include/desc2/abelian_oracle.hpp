#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "cosimplicial.hpp"

namespace desc2
{

/// Integer matrix reduced to Smith form while the row operations are
/// replayed modulo m, so that solvability of M x = b over Z/m can be read
/// off from the diagonal.
class SmithForm
{
public:
    SmithForm(std::vector<std::vector<std::int64_t>> M, std::size_t cols, std::int64_t m)
        : rows_(M.size()), cols_(cols), m_(m), D_(std::move(M))
    {
        P_.assign(rows_, std::vector<std::int64_t>(rows_, 0));
        for (std::size_t i = 0; i < rows_; ++i)
            P_[i][i] = 1;
        reduce();
    }

    /// Diagonal entries (length min(rows, cols)); zero past the rank.
    std::vector<std::int64_t> diagonal() const
    {
        std::vector<std::int64_t> d;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
            d.push_back(D_[i][i] < 0 ? -D_[i][i] : D_[i][i]);
        return d;
    }

    /// |ker| of the induced map (Z/m)^cols -> (Z/m)^rows.
    std::uint64_t kernel_size() const
    {
        std::uint64_t k = 1;
        auto d = diagonal();
        for (std::size_t i = 0; i < cols_; ++i)
            k *= static_cast<std::uint64_t>(i < d.size() ? std::gcd(d[i], m_) : m_);
        return k;
    }

    std::uint64_t image_size() const
    {
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < cols_; ++i)
            total *= static_cast<std::uint64_t>(m_);
        return total / kernel_size();
    }

    /// Whether b (length rows, entries mod m) lies in the image.
    bool in_image(const std::vector<std::int64_t>& b) const
    {
        const auto d = diagonal();
        for (std::size_t i = 0; i < rows_; ++i) {
            std::int64_t y = 0;
            for (std::size_t j = 0; j < rows_; ++j)
                y = (y + P_[i][j] * mod(b[j])) % m_;
            const std::int64_t di = i < d.size() ? d[i] : 0;
            if (y % std::gcd(di, m_) != 0)
                return false;
        }
        return true;
    }

private:
    std::int64_t mod(std::int64_t x) const { return ((x % m_) + m_) % m_; }

    void row_combine(std::size_t r1, std::size_t r2, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    {
        // (r1, r2) <- (a r1 + b r2, c r1 + d r2), determinant ±1.
        for (std::size_t j = 0; j < cols_; ++j) {
            const std::int64_t x = D_[r1][j], y = D_[r2][j];
            D_[r1][j] = a * x + b * y;
            D_[r2][j] = c * x + d * y;
        }
        for (std::size_t j = 0; j < rows_; ++j) {
            const std::int64_t x = P_[r1][j], y = P_[r2][j];
            P_[r1][j] = mod(mod(a) * x + mod(b) * y);
            P_[r2][j] = mod(mod(c) * x + mod(d) * y);
        }
    }

    void col_combine(std::size_t c1, std::size_t c2, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    {
        for (std::size_t i = 0; i < rows_; ++i) {
            const std::int64_t x = D_[i][c1], y = D_[i][c2];
            D_[i][c1] = a * x + b * y;
            D_[i][c2] = c * x + d * y;
        }
    }

    static std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t)
    {
        if (b == 0) {
            s = a < 0 ? -1 : 1;
            t = 0;
            return a < 0 ? -a : a;
        }
        std::int64_t s1, t1;
        const std::int64_t g = ext_gcd(b, a % b, s1, t1);
        s = t1;
        t = s1 - (a / b) * t1;
        return g;
    }

    void reduce()
    {
        const std::size_t r = std::min(rows_, cols_);
        for (std::size_t t = 0; t < r; ++t) {
            // Pivot: smallest nonzero absolute value in the lower-right block.
            std::size_t pi = rows_, pj = cols_;
            for (std::size_t i = t; i < rows_; ++i)
                for (std::size_t j = t; j < cols_; ++j)
                    if (D_[i][j] != 0 && (pi == rows_ || std::llabs(D_[i][j]) < std::llabs(D_[pi][pj])))
                        pi = i, pj = j;
            if (pi == rows_)
                return;
            if (pi != t)
                row_combine(t, pi, 0, 1, 1, 0);
            if (pj != t)
                col_combine(t, pj, 0, 1, 1, 0);
            bool clean = false;
            while (!clean) {
                clean = true;
                for (std::size_t i = t + 1; i < rows_; ++i) {
                    if (D_[i][t] == 0)
                        continue;
                    const std::int64_t a = D_[t][t], b = D_[i][t];
                    if (b % a == 0) {
                        row_combine(t, i, 1, 0, -b / a, 1);
                        continue;
                    }
                    std::int64_t s, u;
                    const std::int64_t g = ext_gcd(a, b, s, u);
                    row_combine(t, i, s, u, -b / g, a / g);
                }
                for (std::size_t j = t + 1; j < cols_; ++j) {
                    if (D_[t][j] == 0)
                        continue;
                    const std::int64_t a = D_[t][t], b = D_[t][j];
                    if (b % a == 0) {
                        col_combine(t, j, 1, 0, -b / a, 1);
                        continue;
                    }
                    std::int64_t s, u;
                    const std::int64_t g = ext_gcd(a, b, s, u);
                    col_combine(t, j, s, u, -b / g, a / g);
                    clean = false;
                }
                // Divisibility of the rest of the block by the pivot.
                for (std::size_t i = t + 1; clean && i < rows_; ++i)
                    for (std::size_t j = t + 1; j < cols_; ++j)
                        if (D_[i][j] % D_[t][t] != 0) {
                            row_combine(t, i, 1, 1, 0, 1);
                            clean = false;
                            break;
                        }
            }
        }
    }

    std::size_t rows_, cols_;
    std::int64_t m_;
    std::vector<std::vector<std::int64_t>> D_;
    std::vector<std::vector<std::int64_t>> P_;
};

/// Alternating coface sums of a cosimplicial object whose every base is
/// B²(Z/m) for one m, computed by plain linear algebra over Z/m. Shares no
/// code with the descent enumeration it is compared against.
class AbelianCohomologyOracle
{
public:
    explicit AbelianCohomologyOracle(const RestrictedCosimplicial2Groupoid& C) : C_(C)
    {
        detail::check_coordinate_structure(C);
        if (C.bases.empty())
            throw StructuralError("abelian oracle: no bases");
        // Each base: one object, one 1-cell, 2-cells a cyclic group under *.
        for (std::size_t b = 0; b < C.bases.size(); ++b) {
            const auto& B = C.bases[b];
            if (B.num_objects() != 1 || B.num_one_cells() != 1)
                throw StructuralError("abelian oracle: base " + std::to_string(b) + " is not of the form B²A");
            const std::int64_t order = static_cast<std::int64_t>(B.num_two_cells());
            if (b == 0)
                m_ = order;
            else if (order != m_)
                throw StructuralError("abelian oracle: bases have different coefficient groups");
            gen_.push_back(find_generator(B));
            if (gen_.back() == kNone)
                throw StructuralError("abelian oracle: coefficient group is not cyclic");
            // Position of every 2-cell as a multiple of the generator.
            std::vector<std::int64_t> log(B.num_two_cells(), -1);
            Id cur = B.id2(0);
            for (std::int64_t k = 0; k < m_; ++k) {
                log[cur] = k;
                cur = B.vc(gen_.back(), cur);
            }
            logs_.push_back(std::move(log));
            exps_.emplace_back();
            cur = B.id2(0);
            for (std::int64_t k = 0; k < m_; ++k) {
                exps_.back().push_back(cur);
                cur = B.vc(gen_.back(), cur);
            }
        }
        for (std::size_t f = 0; f < C.maps.size(); ++f) {
            const auto [s, t] = C.map_ends[f];
            factor_.push_back(logs_[t][C.maps[f].two(gen_[s])]);
        }
        for (int n = 0; n < 3; ++n)
            delta_.push_back(differential(n));
    }

    std::int64_t modulus() const { return m_; }

    /// Matrix of δ^n: C^n -> C^{n+1}, rows indexed by degree-(n+1) coordinates.
    const std::vector<std::vector<std::int64_t>>& delta(int n) const { return delta_[n]; }

    /// Coordinates of a cochain of 2-cell ids as integers mod m, and back.
    std::vector<std::int64_t> to_vector(int n, const CellVec& cells) const
    {
        std::vector<std::int64_t> v(cells.size());
        for (Id p = 0; p < cells.size(); ++p)
            v[p] = logs_[C_.coord_base[n][p]][cells[p]];
        return v;
    }

    CellVec to_cells(int n, const std::vector<std::int64_t>& v) const
    {
        CellVec c(v.size());
        for (Id p = 0; p < v.size(); ++p)
            c[p] = exps_[C_.coord_base[n][p]][((v[p] % m_) + m_) % m_];
        return c;
    }

    std::vector<std::int64_t> apply_delta(int n, const std::vector<std::int64_t>& v) const
    {
        std::vector<std::int64_t> out(C_.arity(n + 1), 0);
        for (std::size_t r = 0; r < out.size(); ++r) {
            for (std::size_t c = 0; c < v.size(); ++c)
                out[r] += delta_[n][r][c] * v[c];
            out[r] = ((out[r] % m_) + m_) % m_;
        }
        return out;
    }

    bool is_cocycle(int n, const std::vector<std::int64_t>& v) const
    {
        for (auto x : apply_delta(n, v))
            if (x != 0)
                return false;
        return true;
    }

    /// Whether v is δ of some cochain of degree n-1 (n >= 1).
    bool is_coboundary(int n, const std::vector<std::int64_t>& v) const
    {
        return SmithForm(delta_[n - 1], C_.arity(n - 1), m_).in_image(v);
    }

    std::uint64_t cocycles(int n) const { return SmithForm(delta_[n], C_.arity(n), m_).kernel_size(); }
    std::uint64_t coboundaries(int n) const
    {
        return n == 0 ? 1 : SmithForm(delta_[n - 1], C_.arity(n - 1), m_).image_size();
    }

    /// |H^n| for n = 0, 1, 2.
    std::uint64_t cohomology_size(int n) const { return cocycles(n) / coboundaries(n); }

    /// One cocycle per class of H^n, found by walking all cochains (small
    /// instances only).
    std::vector<std::vector<std::int64_t>> representatives(int n, Budget& budget) const
    {
        std::vector<std::vector<std::int64_t>> reps;
        const std::size_t a = C_.arity(n);
        std::vector<std::int64_t> v(a, 0);
        const SmithForm S = n == 0 ? SmithForm({}, 0, m_) : SmithForm(delta_[n - 1], C_.arity(n - 1), m_);
        while (true) {
            budget.tick();
            if (is_cocycle(n, v)) {
                bool fresh = true;
                for (const auto& r : reps) {
                    std::vector<std::int64_t> diff(a);
                    for (std::size_t i = 0; i < a; ++i)
                        diff[i] = ((v[i] - r[i]) % m_ + m_) % m_;
                    bool zero = std::all_of(diff.begin(), diff.end(), [](auto x) { return x == 0; });
                    if (zero || (n > 0 && S.in_image(diff))) {
                        fresh = false;
                        break;
                    }
                }
                if (fresh)
                    reps.push_back(v);
            }
            std::size_t i = 0;
            while (i < a && ++v[i] == m_)
                v[i++] = 0;
            if (i == a)
                break;
        }
        return reps;
    }

private:
    static Id find_generator(const TwoGroupoid& B)
    {
        const Id n = static_cast<Id>(B.num_two_cells());
        for (Id g = 0; g < n; ++g) {
            Id cur = g;
            Id order = 1;
            while (cur != B.id2(0) && order <= n) {
                cur = B.vc(g, cur);
                ++order;
            }
            if (order == n)
                return g;
        }
        return kNone;
    }

    std::vector<std::vector<std::int64_t>> differential(int n) const
    {
        std::vector<std::vector<std::int64_t>> M(C_.arity(n + 1), std::vector<std::int64_t>(C_.arity(n), 0));
        for (int i = 0; i <= n + 1; ++i)
            for (Id p = 0; p < C_.arity(n + 1); ++p) {
                const Id s = C_.coface_source(n + 1, i, p);
                const std::int64_t sign = i % 2 == 0 ? 1 : -1;
                auto& e = M[p][s];
                e = (((e + sign * factor_[C_.coface(n + 1, i).map[p]]) % m_) + m_) % m_;
            }
        return M;
    }

    const RestrictedCosimplicial2Groupoid& C_;
    std::int64_t m_ = 1;
    std::vector<Id> gen_;
    std::vector<std::vector<std::int64_t>> logs_;
    std::vector<std::vector<Id>> exps_;
    std::vector<std::int64_t> factor_;
    std::vector<std::vector<std::vector<std::int64_t>>> delta_;
};

} // namespace desc2
