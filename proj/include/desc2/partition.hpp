#pragma once

#include <algorithm>
#include <numeric>
#include <ostream>
#include <vector>

#include "errors.hpp"

namespace desc2
{

class UnionFind
{
public:
    explicit UnionFind(std::size_t n = 0) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), Id{0}); }

    Id find(Id x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(Id a, Id b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (rank_[a] < rank_[b])
            std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b])
            ++rank_[a];
        return true;
    }

    std::size_t size() const { return parent_.size(); }

private:
    std::vector<Id> parent_;
    std::vector<unsigned char> rank_;
};

/// A partition of [0, n) in canonical form: blocks are sorted and ordered
/// by their least element, so equal partitions compare equal.
struct Partition
{
    std::vector<std::vector<Id>> blocks;
    std::vector<Id> block_of;

    std::size_t size() const { return blocks.size(); }
    bool same(Id a, Id b) const { return block_of[a] == block_of[b]; }
    bool operator==(const Partition& o) const { return blocks == o.blocks; }

    static Partition from(UnionFind& uf)
    {
        Partition p;
        const std::size_t n = uf.size();
        p.block_of.assign(n, kNone);
        std::vector<Id> root_block(n, kNone);
        for (Id x = 0; x < n; ++x) {
            Id r = uf.find(x);
            if (root_block[r] == kNone) {
                root_block[r] = static_cast<Id>(p.blocks.size());
                p.blocks.emplace_back();
            }
            p.block_of[x] = root_block[r];
            p.blocks[root_block[r]].push_back(x);
        }
        return p;
    }

    /// Image of the partition under a relabelling x -> perm[x] of the same
    /// ground set.
    Partition relabel(const std::vector<Id>& perm) const
    {
        UnionFind uf(block_of.size());
        for (const auto& b : blocks)
            for (Id x : b)
                uf.unite(perm[b.front()], perm[x]);
        return from(uf);
    }

    friend std::ostream& operator<<(std::ostream& os, const Partition& p)
    {
        for (const auto& b : p.blocks) {
            os << "{";
            for (std::size_t i = 0; i < b.size(); ++i)
                os << (i ? " " : "") << b[i];
            os << "}";
        }
        return os;
    }
};

} // namespace desc2
