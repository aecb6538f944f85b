#pragma once

#include <cstdint>
#include <vector>

namespace entperc {

// Union-find with path halving and union by rank. reset() is O(1) via epoch
// stamps, so one instance can be reused across many Monte-Carlo samples
// without reallocating.
class DisjointSet {
  public:
    explicit DisjointSet(std::int32_t n)
        : parent_(n), rank_(n, 0), stamp_(n, 0), epoch_(1), merges_(0) {}

    void reset() {
        ++epoch_;
        merges_ = 0;
    }

    std::int32_t find(std::int32_t x) {
        touch(x);
        while (parent_[x] != x) {
            touch(parent_[x]);
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns true when two distinct components were joined.
    bool unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        ++merges_;
        return true;
    }

    bool same(std::int32_t a, std::int32_t b) { return find(a) == find(b); }

    std::int32_t size() const { return static_cast<std::int32_t>(parent_.size()); }
    std::int32_t component_count() { return size() - merges_; }

  private:
    void touch(std::int32_t x) {
        if (stamp_[x] != epoch_) {
            stamp_[x] = epoch_;
            parent_[x] = x;
            rank_[x] = 0;
        }
    }

    std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> rank_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_;
    std::int32_t merges_;
};

}  // namespace entperc
