#include "kdiv/multi_index.hpp"

#include <algorithm>

namespace kdiv {

MultiIndex::MultiIndex(std::vector<int> indices, int ambient)
    : indices_(std::move(indices)), ambient_(ambient) {
    for (std::size_t a = 0; a < indices_.size(); ++a) {
        if (indices_[a] < 1 || indices_[a] > ambient_)
            throw std::invalid_argument("multi-index entry out of range");
        if (a > 0 && indices_[a - 1] >= indices_[a])
            throw std::invalid_argument("multi-index not strictly increasing");
    }
}

bool MultiIndex::contains(int v) const {
    return std::binary_search(indices_.begin(), indices_.end(), v);
}

int MultiIndex::position_of(int v) const {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), v);
    if (it == indices_.end() || *it != v) return -1;
    return static_cast<int>(it - indices_.begin());
}

MultiIndex MultiIndex::erased(int v) const {
    int pos = position_of(v);
    if (pos < 0) throw std::invalid_argument("erased: index not present");
    std::vector<int> out = indices_;
    out.erase(out.begin() + pos);
    return MultiIndex(std::move(out), ambient_);
}

MultiIndex MultiIndex::inserted(int v, int* pos) const {
    if (contains(v)) throw std::invalid_argument("inserted: index already present");
    std::vector<int> out = indices_;
    auto it = std::lower_bound(out.begin(), out.end(), v);
    if (pos) *pos = static_cast<int>(it - out.begin());
    out.insert(it, v);
    return MultiIndex(std::move(out), ambient_);
}

MultiIndex MultiIndex::complement() const {
    std::vector<int> out;
    out.reserve(ambient_ - size());
    for (int v = 1; v <= ambient_; ++v)
        if (!contains(v)) out.push_back(v);
    return MultiIndex(std::move(out), ambient_);
}

std::vector<MultiIndex> all_multi_indices(int r, int k) {
    if (k < 0 || k > r) return {};
    std::vector<MultiIndex> out;
    std::vector<int> cur(k);
    for (int a = 0; a < k; ++a) cur[a] = a + 1;
    for (;;) {
        out.emplace_back(cur, r);
        int a = k - 1;
        while (a >= 0 && cur[a] == r - (k - 1 - a)) --a;
        if (a < 0) break;
        ++cur[a];
        for (int b = a + 1; b < k; ++b) cur[b] = cur[b - 1] + 1;
    }
    return out;
}

std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t v = 1;
    for (int i = 1; i <= k; ++i) v = v * static_cast<std::uint64_t>(n - k + i) / i;
    return v;
}

int multi_index_rank(const MultiIndex& I) {
    // combinadic rank in lexicographic order
    int r = I.ambient(), k = I.size();
    std::uint64_t rank = 0;
    int prev = 0;
    for (int a = 0; a < k; ++a) {
        for (int v = prev + 1; v < I[a]; ++v)
            rank += binom(r - v, k - 1 - a);
        prev = I[a];
    }
    return static_cast<int>(rank);
}

CompSign comp_sign(const MultiIndex& I, int p) {
    if (I.ambient() != p)
        throw std::invalid_argument("comp_sign: ambient must equal p");
    MultiIndex J = I.complement();
    // inversions between the I block and the J block; both blocks are sorted
    long inv = 0;
    for (int a = 0; a < I.size(); ++a) inv += I[a] - (a + 1);
    return {(inv % 2 == 0) ? 1 : -1, J};
}

}  // namespace kdiv
