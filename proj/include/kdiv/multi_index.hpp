#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kdiv {

// Strictly increasing tuple of integers in 1..r. Keys of exterior-algebra
// coefficients and of minor maps; the empty tuple is the degree-0 index.
class MultiIndex {
public:
    MultiIndex() = default;
    MultiIndex(std::vector<int> indices, int ambient);

    int size() const { return static_cast<int>(indices_.size()); }
    int ambient() const { return ambient_; }
    const std::vector<int>& indices() const { return indices_; }
    int operator[](int a) const { return indices_[a]; }

    bool contains(int v) const;
    // Position of v (0-based) or -1.
    int position_of(int v) const;

    // Index with v removed; v must be present.
    MultiIndex erased(int v) const;
    // Index with v inserted; v must be absent. Returns the insertion position
    // through *pos when non-null (0-based position of v in the result).
    MultiIndex inserted(int v, int* pos = nullptr) const;

    // Increasing complement within 1..ambient.
    MultiIndex complement() const;

    auto operator<=>(const MultiIndex&) const = default;

private:
    std::vector<int> indices_;
    int ambient_ = 0;
};

// All size-k increasing multi-indices over 1..r, in lexicographic order.
std::vector<MultiIndex> all_multi_indices(int r, int k);

// Lexicographic rank of I among all size-k indices over 1..r.
int multi_index_rank(const MultiIndex& I);

std::uint64_t binom(int n, int k);

// Sign of the permutation (i1..iq j1..j_{p-q}) of (1..p) where J is the
// increasing complement of I, together with J itself.
struct CompSign {
    int sign;
    MultiIndex complement;
};
CompSign comp_sign(const MultiIndex& I, int p);

}  // namespace kdiv
