#pragma once

#include <utility>
#include <vector>

namespace cabdl {

// Sparse column: (row index, value) with increasing, distinct indices.
using SparseColumn = std::vector<std::pair<int, long>>;

// t x s integer matrix stored by columns.
struct RelationMatrix {
    int t = 0;
    std::vector<SparseColumn> columns;

    int s() const noexcept { return static_cast<int>(columns.size()); }
};

}  // namespace cabdl
