#ifndef TORIC_SPARSE_HPP
#define TORIC_SPARSE_HPP

// Sparse exact rank computation over Q.  The differentials of the cell and
// total complexes are large but extremely sparse (a handful of +-1 entries
// per row), so rank is computed by sparse Gaussian elimination with a
// Markowitz-style pivot choice to limit fill-in.

#include "toric/rational.hpp"

#include <map>
#include <vector>

namespace toric {

class SparseMat {
public:
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void add(int r, int c, const Rat& v) {
        if (v == 0) return;
        Rat& slot = data_[r][c];
        slot += v;
        if (slot == 0) data_[r].erase(c);
    }

    // Exact rank over Q; destroys no state (works on a copy internally).
    int rank() const;

private:
    int rows_, cols_;
    std::vector<std::map<int, Rat>> data_;  // row -> (col -> value)
};

}  // namespace toric

#endif
