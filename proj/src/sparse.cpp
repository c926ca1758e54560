#include "toric/sparse.hpp"

#include <limits>
#include <set>

namespace toric {

int SparseMat::rank() const {
    // Work on row copies plus a column -> active-row index for pivot search.
    std::vector<std::map<int, Rat>> rows = data_;
    std::vector<std::set<int>> col_rows(cols_);
    std::vector<bool> active(rows_, true);
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);

    int rk = 0;
    for (;;) {
        // Markowitz-lite: among the shortest active rows, pick the entry whose
        // column has the fewest other active rows.
        int best_r = -1, best_c = -1;
        long long best_score = std::numeric_limits<long long>::max();
        std::size_t best_len = std::numeric_limits<std::size_t>::max();
        for (int r = 0; r < rows_; ++r) {
            if (!active[r] || rows[r].empty()) continue;
            if (rows[r].size() > best_len) continue;
            for (const auto& [c, v] : rows[r]) {
                const long long score =
                    static_cast<long long>(rows[r].size() - 1) *
                    static_cast<long long>(col_rows[c].size() - 1);
                if (rows[r].size() < best_len || score < best_score) {
                    best_len = rows[r].size();
                    best_score = score;
                    best_r = r;
                    best_c = c;
                }
            }
        }
        if (best_r < 0) break;

        ++rk;
        active[best_r] = false;
        const std::map<int, Rat> pivot_row = rows[best_r];
        const Rat pivot = pivot_row.at(best_c);
        for (const auto& [c, v] : pivot_row) col_rows[c].erase(best_r);

        // Eliminate best_c from the remaining active rows.
        const std::set<int> targets = col_rows[best_c];
        for (int r : targets) {
            if (!active[r]) continue;
            const Rat f = rows[r].at(best_c) / pivot;
            for (const auto& [c, v] : pivot_row) {
                auto it = rows[r].find(c);
                if (it == rows[r].end()) {
                    rows[r].emplace(c, -f * v);
                    col_rows[c].insert(r);
                } else {
                    it->second -= f * v;
                    if (it->second == 0) {
                        rows[r].erase(it);
                        col_rows[c].erase(r);
                    }
                }
            }
        }
    }
    return rk;
}

}  // namespace toric
