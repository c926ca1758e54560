#include "toric/linalg.hpp"

#include <sstream>

namespace toric {

QMat rref(QMat m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int piv_row = 0;
    for (int col = 0; col < cols && piv_row < rows; ++col) {
        int sel = -1;
        for (int r = piv_row; r < rows; ++r)
            if (m[r][col] != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(m[piv_row], m[sel]);
        const Rat inv = m[piv_row][col];
        for (int c = col; c < cols; ++c) m[piv_row][c] /= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == piv_row || m[r][col] == 0) continue;
            const Rat f = m[r][col];
            for (int c = col; c < cols; ++c) m[r][c] -= f * m[piv_row][c];
        }
        ++piv_row;
    }
    m.resize(piv_row);
    return m;
}

int rank(const QMat& m) { return static_cast<int>(rref(m).size()); }

QMat row_space(const QMat& m) { return rref(m); }

QMat kernel_basis(const QMat& m, int cols) {
    QMat r = rref(m);
    std::vector<int> pivot_col(r.size());
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t i = 0; i < r.size(); ++i) {
        int c = 0;
        while (c < cols && r[i][c] == 0) ++c;
        pivot_col[i] = c;
        is_pivot[c] = true;
    }
    QMat ker;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        QVec v(cols, Rat(0));
        v[free] = 1;
        for (std::size_t i = 0; i < r.size(); ++i) v[pivot_col[i]] = -r[i][free];
        ker.push_back(std::move(v));
    }
    return rref(ker);
}

bool contains(const QMat& span_rref, const QVec& v) {
    QVec w = v;
    const int cols = static_cast<int>(v.size());
    for (const QVec& row : span_rref) {
        int p = 0;
        while (p < cols && row[p] == 0) ++p;
        if (p < cols && w[p] != 0) {
            const Rat f = w[p];
            for (int c = p; c < cols; ++c) w[c] -= f * row[c];
        }
    }
    for (const Rat& x : w)
        if (x != 0) return false;
    return true;
}

bool subspace_leq(const QMat& a_rref, const QMat& b_rref) {
    for (const QVec& row : a_rref)
        if (!contains(b_rref, row)) return false;
    return true;
}

QMat subspace_sum(const QMat& a, const QMat& b) {
    QMat stacked = a;
    stacked.insert(stacked.end(), b.begin(), b.end());
    return rref(stacked);
}

QMat subspace_intersection(const QMat& a_rref, const QMat& b_rref, int cols) {
    // x in A cap B  <=>  x = y A = z B; solve for (y, -z) in the kernel of
    // the stacked transpose system.
    const int ra = static_cast<int>(a_rref.size());
    const int rb = static_cast<int>(b_rref.size());
    if (ra == 0 || rb == 0) return {};
    QMat sys(cols, QVec(ra + rb, Rat(0)));  // columns are basis vectors
    for (int i = 0; i < ra; ++i)
        for (int c = 0; c < cols; ++c) sys[c][i] = a_rref[i][c];
    for (int j = 0; j < rb; ++j)
        for (int c = 0; c < cols; ++c) sys[c][ra + j] = -b_rref[j][c];
    QMat ker = kernel_basis(sys, ra + rb);
    QMat result;
    for (const QVec& coeff : ker) {
        QVec x(cols, Rat(0));
        for (int i = 0; i < ra; ++i)
            for (int c = 0; c < cols; ++c) x[c] += coeff[i] * a_rref[i][c];
        result.push_back(std::move(x));
    }
    return rref(result);
}

QVec apply(const QMat& m, const QVec& v) {
    QVec out(m.size(), Rat(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

QMat image(const QMat& m, const QMat& basis_rows) {
    QMat img;
    for (const QVec& row : basis_rows) img.push_back(apply(m, row));
    return rref(img);
}

QVec solve_square(QMat m, QVec b) {
    const int n = static_cast<int>(m.size());
    for (int col = 0; col < n; ++col) {
        int sel = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) { sel = r; break; }
        if (sel < 0) throw std::domain_error("solve_square: singular matrix");
        std::swap(m[col], m[sel]);
        std::swap(b[col], b[sel]);
        const Rat inv = m[col][col];
        for (int c = col; c < n; ++c) m[col][c] /= inv;
        b[col] /= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rat f = m[r][col];
            for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            b[r] -= f * b[col];
        }
    }
    return b;
}

QVec coordinates(const QMat& rref_basis, const QVec& v) {
    const int cols = static_cast<int>(v.size());
    QVec coeffs(rref_basis.size(), Rat(0));
    QVec recon(cols, Rat(0));
    for (std::size_t i = 0; i < rref_basis.size(); ++i) {
        int p = 0;
        while (p < cols && rref_basis[i][p] == 0) ++p;
        coeffs[i] = p < cols ? v[p] : Rat(0);
        for (int c = 0; c < cols; ++c) recon[c] += coeffs[i] * rref_basis[i][c];
    }
    if (recon != v) throw std::domain_error("coordinates: vector not in span");
    return coeffs;
}

std::string subspace_key(const QMat& rref_basis) {
    std::ostringstream os;
    for (const QVec& row : rref_basis) {
        for (const Rat& x : row) os << rat_to_string(x) << ',';
        os << ';';
    }
    return os.str();
}

QMat identity_matrix(int n) {
    QMat m(n, QVec(n, Rat(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

}  // namespace toric
