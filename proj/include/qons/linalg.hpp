#ifndef QONS_LINALG_HPP
#define QONS_LINALG_HPP

#include <optional>
#include <vector>

#include "qons/matrix.hpp"

namespace qons {

// Dense exact row-reduction workhorse shared by the solvers below.
// Reduces [A | B] in place; returns pivot columns of A.
inline std::vector<int> rref(std::vector<std::vector<Rat>>& m, int acols) {
    std::vector<int> pivots;
    int rows = static_cast<int>(m.size());
    int r = 0;
    for (int c = 0; c < acols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (sgn(m[i][c]) != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        Rat pv = m[r][c];
        for (auto& x : m[r]) x /= pv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            Rat f = m[i][c];
            for (std::size_t k = 0; k < m[i].size(); ++k) m[i][k] -= f * m[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

struct LinSolve {
    bool consistent = false;
    bool unique = false;
    std::vector<Rat> particular;               // one solution (free vars = 0)
    std::vector<std::vector<Rat>> nullspace;   // basis of homogeneous solutions
};

// Exact solve of A x = b; A given row-major.
inline LinSolve solve_linear(std::vector<std::vector<Rat>> a, const std::vector<Rat>& b) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    for (int i = 0; i < rows; ++i) a[i].push_back(b[i]);
    auto pivots = rref(a, cols);
    LinSolve out;
    int rank = static_cast<int>(pivots.size());
    for (int i = rank; i < rows; ++i)
        if (sgn(a[i][cols]) != 0) return out;  // inconsistent
    out.consistent = true;
    out.particular.assign(cols, Rat(0));
    for (int i = 0; i < rank; ++i) out.particular[pivots[i]] = a[i][cols];
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rat> dir(cols, Rat(0));
        dir[c] = 1;
        for (int i = 0; i < rank; ++i) dir[pivots[i]] = -a[i][c];
        out.nullspace.push_back(std::move(dir));
    }
    out.unique = out.nullspace.empty();
    return out;
}

// Exact right-nullspace basis of the matrix whose columns are the flattened
// input matrices: vectors c with sum_i c_i M_i = 0.
inline std::vector<std::vector<Rat>> nullspace_of_columns(const std::vector<SpMat<Rat>>& cols) {
    int n = static_cast<int>(cols.size());
    if (n == 0) return {};
    int dim_r = cols[0].rows(), dim_c = cols[0].cols();
    std::vector<std::vector<Rat>> rows;
    for (int i = 0; i < dim_r; ++i) {
        for (int j = 0; j < dim_c; ++j) {
            std::vector<Rat> row(n);
            bool nz = false;
            for (int k = 0; k < n; ++k) {
                row[k] = cols[k].get(i, j);
                nz = nz || sgn(row[k]) != 0;
            }
            if (nz) rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) {  // all columns zero
        std::vector<std::vector<Rat>> basis;
        for (int k = 0; k < n; ++k) {
            std::vector<Rat> v(n, Rat(0));
            v[k] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    auto res = solve_linear(rows, std::vector<Rat>(rows.size(), Rat(0)));
    return res.nullspace;
}

// Exact right-nullspace of a sparse rational matrix (fraction-free in spirit:
// pivots are exact rationals, no rounding anywhere).
inline std::vector<std::vector<Rat>> nullspace_exact(const SpMat<Rat>& m) {
    std::vector<std::vector<Rat>> rows;
    for (int i = 0; i < m.rows(); ++i) {
        if (m.row(i).empty()) continue;
        std::vector<Rat> row(m.cols(), Rat(0));
        for (const auto& [j, v] : m.row(i)) row[j] = v;
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        std::vector<std::vector<Rat>> basis;
        for (int k = 0; k < m.cols(); ++k) {
            std::vector<Rat> v(m.cols(), Rat(0));
            v[k] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    auto res = solve_linear(rows, std::vector<Rat>(rows.size(), Rat(0)));
    return res.nullspace;
}

// Least-squares style exact fit: express `target` in the span of `basis`.
// Returns coefficients if the (overdetermined) system is exactly consistent.
inline std::optional<std::vector<Rat>> fit_in_span(const SpMat<Rat>& target,
                                                   const std::vector<SpMat<Rat>>& basis) {
    int n = static_cast<int>(basis.size());
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    for (int i = 0; i < target.rows(); ++i) {
        for (int j = 0; j < target.cols(); ++j) {
            std::vector<Rat> row(n);
            bool nz = false;
            for (int k = 0; k < n; ++k) {
                row[k] = basis[k].get(i, j);
                nz = nz || sgn(row[k]) != 0;
            }
            Rat t = target.get(i, j);
            if (!nz && sgn(t) == 0) continue;
            rows.push_back(std::move(row));
            rhs.push_back(t);
        }
    }
    if (rows.empty()) return std::vector<Rat>(n, Rat(0));
    auto res = solve_linear(rows, rhs);
    if (!res.consistent) return std::nullopt;
    return res.particular;
}

}  // namespace qons

#endif
