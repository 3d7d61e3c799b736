#pragma once

// Dense exact simplex over Rational. Problem sizes here are tiny (a handful of
// rows, at most a few hundred columns), so a textbook tableau with Bland's rule
// is plenty and never cycles.

#include "cohdof/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace cohdof::lp {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    std::vector<Rational> x;  // primal solution (size n) when Optimal
    Rational value;           // objective value when Optimal
};

namespace detail {

struct Tableau {
    // rows_ x (cols_ + 1); last column is the right-hand side.
    Matrix t;
    std::vector<std::size_t> basis;
    std::size_t rows = 0, cols = 0;

    void pivot(std::size_t r, std::size_t c) {
        Rational inv = Rational(1) / t[r][c];
        for (auto& v : t[r])
            if (!v.is_zero()) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || t[i][c].is_zero()) continue;
            Rational f = t[i][c];
            for (std::size_t j = 0; j <= cols; ++j)
                if (!t[r][j].is_zero()) t[i][j] -= f * t[r][j];
        }
        basis[r] = c;
    }

    // Maximizes obj . x over the current basic feasible solution, restricted to
    // columns allowed[j]. Returns false on unboundedness.
    bool optimize(const std::vector<Rational>& obj, const std::vector<bool>& allowed) {
        for (;;) {
            // Reduced cost of column j: obj_j - sum_i obj_{basis_i} t[i][j].
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < cols && !enter; ++j) {
                if (!allowed[j]) continue;
                bool basic = false;
                for (auto b : basis)
                    if (b == j) basic = true;
                if (basic) continue;
                Rational rc = obj[j];
                for (std::size_t i = 0; i < rows; ++i)
                    if (!t[i][j].is_zero() && !obj[basis[i]].is_zero()) rc -= obj[basis[i]] * t[i][j];
                if (rc.sign() > 0) enter = j;  // Bland: lowest index with positive reduced cost
            }
            if (!enter) return true;
            std::size_t c = *enter;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < rows; ++i) {
                if (t[i][c].sign() <= 0) continue;
                Rational ratio = t[i][cols] / t[i][c];
                if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, c);
        }
    }
};

}  // namespace detail

/// Solves max c.x s.t. A x = b, x >= 0. An empty `c` asks for feasibility only.
inline Result solve(const Matrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c = {}) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a.front().size() : c.size();
    detail::Tableau tab;
    tab.rows = m;
    tab.cols = n + m;  // structural columns then one artificial per row
    tab.t.assign(m, Row(tab.cols + 1, Rational(0)));
    tab.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        bool flip = b[i].sign() < 0;
        for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = flip ? -a[i][j] : a[i][j];
        tab.t[i][n + i] = Rational(1);
        tab.t[i][tab.cols] = flip ? -b[i] : b[i];
        tab.basis[i] = n + i;
    }

    // Phase 1: maximize -(sum of artificials).
    std::vector<Rational> phase1(tab.cols, Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = Rational(-1);
    std::vector<bool> all(tab.cols, true);
    tab.optimize(phase1, all);
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] >= n && !tab.t[i][tab.cols].is_zero()) return {Status::Infeasible, {}, {}};

    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < n) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (!tab.t[i][j].is_zero()) {
                tab.pivot(i, j);
                break;
            }
    }

    Result res;
    if (!c.empty()) {
        std::vector<Rational> obj(tab.cols, Rational(0));
        for (std::size_t j = 0; j < n; ++j) obj[j] = c[j];
        std::vector<bool> structural(tab.cols, false);
        for (std::size_t j = 0; j < n; ++j) structural[j] = true;
        if (!tab.optimize(obj, structural)) return {Status::Unbounded, {}, {}};
    }
    res.status = Status::Optimal;
    res.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.t[i][tab.cols];
    for (std::size_t j = 0; j < n && !c.empty(); ++j) res.value += c[j] * res.x[j];
    return res;
}

inline bool feasible(const Matrix& a, const std::vector<Rational>& b) {
    return solve(a, b).status == Status::Optimal;
}

/// Solves the square system M x = r exactly; nullopt when M is singular.
inline std::optional<std::vector<Rational>> solve_square(Matrix m, std::vector<Rational> r) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(r[piv], r[col]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            Rational f = m[i][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
            r[i] -= f * r[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = r[i] / m[i][i];
    return x;
}

}  // namespace cohdof::lp
