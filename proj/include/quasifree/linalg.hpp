#pragma once

// Exact linear algebra used by the semigroup decision procedures:
// a phase-one simplex for rational feasibility and a Smith normal form
// with unimodular transforms over the integers.

#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace quasifree::linalg {

using IntegerMatrix = std::vector<std::vector<Integer>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

inline IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

/// Finds x >= 0 with M x = b, or nothing when the system is infeasible.
/// Phase-one simplex on artificial variables with Bland's rule (no cycling).
inline std::optional<std::vector<Rational>> nonnegative_solution(RationalMatrix M, std::vector<Rational> b) {
    const std::size_t rows = M.size();
    const std::size_t cols = rows ? M[0].size() : 0;
    if (b.size() != rows) fail(ErrorKind::internal, "linalg", "rhs size mismatch");
    if (rows == 0) return std::vector<Rational>(cols, Rational(0));

    for (std::size_t i = 0; i < rows; ++i)
        if (b[i] < 0) {
            for (auto& v : M[i]) v = -v;
            b[i] = -b[i];
        }

    // Tableau columns: original variables, artificial variables, rhs.
    const std::size_t width = cols + rows + 1;
    RationalMatrix T(rows, std::vector<Rational>(width, Rational(0)));
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) T[i][j] = M[i][j];
        T[i][cols + i] = 1;
        T[i][width - 1] = b[i];
        basis[i] = cols + i;
    }
    // Reduced costs of the phase-one objective (sum of artificials), negated form.
    std::vector<Rational> cost(width, Rational(0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < width; ++j)
            if (j < cols || j == width - 1) cost[j] -= T[i][j];

    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == width) break;
        std::size_t leave = rows;
        Rational best;
        for (std::size_t i = 0; i < rows; ++i) {
            if (T[i][enter] <= 0) continue;
            Rational ratio = T[i][width - 1] / T[i][enter];
            if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == rows) break; // unbounded direction; cannot happen for phase one
        Rational pivot = T[leave][enter];
        for (auto& v : T[leave]) v /= pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rational f = T[i][enter];
            for (std::size_t j = 0; j < width; ++j) T[i][j] -= f * T[leave][j];
        }
        if (cost[enter] != 0) {
            Rational f = cost[enter];
            for (std::size_t j = 0; j < width; ++j) cost[j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    if (cost[width - 1] != 0) return std::nullopt; // residual artificial mass
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t i = 0; i < rows; ++i)
        if (basis[i] < cols) x[basis[i]] = T[i][width - 1];
    return x;
}

/// U * A * V = diag(d_1, ..., d_r, 0, ...), d_k > 0, d_k | d_{k+1}; U, V unimodular.
struct SmithForm {
    IntegerMatrix U;
    IntegerMatrix V;
    std::vector<Integer> diagonal; // length min(rows, cols)
    std::size_t rank = 0;
};

inline SmithForm smith_normal_form(const IntegerMatrix& A, std::size_t rows, std::size_t cols) {
    IntegerMatrix D = A;
    if (D.size() != rows) D.assign(rows, std::vector<Integer>(cols, Integer(0)));
    SmithForm out{identity(rows), identity(cols), {}, 0};
    auto& U = out.U;
    auto& V = out.V;

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap(D[a], D[b]);
        std::swap(U[a], U[b]);
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (auto& r : D) std::swap(r[a], r[b]);
        for (auto& r : V) std::swap(r[a], r[b]);
    };
    auto add_row = [&](std::size_t target, std::size_t source, const Integer& f) { // row_t += f * row_s
        for (std::size_t j = 0; j < cols; ++j) D[target][j] += f * D[source][j];
        for (std::size_t j = 0; j < rows; ++j) U[target][j] += f * U[source][j];
    };
    auto add_col = [&](std::size_t target, std::size_t source, const Integer& f) {
        for (std::size_t i = 0; i < rows; ++i) D[i][target] += f * D[i][source];
        for (std::size_t i = 0; i < cols; ++i) V[i][target] += f * V[i][source];
    };

    const std::size_t steps = std::min(rows, cols);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (D[i][j] != 0 && (pi == rows || abs(D[i][j]) < abs(D[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) goto finished;
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (D[i][t] == 0) continue;
                Integer q = D[i][t] / D[t][t];
                add_row(i, t, -q);
                if (D[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (D[t][j] == 0) continue;
                Integer q = D[t][j] / D[t][t];
                add_col(j, t, -q);
                if (D[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divisible = true;
            for (std::size_t i = t + 1; i < rows && divisible; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        add_row(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (D[t][t] < 0) {
            for (auto& v : D[t]) v = -v;
            for (auto& v : U[t]) v = -v;
        }
        out.rank = t + 1;
    }
finished:
    out.diagonal.assign(steps, Integer(0));
    for (std::size_t t = 0; t < steps; ++t) out.diagonal[t] = D[t][t];
    return out;
}

inline std::vector<Integer> multiply(const IntegerMatrix& M, const std::vector<Integer>& x) {
    std::vector<Integer> y(M.size(), Integer(0));
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += M[i][j] * x[j];
    return y;
}

/// Some integer z with A z = b (A is rows x cols), or nothing.
inline std::optional<std::vector<Integer>> integer_solution(const IntegerMatrix& A, std::size_t rows, std::size_t cols,
                                                            const std::vector<Integer>& b) {
    SmithForm s = smith_normal_form(A, rows, cols);
    std::vector<Integer> c = multiply(s.U, b);
    std::vector<Integer> w(cols, Integer(0));
    for (std::size_t k = 0; k < rows; ++k) {
        if (k < s.rank) {
            if (c[k] % s.diagonal[k] != 0) return std::nullopt;
            w[k] = c[k] / s.diagonal[k];
        } else if (c[k] != 0) {
            return std::nullopt;
        }
    }
    return multiply(s.V, w);
}

/// Rank over Q of a list of rational row vectors.
inline std::size_t rational_rank(RationalMatrix rows) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace quasifree::linalg
