#include "birk/simplex.hpp"

#include "birk/error.hpp"

namespace birk {

namespace {

// Dense tableau kept in canonical form: basis columns are unit columns and
// the right-hand side stays nonnegative. The objective row carries reduced
// costs and is pivoted along with the body.
struct Tableau {
    int m;                          // constraint rows
    int n;                          // structural columns (no rhs)
    std::vector<std::vector<QuadExt>> row; // m rows of n+1 entries (rhs last)
    std::vector<QuadExt> obj;              // n+1 entries, obj[n] = -current value
    std::vector<int> basis;                // per row, column index in basis

    void pivot(int pr, int pc) {
        const QuadExt inv = row[pr][pc].inverse();
        for (int c = 0; c <= n; ++c)
            row[pr][c] *= inv;
        for (int r = 0; r < m; ++r) {
            if (r == pr || row[r][pc].is_zero())
                continue;
            const QuadExt f = row[r][pc];
            for (int c = 0; c <= n; ++c)
                row[r][c] -= f * row[pr][c];
        }
        if (!obj[pc].is_zero()) {
            const QuadExt f = obj[pc];
            for (int c = 0; c <= n; ++c)
                obj[c] -= f * row[pr][c];
        }
        basis[pr] = pc;
    }

    // Minimize the current objective row. Returns false on unboundedness,
    // reporting the entering column through `unbounded_col`.
    bool minimize(int* unbounded_col) {
        for (;;) {
            int entering = -1;
            for (int c = 0; c < n; ++c) {
                if (obj[c].sign() < 0) { // Bland: lowest improving index
                    entering = c;
                    break;
                }
            }
            if (entering < 0)
                return true;
            int leaving = -1;
            QuadExt best_ratio;
            for (int r = 0; r < m; ++r) {
                if (row[r][entering].sign() <= 0)
                    continue;
                QuadExt ratio = row[r][n] / row[r][entering];
                if (leaving < 0 || compare(ratio, best_ratio) < 0 ||
                    (compare(ratio, best_ratio) == 0 && basis[r] < basis[leaving])) {
                    leaving = r;
                    best_ratio = ratio;
                }
            }
            if (leaving < 0) {
                if (unbounded_col)
                    *unbounded_col = entering;
                return false;
            }
            pivot(leaving, entering);
        }
    }
};

} // namespace

LpResult solve_lp(const std::vector<LpConstraint>& constraints, const Vec& objective,
                  bool maximize) {
    const int nvars = static_cast<int>(objective.size());
    const int m = static_cast<int>(constraints.size());
    for (const auto& c : constraints)
        if (static_cast<int>(c.coeffs.size()) != nvars)
            throw UsageError("LP constraint dimension mismatch");

    // Free variables split as x = xp - xn; one slack per constraint;
    // artificials only for rows whose slack cannot start in the basis.
    const int col_xp = 0, col_xn = nvars, col_slack = 2 * nvars;
    int ncols = 2 * nvars + m;

    Tableau t;
    t.m = m;
    std::vector<int> artificial_col(m, -1);
    int nart = 0;
    for (int r = 0; r < m; ++r)
        if (constraints[r].rhs.sign() < 0)
            ++nart;
    t.n = ncols + nart;
    t.row.assign(m, std::vector<QuadExt>(t.n + 1));
    t.basis.assign(m, -1);

    int next_art = ncols;
    for (int r = 0; r < m; ++r) {
        const bool flip = constraints[r].rhs.sign() < 0;
        const QuadExt sgn_row = flip ? QuadExt(-1) : QuadExt(1);
        for (int j = 0; j < nvars; ++j) {
            QuadExt v = sgn_row * constraints[r].coeffs[j];
            t.row[r][col_xp + j] = v;
            t.row[r][col_xn + j] = -v;
        }
        t.row[r][col_slack + r] = sgn_row;
        t.row[r][t.n] = sgn_row * constraints[r].rhs;
        if (flip) {
            artificial_col[r] = next_art;
            t.row[r][next_art] = QuadExt(1);
            t.basis[r] = next_art;
            ++next_art;
        } else {
            t.basis[r] = col_slack + r;
        }
    }

    if (nart > 0) {
        // Phase I: minimize the sum of artificials.
        t.obj.assign(t.n + 1, QuadExt());
        for (int r = 0; r < m; ++r) {
            if (artificial_col[r] < 0)
                continue;
            for (int c = 0; c <= t.n; ++c)
                t.obj[c] -= t.row[r][c];
        }
        for (int r = 0; r < m; ++r)
            if (artificial_col[r] >= 0)
                t.obj[artificial_col[r]] += QuadExt(1);
        t.minimize(nullptr); // bounded below by zero
        if ((-t.obj[t.n]).sign() != 0)
            return LpResult{LpStatus::infeasible, QuadExt(), Vec{}};
        // Drive leftover artificials out of the basis; a row with no
        // structural entry left is a redundant constraint and is dropped.
        for (int r = t.m - 1; r >= 0; --r) {
            if (t.basis[r] < ncols)
                continue;
            int pc = -1;
            for (int c = 0; c < ncols; ++c) {
                if (!t.row[r][c].is_zero()) {
                    pc = c;
                    break;
                }
            }
            if (pc >= 0) {
                t.pivot(r, pc);
            } else {
                t.row.erase(t.row.begin() + r);
                t.basis.erase(t.basis.begin() + r);
                --t.m;
            }
        }
        // Remove the artificial columns entirely so they can never re-enter.
        for (auto& row : t.row) {
            row[ncols] = row[t.n]; // move the rhs down
            row.resize(ncols + 1);
        }
        t.n = ncols;
    }

    // Phase II objective: minimize -obj when maximizing.
    t.obj.assign(t.n + 1, QuadExt());
    for (int j = 0; j < nvars; ++j) {
        QuadExt c = maximize ? -objective[j] : objective[j];
        t.obj[col_xp + j] = c;
        t.obj[col_xn + j] = -c;
    }
    for (int r = 0; r < t.m; ++r) {
        if (t.obj[t.basis[r]].is_zero())
            continue;
        const QuadExt f = t.obj[t.basis[r]];
        for (int c = 0; c <= t.n; ++c)
            t.obj[c] -= f * t.row[r][c];
    }

    int unbounded_col = -1;
    if (!t.minimize(&unbounded_col)) {
        Vec ray(nvars);
        auto add_dir = [&](int col, const QuadExt& amount) {
            if (col < nvars)
                ray[col] += amount;
            else if (col < 2 * nvars)
                ray[col - nvars] -= amount;
        };
        add_dir(unbounded_col, QuadExt(1));
        for (int r = 0; r < t.m; ++r)
            add_dir(t.basis[r], -t.row[r][unbounded_col]);
        return LpResult{LpStatus::unbounded, QuadExt(), std::move(ray)};
    }

    Vec x(nvars);
    for (int r = 0; r < t.m; ++r) {
        if (t.basis[r] < nvars)
            x[t.basis[r]] += t.row[r][t.n];
        else if (t.basis[r] < 2 * nvars)
            x[t.basis[r] - nvars] -= t.row[r][t.n];
    }
    QuadExt value = dot(objective, x);
    return LpResult{LpStatus::optimal, std::move(value), std::move(x)};
}

} // namespace birk
