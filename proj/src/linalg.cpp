#include "birk/linalg.hpp"

#include <algorithm>

#include "birk/error.hpp"

namespace birk {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = QuadExt(1);
    return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<QuadExt>> rows) {
    Mat m(static_cast<int>(rows.size()), rows.size() ? static_cast<int>(rows.begin()->size()) : 0);
    int r = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != m.cols)
            throw UsageError("ragged matrix literal");
        int c = 0;
        for (const auto& x : row)
            m.at(r, c++) = x;
        ++r;
    }
    return m;
}

Mat Mat::transposed() const {
    Mat t(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            t.at(c, r) = at(r, c);
    return t;
}

Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows)
        throw UsageError("matrix product dimension mismatch");
    Mat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            const QuadExt& xik = x.at(i, k);
            if (xik.is_zero())
                continue;
            for (int j = 0; j < y.cols; ++j) {
                const QuadExt& ykj = y.at(k, j);
                if (!ykj.is_zero())
                    z.at(i, j) += xik * ykj;
            }
        }
    }
    return z;
}

Vec operator*(const Mat& m, const Vec& v) {
    if (m.cols != static_cast<int>(v.size()))
        throw UsageError("matrix-vector dimension mismatch");
    Vec out(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (!m.at(i, j).is_zero())
                out[i] += m.at(i, j) * v[j];
    return out;
}

int compare(const Vec& x, const Vec& y) {
    if (x.size() != y.size())
        return x.size() < y.size() ? -1 : 1;
    for (size_t i = 0; i < x.size(); ++i) {
        int c = compare(x[i], y[i]);
        if (c != 0)
            return c;
    }
    return 0;
}

int compare(const Mat& x, const Mat& y) {
    if (x.rows != y.rows)
        return x.rows < y.rows ? -1 : 1;
    if (x.cols != y.cols)
        return x.cols < y.cols ? -1 : 1;
    return compare(x.a, y.a);
}

QuadExt dot(std::span<const QuadExt> u, std::span<const QuadExt> v) {
    if (u.size() != v.size())
        throw UsageError("dot product dimension mismatch");
    QuadExt s;
    for (size_t i = 0; i < u.size(); ++i)
        if (!u[i].is_zero() && !v[i].is_zero())
            s += u[i] * v[i];
    return s;
}

Vec sub(const Vec& u, const Vec& v) {
    if (u.size() != v.size())
        throw UsageError("vector difference dimension mismatch");
    Vec out(u.size());
    for (size_t i = 0; i < u.size(); ++i)
        out[i] = u[i] - v[i];
    return out;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const QuadExt& x) { return x.is_zero(); });
}

namespace {

// Scale a row so that every component is integral (both rational parts).
void make_row_integral(Mat& m, int r) {
    Integer l(1);
    for (int c = 0; c < m.cols; ++c) {
        const QuadExt& x = m.at(r, c);
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.rat().get_den().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.quad().get_den().get_mpz_t());
    }
    if (l == 1)
        return;
    QuadExt f{Rational(l)};
    for (int c = 0; c < m.cols; ++c)
        m.at(r, c) *= f;
}

} // namespace

int rank(const Mat& m_in) {
    Mat m = m_in;
    for (int r = 0; r < m.rows; ++r)
        make_row_integral(m, r);

    // Bareiss fraction-free elimination: after each step entries stay
    // integral and divisions by the previous pivot are exact.
    QuadExt prev(1);
    int rank_count = 0;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int r = row; r < m.rows; ++r) {
            if (!m.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv < 0)
            continue;
        if (piv != row)
            for (int c = 0; c < m.cols; ++c)
                std::swap(m.at(piv, c), m.at(row, c));
        const QuadExt pivot = m.at(row, col);
        for (int r = row + 1; r < m.rows; ++r) {
            const QuadExt factor = m.at(r, col);
            for (int c = col; c < m.cols; ++c)
                m.at(r, c) = (pivot * m.at(r, c) - factor * m.at(row, c)) / prev;
        }
        prev = pivot;
        ++rank_count;
        ++row;
    }
    return rank_count;
}

Echelon row_echelon(Mat m) {
    Echelon e;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int r = row; r < m.rows; ++r) {
            if (!m.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv < 0)
            continue;
        if (piv != row)
            for (int c = 0; c < m.cols; ++c)
                std::swap(m.at(piv, c), m.at(row, c));
        const QuadExt inv = m.at(row, col).inverse();
        for (int c = col; c < m.cols; ++c)
            m.at(row, c) *= inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col).is_zero())
                continue;
            const QuadExt factor = m.at(r, col);
            for (int c = col; c < m.cols; ++c)
                m.at(r, c) -= factor * m.at(row, c);
        }
        e.pivot_col.push_back(col);
        ++row;
    }
    e.m = std::move(m);
    return e;
}

SolveResult solve(const Mat& m, const Vec& rhs) {
    if (m.rows != static_cast<int>(rhs.size()))
        throw UsageError("solve dimension mismatch");
    SolveResult res;

    // Eliminate [A | rhs] while tracking the row transform T so that an
    // inconsistent row yields the certificate combination.
    Mat aug(m.rows, m.cols + 1);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c)
            aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols) = rhs[r];
    }
    Mat t = Mat::identity(m.rows);

    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int r = row; r < m.rows; ++r) {
            if (!aug.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv < 0)
            continue;
        if (piv != row) {
            for (int c = 0; c <= m.cols; ++c)
                std::swap(aug.at(piv, c), aug.at(row, c));
            for (int c = 0; c < m.rows; ++c)
                std::swap(t.at(piv, c), t.at(row, c));
        }
        const QuadExt inv = aug.at(row, col).inverse();
        for (int c = col; c <= m.cols; ++c)
            aug.at(row, c) *= inv;
        for (int c = 0; c < m.rows; ++c)
            t.at(row, c) *= inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == row || aug.at(r, col).is_zero())
                continue;
            const QuadExt factor = aug.at(r, col);
            for (int c = col; c <= m.cols; ++c)
                aug.at(r, c) -= factor * aug.at(row, c);
            for (int c = 0; c < m.rows; ++c)
                t.at(r, c) -= factor * t.at(row, c);
        }
        pivot_col.push_back(col);
        ++row;
    }

    for (int r = row; r < m.rows; ++r) {
        if (!aug.at(r, m.cols).is_zero()) {
            res.consistent = false;
            res.certificate.assign(m.rows, QuadExt());
            for (int c = 0; c < m.rows; ++c)
                res.certificate[c] = t.at(r, c);
            return res;
        }
    }

    res.consistent = true;
    res.solution.assign(m.cols, QuadExt());
    for (size_t pr = 0; pr < pivot_col.size(); ++pr)
        res.solution[pivot_col[pr]] = aug.at(static_cast<int>(pr), m.cols);
    return res;
}

std::vector<Vec> kernel_basis(const Mat& m) {
    Echelon e = row_echelon(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : e.pivot_col)
        is_pivot[c] = true;

    std::vector<Vec> basis;
    for (int f = 0; f < m.cols; ++f) {
        if (is_pivot[f])
            continue;
        Vec v(m.cols);
        v[f] = QuadExt(1);
        for (size_t pr = 0; pr < e.pivot_col.size(); ++pr)
            v[e.pivot_col[pr]] = -e.m.at(static_cast<int>(pr), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

// Incremental independence tester over difference vectors.
struct SpanTracker {
    std::vector<Vec> reduced; // echelon rows
    std::vector<int> pivots;

    // Returns true (and absorbs the vector) if v is independent of the span.
    bool add(Vec v) {
        for (size_t i = 0; i < reduced.size(); ++i) {
            const QuadExt& lead = v[pivots[i]];
            if (lead.is_zero())
                continue;
            const QuadExt factor = lead; // reduced rows have unit pivots
            for (size_t c = 0; c < v.size(); ++c)
                v[c] -= factor * reduced[i][c];
        }
        int pivot = -1;
        for (size_t c = 0; c < v.size(); ++c) {
            if (!v[c].is_zero()) {
                pivot = static_cast<int>(c);
                break;
            }
        }
        if (pivot < 0)
            return false;
        const QuadExt inv = v[pivot].inverse();
        for (size_t c = 0; c < v.size(); ++c)
            v[c] *= inv;
        reduced.push_back(std::move(v));
        pivots.push_back(pivot);
        return true;
    }
};

} // namespace

AffineHull affine_hull(const std::vector<Vec>& points) {
    if (points.empty())
        throw UsageError("affine hull of an empty point set");
    AffineHull hull;
    hull.origin = points[0];
    SpanTracker tracker;
    for (size_t i = 1; i < points.size(); ++i) {
        Vec d = sub(points[i], points[0]);
        if (tracker.add(d))
            hull.basis.push_back(sub(points[i], points[0]));
    }
    return hull;
}

Vec hull_coordinates(const AffineHull& hull, const Vec& p) {
    const int ambient = static_cast<int>(hull.origin.size());
    const int k = static_cast<int>(hull.basis.size());
    Mat b(ambient, k);
    for (int c = 0; c < k; ++c)
        for (int r = 0; r < ambient; ++r)
            b.at(r, c) = hull.basis[c][r];
    SolveResult s = solve(b, sub(p, hull.origin));
    if (!s.consistent)
        throw InternalError("point lies outside its affine hull");
    return s.solution;
}

int affine_rank(const std::vector<Vec>& points) {
    if (points.empty())
        return -1;
    SpanTracker tracker;
    int r = 0;
    for (size_t i = 1; i < points.size(); ++i)
        if (tracker.add(sub(points[i], points[0])))
            ++r;
    return r;
}

} // namespace birk
