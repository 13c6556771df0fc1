#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "birk/quadext.hpp"

namespace birk {

using Vec = std::vector<QuadExt>;

struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<QuadExt> a; // row-major, a.size() == rows * cols

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    QuadExt& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const QuadExt& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static Mat identity(int n);
    static Mat from_rows(std::initializer_list<std::initializer_list<QuadExt>> rows);

    Mat transposed() const;
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Mat operator*(const Mat& x, const Mat& y);
Vec operator*(const Mat& m, const Vec& v);

// Entrywise lexicographic order under the real-number order; total and
// deterministic, used to fix element and vertex orderings.
int compare(const Mat& x, const Mat& y);
int compare(const Vec& x, const Vec& y);

QuadExt dot(std::span<const QuadExt> u, std::span<const QuadExt> v);
Vec sub(const Vec& u, const Vec& v);
bool is_zero(const Vec& v);

// Exact rank. Rows are scaled to a common integral form and eliminated
// fraction-free (Bareiss) to limit coefficient growth.
int rank(const Mat& m);

// Reduced row echelon data from plain fraction arithmetic with deterministic
// first-nonzero pivoting. Exposed so alternative eliminations can be checked
// against it entry for entry.
struct Echelon {
    Mat m;                      // reduced rows
    std::vector<int> pivot_col; // per pivot row, ascending
};
Echelon row_echelon(Mat m);

struct SolveResult {
    bool consistent = false;
    Vec solution;    // one solution when consistent
    Vec certificate; // y with y^T A = 0 and y^T rhs != 0 otherwise
};
// Solve A x = rhs exactly (A.rows == rhs.size()). Inconsistency is a result,
// not an error: the certificate row combination proves it.
SolveResult solve(const Mat& m, const Vec& rhs);

// Basis of the right kernel { v : m v = 0 }; size == cols - rank.
std::vector<Vec> kernel_basis(const Mat& m);

struct AffineHull {
    Vec origin;             // first point
    std::vector<Vec> basis; // independent difference vectors spanning the hull
};
AffineHull affine_hull(const std::vector<Vec>& points);

// Coordinates of p in the hull frame: solves basis * x = p - origin and
// verifies the reconstruction exactly.
Vec hull_coordinates(const AffineHull& hull, const Vec& p);

int affine_rank(const std::vector<Vec>& points);

} // namespace birk
