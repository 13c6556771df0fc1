#include "birk/polytope.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "birk/error.hpp"

namespace birk {

namespace {

struct VecLess {
    bool operator()(const Vec& a, const Vec& b) const { return compare(a, b) < 0; }
};

} // namespace

VPolytope make_vpolytope(std::vector<Vec> points) {
    if (points.empty())
        throw UsageError("polytope needs at least one vertex");
    VPolytope p;
    p.ambient_dim = static_cast<int>(points[0].size());

    std::map<Vec, int, VecLess> seen;
    for (auto& v : points) {
        if (static_cast<int>(v.size()) != p.ambient_dim)
            throw UsageError("vertex dimension mismatch");
        if (seen.emplace(v, 0).second)
            p.vertices.push_back(std::move(v));
    }

    AffineHull hull = affine_hull(p.vertices);
    p.full_dim = static_cast<int>(hull.basis.size());

    p.origin.assign(p.ambient_dim, QuadExt());
    for (const Vec& v : p.vertices)
        for (int k = 0; k < p.ambient_dim; ++k)
            p.origin[k] += v[k];
    const QuadExt inv_n = QuadExt(static_cast<long>(p.vertices.size())).inverse();
    for (int k = 0; k < p.ambient_dim; ++k)
        p.origin[k] *= inv_n;

    p.identity_basis = (p.full_dim == p.ambient_dim);
    if (!p.identity_basis)
        p.span_basis = hull.basis;

    p.reduced.reserve(p.vertices.size());
    if (p.identity_basis) {
        for (const Vec& v : p.vertices)
            p.reduced.push_back(sub(v, p.origin));
    } else {
        AffineHull centered{p.origin, p.span_basis};
        for (const Vec& v : p.vertices)
            p.reduced.push_back(hull_coordinates(centered, v));
    }
    return p;
}

VPolytope build_vpolytope(const MatGroup& g) {
    std::vector<Vec> pts;
    pts.reserve(g.elements.size());
    for (const Mat& m : g.elements)
        pts.push_back(m.a); // row-major flattening
    VPolytope p = make_vpolytope(std::move(pts));
    p.mat_dim = g.dim;
    return p;
}

std::pair<Vec, QuadExt> VPolytope::ambient_inequality(const Vec& normal,
                                                      const QuadExt& rhs) const {
    Vec a;
    if (identity_basis) {
        a = normal;
    } else {
        const int k = static_cast<int>(span_basis.size());
        Mat gram(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                gram.at(i, j) = dot(span_basis[i], span_basis[j]);
        SolveResult s = solve(gram, normal);
        if (!s.consistent)
            throw InternalError("degenerate Gram matrix of a hull basis");
        a.assign(ambient_dim, QuadExt());
        for (int j = 0; j < k; ++j)
            for (int r = 0; r < ambient_dim; ++r)
                a[r] += s.solution[j] * span_basis[j][r];
    }
    QuadExt b = rhs + dot(a, origin);
    return {std::move(a), std::move(b)};
}

std::vector<int32_t> incidence_of(const VPolytope& p, const Vec& normal, const QuadExt& rhs) {
    std::vector<int32_t> out;
    for (int i = 0; i < p.vertex_count(); ++i) {
        int s = (rhs - dot(normal, p.reduced[i])).sign();
        if (s < 0)
            throw InternalError("inequality is violated by a vertex");
        if (s == 0)
            out.push_back(i);
    }
    return out;
}

void normalize_facet(Facet& f) {
    const int s = f.rhs.sign();
    if (s < 0)
        throw InternalError("facet right-hand side is negative after centering");
    if (s > 0) {
        const QuadExt inv = f.rhs.inverse();
        for (QuadExt& x : f.normal)
            x *= inv;
        f.rhs = QuadExt(1);
        return;
    }
    // rhs = 0: only positive scalings preserve the halfspace, so the leading
    // entry keeps its sign and is scaled to +-1.
    for (const QuadExt& x : f.normal) {
        if (x.is_zero())
            continue;
        QuadExt scale = x.inverse();
        if (scale.sign() < 0)
            scale = -scale;
        for (QuadExt& y : f.normal)
            y *= scale;
        return;
    }
    throw InternalError("zero facet normal");
}

int affine_rank_of(const VPolytope& p, std::span<const int32_t> idx) {
    std::vector<Vec> pts;
    pts.reserve(idx.size());
    for (int32_t i : idx)
        pts.push_back(p.reduced[i]);
    return affine_rank(pts);
}

bool is_facet_incidence(const VPolytope& p, std::span<const int32_t> idx) {
    return !idx.empty() && affine_rank_of(p, idx) == p.full_dim - 1;
}

Facet facet_from_incidence(const VPolytope& p, std::span<const int32_t> idx) {
    if (idx.empty())
        throw DataIntegrityError("empty incidence set");
    const int d = p.full_dim;
    Mat rows(static_cast<int>(idx.size()), d + 1);
    for (size_t r = 0; r < idx.size(); ++r) {
        for (int c = 0; c < d; ++c)
            rows.at(static_cast<int>(r), c) = p.reduced[idx[r]][c];
        rows.at(static_cast<int>(r), d) = QuadExt(-1);
    }
    std::vector<Vec> kb = kernel_basis(rows);
    if (kb.size() != 1)
        throw DataIntegrityError("incidence set does not span a unique hyperplane");

    Facet f;
    f.normal.assign(kb[0].begin(), kb[0].begin() + d);
    f.rhs = kb[0][d];

    // Orient so the polytope sits on the <= side.
    int orient = 0;
    for (int i = 0; i < p.vertex_count() && orient == 0; ++i)
        orient = (f.rhs - dot(f.normal, p.reduced[i])).sign();
    if (orient < 0) {
        for (QuadExt& x : f.normal)
            x = -x;
        f.rhs = -f.rhs;
    }
    normalize_facet(f);
    try {
        f.incidence = incidence_of(p, f.normal, f.rhs);
    } catch (const InternalError&) {
        throw DataIntegrityError("incidence set spans a non-supporting hyperplane");
    }
    if (!std::equal(f.incidence.begin(), f.incidence.end(), idx.begin(), idx.end()) ||
        f.incidence.size() != idx.size())
        throw DataIntegrityError("incidence set is not the full incidence of its hyperplane");
    if (affine_rank_of(p, f.incidence) != d - 1)
        throw DataIntegrityError("incidence set is not facet-defining");
    return f;
}

bool facet_ok(const VPolytope& p, const Facet& f) {
    if (!std::is_sorted(f.incidence.begin(), f.incidence.end()))
        return false;
    try {
        std::vector<int32_t> inc = incidence_of(p, f.normal, f.rhs);
        if (inc != f.incidence)
            return false;
    } catch (const InternalError&) {
        return false;
    }
    if (affine_rank_of(p, f.incidence) != p.full_dim - 1)
        return false;
    if (f.rhs.sign() > 0)
        return f.rhs == QuadExt(1);
    for (const QuadExt& x : f.normal)
        if (!x.is_zero())
            return x == QuadExt(1) || x == QuadExt(-1);
    return false;
}

Facet initial_facet(const VPolytope& p, uint64_t seed) {
    const int d = p.full_dim;
    if (d < 1)
        throw UsageError("a zero-dimensional polytope has no facets");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-997, 997);
    std::uniform_int_distribution<long> den(1, 31);
    Vec c(d);
    bool nonzero = false;
    for (int i = 0; i < d; ++i) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        c[i] = QuadExt(q);
        nonzero = nonzero || !c[i].is_zero();
    }
    if (!nonzero)
        c[0] = QuadExt(1);

    QuadExt beta = dot(c, p.reduced[0]);
    for (int i = 1; i < p.vertex_count(); ++i) {
        QuadExt v = dot(c, p.reduced[i]);
        if (compare(v, beta) > 0)
            beta = v;
    }
    std::vector<int32_t> active = incidence_of(p, c, beta);

    // Rotate the supporting hyperplane until the active set is a facet.
    while (affine_rank_of(p, active) < d - 1) {
        Mat rows(static_cast<int>(active.size()), d + 1);
        for (size_t r = 0; r < active.size(); ++r) {
            for (int cc = 0; cc < d; ++cc)
                rows.at(static_cast<int>(r), cc) = p.reduced[active[r]][cc];
            rows.at(static_cast<int>(r), d) = QuadExt(-1);
        }
        std::vector<Vec> kb = kernel_basis(rows);
        // Pick a kernel direction independent of the current functional.
        Vec w;
        QuadExt gamma;
        bool found = false;
        for (const Vec& k : kb) {
            Mat two(2, d + 1);
            for (int cc = 0; cc < d; ++cc) {
                two.at(0, cc) = c[cc];
                two.at(1, cc) = k[cc];
            }
            two.at(0, d) = beta;
            two.at(1, d) = k[d];
            if (rank(two) == 2) {
                w.assign(k.begin(), k.begin() + d);
                gamma = k[d];
                found = true;
                break;
            }
        }
        if (!found)
            throw InternalError("no rotation direction at a non-facet support");

        // Slack s(u) > 0 off the active set; g(u) = gamma - <w, u> is zero on
        // it. Rotate toward the side where some vertex binds.
        auto bind_exists = [&](int sgn_flip) {
            for (int i = 0; i < p.vertex_count(); ++i) {
                QuadExt g = (gamma - dot(w, p.reduced[i])) * QuadExt(sgn_flip);
                if (g.sign() < 0)
                    return true;
            }
            return false;
        };
        int flip = 1;
        if (!bind_exists(1)) {
            flip = -1;
            if (!bind_exists(-1))
                throw InternalError("degenerate rotation pencil");
        }
        if (flip < 0) {
            for (QuadExt& x : w)
                x = -x;
            gamma = -gamma;
        }

        bool have_t = false;
        QuadExt t_best;
        for (int i = 0; i < p.vertex_count(); ++i) {
            QuadExt g = gamma - dot(w, p.reduced[i]);
            if (g.sign() >= 0)
                continue;
            QuadExt s = beta - dot(c, p.reduced[i]);
            QuadExt t = s / -g;
            if (!have_t || compare(t, t_best) < 0) {
                t_best = t;
                have_t = true;
            }
        }
        if (!have_t)
            throw InternalError("rotation found no binding vertex");
        for (int cc = 0; cc < d; ++cc)
            c[cc] += t_best * w[cc];
        beta += t_best * gamma;
        active = incidence_of(p, c, beta);
    }

    Facet f;
    f.normal = std::move(c);
    f.rhs = std::move(beta);
    normalize_facet(f);
    f.incidence = incidence_of(p, f.normal, f.rhs);
    return f;
}

VerifyReport verify_inequality(const MatGroup& g, const VPolytope& p, const Mat& a,
                               const QuadExt& rhs) {
    if (a.rows != g.dim || a.cols != g.dim)
        throw UsageError("inequality matrix dimension mismatch");
    VerifyReport rep;
    rep.valid = true;
    for (int i = 0; i < static_cast<int>(g.elements.size()); ++i) {
        const Mat& x = g.elements[i];
        QuadExt tr;
        for (int r = 0; r < g.dim; ++r)
            for (int cc = 0; cc < g.dim; ++cc)
                if (!x.at(r, cc).is_zero() && !a.at(cc, r).is_zero())
                    tr += x.at(r, cc) * a.at(cc, r); // Tr(XA) = sum X_rc A_cr
        int s = (rhs - tr).sign();
        if (s < 0)
            rep.valid = false;
        else if (s == 0)
            rep.incidence.push_back(i);
    }
    rep.incidence_count = static_cast<int64_t>(rep.incidence.size());
    rep.rank_of_a = rank(a);
    rep.is_facet = rep.valid && !rep.incidence.empty() &&
                   affine_rank_of(p, rep.incidence) == p.full_dim - 1;
    return rep;
}

VerifyReport verify_inequality(const MatGroup& g, const Mat& a, const QuadExt& rhs) {
    VPolytope p = build_vpolytope(g);
    return verify_inequality(g, p, a, rhs);
}

Mat facet_matrix(const VPolytope& p, const Facet& f) {
    if (p.mat_dim == 0)
        throw UsageError("polytope vertices are not square matrices");
    auto [a, b] = p.ambient_inequality(f.normal, f.rhs);
    const int n = p.mat_dim;
    if (b.sign() != 0) {
        const QuadExt inv = b.inverse();
        for (QuadExt& x : a)
            x *= inv;
    }
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(j, i) = a[static_cast<size_t>(i) * n + j]; // pairing Tr(XA): A_ji = a_(i,j)
    return m;
}

} // namespace birk
