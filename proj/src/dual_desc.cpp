#include "birk/dual_desc.hpp"

#include <algorithm>

#include "birk/error.hpp"

namespace birk {

namespace {

// Extreme ray of the intermediate cone plus its exact zero set over the
// constraints processed so far (constraint i == vertex i).
struct Ray {
    Vec coords;
    std::vector<uint64_t> zeros;
};

void set_bit(std::vector<uint64_t>& bits, int i) { bits[i >> 6] |= uint64_t(1) << (i & 63); }

size_t and_popcount(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    size_t n = 0;
    for (size_t w = 0; w < a.size(); ++w)
        n += static_cast<size_t>(__builtin_popcountll(a[w] & b[w]));
    return n;
}

bool and_subset_of(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b,
                   const std::vector<uint64_t>& c) {
    // (a & b) subset of c
    for (size_t w = 0; w < a.size(); ++w)
        if ((a[w] & b[w]) & ~c[w])
            return false;
    return true;
}

// Clear denominators and divide by the integer content, keeping entries small.
void normalize_ray_coords(Vec& r) {
    Integer l(1);
    for (const QuadExt& x : r) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.rat().get_den().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.quad().get_den().get_mpz_t());
    }
    Integer g(0);
    std::vector<std::pair<Integer, Integer>> scaled;
    scaled.reserve(r.size());
    for (const QuadExt& x : r) {
        Integer a = x.rat().get_num() * (l / x.rat().get_den());
        Integer b = x.quad().get_num() * (l / x.quad().get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), b.get_mpz_t());
        scaled.emplace_back(std::move(a), std::move(b));
    }
    if (g == 0)
        return;
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = QuadExt(Rational(scaled[i].first / g), Rational(scaled[i].second / g));
}

} // namespace

std::vector<Facet> dual_description_direct(const VPolytope& p, size_t ray_cap) {
    const int d = p.full_dim;
    const int n = p.vertex_count();
    std::vector<Facet> out;
    if (d == 0)
        return out;
    if (d == 1) {
        // A segment: its two endpoints are the facets.
        int lo = 0, hi = 0;
        for (int i = 1; i < n; ++i) {
            if (compare(p.reduced[i][0], p.reduced[lo][0]) < 0)
                lo = i;
            if (compare(p.reduced[i][0], p.reduced[hi][0]) > 0)
                hi = i;
        }
        for (int v : {lo, hi}) {
            Facet f;
            f.normal = {p.reduced[v][0].inverse()};
            f.rhs = QuadExt(1);
            f.incidence = {static_cast<int32_t>(v)};
            out.push_back(std::move(f));
        }
        std::sort(out.begin(), out.end(),
                  [](const Facet& a, const Facet& b) { return a.incidence < b.incidence; });
        return out;
    }

    // Polar cone in R^{d+1}: rows a_i = (v_i, -1), cone { r : <a_i, r> <= 0 }.
    const int cd = d + 1;
    auto row_dot = [&](int i, const Vec& r) {
        QuadExt s;
        for (int c = 0; c < d; ++c)
            if (!p.reduced[i][c].is_zero() && !r[c].is_zero())
                s += p.reduced[i][c] * r[c];
        s -= r[d];
        return s;
    };

    // Greedy independent constraint set defines the simplicial start cone.
    std::vector<int> start;
    {
        Mat m(0, cd);
        std::vector<Vec> rows;
        for (int i = 0; i < n && static_cast<int>(start.size()) < cd; ++i) {
            Vec row(cd);
            for (int c = 0; c < d; ++c)
                row[c] = p.reduced[i][c];
            row[d] = QuadExt(-1);
            rows.push_back(row);
            Mat cand(static_cast<int>(rows.size()), cd);
            for (size_t rr = 0; rr < rows.size(); ++rr)
                for (int c = 0; c < cd; ++c)
                    cand.at(static_cast<int>(rr), c) = rows[rr][c];
            if (rank(cand) == static_cast<int>(rows.size()))
                start.push_back(i);
            else
                rows.pop_back();
        }
        if (static_cast<int>(start.size()) != cd)
            throw InternalError("vertex rows do not span the polar cone space");
    }

    const size_t words = (static_cast<size_t>(n) + 63) / 64;
    std::vector<Ray> rays;
    {
        // Rays of the start cone: columns of -M^{-1}.
        Mat m(cd, cd);
        for (int rr = 0; rr < cd; ++rr) {
            for (int c = 0; c < d; ++c)
                m.at(rr, c) = p.reduced[start[rr]][c];
            m.at(rr, d) = QuadExt(-1);
        }
        for (int j = 0; j < cd; ++j) {
            Vec e(cd);
            e[j] = QuadExt(-1);
            SolveResult s = solve(m, e);
            if (!s.consistent)
                throw InternalError("singular start cone");
            Ray r;
            r.coords = std::move(s.solution);
            normalize_ray_coords(r.coords);
            r.zeros.assign(words, 0);
            for (int k = 0; k < cd; ++k)
                if (k != j)
                    set_bit(r.zeros, start[k]);
            rays.push_back(std::move(r));
        }
    }

    std::vector<bool> in_start(n, false);
    for (int i : start)
        in_start[i] = true;

    std::vector<int> signs(rays.size());
    std::vector<QuadExt> vals;
    for (int j = 0; j < n; ++j) {
        if (in_start[j])
            continue;
        vals.assign(rays.size(), QuadExt());
        signs.assign(rays.size(), 0);
        bool any_pos = false;
        for (size_t r = 0; r < rays.size(); ++r) {
            vals[r] = row_dot(j, rays[r].coords);
            signs[r] = vals[r].sign();
            any_pos = any_pos || signs[r] > 0;
        }
        if (!any_pos) {
            for (size_t r = 0; r < rays.size(); ++r)
                if (signs[r] == 0)
                    set_bit(rays[r].zeros, j);
            continue;
        }

        std::vector<Ray> next;
        next.reserve(rays.size());
        for (size_t r = 0; r < rays.size(); ++r) {
            if (signs[r] <= 0) {
                Ray kept = rays[r];
                if (signs[r] == 0)
                    set_bit(kept.zeros, j);
                next.push_back(std::move(kept));
            }
        }

        for (size_t ip = 0; ip < rays.size(); ++ip) {
            if (signs[ip] <= 0)
                continue;
            for (size_t in = 0; in < rays.size(); ++in) {
                if (signs[in] >= 0)
                    continue;
                // Necessary bound for adjacency in a pointed (d+1)-cone.
                if (and_popcount(rays[ip].zeros, rays[in].zeros) < static_cast<size_t>(d) - 1)
                    continue;
                bool adjacent = true;
                for (size_t u = 0; u < rays.size(); ++u) {
                    if (u == ip || u == in)
                        continue;
                    if (and_subset_of(rays[ip].zeros, rays[in].zeros, rays[u].zeros)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent)
                    continue;
                Ray nr;
                nr.coords.assign(cd, QuadExt());
                for (int c = 0; c < cd; ++c)
                    nr.coords[c] = vals[ip] * rays[in].coords[c] - vals[in] * rays[ip].coords[c];
                normalize_ray_coords(nr.coords);
                // Exact zero set over all processed constraints (the start
                // set, everything below j, and j itself).
                nr.zeros.assign(words, 0);
                for (int k = 0; k < n; ++k) {
                    if (!(in_start[k] || k <= j))
                        continue;
                    if (row_dot(k, nr.coords).sign() == 0)
                        set_bit(nr.zeros, k);
                }
                next.push_back(std::move(nr));
                if (next.size() > ray_cap)
                    throw ResourceCapError("double description exceeded the ray cap");
            }
        }
        rays = std::move(next);
    }

    out.reserve(rays.size());
    for (const Ray& r : rays) {
        if (r.coords[d].sign() <= 0)
            throw InternalError("polar ray with nonpositive height despite interior origin");
        Facet f;
        const QuadExt inv_t = r.coords[d].inverse();
        f.normal.assign(d, QuadExt());
        for (int c = 0; c < d; ++c)
            f.normal[c] = r.coords[c] * inv_t;
        f.rhs = QuadExt(1);
        f.incidence = incidence_of(p, f.normal, f.rhs);
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(),
              [](const Facet& a, const Facet& b) { return a.incidence < b.incidence; });
    return out;
}

} // namespace birk
