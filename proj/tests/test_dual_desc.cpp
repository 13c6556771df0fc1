#include <doctest.h>

#include <set>

#include "birk/dual_desc.hpp"

using namespace birk;

namespace {

VPolytope square() {
    std::vector<Vec> pts;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            pts.push_back({QuadExt(sx), QuadExt(sy)});
    return make_vpolytope(std::move(pts));
}

VPolytope cross(int d) {
    std::vector<Vec> pts;
    for (int i = 0; i < d; ++i)
        for (int s : {1, -1}) {
            Vec v(d);
            v[i] = QuadExt(s);
            pts.push_back(std::move(v));
        }
    return make_vpolytope(std::move(pts));
}

// All facet incidence sets by exhaustive search over vertex subsets.
std::set<std::vector<int32_t>> brute_force_facets(const VPolytope& p) {
    std::set<std::vector<int32_t>> out;
    const int n = p.vertex_count();
    REQUIRE(n <= 20);
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<int32_t> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i))
                s.push_back(i);
        try {
            Facet f = facet_from_incidence(p, s);
            out.insert(f.incidence);
        } catch (const Error&) {
            // not a supporting facet incidence
        }
    }
    return out;
}

} // namespace

TEST_CASE("the square has 4 edges") {
    VPolytope p = square();
    auto facets = dual_description_direct(p);
    CHECK(facets.size() == 4);
    for (const Facet& f : facets) {
        CHECK(f.incidence.size() == 2);
        CHECK(facet_ok(p, f));
    }
}

TEST_CASE("a segment has its two endpoints as facets") {
    VPolytope p = make_vpolytope({{QuadExt(-3)}, {QuadExt(2)}, {QuadExt(0)}});
    auto facets = dual_description_direct(p);
    REQUIRE(facets.size() == 2);
    for (const Facet& f : facets)
        CHECK(f.incidence.size() == 1);
}

TEST_CASE("a point has no facets") {
    VPolytope p = make_vpolytope({{QuadExt(1), QuadExt(2)}});
    CHECK(dual_description_direct(p).empty());
}

TEST_CASE("cross-polytopes") {
    auto f3 = dual_description_direct(cross(3));
    CHECK(f3.size() == 8);
    for (const Facet& f : f3)
        CHECK(f.incidence.size() == 3);
    auto f4 = dual_description_direct(cross(4));
    CHECK(f4.size() == 16);
}

TEST_CASE("conv(S3) has 9 facets of incidence 4, matching brute force") {
    MatGroup s3 = coxeter_group("A2");
    VPolytope p = build_vpolytope(s3);
    auto facets = dual_description_direct(p);
    CHECK(facets.size() == 9);
    std::set<std::vector<int32_t>> got;
    for (const Facet& f : facets) {
        CHECK(f.incidence.size() == 4);
        CHECK(facet_ok(p, f));
        got.insert(f.incidence);
    }
    CHECK(got == brute_force_facets(p));
}

TEST_CASE("conv(S4) has 16 facets of incidence 18") {
    MatGroup s4 = coxeter_group("A3");
    VPolytope p = build_vpolytope(s4);
    auto facets = dual_description_direct(p);
    CHECK(facets.size() == 16);
    for (const Facet& f : facets) {
        CHECK(f.incidence.size() == 18);
        CHECK(facet_ok(p, f));
    }
}

TEST_CASE("deterministic output") {
    MatGroup s3 = coxeter_group("A2");
    VPolytope p = build_vpolytope(s3);
    auto a = dual_description_direct(p);
    auto b = dual_description_direct(p);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].incidence == b[i].incidence);
        CHECK(a[i].normal == b[i].normal);
    }
}

TEST_CASE("ray cap is enforced") {
    MatGroup s4 = coxeter_group("A3");
    VPolytope p = build_vpolytope(s4);
    CHECK_THROWS_AS(dual_description_direct(p, 3), ResourceCapError);
}
