#include <doctest.h>

#include <random>

#include "birk/simplex.hpp"

using namespace birk;

namespace {

std::mt19937_64 rng(0x51417);

Vec unit(int n, int i, int sign = 1) {
    Vec v(n);
    v[i] = QuadExt(sign);
    return v;
}

} // namespace

TEST_CASE("bounded one-dimensional maximization") {
    std::vector<LpConstraint> cs = {{unit(1, 0), QuadExt(1)}, {unit(1, 0, -1), QuadExt(0)}};
    LpResult r = solve_lp(cs, unit(1, 0), true);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.optimum == QuadExt(1));
    CHECK(r.witness[0] == QuadExt(1));
}

TEST_CASE("missing upper bound is unbounded") {
    std::vector<LpConstraint> cs = {{unit(1, 0, -1), QuadExt(0)}};
    LpResult r = solve_lp(cs, unit(1, 0), true);
    REQUIRE(r.status == LpStatus::unbounded);
    // The ray improves the objective and stays feasible.
    CHECK(dot(r.witness, unit(1, 0)).sign() > 0);
    QuadExt viol = dot(cs[0].coeffs, r.witness);
    CHECK(viol.sign() <= 0);
}

TEST_CASE("contradictory bounds are infeasible") {
    std::vector<LpConstraint> cs = {{unit(1, 0), QuadExt(-1)}, {unit(1, 0, -1), QuadExt(0)}};
    LpResult r = solve_lp(cs, unit(1, 0), true);
    CHECK(r.status == LpStatus::infeasible);
}

TEST_CASE("cross-polytope optimum matches the vertex enumeration oracle") {
    // Facet description of conv{+-e_i} in R^4: all sign patterns s with
    // <s, x> <= 1.
    const int d = 4;
    std::vector<LpConstraint> cs;
    for (int mask = 0; mask < (1 << d); ++mask) {
        Vec c(d);
        for (int i = 0; i < d; ++i)
            c[i] = QuadExt((mask >> i) & 1 ? 1 : -1);
        cs.push_back({std::move(c), QuadExt(1)});
    }
    std::uniform_int_distribution<long> num(-20, 20);
    for (int trial = 0; trial < 25; ++trial) {
        Vec obj(d);
        for (int i = 0; i < d; ++i) {
            Rational q(num(rng), 1 + static_cast<long>(rng() % 7));
            q.canonicalize();
            obj[i] = QuadExt(q);
        }
        LpResult r = solve_lp(cs, obj, true);
        REQUIRE(r.status == LpStatus::optimal);
        // Oracle: maximum over the 8 vertices +-e_i.
        QuadExt best;
        bool first = true;
        for (int i = 0; i < d; ++i)
            for (int s : {1, -1}) {
                QuadExt v = dot(obj, unit(d, i, s));
                if (first || compare(v, best) > 0) {
                    best = v;
                    first = false;
                }
            }
        CHECK(r.optimum == best);
        // Witness feasibility, exactly.
        for (const auto& c : cs)
            CHECK((c.rhs - dot(c.coeffs, r.witness)).sign() >= 0);
        CHECK(dot(obj, r.witness) == r.optimum);
    }
}

TEST_CASE("negative right-hand sides go through phase one") {
    // x >= 2 written as -x <= -2, maximize -x: optimum -2.
    std::vector<LpConstraint> cs = {{unit(1, 0, -1), QuadExt(-2)}, {unit(1, 0), QuadExt(10)}};
    LpResult r = solve_lp(cs, unit(1, 0, -1), true);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.optimum == QuadExt(-2));
    CHECK(r.witness[0] == QuadExt(2));
}

TEST_CASE("random boxed LPs agree with an exhaustive vertex oracle") {
    // Boxed planar instances: every feasible region is a bounded pointed
    // polygon, so the optimum is the best objective value over the feasible
    // intersections of constraint pairs.
    std::uniform_int_distribution<long> coef(-3, 3);
    std::uniform_int_distribution<long> rhs_d(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<LpConstraint> cs;
        for (int i = 0; i < 4; ++i) {
            Vec c = {QuadExt(coef(rng)), QuadExt(coef(rng))};
            cs.push_back({std::move(c), QuadExt(rhs_d(rng))});
        }
        for (int i = 0; i < 2; ++i)
            for (int s : {1, -1})
                cs.push_back({unit(2, i, s), QuadExt(5)});
        Vec obj = {QuadExt(coef(rng)), QuadExt(coef(rng))};

        LpResult r = solve_lp(cs, obj, true);
        REQUIRE(r.status != LpStatus::unbounded);

        bool any_feasible = false;
        QuadExt best;
        for (size_t i = 0; i < cs.size(); ++i)
            for (size_t j = i + 1; j < cs.size(); ++j) {
                Mat m(2, 2);
                for (int k = 0; k < 2; ++k) {
                    m.at(0, k) = cs[i].coeffs[k];
                    m.at(1, k) = cs[j].coeffs[k];
                }
                SolveResult s = solve(m, Vec{cs[i].rhs, cs[j].rhs});
                if (!s.consistent || rank(m) < 2)
                    continue;
                bool feasible = true;
                for (const auto& c : cs)
                    if ((c.rhs - dot(c.coeffs, s.solution)).sign() < 0) {
                        feasible = false;
                        break;
                    }
                if (!feasible)
                    continue;
                QuadExt v = dot(obj, s.solution);
                if (!any_feasible || compare(v, best) > 0)
                    best = v;
                any_feasible = true;
            }

        if (!any_feasible) {
            CHECK(r.status == LpStatus::infeasible);
            continue;
        }
        REQUIRE(r.status == LpStatus::optimal);
        CHECK(r.optimum == best);
        for (const auto& c : cs)
            CHECK((c.rhs - dot(c.coeffs, r.witness)).sign() >= 0);
        CHECK(dot(obj, r.witness) == r.optimum);
    }
}

TEST_CASE("minimization sense") {
    std::vector<LpConstraint> cs = {{unit(2, 0), QuadExt(3)},
                                    {unit(2, 0, -1), QuadExt(1)},
                                    {unit(2, 1), QuadExt(2)},
                                    {unit(2, 1, -1), QuadExt(0)}};
    Vec obj = {QuadExt(1), QuadExt(-2)};
    LpResult r = solve_lp(cs, obj, false);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.optimum == QuadExt(-5)); // x = -1, y = 2
}
