#include <doctest.h>

#include <algorithm>
#include <set>

#include "birk/permgroup.hpp"

using namespace birk;

namespace {

Perm cycle_perm(int n, std::vector<int32_t> cyc) {
    Perm p = Perm::identity(n);
    for (size_t i = 0; i < cyc.size(); ++i)
        p.im[cyc[i]] = cyc[(i + 1) % cyc.size()];
    return p;
}

// Exhaustive closure, the oracle for chain orders of small groups.
size_t brute_force_order(const std::vector<Perm>& gens, int n) {
    std::set<std::vector<int32_t>> seen;
    std::vector<Perm> queue{Perm::identity(n)};
    seen.insert(queue[0].im);
    for (size_t head = 0; head < queue.size(); ++head) {
        for (const Perm& g : gens) {
            Perm h = compose(g, queue[head]);
            if (seen.insert(h.im).second)
                queue.push_back(h);
        }
    }
    return seen.size();
}

} // namespace

TEST_CASE("perm basics") {
    Perm a = cycle_perm(5, {0, 1, 2});
    Perm b = cycle_perm(5, {2, 3});
    CHECK(compose(a, a.inverse()).is_identity());
    CHECK(compose(a, b).im != compose(b, a).im);
    CHECK(is_permutation(a));
    CHECK(apply_to_set(a, std::vector<int32_t>{0, 2, 4}) == std::vector<int32_t>{0, 1, 4});
}

TEST_CASE("stabilizer chain order matches brute force on small groups") {
    struct Case {
        int degree;
        std::vector<Perm> gens;
    };
    std::vector<Case> cases;
    cases.push_back({6, {cycle_perm(6, {0, 1}), cycle_perm(6, {0, 1, 2, 3, 4, 5})}}); // S6
    cases.push_back({8, {cycle_perm(8, {0, 1, 2, 3, 4, 5, 6, 7}), [] {
                             Perm p = Perm::identity(8); // dihedral flip
                             for (int i = 0; i < 8; ++i)
                                 p.im[i] = (8 - i) % 8;
                             return p;
                         }()}});                                                      // D8
    cases.push_back({7, {cycle_perm(7, {0, 1, 2, 3, 4, 5, 6})}});                     // C7
    Perm swap_blocks = Perm::identity(6); // (0 3)(1 4)(2 5)
    for (int i = 0; i < 3; ++i) {
        swap_blocks.im[i] = i + 3;
        swap_blocks.im[i + 3] = i;
    }
    cases.push_back({6, {cycle_perm(6, {0, 1, 2}), cycle_perm(6, {3, 4, 5}), swap_blocks}});

    for (const auto& c : cases) {
        Bsgs b = Bsgs::deterministic(c.gens, c.degree);
        CHECK(b.order() == brute_force_order(c.gens, c.degree));
    }
}

TEST_CASE("randomized chain with known order agrees with the deterministic one") {
    std::vector<Perm> gens = {cycle_perm(10, {0, 1}), cycle_perm(10, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9})};
    Bsgs det = Bsgs::deterministic(gens, 10);
    Bsgs rnd = Bsgs::with_known_order(gens, 10, det.order(), {}, 42);
    CHECK(rnd.order() == det.order());
    for (uint64_t s = 0; s < 20; ++s) {
        SymmetryGroup g(gens, 10, 1, det.order(), 7);
        Perm x = g.random_element(s);
        CHECK(det.contains(x));
        CHECK(rnd.contains(x));
    }
    CHECK_FALSE(det.contains(Perm::identity(9))); // degree mismatch
}

TEST_CASE("membership") {
    std::vector<Perm> gens = {cycle_perm(6, {0, 1, 2}), cycle_perm(6, {3, 4, 5})};
    Bsgs b = Bsgs::deterministic(gens, 6);
    CHECK(b.order() == 9);
    CHECK(b.contains(compose(gens[0], gens[1])));
    CHECK_FALSE(b.contains(cycle_perm(6, {0, 1})));
}

TEST_CASE("canonical image is minimal, invariant and idempotent") {
    // S7 acting naturally.
    std::vector<Perm> gens = {cycle_perm(7, {0, 1}), cycle_perm(7, {0, 1, 2, 3, 4, 5, 6})};
    SymmetryGroup g(gens, 7);

    std::vector<int32_t> s = {2, 5, 6};
    auto canon = g.canonical_image(s);
    CHECK(canon == std::vector<int32_t>{0, 1, 2}); // symmetric group: any 3-set maps to {0,1,2}
    CHECK(g.canonical_image(canon) == canon);

    // A much less transitive group: orbit expansion gives the exact minimum.
    std::vector<Perm> dge = {cycle_perm(9, {0, 1, 2, 3, 4, 5, 6, 7, 8}), [] {
                                 Perm p = Perm::identity(9);
                                 for (int i = 0; i < 9; ++i)
                                     p.im[i] = (9 - i) % 9;
                                 return p;
                             }()};
    SymmetryGroup d9(dge, 9);
    for (uint64_t trial = 0; trial < 60; ++trial) {
        std::vector<int32_t> sub;
        for (int32_t x = 0; x < 9; ++x)
            if ((trial * 2654435761u + x * 40503u) % 3 == 0)
                sub.push_back(x);
        if (sub.empty())
            continue;
        auto c = d9.canonical_image(sub);
        auto orbit = d9.set_orbit(sub, 100000);
        auto mn = *std::min_element(orbit.begin(), orbit.end());
        CHECK(c == mn);
        for (uint64_t es = 0; es < 5; ++es) {
            Perm sigma = d9.random_element(trial * 17 + es);
            CHECK(d9.canonical_image(apply_to_set(sigma, sub)) == c);
        }
        CHECK(d9.canonical_image(c) == c);
    }
}

TEST_CASE("setwise stabilizer matches exhaustive counting") {
    // D9 and a 9-point intransitive group.
    std::vector<Perm> dge = {cycle_perm(9, {0, 1, 2, 3, 4, 5, 6, 7, 8}), [] {
                                 Perm p = Perm::identity(9);
                                 for (int i = 0; i < 9; ++i)
                                     p.im[i] = (9 - i) % 9;
                                 return p;
                             }()};
    SymmetryGroup d9(dge, 9);

    auto brute_stab = [](const std::vector<Perm>& gens, int n, std::vector<int32_t> s) {
        std::sort(s.begin(), s.end());
        std::set<std::vector<int32_t>> seen;
        std::vector<Perm> queue{Perm::identity(n)};
        seen.insert(queue[0].im);
        size_t count = 0;
        for (size_t head = 0; head < queue.size(); ++head) {
            if (apply_to_set(queue[head], s) == s)
                ++count;
            for (const Perm& g : gens) {
                Perm h = compose(g, queue[head]);
                if (seen.insert(h.im).second)
                    queue.push_back(h);
            }
        }
        return count;
    };

    std::vector<std::vector<int32_t>> subsets = {
        {0}, {0, 1}, {0, 3, 6}, {1, 2, 7, 8}, {0, 1, 2, 3, 4}, {2, 4, 6, 8}};
    for (const auto& s : subsets) {
        CHECK(d9.stabilizer_order(s) == brute_stab(dge, 9, s));
        CHECK(d9.orbit_size(s) == d9.set_orbit(s, 1000000).size());
    }

    // Full and empty sets stabilize everything.
    std::vector<int32_t> all(9);
    for (int32_t i = 0; i < 9; ++i)
        all[i] = i;
    CHECK(d9.stabilizer_order(all) == d9.order());
    CHECK(d9.stabilizer_order(std::vector<int32_t>{}) == d9.order());
}

TEST_CASE("singleton canonical image in a transitive action is the base point") {
    std::vector<Perm> gens = {cycle_perm(8, {0, 1, 2, 3, 4, 5, 6, 7})};
    SymmetryGroup c8(gens, 8);
    for (int32_t v = 0; v < 8; ++v)
        CHECK(c8.canonical_image(std::vector<int32_t>{v}) == std::vector<int32_t>{0});
}

TEST_CASE("kernel order scales the reported orders") {
    // C4 with a declared kernel of 3: order and stabilizers scale by 3.
    std::vector<Perm> gens = {cycle_perm(4, {0, 1, 2, 3})};
    SymmetryGroup g(gens, 4, 3);
    CHECK(g.image_order() == 4);
    CHECK(g.order() == 12);
    CHECK(g.stabilizer_order(std::vector<int32_t>{0}) == 3);
    CHECK(g.orbit_size(std::vector<int32_t>{0}) == 4);
}
