#include <doctest.h>

#include <cstdio>
#include <set>

#include "birk/adj_decomp.hpp"

using namespace birk;

namespace {

struct Instance {
    MatGroup group;
    VPolytope poly;
    SymmetryGroup sym;

    explicit Instance(const std::string& name)
        : group(coxeter_group(name)), poly(build_vpolytope(group)),
          sym(symmetry_action(group, group.closed_under_transpose())) {}
};

OrbitDatabase fresh_db(const Instance& inst, const std::string& name) {
    OrbitDatabase db;
    db.meta.group_name = name;
    db.meta.field_d = QuadExt::context_d();
    db.meta.mat_dim = inst.group.dim;
    db.meta.ambient_dim = inst.poly.ambient_dim;
    db.meta.full_dim = inst.poly.full_dim;
    db.meta.vertex_count = static_cast<int64_t>(inst.group.order());
    db.meta.sym_order = inst.sym.order();
    db.meta.sym_kernel = inst.sym.kernel_order();
    db.meta.seed = kDefaultSeed;
    return db;
}

void check_cross_method(const std::string& name) {
    CAPTURE(name);
    Instance inst(name);
    EnumerationConfig cfg;

    OrbitDatabase direct = fresh_db(inst, name);
    run_direct_enumeration(inst.poly, inst.sym, cfg, direct);

    OrbitDatabase adj = fresh_db(inst, name);
    EnumStatus st = run_adjacency_decomposition(inst.poly, inst.sym, cfg, adj);
    REQUIRE(st == EnumStatus::complete);

    // Same orbits, record for record.
    REQUIRE(direct.orbit_count() == adj.orbit_count());
    auto it_a = adj.records().begin();
    for (const auto& [key, rec] : direct.records()) {
        REQUIRE(it_a->first == key);
        CHECK(it_a->second.normal == rec.normal);
        CHECK(it_a->second.rhs == rec.rhs);
        CHECK(it_a->second.stabilizer_order == rec.stabilizer_order);
        CHECK(it_a->second.orbit_size == rec.orbit_size);
        ++it_a;
    }

    // Expanded facet sets coincide with the direct facet list.
    auto facets = dual_description_direct(inst.poly, cfg.dd_ray_cap);
    std::set<std::vector<int32_t>> direct_set;
    for (const Facet& f : facets)
        direct_set.insert(f.incidence);
    auto expanded = expand_all_orbits(adj, inst.sym, 1u << 22);
    std::set<std::vector<int32_t>> adj_set(expanded.begin(), expanded.end());
    CHECK(direct_set == adj_set);
    CHECK(adj.total_facets() == Integer(static_cast<unsigned long>(facets.size())));
}

VPolytope cube3() {
    std::vector<Vec> pts;
    for (int m = 0; m < 8; ++m)
        pts.push_back({QuadExt(m & 1 ? 1 : -1), QuadExt(m & 2 ? 1 : -1), QuadExt(m & 4 ? 1 : -1)});
    return make_vpolytope(std::move(pts));
}

} // namespace

TEST_CASE("ridges of a cube facet form its four edges") {
    VPolytope p = cube3();
    EnumerationConfig cfg;
    Facet f = initial_facet(p, 3);
    REQUIRE(f.incidence.size() == 4);
    RidgeList r = ridges_of_facet(p, f, cfg);
    CHECK(r.ridges.size() == 4);
    CHECK(r.total == 4);
    for (const auto& ridge : r.ridges)
        CHECK(ridge.size() == 2);
}

TEST_CASE("ridges of a simplex facet in R^3") {
    VPolytope p = make_vpolytope({{QuadExt(0), QuadExt(0), QuadExt(0)},
                                  {QuadExt(1), QuadExt(0), QuadExt(0)},
                                  {QuadExt(0), QuadExt(1), QuadExt(0)},
                                  {QuadExt(0), QuadExt(0), QuadExt(1)}});
    EnumerationConfig cfg;
    Facet f = initial_facet(p, 3);
    REQUIRE(f.incidence.size() == 3);
    RidgeList r = ridges_of_facet(p, f, cfg);
    CHECK(r.ridges.size() == 3); // d ridges of a simplex facet
}

TEST_CASE("flip across a square edge reaches the adjacent edge") {
    std::vector<Vec> pts = {{QuadExt(-1), QuadExt(-1)},
                            {QuadExt(1), QuadExt(-1)},
                            {QuadExt(1), QuadExt(1)},
                            {QuadExt(-1), QuadExt(1)}};
    VPolytope p = make_vpolytope(std::move(pts));
    Facet bottom = facet_from_incidence(p, std::vector<int32_t>{0, 1});
    Facet next = flip_ridge(p, bottom, std::vector<int32_t>{1});
    CHECK(next.incidence == std::vector<int32_t>{1, 2});
}

TEST_CASE("flip is an involution across a shared ridge") {
    Instance inst("I2_4");
    EnumerationConfig cfg;
    Facet f = initial_facet(inst.poly, 11);
    RidgeList ridges = ridges_of_facet(inst.poly, f, cfg);
    REQUIRE(!ridges.ridges.empty());
    for (const auto& ridge : ridges.ridges) {
        Facet g = flip_ridge(inst.poly, f, ridge);
        Facet back = flip_ridge(inst.poly, g, ridge);
        CHECK(back.incidence == f.incidence);
        CHECK(back.normal == f.normal);
    }
}

TEST_CASE("early termination bound") {
    // Square with no symmetry: four orbits of size 1, full_dim 2.
    VPolytope p = cube3();
    std::vector<Vec> sq = {{QuadExt(-1), QuadExt(-1)},
                           {QuadExt(1), QuadExt(-1)},
                           {QuadExt(1), QuadExt(1)},
                           {QuadExt(-1), QuadExt(1)}};
    VPolytope square = make_vpolytope(std::move(sq));
    SymmetryGroup trivial(std::vector<Perm>{}, 4);
    OrbitDatabase db;
    db.meta.full_dim = 2;
    db.meta.vertex_count = 4;
    db.meta.sym_order = 1;
    for (const Facet& f : dual_description_direct(square))
        db.insert_or_find(f, trivial, square);
    REQUIRE(db.orbit_count() == 4);

    CHECK(!early_termination_check(db, 2)); // nothing processed yet
    auto keys = db.unprocessed_keys(4);
    db.mark_processed(keys[0]);
    CHECK(!early_termination_check(db, 2)); // 3 unprocessed facets >= 2
    db.mark_processed(keys[1]);
    CHECK(!early_termination_check(db, 2)); // exactly full_dim left: conservative
    db.mark_processed(keys[2]);
    CHECK(early_termination_check(db, 2)); // 1 < 2
    db.mark_processed(keys[3]);
    CHECK(early_termination_check(db, 2)); // all processed
}

TEST_CASE("cross-method equivalence on conv(S3)") { check_cross_method("A2"); }
TEST_CASE("cross-method equivalence on conv(S4)") { check_cross_method("A3"); }
TEST_CASE("cross-method equivalence on conv(I2_3))") { check_cross_method("I2_3"); }
TEST_CASE("cross-method equivalence on conv(I2_4))") { check_cross_method("I2_4"); }
TEST_CASE("cross-method equivalence on conv(I2_5))") { check_cross_method("I2_5"); }
TEST_CASE("cross-method equivalence on conv(I2_6))") { check_cross_method("I2_6"); }
TEST_CASE("cross-method equivalence on conv(H3)") { check_cross_method("H3"); }

TEST_CASE("conv(S3) is a single orbit of 9 facets") {
    Instance inst("A2");
    OrbitDatabase db = fresh_db(inst, "A2");
    EnumerationConfig cfg;
    run_adjacency_decomposition(inst.poly, inst.sym, cfg, db);
    REQUIRE(db.orbit_count() == 1);
    CHECK(db.records().begin()->second.orbit_size == 9);
    CHECK(db.records().begin()->second.key.size() == 4);
}

TEST_CASE("H3 is one orbit of 240 rank-1 facets") {
    Instance inst("H3");
    OrbitDatabase db = fresh_db(inst, "H3");
    EnumerationConfig cfg;
    run_adjacency_decomposition(inst.poly, inst.sym, cfg, db);
    REQUIRE(db.orbit_count() == 1);
    const OrbitRecord& rec = db.records().begin()->second;
    CHECK(rec.key.size() == 30);
    CHECK(rec.orbit_size == 240);
    CHECK(rec.rank_of_a == 1);
}

TEST_CASE("D4 has rank-3 facet orbits") {
    // The smallest group where facets beyond the rank-1 family appear.
    Instance inst("D4");
    OrbitDatabase db = fresh_db(inst, "D4");
    EnumerationConfig cfg;
    run_adjacency_decomposition(inst.poly, inst.sym, cfg, db);
    REQUIRE(db.orbit_count() == 4);
    Report rep = db.report();
    CHECK(rep.rank_hist == std::map<int, int>{{1, 3}, {3, 1}});
    CHECK(db.total_facets() == 9408);
}

TEST_CASE("F4 golden run: orbit data of the two facet classes") {
    Instance inst("F4");
    OrbitDatabase db = fresh_db(inst, "F4");
    EnumerationConfig cfg;
    EnumStatus st = run_adjacency_decomposition(inst.poly, inst.sym, cfg, db);
    REQUIRE(st == EnumStatus::complete);
    REQUIRE(db.orbit_count() == 2);
    // Orbit of the rank-1 representatives: incidence 288, stabilizer 4608,
    // 576 facets. Second orbit: incidence 36, stabilizer 48, 55296 facets.
    auto it = db.records().begin();
    CHECK(it->first.size() == 36);
    CHECK(it->second.stabilizer_order == 48);
    CHECK(it->second.orbit_size == 55296);
    CHECK(it->second.rank_of_a == 3);
    ++it;
    CHECK(it->first.size() == 288);
    CHECK(it->second.stabilizer_order == 4608);
    CHECK(it->second.orbit_size == 576);
    CHECK(it->second.rank_of_a == 1);
    CHECK(db.total_facets() == 55872);
    Report rep = db.report();
    CHECK(rep.incidence_hist == std::map<int64_t, int>{{36, 1}, {288, 1}});
    CHECK(rep.rank_hist == std::map<int, int>{{1, 1}, {3, 1}});

    // The incidence-288 orbit expands to exactly 576 sets, all with the same
    // canonical image.
    const auto& key288 = db.records().rbegin()->first;
    REQUIRE(key288.size() == 288);
    auto orbit = inst.sym.set_orbit(key288, 1000);
    CHECK(orbit.size() == 576);
    for (size_t i = 0; i < orbit.size(); i += 64)
        CHECK(inst.sym.canonical_image(orbit[i]) == key288);
}

TEST_CASE("ridge counts agree between direct and recursive modes on an F4 facet") {
    Instance inst("F4");
    auto q = [](long n) { return QuadExt(Rational(n, 4)); };
    Mat a2 = Mat::from_rows({{q(1), q(0), q(1), q(0)},
                             {q(0), q(1), q(0), q(-1)},
                             {q(0), q(1), q(0), q(1)},
                             {q(1), q(0), q(1), q(-2)}});
    VerifyReport vr = verify_inequality(inst.group, inst.poly, a2, QuadExt(1));
    Facet f = facet_from_incidence(inst.poly, vr.incidence);
    REQUIRE(f.incidence.size() == 36);

    EnumerationConfig cfg; // default threshold: the 36-facet goes direct
    RidgeList dir = ridges_of_facet(inst.poly, f, cfg, 0);
    CHECK(!dir.reps_only);
    CHECK(dir.ridges.size() == 97);

    EnumerationConfig forced = cfg;
    forced.recursion_threshold = 16; // force the recursive path
    std::vector<Perm> stab = inst.sym.stabilizer_generators(f.incidence);
    RidgeList rec = ridges_of_facet(inst.poly, f, stab, forced, 0);
    CHECK(rec.reps_only);
    CHECK(rec.total == 97);

    // Every representative is one of the direct ridges.
    std::set<std::vector<int32_t>> all(dir.ridges.begin(), dir.ridges.end());
    for (const auto& r : rec.ridges)
        CHECK(all.count(r) == 1);
}

TEST_CASE("determinism: workers and checkpoint/resume do not change the database") {
    Instance inst("D4");
    EnumerationConfig cfg;

    OrbitDatabase base = fresh_db(inst, "D4");
    run_adjacency_decomposition(inst.poly, inst.sym, cfg, base);
    base.save("d4_base.db");

    EnumerationConfig cfg3 = cfg;
    cfg3.parallel_workers = 3;
    OrbitDatabase par = fresh_db(inst, "D4");
    run_adjacency_decomposition(inst.poly, inst.sym, cfg3, par);
    par.save("d4_par.db");

    // Interrupt after one step, then resume the saved checkpoint.
    EnumerationConfig cfg_cap = cfg;
    cfg_cap.max_steps = 1;
    cfg_cap.checkpoint_path = "d4_ckpt.db";
    OrbitDatabase capped = fresh_db(inst, "D4");
    EnumStatus st = run_adjacency_decomposition(inst.poly, inst.sym, cfg_cap, capped);
    REQUIRE(st == EnumStatus::stopped_at_cap);
    OrbitDatabase resumed = OrbitDatabase::load("d4_ckpt.db");
    CHECK(!resumed.meta.complete);
    run_adjacency_decomposition(inst.poly, inst.sym, cfg, resumed);
    resumed.save("d4_resumed.db");

    auto slurp = [](const char* path) {
        FILE* f = std::fopen(path, "rb");
        REQUIRE(f);
        std::string s;
        char buf[4096];
        size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, f)) > 0)
            s.append(buf, n);
        std::fclose(f);
        return s;
    };
    std::string b = slurp("d4_base.db");
    CHECK(b == slurp("d4_par.db"));
    CHECK(b == slurp("d4_resumed.db"));
    std::remove("d4_base.db");
    std::remove("d4_par.db");
    std::remove("d4_ckpt.db");
    std::remove("d4_resumed.db");
}
