#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "birk/adj_decomp.hpp"

using namespace birk;

namespace {

struct Fixture {
    MatGroup group = coxeter_group("A2");
    VPolytope poly = build_vpolytope(group);
    SymmetryGroup sym = symmetry_action(group, true);

    OrbitDatabase db() const {
        OrbitDatabase d;
        d.meta.group_name = "A2";
        d.meta.field_d = 5;
        d.meta.mat_dim = 3;
        d.meta.ambient_dim = poly.ambient_dim;
        d.meta.full_dim = poly.full_dim;
        d.meta.vertex_count = static_cast<int64_t>(group.order());
        d.meta.sym_order = sym.order();
        d.meta.sym_kernel = sym.kernel_order();
        d.meta.seed = kDefaultSeed;
        return d;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f);
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("insert_or_find deduplicates orbit members") {
    Fixture fx;
    OrbitDatabase db = fx.db();
    Facet f = initial_facet(fx.poly, 5);

    auto [rec1, fresh1] = db.insert_or_find(f, fx.sym, fx.poly);
    CHECK(fresh1);
    auto [rec2, fresh2] = db.insert_or_find(f, fx.sym, fx.poly);
    CHECK(!fresh2);
    CHECK(rec1 == rec2);

    // Any translate of the facet lands in the same record.
    for (uint64_t s = 0; s < 25; ++s) {
        Perm sigma = fx.sym.random_element(s);
        Facet g = facet_from_incidence(fx.poly, apply_to_set(sigma, f.incidence));
        auto [rec3, fresh3] = db.insert_or_find(g, fx.sym, fx.poly);
        CHECK(!fresh3);
        CHECK(rec3 == rec1);
    }
    CHECK(db.orbit_count() == 1);

    // Orbit-stabilizer bookkeeping.
    CHECK(rec1->stabilizer_order * rec1->orbit_size == fx.sym.order());
}

TEST_CASE("save and load round trip, byte-idempotent") {
    Fixture fx;
    OrbitDatabase db = fx.db();
    EnumerationConfig cfg;
    run_direct_enumeration(fx.poly, fx.sym, cfg, db);

    db.save("t_orbitdb_a.db");
    OrbitDatabase loaded = OrbitDatabase::load("t_orbitdb_a.db");
    CHECK(loaded.meta.group_name == db.meta.group_name);
    CHECK(loaded.meta.complete == db.meta.complete);
    CHECK(loaded.orbit_count() == db.orbit_count());
    CHECK(loaded.total_facets() == db.total_facets());
    loaded.save("t_orbitdb_b.db");
    CHECK(slurp("t_orbitdb_a.db") == slurp("t_orbitdb_b.db"));
    std::remove("t_orbitdb_a.db");
    std::remove("t_orbitdb_b.db");
}

TEST_CASE("empty database round trip") {
    Fixture fx;
    OrbitDatabase db = fx.db();
    db.save("t_orbitdb_empty.db");
    OrbitDatabase loaded = OrbitDatabase::load("t_orbitdb_empty.db");
    CHECK(loaded.orbit_count() == 0);
    CHECK(loaded.meta.sym_order == db.meta.sym_order);
    CHECK(loaded.total_facets() == 0);
    Report rep = loaded.report();
    CHECK(rep.orbit_count == 0);
    CHECK(rep.total_facets == 0);
    CHECK(rep.incidence_hist.empty());
    std::remove("t_orbitdb_empty.db");
}

TEST_CASE("tampered orbit size is rejected on load") {
    Fixture fx;
    OrbitDatabase db = fx.db();
    EnumerationConfig cfg;
    run_direct_enumeration(fx.poly, fx.sym, cfg, db);
    db.save("t_orbitdb_tamper.db");

    std::string text = slurp("t_orbitdb_tamper.db");
    size_t pos = text.find("record 4 ");
    REQUIRE(pos != std::string::npos);
    // record <inc> <stab> <orbit> ... : bump the orbit size field
    size_t stab_pos = text.find(' ', pos + 7);
    size_t orbit_pos = text.find(' ', stab_pos + 1);
    text.replace(orbit_pos + 1, 1, "7");
    {
        std::ofstream f("t_orbitdb_tamper.db", std::ios::binary | std::ios::trunc);
        f << text;
    }
    CHECK_THROWS_AS(OrbitDatabase::load("t_orbitdb_tamper.db"), DataIntegrityError);
    std::remove("t_orbitdb_tamper.db");
}

TEST_CASE("truncated files are rejected") {
    Fixture fx;
    OrbitDatabase db = fx.db();
    db.save("t_orbitdb_trunc.db");
    std::string text = slurp("t_orbitdb_trunc.db");
    {
        std::ofstream f("t_orbitdb_trunc.db", std::ios::binary | std::ios::trunc);
        f << text.substr(0, text.size() - 5);
    }
    CHECK_THROWS(OrbitDatabase::load("t_orbitdb_trunc.db"));
    std::remove("t_orbitdb_trunc.db");
}

TEST_CASE("report histograms") {
    Fixture fx;
    OrbitDatabase db = fx.db();
    EnumerationConfig cfg;
    run_direct_enumeration(fx.poly, fx.sym, cfg, db);
    Report rep = db.report();
    CHECK(rep.orbit_count == 1);
    CHECK(rep.total_facets == 9);
    CHECK(rep.incidence_hist == std::map<int64_t, int>{{4, 1}});
    REQUIRE(rep.stabilizer_hist.size() == 1);
    CHECK(rep.stabilizer_hist.begin()->first * Integer(9) == fx.sym.order());

    std::string text = format_report_text(rep);
    CHECK(text.find("orbits: 1") != std::string::npos);
    CHECK(text.find("total facets: 9") != std::string::npos);
    std::string json = report_json_text(rep);
    CHECK(json.find("\"total_facets\": \"9\"") != std::string::npos);
}

TEST_CASE("records are ordered by incidence size then key") {
    Fixture fx;
    OrbitDatabase db = fx.db();
    // Insert in scrambled order through different facets of different sizes.
    VPolytope sq = make_vpolytope({{QuadExt(-1), QuadExt(-1)},
                                   {QuadExt(1), QuadExt(-1)},
                                   {QuadExt(1), QuadExt(1)},
                                   {QuadExt(-1), QuadExt(1)}});
    SymmetryGroup trivial(std::vector<Perm>{}, 4);
    OrbitDatabase db2;
    db2.meta.full_dim = 2;
    db2.meta.vertex_count = 4;
    db2.meta.sym_order = 1;
    auto facets = dual_description_direct(sq);
    for (auto it = facets.rbegin(); it != facets.rend(); ++it)
        db2.insert_or_find(*it, trivial, sq);
    std::vector<std::vector<int32_t>> keys;
    for (const auto& [k, r] : db2.records())
        keys.push_back(k);
    CHECK(std::is_sorted(keys.begin(), keys.end(), OrbitDatabase::KeyLess{}));
}
