#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "birk/polytope.hpp"

namespace birk {

struct OrbitRecord {
    std::vector<int32_t> key; // canonical incidence set, sorted
    Vec normal;               // representative facet, reconstructed from key
    QuadExt rhs;
    Integer stabilizer_order;
    Integer orbit_size;
    int rank_of_a = 0;
    bool processed = false;

    int64_t incidence_count() const { return static_cast<int64_t>(key.size()); }
};

struct DbMetadata {
    int version = 1;
    std::string group_name;
    int field_d = 5;
    int mat_dim = 0;
    int ambient_dim = 0;
    int full_dim = 0;
    int64_t vertex_count = 0;
    Integer sym_order = 1;
    Integer sym_kernel = 1;
    bool use_transpose = false;
    uint64_t seed = 0;
    int recursion_threshold = 0; // 0 = auto
    bool complete = false;
};

struct Report {
    size_t orbit_count = 0;
    Integer total_facets = 0;
    std::map<int64_t, int> incidence_hist;
    std::map<Integer, int> stabilizer_hist;
    std::map<int, int> rank_hist;
};

/**
 * Deduplicated facet orbits keyed by canonical incidence set, ordered by
 * (incidence size, key). Representatives, stabilizer orders and orbit sizes
 * are pure functions of the key, so the serialized database is independent
 * of discovery order, worker count and resume points.
 */
class OrbitDatabase {
public:
    struct KeyLess {
        bool operator()(const std::vector<int32_t>& a, const std::vector<int32_t>& b) const {
            if (a.size() != b.size())
                return a.size() < b.size();
            return a < b;
        }
    };
    using RecordMap = std::map<std::vector<int32_t>, OrbitRecord, KeyLess>;

    DbMetadata meta;

    // Canonicalizes the facet's incidence and inserts a new unprocessed
    // record (computing representative, stabilizer order, orbit size and
    // rank on first sight). Returns the record and whether it was new.
    std::pair<const OrbitRecord*, bool> insert_or_find(const Facet& f, const SymmetryGroup& sym,
                                                       const VPolytope& p);

    const OrbitRecord* find(const std::vector<int32_t>& key) const;
    void mark_processed(const std::vector<int32_t>& key);

    const RecordMap& records() const { return records_; }
    size_t orbit_count() const { return records_.size(); }
    size_t unprocessed_count() const;
    std::vector<std::vector<int32_t>> unprocessed_keys(size_t limit) const;
    Integer total_facets() const;
    Integer unprocessed_facet_total() const;

    Report report() const; // validates histogram sums against orbit_count

    // Versioned line-oriented text; written to a temporary file and renamed.
    void save(const std::string& path) const;
    static OrbitDatabase load(const std::string& path);

    // Structural invariants (orbit-stabilizer products, key sizes); throws
    // DataIntegrityError. Called by load; cheap enough for every use.
    void validate() const;

private:
    RecordMap records_;
};

std::string format_report_text(const Report& r);
std::string report_json_text(const Report& r);

} // namespace birk
