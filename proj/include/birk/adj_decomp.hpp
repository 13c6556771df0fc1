#pragma once

#include <chrono>
#include <functional>

#include "birk/dual_desc.hpp"
#include "birk/orbit_db.hpp"

namespace birk {

// Fixed default seed so reproduction runs match shipped golden outputs.
inline constexpr uint64_t kDefaultSeed = 1729;

struct EnumerationConfig {
    // Incidence size above which ridge enumeration recurses with the facet
    // stabilizer instead of calling the direct method. 0 means automatic
    // (4 * full_dim); explicit values must be >= full_dim.
    int recursion_threshold = 0;
    bool early_termination = true;
    int parallel_workers = 1;
    uint64_t seed = kDefaultSeed;
    std::chrono::seconds checkpoint_interval{300};
    std::string checkpoint_path; // empty = no periodic checkpoints
    uint64_t max_steps = 0;      // cap on processed orbit representatives, 0 = none
    size_t dd_ray_cap = 2000000;
    int max_depth = 16;

    int threshold_for(int full_dim) const {
        return recursion_threshold > 0 ? recursion_threshold : 4 * full_dim;
    }
};

enum class EnumStatus { complete, stopped_at_cap, interrupted };

struct RidgeList {
    std::vector<std::vector<int32_t>> ridges; // global incidence sets
    bool reps_only = false;                   // true: one per stabilizer orbit
    Integer total = 0;                        // ridge count with orbits expanded
};

// Facets of conv(incident vertices) inside the facet hyperplane. The direct
// form returns every ridge; the stabilizer form recurses above the threshold
// and then returns only orbit representatives (flipping a representative per
// stabilizer orbit reaches every neighbor orbit).
RidgeList ridges_of_facet(const VPolytope& p, const Facet& f, const EnumerationConfig& cfg,
                          int depth = 0);
RidgeList ridges_of_facet(const VPolytope& p, const Facet& f,
                          const std::vector<Perm>& facet_stabilizer,
                          const EnumerationConfig& cfg, int depth = 0);

// The unique other facet containing the ridge, by exact minimal-ratio
// rotation of the supporting hyperplane.
Facet flip_ridge(const VPolytope& p, const Facet& f, std::span<const int32_t> ridge);

// Balinski-type bound: once the unprocessed orbits hold fewer than full_dim
// facets in total, no undiscovered orbit can exist.
bool early_termination_check(const OrbitDatabase& db, int full_dim);

using StopFlag = std::function<bool()>;

// Adjacency decomposition over the prepared database (fresh or loaded
// checkpoint): processes unprocessed representatives to completion, a step
// cap, an external stop, or the early-termination proof. The final database
// contents are a pure function of the inputs, independent of worker count
// and resume points.
EnumStatus run_adjacency_decomposition(const VPolytope& p, const SymmetryGroup& sym,
                                       const EnumerationConfig& cfg, OrbitDatabase& db,
                                       const StopFlag& stop = {});

// Direct method wrapped into the same database shape (orbits grouped by
// canonical incidence, everything processed, completeness asserted).
void run_direct_enumeration(const VPolytope& p, const SymmetryGroup& sym,
                            const EnumerationConfig& cfg, OrbitDatabase& db);

// Expand every orbit into plain incidence sets (oracle-scale polytopes).
std::vector<std::vector<int32_t>> expand_all_orbits(const OrbitDatabase& db,
                                                    const SymmetryGroup& sym, size_t cap);

} // namespace birk
