#include "birk/adj_decomp.hpp"

#include <algorithm>
#include <future>
#include <set>

#include "birk/error.hpp"

namespace birk {

namespace {

// Subpolytope of the vertices listed in s (order preserved, so local index k
// corresponds to global index s[k]).
VPolytope subpolytope(const VPolytope& p, std::span<const int32_t> s) {
    std::vector<Vec> pts;
    pts.reserve(s.size());
    for (int32_t i : s)
        pts.push_back(p.vertices[i]);
    return make_vpolytope(std::move(pts));
}

std::vector<int32_t> to_global(std::span<const int32_t> local, std::span<const int32_t> s) {
    std::vector<int32_t> out(local.size());
    for (size_t i = 0; i < local.size(); ++i)
        out[i] = s[local[i]];
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

RidgeList ridges_of_facet(const VPolytope& p, const Facet& f, const EnumerationConfig& cfg,
                          int depth) {
    const std::vector<int32_t>& s = f.incidence;
    VPolytope q = subpolytope(p, s);
    if (q.full_dim != p.full_dim - 1)
        throw InternalError("facet subpolytope has unexpected dimension");
    std::vector<Facet> sub = dual_description_direct(q, cfg.dd_ray_cap);
    RidgeList out;
    out.reps_only = false;
    out.total = static_cast<unsigned long>(sub.size());
    out.ridges.reserve(sub.size());
    for (const Facet& sf : sub)
        out.ridges.push_back(to_global(sf.incidence, s));
    std::sort(out.ridges.begin(), out.ridges.end());
    (void)depth;
    return out;
}

RidgeList ridges_of_facet(const VPolytope& p, const Facet& f,
                          const std::vector<Perm>& facet_stabilizer,
                          const EnumerationConfig& cfg, int depth) {
    const std::vector<int32_t>& s = f.incidence;
    const int threshold = cfg.threshold_for(p.full_dim);
    if (static_cast<int>(s.size()) <= threshold || depth >= cfg.max_depth ||
        facet_stabilizer.empty())
        return ridges_of_facet(p, f, cfg, depth);

    VPolytope q = subpolytope(p, s);
    if (q.full_dim != p.full_dim - 1)
        throw InternalError("facet subpolytope has unexpected dimension");

    // Restrict the stabilizer to the incident vertices.
    std::vector<int32_t> pos(p.vertex_count(), -1);
    for (size_t k = 0; k < s.size(); ++k)
        pos[s[k]] = static_cast<int32_t>(k);
    std::vector<Perm> sub_gens;
    for (const Perm& g : facet_stabilizer) {
        Perm sg;
        sg.im.resize(s.size());
        for (size_t k = 0; k < s.size(); ++k) {
            int32_t img = pos[g.im[s[k]]];
            if (img < 0)
                throw InternalError("stabilizer element does not preserve the facet");
            sg.im[k] = img;
        }
        if (!sg.is_identity())
            sub_gens.push_back(std::move(sg));
    }
    SymmetryGroup sub_sym(std::move(sub_gens), static_cast<int>(s.size()));

    EnumerationConfig sub_cfg = cfg;
    sub_cfg.parallel_workers = 1;
    sub_cfg.checkpoint_path.clear();
    sub_cfg.max_steps = 0;

    OrbitDatabase sub_db;
    sub_db.meta.group_name = "(facet subproblem)";
    sub_db.meta.field_d = QuadExt::context_d();
    sub_db.meta.ambient_dim = q.ambient_dim;
    sub_db.meta.full_dim = q.full_dim;
    sub_db.meta.vertex_count = q.vertex_count();
    sub_db.meta.sym_order = sub_sym.order();
    sub_db.meta.sym_kernel = sub_sym.kernel_order();
    sub_db.meta.seed = cfg.seed;
    EnumStatus st = run_adjacency_decomposition(q, sub_sym, sub_cfg, sub_db, {});
    if (st != EnumStatus::complete)
        throw InternalError("recursive ridge enumeration stopped early");

    RidgeList out;
    out.reps_only = true;
    for (const auto& [key, rec] : sub_db.records()) {
        out.ridges.push_back(to_global(key, s));
        out.total += rec.orbit_size;
    }
    std::sort(out.ridges.begin(), out.ridges.end());
    return out;
}

Facet flip_ridge(const VPolytope& p, const Facet& f, std::span<const int32_t> ridge) {
    const int d = p.full_dim;
    Mat rows(static_cast<int>(ridge.size()), d + 1);
    for (size_t r = 0; r < ridge.size(); ++r) {
        for (int c = 0; c < d; ++c)
            rows.at(static_cast<int>(r), c) = p.reduced[ridge[r]][c];
        rows.at(static_cast<int>(r), d) = QuadExt(-1);
    }
    std::vector<Vec> kb = kernel_basis(rows);
    if (kb.size() != 2)
        throw InternalError("ridge affine hull does not have codimension 2");

    // Pick a pencil direction independent of the facet functional.
    Vec w;
    QuadExt gamma;
    {
        bool found = false;
        for (const Vec& k : kb) {
            Mat two(2, d + 1);
            for (int c = 0; c < d; ++c) {
                two.at(0, c) = f.normal[c];
                two.at(1, c) = k[c];
            }
            two.at(0, d) = f.rhs;
            two.at(1, d) = k[d];
            if (rank(two) == 2) {
                w.assign(k.begin(), k.begin() + d);
                gamma = k[d];
                found = true;
                break;
            }
        }
        if (!found)
            throw InternalError("degenerate ridge pencil");
    }

    // Orient so g > 0 on the facet's vertices off the ridge.
    std::vector<int8_t> in_ridge(p.vertex_count(), 0);
    for (int32_t i : ridge)
        in_ridge[i] = 1;
    int orient = 0;
    for (int32_t i : f.incidence) {
        if (in_ridge[i])
            continue;
        orient = (gamma - dot(w, p.reduced[i])).sign();
        if (orient != 0)
            break;
    }
    if (orient == 0)
        throw InternalError("ridge is not a proper face of the facet");
    if (orient < 0) {
        for (QuadExt& x : w)
            x = -x;
        gamma = -gamma;
    }

    // Rotate away from the facet: the first vertex to bind defines the
    // neighbor. If nothing binds, the pencil direction itself supports.
    std::vector<int8_t> in_f(p.vertex_count(), 0);
    for (int32_t i : f.incidence)
        in_f[i] = 1;
    bool have_t = false;
    QuadExt t_best;
    for (int i = 0; i < p.vertex_count(); ++i) {
        if (in_f[i])
            continue;
        QuadExt g = gamma - dot(w, p.reduced[i]);
        if (g.sign() >= 0)
            continue;
        QuadExt slack = f.rhs - dot(f.normal, p.reduced[i]);
        QuadExt t = slack / -g;
        if (!have_t || compare(t, t_best) < 0) {
            t_best = t;
            have_t = true;
        }
    }

    Facet nb;
    if (!have_t) {
        nb.normal = std::move(w);
        nb.rhs = std::move(gamma);
    } else {
        nb.normal.resize(d);
        for (int c = 0; c < d; ++c)
            nb.normal[c] = f.normal[c] + t_best * w[c];
        nb.rhs = f.rhs + t_best * gamma;
    }
    normalize_facet(nb);
    nb.incidence = incidence_of(p, nb.normal, nb.rhs);
    if (affine_rank_of(p, nb.incidence) != d - 1)
        throw InternalError("ridge flip did not land on a facet");
    return nb;
}

bool early_termination_check(const OrbitDatabase& db, int full_dim) {
    bool any_processed = false;
    for (const auto& [k, r] : db.records())
        if (r.processed) {
            any_processed = true;
            break;
        }
    if (!any_processed)
        return false;
    return db.unprocessed_facet_total() < full_dim;
}

namespace {

void maybe_checkpoint(const EnumerationConfig& cfg, OrbitDatabase& db,
                      std::chrono::steady_clock::time_point& last) {
    if (cfg.checkpoint_path.empty())
        return;
    auto now = std::chrono::steady_clock::now();
    if (now - last >= cfg.checkpoint_interval) {
        db.save(cfg.checkpoint_path);
        last = now;
    }
}

} // namespace

EnumStatus run_adjacency_decomposition(const VPolytope& p, const SymmetryGroup& sym,
                                       const EnumerationConfig& cfg, OrbitDatabase& db,
                                       const StopFlag& stop) {
    const int d = p.full_dim;
    if (cfg.recursion_threshold > 0 && cfg.recursion_threshold < d)
        throw UsageError("recursion threshold must be at least the polytope dimension");
    if (sym.degree() != p.vertex_count())
        throw UsageError("symmetry degree does not match the vertex count");

    if (d == 0) {
        db.meta.complete = true;
        return EnumStatus::complete;
    }
    if (d == 1) {
        for (const Facet& f : dual_description_direct(p, cfg.dd_ray_cap)) {
            auto [rec, fresh] = db.insert_or_find(f, sym, p);
            db.mark_processed(rec->key);
        }
        db.meta.complete = true;
        return EnumStatus::complete;
    }

    if (db.orbit_count() == 0) {
        Facet f0 = initial_facet(p, cfg.seed);
        db.insert_or_find(f0, sym, p);
    }

    auto last_checkpoint = std::chrono::steady_clock::now();
    uint64_t steps = 0;
    const int workers = std::max(1, cfg.parallel_workers);

    struct StepResult {
        std::vector<int32_t> key;
        std::vector<Facet> neighbors;
    };
    auto process_rep = [&](const std::vector<int32_t>& key) {
        StepResult res;
        res.key = key;
        Facet rep = facet_from_incidence(p, key);
        std::vector<Perm> stab = sym.stabilizer_generators(key);
        RidgeList ridges = ridges_of_facet(p, rep, stab, cfg, 0);
        res.neighbors.reserve(ridges.ridges.size());
        for (const auto& ridge : ridges.ridges)
            res.neighbors.push_back(flip_ridge(p, rep, ridge));
        return res;
    };

    for (;;) {
        if (stop && stop()) {
            if (!cfg.checkpoint_path.empty())
                db.save(cfg.checkpoint_path);
            return EnumStatus::interrupted;
        }
        if (cfg.early_termination && early_termination_check(db, d))
            break;
        if (cfg.max_steps && steps >= cfg.max_steps && db.unprocessed_count() > 0) {
            if (!cfg.checkpoint_path.empty())
                db.save(cfg.checkpoint_path);
            return EnumStatus::stopped_at_cap;
        }

        size_t batch_limit = static_cast<size_t>(workers);
        if (cfg.max_steps)
            batch_limit = std::min<size_t>(batch_limit, cfg.max_steps - steps);
        std::vector<std::vector<int32_t>> batch = db.unprocessed_keys(batch_limit);
        if (batch.empty())
            break;

        std::vector<StepResult> results(batch.size());
        if (batch.size() == 1) {
            results[0] = process_rep(batch[0]);
        } else {
            std::vector<std::future<StepResult>> futs;
            futs.reserve(batch.size());
            for (const auto& key : batch)
                futs.push_back(std::async(std::launch::async, process_rep, key));
            for (size_t i = 0; i < batch.size(); ++i)
                results[i] = futs[i].get();
        }

        // Serial application in deterministic order; caps and the early
        // termination proof are evaluated exactly as in a serial run.
        for (StepResult& res : results) {
            for (const Facet& nb : res.neighbors)
                db.insert_or_find(nb, sym, p);
            db.mark_processed(res.key);
            ++steps;
            if (cfg.early_termination && early_termination_check(db, d))
                break;
            if (cfg.max_steps && steps >= cfg.max_steps)
                break;
        }
        maybe_checkpoint(cfg, db, last_checkpoint);
    }

    db.meta.complete = true;
    if (!cfg.checkpoint_path.empty())
        db.save(cfg.checkpoint_path);
    return EnumStatus::complete;
}

void run_direct_enumeration(const VPolytope& p, const SymmetryGroup& sym,
                            const EnumerationConfig& cfg, OrbitDatabase& db) {
    std::vector<Facet> facets = dual_description_direct(p, cfg.dd_ray_cap);
    for (const Facet& f : facets) {
        auto [rec, fresh] = db.insert_or_find(f, sym, p);
        db.mark_processed(rec->key);
    }
    // The symmetry must tile the facet list exactly by its orbits.
    if (db.total_facets() != Integer(static_cast<unsigned long>(facets.size())))
        throw InternalError("orbit sizes do not sum to the direct facet count");
    db.meta.complete = true;
}

std::vector<std::vector<int32_t>> expand_all_orbits(const OrbitDatabase& db,
                                                    const SymmetryGroup& sym, size_t cap) {
    std::set<std::vector<int32_t>> all;
    for (const auto& [key, rec] : db.records()) {
        for (auto& img : sym.set_orbit(key, cap)) {
            all.insert(std::move(img));
            if (all.size() > cap)
                throw ResourceCapError("orbit expansion exceeded cap");
        }
    }
    return {all.begin(), all.end()};
}

} // namespace birk
