#include "birk/permgroup.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "birk/error.hpp"

namespace birk {

Perm Perm::identity(int n) {
    Perm p;
    p.im.resize(n);
    for (int i = 0; i < n; ++i)
        p.im[i] = i;
    return p;
}

bool Perm::is_identity() const {
    for (int32_t i = 0; i < static_cast<int32_t>(im.size()); ++i)
        if (im[i] != i)
            return false;
    return true;
}

Perm Perm::inverse() const {
    Perm p;
    p.im.resize(im.size());
    for (int32_t i = 0; i < static_cast<int32_t>(im.size()); ++i)
        p.im[im[i]] = i;
    return p;
}

Perm compose(const Perm& f, const Perm& g) {
    if (f.degree() != g.degree())
        throw UsageError("composing permutations of different degree");
    Perm h;
    h.im.resize(g.im.size());
    for (size_t i = 0; i < g.im.size(); ++i)
        h.im[i] = f.im[g.im[i]];
    return h;
}

std::vector<int32_t> apply_to_set(const Perm& g, std::span<const int32_t> s) {
    std::vector<int32_t> out(s.size());
    for (size_t i = 0; i < s.size(); ++i)
        out[i] = g.im[s[i]];
    std::sort(out.begin(), out.end());
    return out;
}

bool is_permutation(const Perm& g) {
    std::vector<bool> seen(g.im.size(), false);
    for (int32_t v : g.im) {
        if (v < 0 || v >= static_cast<int32_t>(g.im.size()) || seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Bsgs

void Bsgs::rebuild_orbit(int level) {
    Level& lv = levels_[level];
    lv.orbit.clear();
    lv.tree_gen.assign(degree_, kAbsent);
    lv.tree_parent.assign(degree_, kAbsent);
    lv.orbit.push_back(lv.base);
    lv.tree_gen[lv.base] = kRoot;
    lv.tree_parent[lv.base] = lv.base;
    for (size_t head = 0; head < lv.orbit.size(); ++head) {
        int32_t p = lv.orbit[head];
        for (int gi : lv.gen_idx) {
            int32_t q = strong_[gi].im[p];
            if (lv.tree_gen[q] == kAbsent) {
                lv.tree_gen[q] = gi;
                lv.tree_parent[q] = p;
                lv.orbit.push_back(q);
            }
        }
    }
}

void Bsgs::recompute_order() {
    order_ = 1;
    for (const Level& lv : levels_)
        order_ *= static_cast<unsigned long>(lv.orbit.size());
}

int32_t Bsgs::transversal_apply(int level, int32_t pt, int32_t x) const {
    const Level& lv = levels_[level];
    // Path gens from pt back to the root; apply them root-side first.
    int32_t path[64];
    int depth = 0;
    std::vector<int32_t> spill;
    int32_t q = pt;
    while (lv.tree_gen[q] != kRoot) {
        if (depth < 64)
            path[depth] = lv.tree_gen[q];
        else
            spill.push_back(lv.tree_gen[q]);
        ++depth;
        q = lv.tree_parent[q];
    }
    for (int i = static_cast<int>(spill.size()) - 1; i >= 0; --i)
        x = strong_[spill[i]].im[x];
    for (int i = std::min(depth, 64) - 1; i >= 0; --i)
        x = strong_[path[i]].im[x];
    return x;
}

int32_t Bsgs::transversal_apply_inv(int level, int32_t pt, int32_t x) const {
    const Level& lv = levels_[level];
    int32_t q = pt;
    while (lv.tree_gen[q] != kRoot) {
        x = strong_inv_[lv.tree_gen[q]].im[x];
        q = lv.tree_parent[q];
    }
    return x;
}

Perm Bsgs::transversal_perm(int level, int32_t pt) const {
    Perm u = Perm::identity(degree_);
    for (int32_t x = 0; x < degree_; ++x)
        u.im[x] = transversal_apply(level, pt, x);
    return u;
}

void Bsgs::apply_transversal_inv_all(int level, int32_t pt, std::vector<int32_t>& images) const {
    const Level& lv = levels_[level];
    std::vector<int32_t> path;
    int32_t q = pt;
    while (lv.tree_gen[q] != kRoot) {
        path.push_back(lv.tree_gen[q]);
        q = lv.tree_parent[q];
    }
    for (int32_t& x : images)
        for (int32_t gi : path)
            x = strong_inv_[gi].im[x];
}

std::vector<Perm> Bsgs::level_generators(int level) const {
    std::vector<Perm> out;
    if (level >= static_cast<int>(levels_.size()))
        return out;
    for (int gi : levels_[level].gen_idx)
        out.push_back(strong_[gi]);
    return out;
}

int Bsgs::sift_residue(Perm& g) const {
    for (int level = 0; level < static_cast<int>(levels_.size()); ++level) {
        int32_t p = g.im[levels_[level].base];
        if (!in_orbit(level, p))
            return level;
        apply_transversal_inv_all(level, p, g.im);
    }
    return static_cast<int>(levels_.size());
}

bool Bsgs::contains(const Perm& g) const {
    if (g.degree() != degree_)
        return false;
    Perm r = g;
    sift_residue(r);
    return r.is_identity();
}

void Bsgs::extend_base(const Perm& witness, std::span<const int32_t> hint) {
    int32_t pt = -1;
    for (int32_t h : hint) {
        if (witness.im[h] != h) {
            pt = h;
            break;
        }
    }
    if (pt < 0) {
        for (int32_t x = 0; x < degree_; ++x) {
            if (witness.im[x] != x) {
                pt = x;
                break;
            }
        }
    }
    if (pt < 0)
        throw InternalError("extending base with an identity witness");
    Level lv;
    lv.base = pt;
    levels_.push_back(std::move(lv));
    rebuild_orbit(static_cast<int>(levels_.size()) - 1);
}

void Bsgs::add_strong_generator(Perm g, int deepest_level) {
    strong_.push_back(g);
    strong_inv_.push_back(g.inverse());
    int gi = static_cast<int>(strong_.size()) - 1;
    // The generator fixes base[0..deepest_level); register it wherever valid
    // beyond level 0, which is complete by construction.
    int first = std::min<int>(1, deepest_level);
    for (int l = first; l <= deepest_level && l < static_cast<int>(levels_.size()); ++l)
        levels_[l].gen_idx.push_back(gi);
    for (int l = first; l <= deepest_level && l < static_cast<int>(levels_.size()); ++l)
        rebuild_orbit(l);
    recompute_order();
}

namespace {

std::vector<Perm> filter_nontrivial(std::vector<Perm> gens, int degree) {
    std::vector<Perm> out;
    for (auto& g : gens) {
        if (g.degree() != degree)
            throw UsageError("generator degree mismatch");
        if (!is_permutation(g))
            throw UsageError("generator is not a permutation");
        if (!g.is_identity() && std::find(out.begin(), out.end(), g) == out.end())
            out.push_back(std::move(g));
    }
    return out;
}

struct SplitMix {
    uint64_t s;
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return next() % n; }
};

// Product-replacement random walk over the generated group.
struct Rattle {
    std::vector<Perm> slots;
    Perm acc;
    SplitMix rng;

    Rattle(const std::vector<Perm>& gens, int degree, uint64_t seed) : rng{seed} {
        acc = Perm::identity(degree);
        for (const Perm& g : gens)
            slots.push_back(g);
        while (slots.size() < 8)
            slots.push_back(gens[slots.size() % gens.size()]);
        for (int i = 0; i < 60; ++i)
            step();
    }

    const Perm& step() {
        size_t i = rng.below(slots.size());
        size_t j = rng.below(slots.size() - 1);
        if (j >= i)
            ++j;
        if (rng.next() & 1)
            slots[i] = compose(slots[i], slots[j]);
        else
            slots[i] = compose(slots[j], slots[i]);
        acc = compose(acc, slots[i]);
        return acc;
    }
};

} // namespace

Bsgs Bsgs::deterministic(std::vector<Perm> gens, int degree) {
    Bsgs b;
    b.degree_ = degree;
    std::vector<Perm> gs = filter_nontrivial(std::move(gens), degree);
    if (gs.empty()) {
        b.order_ = 1;
        return b;
    }
    for (auto& g : gs) {
        b.strong_.push_back(g);
        b.strong_inv_.push_back(g.inverse());
    }
    int32_t base0 = -1;
    for (int32_t x = 0; x < degree && base0 < 0; ++x)
        for (const Perm& g : b.strong_)
            if (g.im[x] != x) {
                base0 = x;
                break;
            }
    Level lv;
    lv.base = base0;
    for (int gi = 0; gi < static_cast<int>(b.strong_.size()); ++gi)
        lv.gen_idx.push_back(gi);
    b.levels_.push_back(std::move(lv));
    b.rebuild_orbit(0);
    b.recompute_order();

    // Close the chain under Schreier generators. Process a level fully; a new
    // strong generator lands strictly deeper, so processing jumps there and
    // works back up once that level is clean.
    int i = 0;
    while (i >= 0 && i < static_cast<int>(b.levels_.size())) {
        int jump = -1;
        const std::vector<int32_t> orbit_snapshot = b.levels_[i].orbit;
        const std::vector<int> gens_snapshot = b.levels_[i].gen_idx;
        for (size_t oi = 0; oi < orbit_snapshot.size() && jump < 0; ++oi) {
            const int32_t p = orbit_snapshot[oi];
            Perm up = b.transversal_perm(i, p);
            for (int gi : gens_snapshot) {
                Perm r = compose(b.strong_[gi], up);
                int32_t q = b.strong_[gi].im[p];
                b.apply_transversal_inv_all(i, q, r.im); // r := u_q^-1 * g * u_p
                int lvl = static_cast<int>(b.levels_.size());
                bool fail = false;
                for (int l = i + 1; l < static_cast<int>(b.levels_.size()); ++l) {
                    int32_t bp = r.im[b.levels_[l].base];
                    if (!b.in_orbit(l, bp)) {
                        lvl = l;
                        fail = true;
                        break;
                    }
                    b.apply_transversal_inv_all(l, bp, r.im);
                }
                if (!fail && r.is_identity())
                    continue;
                if (!fail)
                    b.extend_base(r, {});
                b.add_strong_generator(std::move(r),
                                       fail ? lvl : static_cast<int>(b.levels_.size()) - 1);
                jump = fail ? lvl : static_cast<int>(b.levels_.size()) - 1;
                break;
            }
        }
        i = (jump >= 0) ? jump : i - 1;
    }
    return b;
}

Bsgs Bsgs::with_known_order(std::vector<Perm> gens, int degree, const Integer& order,
                            std::span<const int32_t> base_hint, uint64_t seed) {
    Bsgs b;
    b.degree_ = degree;
    std::vector<Perm> gs = filter_nontrivial(std::move(gens), degree);
    if (gs.empty()) {
        if (order != 1)
            throw InternalError("trivial generators with nontrivial claimed order");
        b.order_ = 1;
        return b;
    }
    for (auto& g : gs) {
        b.strong_.push_back(g);
        b.strong_inv_.push_back(g.inverse());
    }
    int32_t base0 = -1;
    for (int32_t h : base_hint) {
        for (const Perm& g : b.strong_)
            if (g.im[h] != h) {
                base0 = h;
                break;
            }
        if (base0 >= 0)
            break;
    }
    if (base0 < 0) {
        for (int32_t x = 0; x < degree && base0 < 0; ++x)
            for (const Perm& g : b.strong_)
                if (g.im[x] != x) {
                    base0 = x;
                    break;
                }
    }
    Level lv;
    lv.base = base0;
    for (int gi = 0; gi < static_cast<int>(b.strong_.size()); ++gi)
        lv.gen_idx.push_back(gi);
    b.levels_.push_back(std::move(lv));
    b.rebuild_orbit(0);
    b.recompute_order();

    Rattle rattle(b.strong_, degree, seed ^ 0x9e3779b97f4a7c15ULL);
    long attempts = 0;
    while (b.order_ != order) {
        if (b.order_ > order)
            throw InternalError("stabilizer chain exceeded the claimed group order");
        if (++attempts > 200000)
            throw InternalError("randomized chain build failed to reach the claimed order");
        Perm r = rattle.step();
        int lvl = b.sift_residue(r);
        if (r.is_identity())
            continue;
        if (lvl == static_cast<int>(b.levels_.size()))
            b.extend_base(r, base_hint);
        b.add_strong_generator(std::move(r),
                               std::min<int>(lvl, static_cast<int>(b.levels_.size()) - 1));
    }
    return b;
}

// ---------------------------------------------------------------------------
// SymmetryGroup

struct SymmetryGroup::GroupCtx {
    std::vector<Perm> gens;
    Integer order;
    std::vector<int32_t> orbit_min; // per point, min of its orbit under gens
    bool trivial = false;
    std::map<int32_t, std::pair<std::shared_ptr<Bsgs>, std::shared_ptr<GroupCtx>>> children;

    GroupCtx(std::vector<Perm> g, Integer ord, int degree)
        : gens(std::move(g)), order(std::move(ord)) {
        trivial = (order == 1);
        orbit_min.resize(degree);
        for (int32_t x = 0; x < degree; ++x)
            orbit_min[x] = x;
        if (trivial || gens.empty())
            return;
        std::vector<int8_t> seen(degree, 0);
        std::vector<int32_t> stack;
        for (int32_t x = 0; x < degree; ++x) {
            if (seen[x])
                continue;
            stack.assign(1, x);
            seen[x] = 1;
            std::vector<int32_t> members{x};
            int32_t mn = x;
            while (!stack.empty()) {
                int32_t p = stack.back();
                stack.pop_back();
                for (const Perm& g : gens) {
                    int32_t q = g.im[p];
                    if (!seen[q]) {
                        seen[q] = 1;
                        stack.push_back(q);
                        members.push_back(q);
                        mn = std::min(mn, q);
                    }
                }
            }
            for (int32_t m : members)
                orbit_min[m] = mn;
        }
    }
};

SymmetryGroup::SymmetryGroup(std::vector<Perm> generators, int degree, Integer kernel_order,
                             std::optional<Integer> image_order, uint64_t seed)
    : degree_(degree), gens_(std::move(generators)), kernel_(std::move(kernel_order)), seed_(seed) {
    if (kernel_ < 1)
        throw UsageError("kernel order must be positive");
    if (image_order.has_value())
        bsgs_ = Bsgs::with_known_order(gens_, degree_, *image_order, std::array<int32_t, 1>{0},
                                       seed_);
    else
        bsgs_ = Bsgs::deterministic(gens_, degree_);
    order_ = bsgs_.order() * kernel_;
}

std::shared_ptr<SymmetryGroup::GroupCtx> SymmetryGroup::root_context() const {
    if (!root_ctx_) {
        std::vector<Perm> gs = filter_nontrivial(gens_, degree_);
        root_ctx_ = std::make_shared<GroupCtx>(std::move(gs), bsgs_.order(), degree_);
    }
    return root_ctx_;
}

std::shared_ptr<SymmetryGroup::GroupCtx>
SymmetryGroup::child_context(const std::shared_ptr<GroupCtx>& parent, int32_t m) const {
    auto it = parent->children.find(m);
    if (it != parent->children.end())
        return it->second.second;
    auto bs = std::make_shared<Bsgs>(Bsgs::with_known_order(
        parent->gens, degree_, parent->order, std::array<int32_t, 1>{m}, seed_ ^ (0xC0FFEEULL + m)));
    Integer stab_order = parent->order / static_cast<unsigned long>(bs->orbit_size(0));
    auto child = std::make_shared<GroupCtx>(bs->level_generators(1), stab_order, degree_);
    if (parent->children.size() >= 2048)
        parent->children.clear(); // bound the cache on long runs; entries rebuild on demand
    parent->children.emplace(m, std::make_pair(bs, child));
    return child;
}

namespace {

struct MinImageCand {
    std::vector<int32_t> img; // full image array of the partial product
    std::vector<int32_t> rem; // preimage points not yet consumed
};

std::vector<int32_t> image_of(const std::vector<int32_t>& img, const std::vector<int32_t>& pts) {
    std::vector<int32_t> out(pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
        out[i] = img[pts[i]];
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int32_t> checked_sorted_subset(std::span<const int32_t> subset, int degree,
                                           const char* what) {
    std::vector<int32_t> s(subset.begin(), subset.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.size() != subset.size())
        throw UsageError(std::string(what) + ": duplicate points in subset");
    if (!s.empty() && (s.front() < 0 || s.back() >= degree))
        throw UsageError(std::string(what) + ": point out of range");
    return s;
}

} // namespace

std::vector<int32_t> SymmetryGroup::canonical_image(std::span<const int32_t> subset) const {
    std::vector<int32_t> s = checked_sorted_subset(subset, degree_, "canonical_image");
    if (s.empty() || static_cast<int>(s.size()) == degree_)
        return s;

    std::lock_guard<std::mutex> lock(ctx_mutex_);
    std::shared_ptr<GroupCtx> ctx = root_context();

    std::vector<MinImageCand> cands;
    {
        MinImageCand c;
        c.img.resize(degree_);
        for (int32_t i = 0; i < degree_; ++i)
            c.img[i] = i;
        c.rem = s;
        cands.push_back(std::move(c));
    }
    std::vector<int32_t> prefix;
    prefix.reserve(s.size());

    while (!cands.front().rem.empty()) {
        if (ctx->trivial) {
            // No group left: the best completion is a plain minimum.
            std::vector<int32_t> best;
            for (const auto& c : cands) {
                std::vector<int32_t> img = image_of(c.img, c.rem);
                if (best.empty() || img < best)
                    best = std::move(img);
            }
            prefix.insert(prefix.end(), best.begin(), best.end());
            return prefix;
        }

        int32_t m = degree_;
        for (const auto& c : cands)
            for (int32_t t : c.rem)
                m = std::min(m, ctx->orbit_min[c.img[t]]);

        bool fixed = true;
        for (const Perm& g : ctx->gens)
            if (g.im[m] != m) {
                fixed = false;
                break;
            }

        std::vector<MinImageCand> next;
        std::set<std::vector<int32_t>> seen;
        if (fixed) {
            for (const auto& c : cands) {
                for (size_t k = 0; k < c.rem.size(); ++k) {
                    if (c.img[c.rem[k]] != m)
                        continue;
                    MinImageCand nc;
                    nc.img = c.img;
                    nc.rem = c.rem;
                    nc.rem.erase(nc.rem.begin() + k);
                    if (seen.insert(image_of(nc.img, nc.rem)).second)
                        next.push_back(std::move(nc));
                }
            }
            prefix.push_back(m);
            cands = std::move(next);
            continue;
        }

        auto child = child_context(ctx, m);
        const Bsgs& bs = *ctx->children.at(m).first;
        for (const auto& c : cands) {
            for (size_t k = 0; k < c.rem.size(); ++k) {
                int32_t p = c.img[c.rem[k]];
                if (ctx->orbit_min[p] != m)
                    continue;
                if (!bs.in_orbit(0, p))
                    throw InternalError("orbit bookkeeping mismatch in canonical image");
                MinImageCand nc;
                nc.img = c.img;
                bs.apply_transversal_inv_all(0, p, nc.img); // now nc.img[rem[k]] == m
                nc.rem = c.rem;
                nc.rem.erase(nc.rem.begin() + k);
                if (seen.insert(image_of(nc.img, nc.rem)).second)
                    next.push_back(std::move(nc));
            }
        }
        if (next.empty())
            throw InternalError("canonical image produced no candidates");
        prefix.push_back(m);
        cands = std::move(next);
        ctx = child;
    }
    return prefix;
}

std::vector<Perm> SymmetryGroup::stabilizer_generators(std::span<const int32_t> subset) const {
    std::vector<int32_t> s = checked_sorted_subset(subset, degree_, "stabilizer");
    if (s.empty() || static_cast<int>(s.size()) == degree_)
        return filter_nontrivial(gens_, degree_);
    if (bsgs_.order() == 1)
        return {};

    Bsgs chain = Bsgs::with_known_order(gens_, degree_, bsgs_.order(), s, seed_ ^ 0x57ab1eULL);
    const int nlevels = chain.levels();
    std::vector<int8_t> in_s(degree_, 0);
    for (int32_t p : s)
        in_s[p] = 1;

    std::vector<Perm> found;
    Bsgs known = Bsgs::deterministic({}, degree_);
    std::vector<int32_t> known_min(degree_);
    auto refresh_known_min = [&]() {
        // Orbit minima of the subgroup found so far, for first-level pruning.
        for (int32_t x = 0; x < degree_; ++x)
            known_min[x] = x;
        if (found.empty())
            return;
        std::vector<int8_t> seen(degree_, 0);
        std::vector<int32_t> stack, members;
        for (int32_t x = 0; x < degree_; ++x) {
            if (seen[x])
                continue;
            stack.assign(1, x);
            seen[x] = 1;
            members.assign(1, x);
            int32_t mn = x;
            while (!stack.empty()) {
                int32_t p = stack.back();
                stack.pop_back();
                for (const Perm& g : found) {
                    int32_t q = g.im[p];
                    if (!seen[q]) {
                        seen[q] = 1;
                        stack.push_back(q);
                        members.push_back(q);
                        mn = std::min(mn, q);
                    }
                }
            }
            for (int32_t p : members)
                known_min[p] = mn;
        }
    };
    refresh_known_min();

    // choices[l] = image point chosen for base[l]; the composed candidate is
    // u_0 * u_1 * ... evaluated lazily through the Schreier trees.
    std::vector<int32_t> choices(nlevels, -1);
    auto eval_through = [&](int upto_level, int32_t x) {
        for (int l = upto_level; l >= 0; --l)
            x = chain.transversal_apply(l, choices[l], x);
        return x;
    };

    std::vector<std::vector<int32_t>> sorted_orbits(nlevels);
    for (int l = 0; l < nlevels; ++l) {
        sorted_orbits[l] = chain.orbit(l);
        std::sort(sorted_orbits[l].begin(), sorted_orbits[l].end());
    }

    auto dfs = [&](auto&& self, int level) -> void {
        if (level == nlevels) {
            for (int32_t p : s)
                if (!in_s[eval_through(nlevels - 1, p)])
                    return;
            Perm g = Perm::identity(degree_);
            for (int32_t x = 0; x < degree_; ++x)
                g.im[x] = eval_through(nlevels - 1, x);
            if (!g.is_identity() && !known.contains(g)) {
                found.push_back(std::move(g));
                known = Bsgs::deterministic(found, degree_);
                refresh_known_min();
            }
            return;
        }
        const int32_t b = chain.base_point(level);
        for (int32_t c : sorted_orbits[level]) {
            if (level == 0 && known_min[c] < c)
                continue; // a smaller representative of this coset was searched
            choices[level] = c;
            int32_t img = eval_through(level, b);
            if (in_s[img] != in_s[b])
                continue;
            self(self, level + 1);
        }
        choices[level] = -1;
    };
    if (nlevels > 0)
        dfs(dfs, 0);
    return found;
}

Integer SymmetryGroup::stabilizer_order(std::span<const int32_t> subset,
                                        const std::vector<Perm>& stab_gens) const {
    std::vector<int32_t> s = checked_sorted_subset(subset, degree_, "stabilizer");
    if (s.empty() || static_cast<int>(s.size()) == degree_)
        return order_;
    Bsgs chain = Bsgs::deterministic(stab_gens, degree_);
    return chain.order() * kernel_;
}

Integer SymmetryGroup::stabilizer_order(std::span<const int32_t> subset) const {
    return stabilizer_order(subset, stabilizer_generators(subset));
}

Integer SymmetryGroup::orbit_size(std::span<const int32_t> subset) const {
    Integer stab = stabilizer_order(subset);
    Integer q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), order_.get_mpz_t(), stab.get_mpz_t());
    if (r != 0)
        throw InternalError("stabilizer order does not divide the group order");
    return q;
}

std::vector<std::vector<int32_t>> SymmetryGroup::set_orbit(std::span<const int32_t> subset,
                                                           size_t cap) const {
    std::vector<int32_t> s = checked_sorted_subset(subset, degree_, "set_orbit");
    std::set<std::vector<int32_t>> seen{s};
    std::vector<std::vector<int32_t>> queue{s};
    for (size_t head = 0; head < queue.size(); ++head) {
        std::vector<int32_t> cur = queue[head];
        for (const Perm& g : gens_) {
            std::vector<int32_t> img = apply_to_set(g, cur);
            if (seen.insert(img).second) {
                if (seen.size() > cap)
                    throw ResourceCapError("set orbit exceeded cap of " + std::to_string(cap));
                queue.push_back(std::move(img));
            }
        }
    }
    return queue;
}

Perm SymmetryGroup::random_element(uint64_t seed) const {
    SplitMix rng{seed * 0x9e3779b97f4a7c15ULL + 0xD1B54A32D192ED03ULL};
    Perm g = Perm::identity(degree_);
    for (int l = 0; l < bsgs_.levels(); ++l) {
        const auto& orbit = bsgs_.orbit(l);
        int32_t pt = orbit[rng.below(orbit.size())];
        g = compose(g, bsgs_.transversal_perm(l, pt));
    }
    return g;
}

} // namespace birk
