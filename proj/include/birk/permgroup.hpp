#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "birk/quadext.hpp"

namespace birk {

// Permutation of {0..n-1}. Composition convention: compose(f, g)(x) = f(g(x)).
struct Perm {
    std::vector<int32_t> im;

    Perm() = default;
    explicit Perm(std::vector<int32_t> images) : im(std::move(images)) {}

    static Perm identity(int n);
    int degree() const { return static_cast<int>(im.size()); }
    int32_t operator()(int32_t x) const { return im[x]; }
    bool is_identity() const;
    Perm inverse() const;
    bool operator==(const Perm& o) const { return im == o.im; }
};

Perm compose(const Perm& f, const Perm& g);
std::vector<int32_t> apply_to_set(const Perm& g, std::span<const int32_t> s); // sorted result
bool is_permutation(const Perm& g);

/**
 * Base and strong generating set with Schreier-tree transversals.
 *
 * Two construction paths: a deterministic Schreier-Sims for small cases, and
 * a randomized build verified against a caller-supplied group order (the
 * result is exact; randomness only affects how fast the chain fills up).
 */
class Bsgs {
public:
    static Bsgs deterministic(std::vector<Perm> gens, int degree);
    static Bsgs with_known_order(std::vector<Perm> gens, int degree, const Integer& order,
                                 std::span<const int32_t> base_hint, uint64_t seed);

    int degree() const { return degree_; }
    int levels() const { return static_cast<int>(levels_.size()); }
    const Integer& order() const { return order_; }
    int32_t base_point(int level) const { return levels_[level].base; }
    size_t orbit_size(int level) const { return levels_[level].orbit.size(); }
    const std::vector<int32_t>& orbit(int level) const { return levels_[level].orbit; }
    bool in_orbit(int level, int32_t pt) const { return levels_[level].tree_gen[pt] != kAbsent; }
    const std::vector<Perm>& strong_generators() const { return strong_; }
    // Generators fixing base points of all levels below `level`.
    std::vector<Perm> level_generators(int level) const;

    // Transversal element u at (level, pt) maps base -> pt.
    int32_t transversal_apply(int level, int32_t pt, int32_t x) const;     // u(x)
    int32_t transversal_apply_inv(int level, int32_t pt, int32_t x) const; // u^-1(x)
    Perm transversal_perm(int level, int32_t pt) const;
    // g := u^-1 * g applied pointwise to a full image vector.
    void apply_transversal_inv_all(int level, int32_t pt, std::vector<int32_t>& images) const;

    bool contains(const Perm& g) const;

private:
    struct Level {
        int32_t base = 0;
        std::vector<int> gen_idx;         // strong generators alive at this level
        std::vector<int32_t> orbit;       // BFS order, orbit[0] == base
        std::vector<int32_t> tree_gen;    // per point: generator used to reach it
        std::vector<int32_t> tree_parent; // per point: previous point on the path
    };
    static constexpr int32_t kAbsent = -2;
    static constexpr int32_t kRoot = -1;

    int degree_ = 0;
    std::vector<Perm> strong_;
    std::vector<Perm> strong_inv_;
    std::vector<Level> levels_;
    Integer order_ = 1;

    void rebuild_orbit(int level);
    void recompute_order();
    // Returns the level the element sifted down to; residue left in `g`.
    int sift_residue(Perm& g) const;
    void extend_base(const Perm& witness, std::span<const int32_t> hint);
    void add_strong_generator(Perm g, int level);
    friend class SymmetryGroup;
};

/**
 * Permutation symmetry group of a vertex set, possibly a non-faithful action:
 * `kernel_order` counts abstract symmetries acting trivially, so the reported
 * group order is image_order * kernel_order and setwise stabilizer orders are
 * scaled the same way. Orbit sizes are unaffected by the kernel.
 */
class SymmetryGroup {
public:
    // Known image order enables the fast randomized chain build. Without it a
    // deterministic Schreier-Sims runs (fine for small degrees).
    SymmetryGroup(std::vector<Perm> generators, int degree, Integer kernel_order = 1,
                  std::optional<Integer> image_order = std::nullopt, uint64_t seed = 0x5eed);

    int degree() const { return degree_; }
    const Integer& order() const { return order_; }       // image * kernel
    const Integer& image_order() const { return bsgs_.order(); }
    const Integer& kernel_order() const { return kernel_; }
    const std::vector<Perm>& generators() const { return gens_; }
    const Bsgs& bsgs() const { return bsgs_; }

    bool contains(const Perm& g) const { return bsgs_.contains(g); }

    // Lexicographically minimal image of the subset over the group action,
    // on sorted index sequences. Orbit-invariant and idempotent.
    std::vector<int32_t> canonical_image(std::span<const int32_t> subset) const;

    // Setwise stabilizer: image-group generators and its abstract order
    // (image stabilizer order times the action kernel).
    std::vector<Perm> stabilizer_generators(std::span<const int32_t> subset) const;
    Integer stabilizer_order(std::span<const int32_t> subset) const;
    Integer stabilizer_order(std::span<const int32_t> subset,
                             const std::vector<Perm>& stab_gens) const;

    // |orbit of subset| = order / stabilizer_order, checked to divide exactly.
    Integer orbit_size(std::span<const int32_t> subset) const;

    // Full orbit of a subset (for oracle-scale checks); throws past `cap`.
    std::vector<std::vector<int32_t>> set_orbit(std::span<const int32_t> subset, size_t cap) const;

    // Deterministic pseudo-random element, for property tests.
    Perm random_element(uint64_t seed) const;

private:
    struct GroupCtx; // descending stabilizer contexts for canonical images

    int degree_;
    std::vector<Perm> gens_;
    Integer kernel_;
    Bsgs bsgs_;
    uint64_t seed_;
    Integer order_;

    mutable std::mutex ctx_mutex_;
    mutable std::shared_ptr<GroupCtx> root_ctx_;

    std::shared_ptr<GroupCtx> root_context() const;
    std::shared_ptr<GroupCtx> child_context(const std::shared_ptr<GroupCtx>& parent,
                                            int32_t m) const;
};

} // namespace birk
