#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "birk/linalg.hpp"
#include "birk/permgroup.hpp"

namespace birk {

/**
 * A finite matrix group over the scalar field, closed under multiplication
 * and inverse. Elements are stored sorted by entrywise lexicographic order,
 * which fixes vertex indices machine-independently.
 */
struct MatGroup {
    int dim = 0;
    std::vector<Mat> generators;
    std::vector<Mat> elements; // sorted, deduplicated, closed

    size_t order() const { return elements.size(); }
    // Index of m in the element list, -1 if absent.
    int element_index(const Mat& m) const;
    bool contains(const Mat& m) const { return element_index(m) >= 0; }
    bool closed_under_transpose() const;
    bool is_abelian() const;
    // Elements commuting with every generator.
    std::vector<int> center_indices() const;
    // True if any element has an irrational entry.
    bool uses_quad_part() const;
};

// Breadth-first closure of the generators under multiplication. Throws
// ResourceCapError if the closure exceeds element_cap (guards against
// generators of an infinite or unexpectedly large group).
MatGroup generate_group(int dim, std::vector<Mat> generators, size_t element_cap = 1000000);

// Built-in reflection groups: "A<n>" (all permutation matrices of dim n+1),
// "B<n>", "D<n>", "F4", "H3", "H4", "I2_<n>" for n in {2,3,4,5,6,10}.
MatGroup coxeter_group(std::string_view name);
std::vector<std::string> coxeter_group_names();

/**
 * The vertex symmetry action: permutations of element indices generated by
 * left multiplication x -> g x, right multiplication x -> x g^-1, and
 * optionally transposition x -> x^T. The abstract action group has order
 * |G|^2 (times 2 with transpose); pairs (z, z) over the center act trivially,
 * which the returned group tracks as its kernel.
 */
SymmetryGroup symmetry_action(const MatGroup& g, bool use_transpose, uint64_t seed = 0x5eed);

} // namespace birk
