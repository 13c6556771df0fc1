#pragma once

#include <vector>

#include "birk/polytope.hpp"

namespace birk {

/**
 * Complete irredundant facet list of a vertex-described polytope, by the
 * incremental double description method on the polar cone. Intended for
 * small instances; the ray cap guards against combinatorial blowup.
 * Output order is deterministic: facets sorted by incidence set.
 */
std::vector<Facet> dual_description_direct(const VPolytope& p, size_t ray_cap = 2000000);

} // namespace birk
