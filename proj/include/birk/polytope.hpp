#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "birk/linalg.hpp"
#include "birk/matgroup.hpp"

namespace birk {

/**
 * Vertex description of a polytope, reduced to coordinates of its affine
 * hull with the origin at the vertex barycenter, so the reduced polytope is
 * full-dimensional with the origin strictly inside (when full_dim >= 1).
 * For conv(G) the ambient vectors are group elements flattened row-major,
 * pairing with an inequality matrix A as Tr(X A) = sum_ij X_ij A_ji.
 */
struct VPolytope {
    int ambient_dim = 0;
    std::vector<Vec> vertices; // deduplicated, input order preserved
    int full_dim = 0;
    Vec origin;                    // barycenter
    std::vector<Vec> span_basis;   // empty when identity_basis
    bool identity_basis = false;   // reduced = ambient - origin
    std::vector<Vec> reduced;      // per vertex, length full_dim
    int mat_dim = 0;               // n for conv(G) with G < GL_n, else 0

    const Vec& rv(int i) const { return reduced[i]; }
    int vertex_count() const { return static_cast<int>(vertices.size()); }
    // Ambient functional of a reduced-coordinates inequality <c,y> <= rhs,
    // chosen inside the span of vertex differences: returns (a, b) with
    // <a, v> <= b over the vertices, equality matching the reduced one.
    std::pair<Vec, QuadExt> ambient_inequality(const Vec& normal, const QuadExt& rhs) const;
};

VPolytope make_vpolytope(std::vector<Vec> points);
VPolytope build_vpolytope(const MatGroup& g);

/**
 * Facet in reduced coordinates: <normal, v> <= rhs for every reduced vertex,
 * equality exactly on `incidence` (sorted vertex indices), and the incident
 * vertices have affine rank full_dim - 1. Normalized so rhs = 1 when
 * nonzero, else first nonzero normal entry is +1.
 */
struct Facet {
    Vec normal;
    QuadExt rhs;
    std::vector<int32_t> incidence;
};

// Exact incidence set of a supporting inequality; throws InternalError if
// the inequality is violated by some vertex.
std::vector<int32_t> incidence_of(const VPolytope& p, const Vec& normal, const QuadExt& rhs);

// Scale to the canonical normalization (rhs = 1 / leading-entry +1).
void normalize_facet(Facet& f);

// Affine rank of the listed vertices (in reduced coordinates).
int affine_rank_of(const VPolytope& p, std::span<const int32_t> idx);

bool is_facet_incidence(const VPolytope& p, std::span<const int32_t> idx);

// Reconstruct the unique facet through a facet incidence set; the result is
// a pure function of the set, independent of how the orbit was discovered.
Facet facet_from_incidence(const VPolytope& p, std::span<const int32_t> idx);

// Full invariant check: supporting, exact incidence, facet-defining.
bool facet_ok(const VPolytope& p, const Facet& f);

// A first facet: maximize a seeded pseudo-random rational objective over the
// vertices, then rotate the supporting hyperplane, growing the incidence
// rank by at least one per pivot, until it is facet-defining.
Facet initial_facet(const VPolytope& p, uint64_t seed);

struct VerifyReport {
    bool valid = false;
    int64_t incidence_count = 0;
    bool is_facet = false;
    int rank_of_a = 0;
    std::vector<int32_t> incidence;
};

// Check Tr(X A) <= rhs over every element X of G, with incidence counting
// and the facet test on the induced polytope.
VerifyReport verify_inequality(const MatGroup& g, const Mat& a, const QuadExt& rhs);
VerifyReport verify_inequality(const MatGroup& g, const VPolytope& p, const Mat& a,
                               const QuadExt& rhs);

// Inequality matrix of a facet of conv(G): reshape of the ambient functional
// scaled to right-hand side 1, satisfying Tr(X A) <= 1.
Mat facet_matrix(const VPolytope& p, const Facet& f);

} // namespace birk
