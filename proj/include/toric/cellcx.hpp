#ifndef TORIC_CELLCX_HPP
#define TORIC_CELLCX_HPP

// Polyhedral cell complexes: subdivision of an ambient polytope by the facet
// hyperplanes of cutter polytopes, subcomplex carriers, and reduced/relative
// cellular cohomology over Q computed on the order complex (barycentric
// simplicial model) of the face poset.

#include "toric/polyhedra.hpp"

#include <functional>
#include <vector>

namespace toric {

struct Cell {
    int dim = 0;
    std::vector<std::pair<ZVec, Rat>> hrep;  // <u, normal> >= offset (+ tight pairs)
    std::vector<QVec> vrep;                  // sorted vertex list
    QVec sample;                             // relative-interior point
    std::vector<int> faces;                  // codim-1 faces, sorted indices
};

struct CellComplex {
    int n = 0;
    LatticePolyhedron ambient;
    std::vector<Cell> cells;
    std::vector<std::vector<int>> by_dim;  // cell indices per dimension

    // Transitive face relation (vertex-set inclusion given the construction).
    bool is_face(int f, int c) const;
};

using Subcomplex = std::vector<char>;  // one flag per cell

// Splits the ambient polytope by every facet hyperplane of every cutter.
CellComplex subdivide(const LatticePolyhedron& ambient,
                      const std::vector<LatticePolyhedron>& cutters,
                      int dim_cap = 4);

// Cells whose sample point satisfies the predicate; optionally closed under
// faces afterwards.
Subcomplex carrier(const CellComplex& cx,
                   const std::function<bool(const Cell&)>& pred,
                   bool close_under_faces);

// P(S) = ambient minus the relative interior of `region`: all cells not
// contained in int_ambient(region).  With relax_at_boundary, strictness is
// dropped on region facets that coincide with facets of the ambient polytope
// (interior relative to the ambient polytope); without it the honest interior
// is used.
Subcomplex outside_interior(const CellComplex& cx, const LatticePolyhedron& region,
                            bool relax_at_boundary);

// Cells entirely contained in the region.
Subcomplex inside(const CellComplex& cx, const LatticePolyhedron& region);

Subcomplex complex_union(const Subcomplex& a, const Subcomplex& b);
bool subcomplex_closed(const CellComplex& cx, const Subcomplex& sub);

// Reduced cohomology dims (H~^-1, H~^0, H~^1, ...) of the subcomplex; the
// empty subcomplex has H~^-1 = 1.
std::vector<int> reduced_cohomology(const CellComplex& cx, const Subcomplex& sub);

// chi~ = sum over cells of (-1)^dim, minus 1; no linear algebra.
long long reduced_euler(const CellComplex& cx, const Subcomplex& sub);

// Order complex: simplices[k] lists all strict chains of k+1 cells (ascending
// cell indices along the face order), sorted lexicographically.
struct OrderComplex {
    std::vector<std::vector<std::vector<int>>> simplices;
};
OrderComplex order_complex(const CellComplex& cx);

// Relative cochain complex C^*(K, sub): cochains on order-complex simplices
// containing at least one cell outside sub.  Bases are stored as indices into
// the given order complex, which makes extension-by-zero maps between
// relative complexes coordinate inclusions.
struct RelativeCochains {
    const OrderComplex* oc = nullptr;
    std::vector<std::vector<int>> basis;  // per degree, sorted simplex indices
};
RelativeCochains relative_cochain_complex(const OrderComplex& oc,
                                          const CellComplex& cx,
                                          const Subcomplex& sub);

// Cohomology dims of the relative complex (degree 0, 1, ...).
std::vector<int> relative_cohomology(const RelativeCochains& rc);

// Connected components of the union of relative interiors of the cells of
// interest, glued through shared codim-1 faces; sorted cell-index sets.
std::vector<std::vector<int>> connected_components(const CellComplex& cx,
                                                   const Subcomplex& interest);

}  // namespace toric

#endif
