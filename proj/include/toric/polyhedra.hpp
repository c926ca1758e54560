#ifndef TORIC_POLYHEDRA_HPP
#define TORIC_POLYHEDRA_HPP

// The divisor <-> polytope dictionary.  Toric divisors double as the
// canonical encoding of virtual Sigma-compatible polytopes (elements of the
// Grothendieck group); explicit geometry is derived on demand through section
// polyhedra, and all polytope algebra is exact integer arithmetic on
// coefficient vectors.

#include "toric/fan.hpp"

#include <functional>
#include <optional>

namespace toric {

struct ToricDivisor {
    const Fan* fan = nullptr;
    ZVec a;  // coefficient a_rho per ray, same order as fan->rays

    bool operator==(const ToricDivisor& o) const { return a == o.a; }
};

// A divisor or the formal top element (infinity); nullopt encodes (infinity).
using ExtDivisor = std::optional<ToricDivisor>;

struct LatticePolyhedron {
    int n = 0;
    std::vector<QVec> vertices;              // extreme points, sorted, unique
    std::vector<ZVec> tail_rays;             // tail cone generators (often empty)
    std::vector<std::pair<ZVec, Rat>> hrep;  // <u, normal> >= offset
    bool is_empty() const { return vertices.empty() && hrep_infeasible_; }
    bool is_lattice() const;

    bool contains(const QVec& point) const;
    bool contains_polyhedron(const LatticePolyhedron& other) const;

    static LatticePolyhedron empty(int n);
    static LatticePolyhedron from_inequalities(int n,
                                               std::vector<std::pair<ZVec, Rat>> hrep);

    bool hrep_infeasible_ = false;
};

ToricDivisor principal_divisor(const Fan& fan, const ZVec& m);
ToricDivisor divisor_meet(const ToricDivisor& d1, const ToricDivisor& d2);
ExtDivisor divisor_meet(const ExtDivisor& d1, const ExtDivisor& d2);
ToricDivisor divisor_add(const ToricDivisor& d1, const ToricDivisor& d2);
ToricDivisor divisor_scale(const ToricDivisor& d, long long k);

// Virtual intersection of (virtual) polytopes = meet of their divisors.
inline ToricDivisor virtual_intersection(const ToricDivisor& d1, const ToricDivisor& d2) {
    return divisor_meet(d1, d2);
}

// Section polyhedron {u : <u, rho> >= -a_rho for all rays}; empty allowed.
LatticePolyhedron section_polyhedron(const ToricDivisor& d);

// Section polyhedron translated by an integer degree m (polytope of D in the
// twisted picture over Delta + m).
LatticePolyhedron translate(const LatticePolyhedron& p, const ZVec& m);

ToricDivisor divisor_of_polyhedron(const Fan& fan, const LatticePolyhedron& p);

bool is_nef(const ToricDivisor& d);
bool is_ample(const ToricDivisor& d);

LatticePolyhedron minkowski_sum(const Fan& fan, const LatticePolyhedron& p,
                                const LatticePolyhedron& q);

// Vertex of the (virtual) polytope of d at a maximal cone: the solution of
// <r, rho> = -a_rho over sigma(1).
QVec cone_vertex(const ToricDivisor& d, const Cone& sigma);

// Smallest k >= 0 with pred(k) true, assuming monotonicity; found by doubling
// then binary refinement.  Throws MathError("CannotAmplify") past the bound.
long long minimal_twist(const std::function<bool(long long)>& pred,
                        long long bound = 1 << 20);

// Exact vertex enumeration of a bounded polyhedron given by inequalities
// <u, normal> >= offset; returns the extreme points (sorted, deduplicated).
std::vector<QVec> enumerate_vertices(int n,
                                     const std::vector<std::pair<ZVec, Rat>>& ineqs);

}  // namespace toric

#endif
