#ifndef TORIC_EXTENSION_HPP
#define TORIC_EXTENSION_HPP

// Universal extensions of nef line bundles: the dimension of the extension
// space from the connected components of the polytope difference, the
// component polytopes Q union C_nu via the per-ray coefficient selection
// rule, and the extension's Weil decoration together with its short exact
// sequence.

#include "toric/cellcx.hpp"
#include "toric/morphism.hpp"

#include <vector>

namespace toric {

struct ExtensionResult {
    long long twist = 0;  // ample multiple k used for the internal picture
    int ext_dim = 0;      // s = #components - 1 (clamped at 0)
    bool split = false;   // the sequence splits (nabla+ inside nabla-, or empty difference)
    bool degenerate = false;  // at most one component: no nontrivial extensions

    // Twisted divisors of the component unions, one per component, ordered by
    // the lexicographically smallest cell sample point.
    std::vector<ToricDivisor> component_divisors;

    WeilDecoration decoration;  // untwisted rank-(s+1) extension
    WeilDecoration sub, quot;   // endpoints: rank-s twisted-line source, rank-1 target
    QMat iota;                  // (s+1) x s inclusion of ker(1...1)
    QMat ones;                  // 1 x (s+1) summation map

    // 0 -> sub -> decoration -> quot -> 0 wired to the stored members.
    std::vector<DecorationMorphism> sequence() const;
};

// s = #connected_components(section(D-) minus section(meet)) - 1 after the
// ample twist, clamped at 0.  Throws MathError("CannotAmplify") if no twist
// makes D- ample with a compatible lattice meet, MathError("NotNef") on
// non-nef input.
int ext_dimension(const ToricDivisor& dminus, const ToricDivisor& dplus);

// Divisor of the union of section(d_q) with one component of the difference
// inside section(d_ambient): per ray, the ambient coefficient when the open
// region where the ray inequality of d_q fails meets the component, else the
// d_q coefficient.  The component is a cell-index set of cx (as produced by
// connected_components on the subdivision of the ambient polytope by the
// d_q polytope); empty yields d_q back.  The result is verified: every vertex
// of its section polytope must be a vertex of section(d_q) or of
// section(d_ambient), else MathError("VertexLeak").
ToricDivisor component_polytope(const ToricDivisor& d_ambient, const ToricDivisor& d_q,
                                const CellComplex& cx,
                                const std::vector<int>& component);

// Builds the full extension: decoration on Q^{s+1} with the coordinate lines
// carrying the component unions, ker(1...1) carrying D+ (when the meet is a
// proper subpolytope of section(D+)), the generic stratum carrying the meet;
// everything untwisted by the recorded ample multiple.  The sequence is
// validated via is_exact over the merged degree support box; a failure
// raises MathError("NotExact").
ExtensionResult universal_extension(const ToricDivisor& dminus,
                                    const ToricDivisor& dplus);

}  // namespace toric

#endif
