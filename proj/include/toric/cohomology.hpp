#ifndef TORIC_COHOMOLOGY_HPP
#define TORIC_COHOMOLOGY_HPP

// The two cohomology engines (cone-wise evaluation complex; polyhedral
// constructible-sheaf total complex), spectral E1 reports, Euler
// characteristics via Moebius inversion, global sections, and graded tables
// with a verified degree-support box.

#include "toric/cellcx.hpp"
#include "toric/decoration.hpp"
#include "toric/morphism.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace toric {

// Integer bounding box of all cone vertices of the (untwisted) stratum
// divisors, inflated by 1 in every direction.
DegreeBox degree_support_box(const WeilDecoration& dec);

// Degree-m cohomology dims (h^0, ..., h^n) via the cone-wise evaluation
// complex with terms +_{sigma of dim n-l} eval_sigma(m).
std::vector<int> klyachko_cech(const WeilDecoration& dec, const ZVec& m);

enum class PolyVariant { Closed, Interior };

// Degree-m dims via the constructible-sheaf total complex over the ample
// materialisation window Delta + m.  The Interior variant computes on the
// open polytope with fully strict inequalities and must agree.
std::vector<int> cohomology_polyhedral(const WeilDecoration& dec, const ZVec& m,
                                       PolyVariant variant = PolyVariant::Closed);

struct SpectralE1Report {
    // (l, q) -> dim of E1^{-l, q}
    std::map<std::pair<int, int>, int> dims;
    // (l, q) -> contributing chain labels "S0<...<Sl"
    std::map<std::pair<int, int>, std::vector<std::string>> labels;
};
SpectralE1Report spectral_E1(const WeilDecoration& dec, const ZVec& m);

// Height-one two-column mapping cone ker A (x) C(P(eta)) -> + S_k (x) C(P(S_k)).
std::vector<int> height_one_cone(const WeilDecoration& dec, const ZVec& m);

// Closure of the maximal stratum whose (materialised) polytope contains
// Delta + m; equals the degree-m global section space.
QMat global_sections(const WeilDecoration& dec, const ZVec& m);

// Incidence matrix (leq, 0/1) and Moebius function over all strata.
QMat incidence(const Stratification& st);
QMat mobius(const Stratification& st);            // the inverse of incidence
QMat mobius_by_chains(const Stratification& st);  // signed chain counts

// dim^T . mobius, one weight per stratum.
std::vector<Rat> euler_weights(const Stratification& st);

// Degree-0 Euler characteristic via the Moebius formula; equivariant version
// lists the per-degree values over the box.
long long euler_deg0(const WeilDecoration& dec);
std::map<ZVec, long long> euler_equivariant(const WeilDecoration& dec,
                                            const DegreeBox& box);

enum class Method { Cech, Polyhedral, PolyhedralInterior };

struct GradedTable {
    DegreeBox box;
    long long twist = 0;  // ample multiple used by the polyhedral engine
    std::string method;
    std::map<ZVec, std::vector<int>> entries;  // every degree in the box
};

// Computes the table over the box (default: degree_support_box) and verifies
// that the one-cell shell around it is identically zero; aborts with a
// diagnostic otherwise.  The parallel flag switches between the OpenMP
// per-degree loop and the serial reference.
GradedTable graded_table(const WeilDecoration& dec, Method method,
                         const std::optional<DegreeBox>& box = std::nullopt,
                         bool parallel = true);

}  // namespace toric

#endif
