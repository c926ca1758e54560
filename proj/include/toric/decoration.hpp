#ifndef TORIC_DECORATION_HPP
#define TORIC_DECORATION_HPP

// Weil decorations: admissible stratifications of E = Q^r together with an
// anti-semilattice map to (extended) toric divisors, plus the constructions
// (line bundle, direct sum, twist, hom, dual), Klyachko filtrations,
// evaluation spaces and materialisation.

#include "toric/linalg.hpp"
#include "toric/polyhedra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toric {

// Extended divisor coefficient vectors: nullopt encodes (infinity).
using ExtCoeffs = std::optional<ZVec>;

ExtCoeffs ext_meet(const ExtCoeffs& a, const ExtCoeffs& b);
// a >= b coefficientwise, with (infinity) on top.
bool ext_geq(const ExtCoeffs& a, const ExtCoeffs& b);

struct Stratification {
    int rank = 0;
    // Stratum closures as canonical rref bases; index 0 is always the zero
    // stratum (empty basis).  Pairwise distinct.
    std::vector<QMat> closures;
    // Derived order data.
    std::vector<std::vector<bool>> leq;   // leq[i][j]: closure_i <= closure_j
    std::vector<std::vector<int>> join;   // least upper bound table (-1 if none)
    int generic = -1;                     // stratum with closure = E, if any

    int size() const { return static_cast<int>(closures.size()); }
    int dim(int s) const { return static_cast<int>(closures[s].size()); }

    // Builds the derived data; violations of admissibility (missing zero
    // stratum, duplicate closures, join or meet failures) are appended to
    // *report if given, otherwise thrown as MathError("NotAdmissible").
    static Stratification build(int rank, std::vector<QMat> raw_closures,
                                std::vector<std::string>* report = nullptr);

    // Minimal stratum whose closure contains v (unique by admissibility).
    int stratum_of_point(const QVec& v) const;

    // Length of the longest strict chain of nonzero strata, minus one.
    int height() const;
};

struct WeilDecoration {
    const Fan* fan = nullptr;
    Stratification strat;
    std::vector<ExtCoeffs> divisor;  // per stratum; divisor[0] = (infinity)

    int rank() const { return strat.rank; }
    ToricDivisor divisor_of(int s) const { return ToricDivisor{fan, *divisor[s]}; }
};

struct MaterialisedDecoration {
    WeilDecoration base;
    long long k = 0;   // multiple of the fan's ample divisor used as twist
    ZVec twist;        // k * ample coefficients (length = #rays)
    bool positive = false;  // all twisted divisors nef
    bool ample = false;     // all twisted divisors ample

    // D+(S): twisted divisor coefficients; (infinity) for the zero stratum.
    ExtCoeffs twisted(int s) const;
};

// Construction from raw (closure, divisor) pairs; adds the zero stratum if
// missing, deduplicates, and throws SchemaError/MathError on violations.
WeilDecoration make_decoration(const Fan& fan, int rank,
                               std::vector<std::pair<QMat, ExtCoeffs>> strata);

// Full invariant check; returns a list of human-readable violations.
std::vector<std::string> validate(const WeilDecoration& dec);

WeilDecoration canonical_stratification(const WeilDecoration& dec);

WeilDecoration line_bundle(const Fan& fan, const ZVec& coeffs);
WeilDecoration direct_sum(const WeilDecoration& a, const WeilDecoration& b);
WeilDecoration twist(const WeilDecoration& dec, const ZVec& coeffs);
WeilDecoration hom_decoration(const WeilDecoration& src, const WeilDecoration& tgt,
                              int stratum_cap = 4096);
WeilDecoration dual_decoration(const WeilDecoration& dec, int stratum_cap = 4096);

// The unique stratum containing a generic point of the subspace V != 0;
// deterministic avoidance search, no randomness.
int generic_stratum(const WeilDecoration& dec, const QMat& v_basis);

// Deterministic point of span(basis) avoiding every subspace in `avoid` that
// does not contain the whole span.
QVec generic_point(const QMat& basis, const std::vector<QMat>& avoid, int ambient);

// E^l_rho: span of closures of strata whose divisor coefficient at the ray is
// >= l.
QMat klyachko_filtration(const WeilDecoration& dec, int ray, long long level);

// Evaluation space over a (not necessarily maximal) cone in degree m.
QMat eval_sigma(const WeilDecoration& dec, const Cone& sigma, const ZVec& m);

// Global evaluation space of a positive materialisation in degree m.
QMat eval_global(const MaterialisedDecoration& mat, const ZVec& m);

enum class TwistGoal { Positive, Ample };
MaterialisedDecoration materialise(const WeilDecoration& dec, TwistGoal goal);
MaterialisedDecoration materialise(const WeilDecoration& dec, long long k);

bool is_locally_free(const WeilDecoration& dec);

std::string hasse_dot(const WeilDecoration& dec);

}  // namespace toric

#endif
