#ifndef TORIC_MORPHISM_HPP
#define TORIC_MORPHISM_HPP

// Morphisms of decorated sheaves: compatibility checking, exactness and
// surjectivity via evaluation spaces, kernels, and the canonical resolution
// by split bundles indexed by strict chains of strata.

#include "toric/decoration.hpp"

#include <functional>
#include <string>
#include <vector>

namespace toric {

struct DecorationMorphism {
    const WeilDecoration* source = nullptr;
    const WeilDecoration* target = nullptr;
    // target.rank x source.rank matrix acting on column vectors.
    QMat matrix;
};

// Inclusive lattice box in the character lattice M.
struct DegreeBox {
    ZVec lo, hi;
};

void for_each_degree(const DegreeBox& box, const std::function<void(const ZVec&)>& fn);

// Compatibility report: divisor_src(S) <= divisor_tgt(generic stratum of the
// image of closure(S)) for every nonzero stratum with nonzero image.
std::vector<std::string> check_morphism(const DecorationMorphism& phi);

struct ExactnessReport {
    bool exact = true;
    std::string reason;   // empty when exact
    Cone sigma;           // witness cone (empty for the vector-space check)
    ZVec m;               // witness degree
    int position = -1;    // failing spot in the sequence (0 = leftmost space)
};

// Exactness of 0 -> E_0 -> ... -> E_k -> 0 on underlying vector spaces and on
// eval_sigma(m) for every maximal cone and every lattice degree in the box.
ExactnessReport is_exact(const std::vector<DecorationMorphism>& seq,
                         const DegreeBox& box);

// Surjectivity of the global evaluation maps after a shared positive
// materialisation of source and target.
bool is_surjective(const DecorationMorphism& phi, const DegreeBox& box);

WeilDecoration kernel_decoration(const DecorationMorphism& phi);

// Canonical resolution ... -> C_1 -> C_0 -> E -> 0.  The term at homological
// degree l is indexed by strict chains S_0 < ... < S_l of nonzero strata and
// carries closure(S_0) tensor the line bundle of divisor(S_l); differentials
// follow the alternating omission rule.  d.d = 0 is verified on construction.
struct ChainComplexOverStrata {
    const WeilDecoration* dec = nullptr;
    // chains[l] = all strict chains with l+1 entries (stratum indices,
    // strictly increasing in the closure order), lexicographically sorted.
    std::vector<std::vector<std::vector<int>>> chains;
};

ChainComplexOverStrata canonical_resolution(const WeilDecoration& dec, int max_len);

// Homology dimensions of the augmented complex evaluated at (sigma, m):
// entry 0 is at the evaluation space, entry l+1 at C_l.  All zero = exact.
std::vector<int> resolution_homology(const ChainComplexOverStrata& cx,
                                     const Cone& sigma, const ZVec& m);

}  // namespace toric

#endif
