#ifndef TORIC_FAN_HPP
#define TORIC_FAN_HPP

// Lattices, cones and smooth complete fans, together with the orientation
// data used by the Cech-type complexes.  Rays are globally ordered by input
// order; every cone is stored as its sorted set of ray indices (legitimate
// because all fans here are simplicial).

#include "toric/errors.hpp"
#include "toric/rational.hpp"

#include <optional>
#include <vector>

namespace toric {

struct Cone {
    std::vector<int> rays;  // sorted ascending indices into Fan::rays
    int dim() const { return static_cast<int>(rays.size()); }
    bool operator==(const Cone& o) const { return rays == o.rays; }
    bool operator<(const Cone& o) const {
        if (rays.size() != o.rays.size()) return rays.size() < o.rays.size();
        return rays < o.rays;
    }
};

struct Fan {
    int n = 0;                       // rank of the lattice
    std::vector<ZVec> rays;          // primitive N-side generators
    std::vector<Cone> max_cones;     // dimension n each
    std::optional<ZVec> ample;       // ample divisor coefficients, if known
    std::vector<std::vector<Cone>> cones_by_dim;  // derived faces, dims 0..n

    // All cones of every dimension, ordered by (dim, ray set).
    std::vector<Cone> all_cones() const;

    bool is_complete() const { return complete_; }

    // Construct from explicit data; validates smoothness, primitivity and
    // fan axioms.  Completeness is recorded, not required (cohomology
    // operations check it themselves).
    static Fan from_rays_and_cones(std::vector<ZVec> rays,
                                   std::vector<Cone> max_cones);

    // Normal fan of a full-dimensional ample lattice polytope; records the
    // ample divisor of the polytope.
    static Fan from_ample_polytope(const std::vector<ZVec>& vertices);

private:
    bool complete_ = false;
    void derive_faces();
    void validate();
};

// Dual Z-basis {m_i} of a smooth maximal cone: <m_i, rho_j> = delta_ij.
std::vector<ZVec> dual_cone_generators(const Fan& fan, const Cone& sigma);

// Simplicial orientation sign for a facet tau of sigma: (-1)^i where i is the
// position of the omitted ray index in sigma's sorted ray list.
int facet_sign(const Cone& tau, const Cone& sigma);

}  // namespace toric

#endif
