#include "toric/extension.hpp"

#include "toric/cohomology.hpp"
#include "toric/errors.hpp"

#include <algorithm>
#include <utility>

namespace toric {

namespace {

// Shared twist-and-subdivide setup for ext_dimension / universal_extension.
struct ExtSetup {
    const Fan* fan = nullptr;
    ToricDivisor q;  // untwisted meet of the inputs
    long long k = 0;
    ZVec tw;  // k * ample coefficients
    ToricDivisor dm_t, dp_t, q_t;
    LatticePolyhedron ambient, qpoly;
    CellComplex cx;
    // Sorted by lexicographically smallest cell sample point.
    std::vector<std::vector<int>> components;
};

ToricDivisor shift(const ToricDivisor& d, const ZVec& tw, long long sign) {
    ToricDivisor out = d;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += sign * tw[i];
    return out;
}

// A divisor whose section polytope is lattice, nonempty and round-trips to
// the divisor itself (no coefficient slack at any ray).
bool compatible_lattice(const ToricDivisor& d) {
    if (!is_nef(d)) return false;
    LatticePolyhedron p = section_polyhedron(d);
    if (p.is_empty() || !p.is_lattice()) return false;
    return divisor_of_polyhedron(*d.fan, p) == d;
}

QVec smallest_sample(const CellComplex& cx, const std::vector<int>& comp) {
    QVec best;
    for (int c : comp) {
        const QVec& s = cx.cells[c].sample;
        if (best.empty() || s < best) best = s;
    }
    return best;
}

ExtSetup ext_setup(const ToricDivisor& dminus, const ToricDivisor& dplus) {
    if (dminus.fan == nullptr || dminus.fan != dplus.fan)
        throw MathError("BadInput", "divisors must live on one fan");
    const Fan& fan = *dminus.fan;
    if (!fan.is_complete()) throw MathError("NotComplete", "extension needs a complete fan");
    if (!fan.ample) throw MathError("CannotAmplify", "fan has no recorded ample divisor");
    if (!is_nef(dminus) || !is_nef(dplus))
        throw MathError("NotNef", "extension inputs must be nef");

    ExtSetup s;
    s.fan = &fan;
    s.q = divisor_meet(dminus, dplus);
    const ZVec& ample = *fan.ample;
    s.k = minimal_twist([&](long long k) {
        ZVec tw(ample.size());
        for (std::size_t i = 0; i < tw.size(); ++i) tw[i] = k * ample[i];
        return is_ample(shift(dminus, tw, 1)) && compatible_lattice(shift(s.q, tw, 1));
    });
    s.tw.resize(ample.size());
    for (std::size_t i = 0; i < s.tw.size(); ++i) s.tw[i] = s.k * ample[i];
    s.dm_t = shift(dminus, s.tw, 1);
    s.dp_t = shift(dplus, s.tw, 1);
    s.q_t = shift(s.q, s.tw, 1);
    s.ambient = section_polyhedron(s.dm_t);
    s.qpoly = section_polyhedron(s.q_t);
    s.cx = subdivide(s.ambient, {s.qpoly});
    // Cells whose closure is not inside the meet polytope; the subdivision is
    // cut by every meet facet, so these are exactly the cells whose relative
    // interior avoids it.
    Subcomplex interest = carrier(
        s.cx,
        [&](const Cell& cell) {
            for (const QVec& v : cell.vrep)
                if (!s.qpoly.contains(v)) return true;
            return false;
        },
        false);
    s.components = connected_components(s.cx, interest);
    std::sort(s.components.begin(), s.components.end(),
              [&](const std::vector<int>& a, const std::vector<int>& b) {
                  return smallest_sample(s.cx, a) < smallest_sample(s.cx, b);
              });
    return s;
}

}  // namespace

std::vector<DecorationMorphism> ExtensionResult::sequence() const {
    return {DecorationMorphism{&sub, &decoration, iota},
            DecorationMorphism{&decoration, &quot, ones}};
}

int ext_dimension(const ToricDivisor& dminus, const ToricDivisor& dplus) {
    ExtSetup s = ext_setup(dminus, dplus);
    return std::max<int>(0, static_cast<int>(s.components.size()) - 1);
}

ToricDivisor component_polytope(const ToricDivisor& d_ambient, const ToricDivisor& d_q,
                                const CellComplex& cx,
                                const std::vector<int>& component) {
    const Fan& fan = *d_ambient.fan;
    ToricDivisor out{&fan, d_q.a};
    if (component.empty()) return out;
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        const ZVec& rho = fan.rays[i];
        // The open region of the ambient polytope violating the meet's ray
        // inequality meets the (open) component iff some component cell has a
        // vertex strictly inside the region.
        bool meets = false;
        for (int c : component) {
            for (const QVec& v : cx.cells[c].vrep) {
                Rat val = 0;
                for (std::size_t j = 0; j < v.size(); ++j) val += v[j] * rho[j];
                if (val < Rat(-d_q.a[i])) {
                    meets = true;
                    break;
                }
            }
            if (meets) break;
        }
        if (meets) out.a[i] = d_ambient.a[i];
    }
    // Verification: the union's vertices may only be vertices of the two
    // constituents.
    LatticePolyhedron p = section_polyhedron(out);
    LatticePolyhedron pq = section_polyhedron(d_q);
    LatticePolyhedron pa = section_polyhedron(d_ambient);
    for (const QVec& v : p.vertices) {
        bool known = std::binary_search(pq.vertices.begin(), pq.vertices.end(), v) ||
                     std::binary_search(pa.vertices.begin(), pa.vertices.end(), v);
        if (!known)
            throw MathError("VertexLeak",
                            "component union has a vertex outside the inputs");
    }
    return out;
}

ExtensionResult universal_extension(const ToricDivisor& dminus,
                                    const ToricDivisor& dplus) {
    ExtSetup s = ext_setup(dminus, dplus);
    const Fan& fan = *s.fan;
    ExtensionResult res;
    res.twist = s.k;

    for (const auto& comp : s.components)
        res.component_divisors.push_back(component_polytope(s.dm_t, s.q_t, s.cx, comp));

    const bool has_ker = !(s.q.a == dplus.a);  // meet a proper part of D+
    res.split = !has_ker || s.components.empty();

    if (s.components.size() <= 1) {
        // Connected (or empty) difference: no nontrivial extensions.
        res.ext_dim = 0;
        res.degenerate = true;
        res.decoration = line_bundle(fan, dminus.a);
        res.sub = make_decoration(fan, 0, {});
        res.quot = line_bundle(fan, dminus.a);
        res.iota = QMat{QVec{}};  // 1 x 0
        res.ones = identity_matrix(1);
    } else {
        const int n_comp = static_cast<int>(s.components.size());
        const int r = n_comp;  // rank s+1
        res.ext_dim = n_comp - 1;
        std::vector<std::pair<QMat, ExtCoeffs>> strata;
        for (int nu = 0; nu < n_comp; ++nu) {
            QVec e(r, Rat(0));
            e[nu] = 1;
            strata.push_back({QMat{e}, shift(res.component_divisors[nu], s.tw, -1).a});
        }
        QMat ones_row{QVec(r, Rat(1))};
        if (has_ker) strata.push_back({kernel_basis(ones_row, r), dplus.a});
        strata.push_back({identity_matrix(r), s.q.a});
        res.decoration = make_decoration(fan, r, std::move(strata));

        const int sdim = res.ext_dim;
        res.sub = make_decoration(fan, sdim, {{identity_matrix(sdim), dplus.a}});
        res.quot = line_bundle(fan, dminus.a);
        res.iota.assign(r, QVec(sdim, Rat(0)));
        for (int j = 0; j < sdim; ++j) {
            res.iota[0][j] = -1;  // columns e_{j+1} - e_0 span ker(1...1)
            res.iota[j + 1][j] = 1;
        }
        res.ones = ones_row;
    }

    for (const DecorationMorphism& phi : res.sequence()) {
        std::vector<std::string> bad = check_morphism(phi);
        if (!bad.empty()) throw MathError("NotCompatible", bad.front());
    }
    DegreeBox box = degree_support_box(res.decoration);
    for (const WeilDecoration* dec : {&res.sub, &res.quot}) {
        if (dec->rank() == 0) continue;
        DegreeBox b = degree_support_box(*dec);
        for (std::size_t i = 0; i < box.lo.size(); ++i) {
            box.lo[i] = std::min(box.lo[i], b.lo[i]);
            box.hi[i] = std::max(box.hi[i], b.hi[i]);
        }
    }
    ExactnessReport rep = is_exact(res.sequence(), box);
    if (!rep.exact) throw MathError("NotExact", rep.reason);
    return res;
}

}  // namespace toric
