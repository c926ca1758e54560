#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toric/cellcx.hpp"
#include "toric/errors.hpp"

using namespace toric;

namespace {

Fan p2() { return Fan::from_ample_polytope({{0, 0}, {1, 0}, {0, 1}}); }

LatticePolyhedron scaled_simplex(const Fan& fan, long long k) {
    ZVec a(fan.rays.size(), 0);
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
        if (fan.rays[i] == ZVec{-1, -1}) a[i] = k;
    return section_polyhedron(ToricDivisor{&fan, a});
}

LatticePolyhedron point(const ZVec& p) {
    std::vector<std::pair<ZVec, Rat>> hrep;
    const int n = static_cast<int>(p.size());
    for (int i = 0; i < n; ++i) {
        ZVec e(n, 0), f(n, 0);
        e[i] = 1;
        f[i] = -1;
        hrep.push_back({e, Rat(p[i])});
        hrep.push_back({f, Rat(-p[i])});
    }
    return LatticePolyhedron::from_inequalities(n, std::move(hrep));
}

long long cell_count(const CellComplex& cx, int dim) {
    return static_cast<long long>(cx.by_dim[dim].size());
}

Subcomplex everything(const CellComplex& cx) {
    return Subcomplex(cx.cells.size(), 1);
}

bool all_zero(const std::vector<int>& v) {
    for (int x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("subdivision of the 4-simplex by the unit simplex") {
    Fan fan = p2();
    LatticePolyhedron big = scaled_simplex(fan, 4);
    LatticePolyhedron small = scaled_simplex(fan, 1);
    CellComplex cx = subdivide(big, {small});
    // only x+y = 1 cuts; x = 0 and y = 0 support the boundary
    CHECK(cell_count(cx, 2) == 2);
    CHECK(cell_count(cx, 1) == 6);
    CHECK(cell_count(cx, 0) == 5);
    // Euler check
    CHECK(reduced_euler(cx, everything(cx)) == 0);
    // the small simplex is a closed subcomplex with 7 cells
    Subcomplex in_small = inside(cx, small);
    CHECK(subcomplex_closed(cx, in_small));
    CHECK(std::count(in_small.begin(), in_small.end(), 1) == 7);
    CHECK(reduced_euler(cx, in_small) == 0);
    // samples are interior: the top cells' samples lie strictly on one side
    for (int c : cx.by_dim[2])
        CHECK(cx.cells[c].sample[0] + cx.cells[c].sample[1] != 1);
}

TEST_CASE("trivial subdivisions") {
    Fan fan = p2();
    LatticePolyhedron tri = scaled_simplex(fan, 2);
    CellComplex none = subdivide(tri, {});
    CHECK(none.cells.size() == 7);
    CellComplex self = subdivide(tri, {tri});
    CHECK(self.cells.size() == 7);
    CHECK(reduced_euler(none, everything(none)) == 0);

    // dimension cap
    CHECK_THROWS_AS(subdivide(tri, {}, 1), MathError);
}

TEST_CASE("reduced cohomology basics") {
    Fan fan = p2();
    LatticePolyhedron tri = scaled_simplex(fan, 2);
    CellComplex cx = subdivide(tri, {scaled_simplex(fan, 1)});

    SUBCASE("empty subcomplex has H~^-1 = 1") {
        Subcomplex none(cx.cells.size(), 0);
        std::vector<int> h = reduced_cohomology(cx, none);
        REQUIRE(!h.empty());
        CHECK(h[0] == 1);
        CHECK(all_zero(std::vector<int>(h.begin() + 1, h.end())));
        CHECK(reduced_euler(cx, none) == -1);
    }

    SUBCASE("the whole complex is contractible") {
        std::vector<int> h = reduced_cohomology(cx, everything(cx));
        CHECK(all_zero(h));
    }

    SUBCASE("the boundary of a triangle is a circle") {
        // cells whose relative interior lies on the boundary of the ambient
        Subcomplex boundary = carrier(
            cx,
            [&](const Cell& cell) {
                for (const auto& [a, b] : tri.hrep) {
                    Rat val = 0;
                    for (std::size_t i = 0; i < cell.sample.size(); ++i)
                        val += cell.sample[i] * a[i];
                    if (val == b) return true;
                }
                return false;
            },
            false);
        CHECK(subcomplex_closed(cx, boundary));
        std::vector<int> h = reduced_cohomology(cx, boundary);
        REQUIRE(h.size() >= 3);
        CHECK(h[0] == 0);
        CHECK(h[1] == 0);
        CHECK(h[2] == 1);
        CHECK(reduced_euler(cx, boundary) == -1);  // chi of a circle is 0
    }
}

TEST_CASE("line bundle O(-3) on P^2 via the polytope picture") {
    Fan fan = p2();
    LatticePolyhedron delta = scaled_simplex(fan, 4);  // ambient of the +4 twist
    LatticePolyhedron cutter = scaled_simplex(fan, 1);  // materialised divisor polytope

    SUBCASE("degree (-1,-1): an annulus, H~^1 = 1") {
        LatticePolyhedron ambient = translate(delta, {-1, -1});
        CellComplex cx = subdivide(ambient, {cutter});
        Subcomplex p = outside_interior(cx, cutter, true);
        CHECK(subcomplex_closed(cx, p));
        std::vector<int> h = reduced_cohomology(cx, p);
        REQUIRE(h.size() >= 3);
        CHECK(h[0] == 0);
        CHECK(h[1] == 0);
        CHECK(h[2] == 1);

        // relative cochain complex: H^2(Delta, P) = 1, everything else 0
        OrderComplex oc = order_complex(cx);
        RelativeCochains rc = relative_cochain_complex(oc, cx, p);
        std::vector<int> hr = relative_cohomology(rc);
        REQUIRE(hr.size() >= 3);
        CHECK(hr[0] == 0);
        CHECK(hr[1] == 0);
        CHECK(hr[2] == 1);

        // homotopy equivalence cross-check: complement of the closed cutter
        Subcomplex away = carrier(
            cx, [&](const Cell& cell) { return !cutter.contains(cell.sample); }, true);
        CHECK(reduced_cohomology(cx, away) == h);
    }

    SUBCASE("degree 0: interior relaxation at the shared corner makes P contractible") {
        CellComplex cx = subdivide(delta, {cutter});
        Subcomplex relaxed = outside_interior(cx, cutter, true);
        CHECK(all_zero(reduced_cohomology(cx, relaxed)));
        // without relaxation the hole does not touch the boundary and a
        // spurious circle appears
        Subcomplex strict = outside_interior(cx, cutter, false);
        std::vector<int> h = reduced_cohomology(cx, strict);
        REQUIRE(h.size() >= 3);
        CHECK(h[2] == 1);
    }

    SUBCASE("cutter outside the window: P is everything") {
        LatticePolyhedron ambient = translate(delta, {3, 3});
        CellComplex cx = subdivide(ambient, {cutter});
        Subcomplex p = outside_interior(cx, cutter, true);
        CHECK(std::count(p.begin(), p.end(), 1) ==
              static_cast<long long>(cx.cells.size()));
        CHECK(all_zero(reduced_cohomology(cx, p)));
    }
}

TEST_CASE("relative cochains: trivial subcomplexes") {
    Fan fan = p2();
    CellComplex cx = subdivide(scaled_simplex(fan, 2), {scaled_simplex(fan, 1)});
    OrderComplex oc = order_complex(cx);

    Subcomplex none(cx.cells.size(), 0);
    std::vector<int> h = relative_cohomology(relative_cochain_complex(oc, cx, none));
    CHECK(h[0] == 1);
    CHECK(all_zero(std::vector<int>(h.begin() + 1, h.end())));

    RelativeCochains zero = relative_cochain_complex(oc, cx, everything(cx));
    for (const auto& basis : zero.basis) CHECK(basis.empty());
    CHECK(all_zero(relative_cohomology(zero)));

    // alternating sum of relative ranks = chi(K) - chi(sub)
    Subcomplex half = inside(cx, scaled_simplex(fan, 1));
    RelativeCochains rc = relative_cochain_complex(oc, cx, half);
    long long alt = 0, sign = 1;
    for (const auto& basis : rc.basis) {
        alt += sign * static_cast<long long>(basis.size());
        sign = -sign;
    }
    CHECK(alt == (reduced_euler(cx, everything(cx)) - reduced_euler(cx, half)));
}

TEST_CASE("refinement invariance of reduced cohomology") {
    Fan fan = p2();
    LatticePolyhedron delta = translate(scaled_simplex(fan, 4), {-1, -1});
    LatticePolyhedron cutter = scaled_simplex(fan, 1);
    // refine with an extra unrelated cutter
    LatticePolyhedron extra = point({1, 1});
    CellComplex coarse = subdivide(delta, {cutter});
    CellComplex fine = subdivide(delta, {cutter, extra});
    CHECK(fine.cells.size() > coarse.cells.size());
    Subcomplex pc = outside_interior(coarse, cutter, true);
    Subcomplex pf = outside_interior(fine, cutter, true);
    std::vector<int> hc = reduced_cohomology(coarse, pc);
    std::vector<int> hf = reduced_cohomology(fine, pf);
    hc.resize(4, 0);
    hf.resize(4, 0);
    CHECK(hc == hf);
    CHECK(reduced_euler(coarse, pc) == reduced_euler(fine, pf));
}

TEST_CASE("connected components") {
    Fan fan = Fan::from_ample_polytope({{0, 0}, {2, 0}, {1, 1}, {0, 1}});  // F1

    // nabla- = conv{(0,0),(2,0),(0,2)}, nabla+ = segment conv{(0,1),(1,1)}
    ZVec dminus(4), dplus(4);
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        const ZVec& r = fan.rays[i];
        dminus[i] = -std::min({0LL, 2 * r[0], 2 * r[1]});
        dplus[i] = -std::min(r[1], r[0] + r[1]);
    }
    LatticePolyhedron nm = section_polyhedron(ToricDivisor{&fan, dminus});
    LatticePolyhedron np = section_polyhedron(ToricDivisor{&fan, dplus});

    CellComplex cx = subdivide(nm, {np});
    Subcomplex interest = carrier(
        cx,
        [&](const Cell& cell) {
            for (const QVec& v : cell.vrep)
                if (!np.contains(v)) return true;
            return false;
        },
        false);
    std::vector<std::vector<int>> comps = connected_components(cx, interest);
    REQUIRE(comps.size() == 2);

    // nabla+ containing nabla-: no components
    Subcomplex nothing(cx.cells.size(), 0);
    CHECK(connected_components(cx, nothing).empty());
}
