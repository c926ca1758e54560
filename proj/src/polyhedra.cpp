#include "toric/polyhedra.hpp"

#include "toric/linalg.hpp"

#include <algorithm>

namespace toric {

namespace {

void check_same_fan(const ToricDivisor& d1, const ToricDivisor& d2) {
    if (d1.fan != d2.fan) throw MathError("FanMismatch", "divisors on different fans");
}

}  // namespace

bool LatticePolyhedron::is_lattice() const {
    for (const QVec& v : vertices)
        for (const Rat& x : v)
            if (!is_integral(x)) return false;
    return !vertices.empty();
}

bool LatticePolyhedron::contains(const QVec& point) const {
    if (is_empty()) return false;
    for (const auto& [normal, offset] : hrep)
        if (dot(point, normal) < offset) return false;
    return true;
}

bool LatticePolyhedron::contains_polyhedron(const LatticePolyhedron& other) const {
    if (other.is_empty()) return true;
    for (const QVec& v : other.vertices)
        if (!contains(v)) return false;
    return true;
}

LatticePolyhedron LatticePolyhedron::empty(int n) {
    LatticePolyhedron p;
    p.n = n;
    p.hrep_infeasible_ = true;
    return p;
}

LatticePolyhedron LatticePolyhedron::from_inequalities(
    int n, std::vector<std::pair<ZVec, Rat>> hrep) {
    LatticePolyhedron p;
    p.n = n;
    p.vertices = enumerate_vertices(n, hrep);
    p.hrep = std::move(hrep);
    p.hrep_infeasible_ = p.vertices.empty();
    return p;
}

std::vector<QVec> enumerate_vertices(int n,
                                     const std::vector<std::pair<ZVec, Rat>>& ineqs) {
    // A vertex of a bounded polyhedron is a feasible intersection of n
    // linearly independent active constraints; enumerate all n-subsets.
    const int m = static_cast<int>(ineqs.size());
    std::vector<QVec> vertices;
    if (m < n) return vertices;
    std::vector<int> comb(n);
    for (int i = 0; i < n; ++i) comb[i] = i;
    for (;;) {
        QMat sys;
        QVec rhs;
        for (int i : comb) {
            sys.push_back(to_qvec(ineqs[i].first));
            rhs.push_back(ineqs[i].second);
        }
        bool singular = false;
        QVec x;
        try {
            x = solve_square(sys, rhs);
        } catch (const std::domain_error&) {
            singular = true;
        }
        if (!singular) {
            bool feasible = true;
            for (const auto& [normal, offset] : ineqs)
                if (dot(x, normal) < offset) { feasible = false; break; }
            if (feasible) vertices.push_back(std::move(x));
        }
        int i = n - 1;
        while (i >= 0 && comb[i] == m - n + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

ToricDivisor principal_divisor(const Fan& fan, const ZVec& m) {
    ToricDivisor d{&fan, ZVec(fan.rays.size())};
    for (std::size_t i = 0; i < fan.rays.size(); ++i) d.a[i] = dot(m, fan.rays[i]);
    return d;
}

ToricDivisor divisor_meet(const ToricDivisor& d1, const ToricDivisor& d2) {
    check_same_fan(d1, d2);
    ToricDivisor d{d1.fan, d1.a};
    for (std::size_t i = 0; i < d.a.size(); ++i) d.a[i] = std::min(d1.a[i], d2.a[i]);
    return d;
}

ExtDivisor divisor_meet(const ExtDivisor& d1, const ExtDivisor& d2) {
    if (!d1) return d2;  // (infinity) is neutral for the meet
    if (!d2) return d1;
    return divisor_meet(*d1, *d2);
}

ToricDivisor divisor_add(const ToricDivisor& d1, const ToricDivisor& d2) {
    check_same_fan(d1, d2);
    ToricDivisor d{d1.fan, d1.a};
    for (std::size_t i = 0; i < d.a.size(); ++i) d.a[i] = d1.a[i] + d2.a[i];
    return d;
}

ToricDivisor divisor_scale(const ToricDivisor& d, long long k) {
    ToricDivisor out{d.fan, d.a};
    for (long long& x : out.a) x *= k;
    return out;
}

LatticePolyhedron section_polyhedron(const ToricDivisor& d) {
    const Fan& fan = *d.fan;
    if (!fan.is_complete())
        throw MathError("NotComplete", "section polyhedra require a complete fan");
    std::vector<std::pair<ZVec, Rat>> ineqs;
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
        ineqs.emplace_back(fan.rays[i], Rat(-d.a[i]));
    return LatticePolyhedron::from_inequalities(fan.n, std::move(ineqs));
}

LatticePolyhedron translate(const LatticePolyhedron& p, const ZVec& m) {
    LatticePolyhedron out = p;
    for (QVec& v : out.vertices)
        for (std::size_t c = 0; c < v.size(); ++c) v[c] += Rat(m[c]);
    for (auto& [normal, offset] : out.hrep) offset += Rat(dot(m, normal));
    return out;
}

ToricDivisor divisor_of_polyhedron(const Fan& fan, const LatticePolyhedron& p) {
    if (p.is_empty())
        throw MathError("EmptyPolyhedron", "no divisor for the empty polyhedron");
    if (!p.tail_rays.empty() && fan.is_complete())
        throw MathError("TailMismatch", "complete fan requires a compact polyhedron");
    ToricDivisor d{&fan, ZVec(fan.rays.size())};
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        Rat mn = dot(p.vertices[0], fan.rays[i]);
        for (const QVec& v : p.vertices) mn = std::min(mn, dot(v, fan.rays[i]));
        if (!is_integral(mn))
            throw MathError("NotLattice", "polyhedron support value is fractional");
        d.a[i] = -to_ll(mn);
    }
    return d;
}

QVec cone_vertex(const ToricDivisor& d, const Cone& sigma) {
    const Fan& fan = *d.fan;
    QMat sys;
    QVec rhs;
    for (int i : sigma.rays) {
        sys.push_back(to_qvec(fan.rays[i]));
        rhs.push_back(Rat(-d.a[i]));
    }
    return solve_square(sys, rhs);
}

bool is_nef(const ToricDivisor& d) {
    const Fan& fan = *d.fan;
    if (!fan.is_complete())
        throw MathError("NotComplete", "nef test requires a complete fan");
    for (const Cone& sigma : fan.max_cones) {
        const QVec m = cone_vertex(d, sigma);
        for (std::size_t i = 0; i < fan.rays.size(); ++i)
            if (dot(m, fan.rays[i]) < Rat(-d.a[i])) return false;
    }
    return true;
}

bool is_ample(const ToricDivisor& d) {
    const Fan& fan = *d.fan;
    if (!fan.is_complete())
        throw MathError("NotComplete", "ample test requires a complete fan");
    std::vector<QVec> cone_vertices;
    for (const Cone& sigma : fan.max_cones) {
        const QVec m = cone_vertex(d, sigma);
        for (std::size_t i = 0; i < fan.rays.size(); ++i) {
            const bool in_sigma =
                std::binary_search(sigma.rays.begin(), sigma.rays.end(), static_cast<int>(i));
            const Rat val = dot(m, fan.rays[i]);
            if (in_sigma ? val != Rat(-d.a[i]) : val <= Rat(-d.a[i])) return false;
        }
        cone_vertices.push_back(m);
    }
    std::sort(cone_vertices.begin(), cone_vertices.end());
    return std::adjacent_find(cone_vertices.begin(), cone_vertices.end()) ==
           cone_vertices.end();
}

LatticePolyhedron minkowski_sum(const Fan& fan, const LatticePolyhedron& p,
                                const LatticePolyhedron& q) {
    if (p.tail_rays != q.tail_rays)
        throw MathError("TailMismatch", "Minkowski sum needs equal tail cones");
    const ToricDivisor dp = divisor_of_polyhedron(fan, p);
    const ToricDivisor dq = divisor_of_polyhedron(fan, q);
    if (!section_polyhedron(dp).vertices.empty() &&
        section_polyhedron(dp).vertices != p.vertices)
        throw MathError("NotCompatible", "summand is not Sigma-compatible");
    if (section_polyhedron(dq).vertices != q.vertices)
        throw MathError("NotCompatible", "summand is not Sigma-compatible");
    return section_polyhedron(divisor_add(dp, dq));
}

long long minimal_twist(const std::function<bool(long long)>& pred, long long bound) {
    if (pred(0)) return 0;
    long long hi = 1;
    while (!pred(hi)) {
        hi *= 2;
        if (hi > bound)
            throw MathError("CannotAmplify", "no admissible twist below the bound");
    }
    long long lo = hi / 2;  // pred(lo) false, pred(hi) true
    while (lo + 1 < hi) {
        const long long mid = lo + (hi - lo) / 2;
        (pred(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace toric
