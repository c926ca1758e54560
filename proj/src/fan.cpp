#include "toric/fan.hpp"

#include "toric/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toric {

namespace {

Rat det_q(QMat m) {
    const int n = static_cast<int>(m.size());
    Rat det = 1;
    for (int col = 0; col < n; ++col) {
        int sel = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) { sel = r; break; }
        if (sel < 0) return 0;
        if (sel != col) { std::swap(m[sel], m[col]); det = -det; }
        det *= m[col][col];
        for (int r = col + 1; r < n; ++r) {
            const Rat f = m[r][col] / m[col][col];
            for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

// Primitive integer normal of the hyperplane spanned by the rows of diffs
// (rank n-1 expected); empty if the rank is wrong.
ZVec hyperplane_normal(const QMat& diffs, int n) {
    QMat ker = kernel_basis(diffs, n);
    if (ker.size() != 1) return {};
    Int lcm = 1;
    for (const Rat& x : ker[0]) {
        const Int d = denominator(x);
        lcm = lcm / gcd(lcm, d) * d;
    }
    ZVec v(n);
    for (int i = 0; i < n; ++i) {
        const Rat scaled = ker[0][i] * Rat(lcm);
        v[i] = static_cast<long long>(numerator(scaled));
    }
    return primitive(v);
}

}  // namespace

std::vector<Cone> Fan::all_cones() const {
    std::vector<Cone> out;
    for (const auto& level : cones_by_dim)
        out.insert(out.end(), level.begin(), level.end());
    return out;
}

void Fan::derive_faces() {
    cones_by_dim.assign(n + 1, {});
    std::set<Cone> seen;
    for (const Cone& sigma : max_cones) {
        const int d = sigma.dim();
        // Smooth fans are simplicial: faces are exactly the ray subsets.
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            Cone face;
            for (int i = 0; i < d; ++i)
                if (mask & (1u << i)) face.rays.push_back(sigma.rays[i]);
            if (seen.insert(face).second) cones_by_dim[face.dim()].push_back(face);
        }
    }
    for (auto& level : cones_by_dim) std::sort(level.begin(), level.end());
}

void Fan::validate() {
    if (n <= 0) throw MathError("NotFullDim", "empty lattice rank");
    for (const ZVec& r : rays) {
        if (static_cast<int>(r.size()) != n)
            throw MathError("RankMismatch", "ray of wrong length");
        if (primitive(r) != r || r == ZVec(n, 0))
            throw MathError("NotPrimitive", "ray generator not primitive");
    }
    for (const Cone& sigma : max_cones) {
        if (sigma.dim() != n)
            throw MathError("NonSmooth", "maximal cone without n rays");
        if (!std::is_sorted(sigma.rays.begin(), sigma.rays.end()) ||
            std::adjacent_find(sigma.rays.begin(), sigma.rays.end()) != sigma.rays.end())
            throw MathError("NonSmooth", "cone ray indices not strictly sorted");
        QMat gens;
        for (int i : sigma.rays) {
            if (i < 0 || i >= static_cast<int>(rays.size()))
                throw SchemaError("cone ray index out of range");
            gens.push_back(to_qvec(rays[i]));
        }
        const Rat d = det_q(gens);
        if (d != 1 && d != -1)
            throw MathError("NonSmooth", "maximal cone is not unimodular");
    }
    derive_faces();

    // Completeness: every facet of a maximal cone is shared by exactly two
    // maximal cones lying on opposite sides of the facet's hyperplane, and
    // the maximal cones are connected through facets.  Sufficient in the
    // smooth simplicial case.
    if (n == 1) {
        std::set<long long> dirs;
        for (const ZVec& r : rays) dirs.insert(r[0]);
        complete_ = dirs.count(1) && dirs.count(-1);
        return;
    }
    std::map<std::vector<int>, std::vector<int>> facet_owners;  // facet -> max cone ids
    for (std::size_t s = 0; s < max_cones.size(); ++s)
        for (int omit = 0; omit < n; ++omit) {
            std::vector<int> f = max_cones[s].rays;
            f.erase(f.begin() + omit);
            facet_owners[f].push_back(static_cast<int>(s));
        }
    bool complete = true;
    std::vector<std::vector<int>> adj(max_cones.size());
    for (const auto& [facet, owners] : facet_owners) {
        if (owners.size() != 2) { complete = false; continue; }
        QMat diffs;
        for (int i : facet) diffs.push_back(to_qvec(rays[i]));
        const ZVec normal = hyperplane_normal(diffs, n);
        if (normal.empty()) throw MathError("NonSmooth", "degenerate facet");
        long long side[2];
        for (int k = 0; k < 2; ++k) {
            const Cone& sigma = max_cones[owners[k]];
            int missing = -1;
            for (int i : sigma.rays)
                if (!std::binary_search(facet.begin(), facet.end(), i)) missing = i;
            side[k] = dot(normal, rays[missing]);
        }
        if (side[0] == 0 || side[1] == 0 || (side[0] > 0) == (side[1] > 0))
            throw MathError("NotAFan", "facet-sharing cones overlap");
        adj[owners[0]].push_back(owners[1]);
        adj[owners[1]].push_back(owners[0]);
    }
    if (complete && !max_cones.empty()) {
        std::vector<bool> seen(max_cones.size(), false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int o : adj[c])
                if (!seen[o]) { seen[o] = true; stack.push_back(o); }
        }
        complete = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }
    complete_ = complete && !max_cones.empty();
}

Fan Fan::from_rays_and_cones(std::vector<ZVec> rays, std::vector<Cone> max_cones) {
    Fan fan;
    if (rays.empty()) throw SchemaError("fan without rays");
    fan.n = static_cast<int>(rays[0].size());
    fan.rays = std::move(rays);
    fan.max_cones = std::move(max_cones);
    for (Cone& c : fan.max_cones) std::sort(c.rays.begin(), c.rays.end());
    std::sort(fan.max_cones.begin(), fan.max_cones.end());
    fan.validate();
    return fan;
}

Fan Fan::from_ample_polytope(const std::vector<ZVec>& vertices_in) {
    if (vertices_in.empty()) throw SchemaError("empty vertex list");
    const int n = static_cast<int>(vertices_in[0].size());
    std::vector<ZVec> vertices = vertices_in;
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    const int v = static_cast<int>(vertices.size());
    {
        QMat diffs;
        for (int i = 1; i < v; ++i) {
            QVec d(n);
            for (int c = 0; c < n; ++c) d[c] = Rat(vertices[i][c] - vertices[0][c]);
            diffs.push_back(std::move(d));
        }
        if (rank(diffs) != n)
            throw MathError("NotFullDim", "polytope is not full-dimensional");
    }

    // Facets: hyperplanes through n affinely independent vertices with all
    // vertices on the non-negative side and a full-dimensional active set.
    std::map<ZVec, long long> facets;  // inner normal -> offset (min value)
    std::vector<int> comb(n);          // current n-subset of vertex indices
    for (int i = 0; i < n; ++i) comb[i] = i;
    for (;;) {
        QMat diffs;
        for (int i = 1; i < n; ++i) {
            QVec d(n);
            for (int c = 0; c < n; ++c)
                d[c] = Rat(vertices[comb[i]][c] - vertices[comb[0]][c]);
            diffs.push_back(std::move(d));
        }
        ZVec normal = n == 1 ? ZVec{1} : hyperplane_normal(diffs, n);
        if (!normal.empty()) {
            const long long off0 = dot(normal, vertices[comb[0]]);
            long long mn = off0, mx = off0;
            for (const ZVec& vert : vertices) {
                const long long val = dot(normal, vert);
                mn = std::min(mn, val);
                mx = std::max(mx, val);
            }
            if (mx > mn && (off0 == mn || off0 == mx)) {
                if (off0 == mx)  // flip to the inner orientation
                    for (long long& x : normal) x = -x;
                const long long off = off0 == mx ? -mx : mn;
                // Supporting hyperplane; record it if the active vertex set
                // spans affine dimension n-1 (an honest facet).
                QMat active_diffs;
                const ZVec* first = nullptr;
                for (const ZVec& vert : vertices)
                    if (dot(normal, vert) == off) {
                        if (!first) { first = &vert; continue; }
                        QVec d(n);
                        for (int c = 0; c < n; ++c) d[c] = Rat(vert[c] - (*first)[c]);
                        active_diffs.push_back(std::move(d));
                    }
                if (n == 1 || rank(active_diffs) == n - 1) facets[normal] = off;
            }
        }
        // next combination
        int i = n - 1;
        while (i >= 0 && comb[i] == v - n + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
    }

    std::vector<ZVec> rays;
    ZVec ample;
    for (const auto& [normal, off] : facets) {
        rays.push_back(normal);
        ample.push_back(-off);
    }
    std::vector<Cone> cones;
    for (const ZVec& vert : vertices) {
        Cone sigma;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (dot(rays[i], vert) == -ample[i]) sigma.rays.push_back(static_cast<int>(i));
        if (sigma.dim() != n)
            throw MathError("NonSmooth", "vertex cone is not simplicial");
        cones.push_back(std::move(sigma));
    }
    Fan fan = from_rays_and_cones(std::move(rays), std::move(cones));
    if (!fan.is_complete())
        throw MathError("NotAFan", "normal fan failed the completeness check");
    fan.ample = std::move(ample);
    return fan;
}

std::vector<ZVec> dual_cone_generators(const Fan& fan, const Cone& sigma) {
    if (sigma.dim() != fan.n)
        throw MathError("NonSmooth", "dual basis requires a maximal cone");
    QMat gens;
    for (int i : sigma.rays) gens.push_back(to_qvec(fan.rays[i]));
    std::vector<ZVec> duals;
    for (int k = 0; k < fan.n; ++k) {
        QVec rhs(fan.n, Rat(0));
        rhs[k] = 1;
        const QVec m = solve_square(gens, rhs);
        ZVec mi(fan.n);
        for (int c = 0; c < fan.n; ++c) {
            if (!is_integral(m[c]))
                throw MathError("NonSmooth", "dual basis is not integral");
            mi[c] = to_ll(m[c]);
        }
        duals.push_back(std::move(mi));
    }
    return duals;
}

int facet_sign(const Cone& tau, const Cone& sigma) {
    if (tau.dim() + 1 != sigma.dim())
        throw MathError("NotAFacet", "dimension gap is not one");
    int omitted = -1;
    std::size_t t = 0;
    for (std::size_t s = 0; s < sigma.rays.size(); ++s) {
        if (t < tau.rays.size() && tau.rays[t] == sigma.rays[s]) {
            ++t;
        } else if (omitted < 0) {
            omitted = static_cast<int>(s);
        } else {
            throw MathError("NotAFacet", "ray sets differ in more than one index");
        }
    }
    if (t != tau.rays.size() || omitted < 0)
        throw MathError("NotAFacet", "tau is not contained in sigma");
    return omitted % 2 == 0 ? 1 : -1;
}

}  // namespace toric
