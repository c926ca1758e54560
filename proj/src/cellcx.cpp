#include "toric/cellcx.hpp"

#include "toric/errors.hpp"
#include "toric/linalg.hpp"
#include "toric/sparse.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace toric {

namespace {

using HRep = std::vector<std::pair<ZVec, Rat>>;

int affine_rank(const std::vector<QVec>& pts) {
    if (pts.empty()) return -1;
    QMat diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        QVec d(pts[0].size());
        for (std::size_t c = 0; c < pts[0].size(); ++c) d[c] = pts[i][c] - pts[0][c];
        diffs.push_back(std::move(d));
    }
    return rank(diffs);
}

Rat pair_q(const QVec& v, const ZVec& a) {
    Rat s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * a[i];
    return s;
}

// Canonical form of the hyperplane <u, a> = b: primitive a with the first
// nonzero entry positive.
std::pair<ZVec, Rat> canonical_hyperplane(ZVec a, Rat b) {
    long long g = 0;
    for (long long x : a) g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1) {
        for (long long& x : a) x /= g;
        b /= g;
    }
    for (long long x : a) {
        if (x == 0) continue;
        if (x < 0) {
            for (long long& y : a) y = -y;
            b = -b;
        }
        break;
    }
    return {a, b};
}

}  // namespace

bool CellComplex::is_face(int f, int c) const {
    if (cells[f].dim >= cells[c].dim) return false;
    return std::includes(cells[c].vrep.begin(), cells[c].vrep.end(),
                         cells[f].vrep.begin(), cells[f].vrep.end());
}

CellComplex subdivide(const LatticePolyhedron& ambient,
                      const std::vector<LatticePolyhedron>& cutters, int dim_cap) {
    const int n = ambient.n;
    if (n > dim_cap)
        throw MathError("DimensionTooHigh", "subdivision capped at dimension " +
                                                std::to_string(dim_cap));
    if (ambient.vertices.empty())
        throw MathError("EmptyPolyhedron", "cannot subdivide an empty polytope");
    if (!ambient.tail_rays.empty())
        throw MathError("NotCompact", "subdivision requires a compact polytope");
    if (affine_rank(ambient.vertices) != n)
        throw MathError("NotFullDim", "ambient polytope is not full-dimensional");

    std::set<std::pair<ZVec, Rat>> planes;
    for (const LatticePolyhedron& cutter : cutters)
        for (const auto& [a, b] : cutter.hrep) planes.insert(canonical_hyperplane(a, b));

    struct Region {
        HRep hrep;
        std::vector<QVec> verts;
    };
    std::vector<Region> regions{{ambient.hrep, ambient.vertices}};
    for (const auto& [a, b] : planes) {
        ZVec neg = a;
        for (long long& x : neg) x = -x;
        std::vector<Region> next;
        for (Region& r : regions) {
            HRep hplus = r.hrep, hminus = r.hrep;
            hplus.push_back({a, b});
            hminus.push_back({neg, -b});
            std::vector<QVec> vplus = enumerate_vertices(n, hplus);
            std::vector<QVec> vminus = enumerate_vertices(n, hminus);
            const bool fplus = affine_rank(vplus) == n;
            const bool fminus = affine_rank(vminus) == n;
            if (fplus) next.push_back({std::move(hplus), std::move(vplus)});
            if (fminus) next.push_back({std::move(hminus), std::move(vminus)});
            if (!fplus && !fminus)
                throw MathError("Degenerate", "region lost dimension while splitting");
        }
        regions = std::move(next);
    }

    CellComplex cx;
    cx.n = n;
    cx.ambient = ambient;
    std::map<std::vector<QVec>, int> index;
    std::vector<int> queue;
    auto add_cell = [&](int dim, const HRep& hrep, std::vector<QVec> verts) {
        auto it = index.find(verts);
        if (it != index.end()) return it->second;
        Cell cell;
        cell.dim = dim;
        cell.hrep = hrep;
        cell.vrep = verts;
        cell.sample = QVec(n, Rat(0));
        for (const QVec& v : verts)
            for (int c = 0; c < n; ++c) cell.sample[c] += v[c];
        for (int c = 0; c < n; ++c)
            cell.sample[c] /= Rat(static_cast<long long>(verts.size()));
        // interior verification: any constraint strict somewhere on the cell
        // must be strict at the sample point
        for (const auto& [a, b] : hrep) {
            bool somewhere_strict = false;
            for (const QVec& v : verts)
                if (pair_q(v, a) > b) { somewhere_strict = true; break; }
            if (somewhere_strict && pair_q(cell.sample, a) <= b)
                throw MathError("Degenerate", "sample point is not interior");
        }
        const int id = static_cast<int>(cx.cells.size());
        index[std::move(verts)] = id;
        cx.cells.push_back(std::move(cell));
        queue.push_back(id);
        return id;
    };

    for (Region& r : regions) {
        std::sort(r.verts.begin(), r.verts.end());
        add_cell(n, r.hrep, std::move(r.verts));
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const int id = queue[qi];
        const int dim = cx.cells[id].dim;
        if (dim == 0) continue;
        const HRep hrep = cx.cells[id].hrep;
        const std::vector<QVec> verts = cx.cells[id].vrep;
        std::vector<int> faces;
        for (const auto& [a, b] : hrep) {
            std::vector<QVec> tight;
            for (const QVec& v : verts)
                if (pair_q(v, a) == b) tight.push_back(v);
            if (affine_rank(tight) != dim - 1) continue;
            std::sort(tight.begin(), tight.end());
            HRep sub = hrep;
            ZVec neg = a;
            for (long long& x : neg) x = -x;
            sub.push_back({a, b});
            sub.push_back({neg, -b});
            faces.push_back(add_cell(dim - 1, sub, std::move(tight)));
        }
        std::sort(faces.begin(), faces.end());
        faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
        cx.cells[id].faces = std::move(faces);
    }

    cx.by_dim.assign(n + 1, {});
    for (std::size_t i = 0; i < cx.cells.size(); ++i)
        cx.by_dim[cx.cells[i].dim].push_back(static_cast<int>(i));
    return cx;
}

Subcomplex carrier(const CellComplex& cx,
                   const std::function<bool(const Cell&)>& pred,
                   bool close_under_faces) {
    Subcomplex sub(cx.cells.size(), 0);
    for (std::size_t i = 0; i < cx.cells.size(); ++i)
        if (pred(cx.cells[i])) sub[i] = 1;
    if (close_under_faces) {
        // cells are created top-down, so one descending pass suffices; loop
        // until stable to stay independent of creation order
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < cx.cells.size(); ++i) {
                if (!sub[i]) continue;
                for (int f : cx.cells[i].faces)
                    if (!sub[f]) { sub[f] = 1; changed = true; }
            }
        }
    }
    return sub;
}

Subcomplex outside_interior(const CellComplex& cx, const LatticePolyhedron& region,
                            bool relax_at_boundary) {
    Subcomplex sub(cx.cells.size(), 0);
    if (region.is_empty()) {
        std::fill(sub.begin(), sub.end(), 1);
        return sub;
    }
    std::set<std::pair<ZVec, Rat>> ambient_planes;
    for (const auto& [a, b] : cx.ambient.hrep)
        ambient_planes.insert(canonical_hyperplane(a, b));
    for (std::size_t i = 0; i < cx.cells.size(); ++i) {
        const Cell& cell = cx.cells[i];
        // the cell belongs to P iff its relative interior (probed at the
        // sample point; the subdivision refines the region) avoids the
        // relaxed interior of the region
        bool in_interior = true;
        for (const auto& [a, b] : region.hrep) {
            const bool relaxed =
                relax_at_boundary && ambient_planes.count(canonical_hyperplane(a, b));
            const Rat val = pair_q(cell.sample, a);
            if (val < b || (!relaxed && val == b)) { in_interior = false; break; }
        }
        sub[i] = in_interior ? 0 : 1;
    }
    return sub;
}

Subcomplex inside(const CellComplex& cx, const LatticePolyhedron& region) {
    Subcomplex sub(cx.cells.size(), 0);
    if (region.is_empty()) return sub;
    for (std::size_t i = 0; i < cx.cells.size(); ++i) {
        bool in = true;
        for (const QVec& v : cx.cells[i].vrep)
            if (!region.contains(v)) { in = false; break; }
        sub[i] = in ? 1 : 0;
    }
    return sub;
}

Subcomplex complex_union(const Subcomplex& a, const Subcomplex& b) {
    Subcomplex u(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) u[i] = (a[i] || b[i]) ? 1 : 0;
    return u;
}

bool subcomplex_closed(const CellComplex& cx, const Subcomplex& sub) {
    for (std::size_t i = 0; i < cx.cells.size(); ++i) {
        if (!sub[i]) continue;
        for (int f : cx.cells[i].faces)
            if (!sub[f]) return false;
    }
    return true;
}

long long reduced_euler(const CellComplex& cx, const Subcomplex& sub) {
    long long chi = 0;
    for (std::size_t i = 0; i < cx.cells.size(); ++i)
        if (sub[i]) chi += cx.cells[i].dim % 2 == 0 ? 1 : -1;
    return chi - 1;
}

OrderComplex order_complex(const CellComplex& cx) {
    const int cells = static_cast<int>(cx.cells.size());
    std::vector<std::vector<int>> above(cells);  // strict cofaces of each cell
    for (int f = 0; f < cells; ++f)
        for (int c = 0; c < cells; ++c)
            if (f != c && cx.is_face(f, c)) above[f].push_back(c);

    OrderComplex oc;
    std::vector<std::vector<int>> current;
    for (int i = 0; i < cells; ++i) current.push_back({i});
    while (!current.empty()) {
        std::sort(current.begin(), current.end());
        oc.simplices.push_back(current);
        std::vector<std::vector<int>> longer;
        for (const std::vector<int>& chain : current)
            for (int c : above[chain.back()]) {
                std::vector<int> ext = chain;
                ext.push_back(c);
                longer.push_back(std::move(ext));
            }
        current = std::move(longer);
    }
    return oc;
}

std::vector<int> reduced_cohomology(const CellComplex& cx, const Subcomplex& sub) {
    // chains entirely inside the subcomplex, augmented by the empty simplex
    OrderComplex oc = order_complex(cx);
    std::vector<std::vector<std::vector<int>>> chains;
    for (const auto& level : oc.simplices) {
        std::vector<std::vector<int>> kept;
        for (const std::vector<int>& chain : level) {
            bool in = true;
            for (int c : chain)
                if (!sub[c]) { in = false; break; }
            if (in) kept.push_back(chain);
        }
        chains.push_back(std::move(kept));
    }
    while (!chains.empty() && chains.back().empty()) chains.pop_back();

    const int top = static_cast<int>(chains.size());  // degrees 0..top-1
    if (top == 0) {
        std::vector<int> h{1};  // H~^-1 of the empty set
        return h;
    }
    // ranks[k] = rank of delta: C^{k-1} -> C^k, with C^-1 = Q (augmentation)
    std::vector<int> ranks(top + 1, 0);
    ranks[0] = chains[0].empty() ? 0 : 1;
    for (int k = 1; k < top; ++k) {
        SparseMat d(static_cast<int>(chains[k].size()),
                    static_cast<int>(chains[k - 1].size()));
        for (std::size_t t = 0; t < chains[k].size(); ++t) {
            const std::vector<int>& tau = chains[k][t];
            for (std::size_t j = 0; j < tau.size(); ++j) {
                std::vector<int> s = tau;
                s.erase(s.begin() + j);
                const auto it =
                    std::lower_bound(chains[k - 1].begin(), chains[k - 1].end(), s);
                if (it == chains[k - 1].end() || *it != s) continue;
                d.add(static_cast<int>(t), static_cast<int>(it - chains[k - 1].begin()),
                      j % 2 == 0 ? Rat(1) : Rat(-1));
            }
        }
        ranks[k] = d.rank();
    }
    std::vector<int> h(top + 1, 0);  // h[0] = H~^-1, h[k+1] = H~^k
    h[0] = 1 - ranks[0];
    for (int k = 0; k < top; ++k)
        h[k + 1] = static_cast<int>(chains[k].size()) - ranks[k] -
                   (k + 1 < static_cast<int>(ranks.size()) ? ranks[k + 1] : 0);
    return h;
}

RelativeCochains relative_cochain_complex(const OrderComplex& oc,
                                          const CellComplex& cx,
                                          const Subcomplex& sub) {
    (void)cx;
    RelativeCochains rc;
    rc.oc = &oc;
    for (const auto& level : oc.simplices) {
        std::vector<int> basis;
        for (std::size_t i = 0; i < level.size(); ++i) {
            bool outside = false;
            for (int c : level[i])
                if (!sub[c]) { outside = true; break; }
            if (outside) basis.push_back(static_cast<int>(i));
        }
        rc.basis.push_back(std::move(basis));
    }
    return rc;
}

std::vector<int> relative_cohomology(const RelativeCochains& rc) {
    const OrderComplex& oc = *rc.oc;
    const int top = static_cast<int>(rc.basis.size());
    std::vector<int> ranks(top, 0);  // ranks[k] = rank of C^{k-1} -> C^k, k>=1
    for (int k = 1; k < top; ++k) {
        if (rc.basis[k].empty() || rc.basis[k - 1].empty()) continue;
        SparseMat d(static_cast<int>(rc.basis[k].size()),
                    static_cast<int>(rc.basis[k - 1].size()));
        for (std::size_t t = 0; t < rc.basis[k].size(); ++t) {
            const std::vector<int>& tau = oc.simplices[k][rc.basis[k][t]];
            for (std::size_t j = 0; j < tau.size(); ++j) {
                std::vector<int> s = tau;
                s.erase(s.begin() + j);
                const auto it = std::lower_bound(oc.simplices[k - 1].begin(),
                                                 oc.simplices[k - 1].end(), s);
                const int raw = static_cast<int>(it - oc.simplices[k - 1].begin());
                const auto pos =
                    std::lower_bound(rc.basis[k - 1].begin(), rc.basis[k - 1].end(), raw);
                if (pos == rc.basis[k - 1].end() || *pos != raw) continue;
                d.add(static_cast<int>(t),
                      static_cast<int>(pos - rc.basis[k - 1].begin()),
                      j % 2 == 0 ? Rat(1) : Rat(-1));
            }
        }
        ranks[k] = d.rank();
    }
    std::vector<int> h(top, 0);
    for (int k = 0; k < top; ++k)
        h[k] = static_cast<int>(rc.basis[k].size()) - ranks[k] -
               (k + 1 < top ? ranks[k + 1] : 0);
    return h;
}

std::vector<std::vector<int>> connected_components(const CellComplex& cx,
                                                   const Subcomplex& interest) {
    const int cells = static_cast<int>(cx.cells.size());
    std::vector<int> comp(cells, -1);
    std::vector<std::vector<int>> adj(cells);
    for (int c = 0; c < cells; ++c) {
        if (!interest[c]) continue;
        for (int f : cx.cells[c].faces)
            if (interest[f]) {
                adj[c].push_back(f);
                adj[f].push_back(c);
            }
    }
    std::vector<std::vector<int>> components;
    for (int c = 0; c < cells; ++c) {
        if (!interest[c] || comp[c] >= 0) continue;
        std::vector<int> stack{c}, members;
        comp[c] = static_cast<int>(components.size());
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            members.push_back(x);
            for (int y : adj[x])
                if (comp[y] < 0) { comp[y] = comp[c]; stack.push_back(y); }
        }
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
    }
    std::sort(components.begin(), components.end());
    return components;
}

}  // namespace toric
