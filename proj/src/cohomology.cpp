#include "toric/cohomology.hpp"

#include "toric/errors.hpp"
#include "toric/sparse.hpp"

#include <algorithm>
#include <sstream>

#ifdef TORIC_HAVE_OPENMP
#include <omp.h>
#endif

namespace toric {

namespace {

long long floor_rat(const Rat& x) {
    Int q = numerator(x) / denominator(x);
    if (numerator(x) < 0 && q * denominator(x) != numerator(x)) q -= 1;
    return static_cast<long long>(q);
}

long long ceil_rat(const Rat& x) { return -floor_rat(-x); }

ZVec scaled_ample(const Fan& fan, long long k) {
    if (!fan.ample)
        throw MathError("CannotAmplify", "fan carries no ample divisor");
    ZVec a = *fan.ample;
    for (long long& x : a) x *= k;
    return a;
}

// Shared setup for the polyhedral engines: the minimal ample twist with
// k >= 1 (so the window polytope is full-dimensional), the window Delta + m,
// and the materialised stratum polytopes.
struct AmpleSetup {
    MaterialisedDecoration mat;
    long long k = 1;
    LatticePolyhedron window;                // k*Delta0 + m
    std::vector<LatticePolyhedron> nabla;    // per stratum; [0] unused
};

AmpleSetup ample_setup(const WeilDecoration& dec, const ZVec& m) {
    AmpleSetup s;
    s.k = minimal_twist([&](long long k) {
        return k >= 1 && materialise(dec, k).ample;
    });
    s.mat = materialise(dec, s.k);
    const Fan& fan = *dec.fan;
    s.window = translate(section_polyhedron(ToricDivisor{&fan, scaled_ample(fan, s.k)}), m);
    s.nabla.resize(dec.strat.size());
    for (int t = 1; t < dec.strat.size(); ++t)
        s.nabla[t] = section_polyhedron(ToricDivisor{&fan, *s.mat.twisted(t)});
    return s;
}

// Cell-complex scaffolding shared by the total complex, the E1 report and
// the height-one cone: the subdivision of the window by all stratum
// polytopes, the order complex, the allowed simplices (all chains for the
// closed variant, chains of strictly interior cells for the interior one)
// and the relative cochain basis per stratum.
struct PolyScaffold {
    CellComplex cx;
    OrderComplex oc;
    std::vector<std::vector<int>> allowed;        // simplex indices per degree
    std::vector<std::vector<std::vector<int>>> basis;  // [stratum][degree]
    int levels = 0;
};

PolyScaffold build_scaffold(const WeilDecoration& dec, const AmpleSetup& s,
                            PolyVariant variant) {
    PolyScaffold sc;
    std::vector<LatticePolyhedron> cutters;
    std::vector<ZVec> seen;
    for (int t = 1; t < dec.strat.size(); ++t) {
        const ZVec key = *s.mat.twisted(t);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        cutters.push_back(s.nabla[t]);
    }
    sc.cx = subdivide(s.window, cutters);
    sc.oc = order_complex(sc.cx);
    sc.levels = static_cast<int>(sc.oc.simplices.size());

    std::vector<char> cell_ok(sc.cx.cells.size(), 1);
    if (variant == PolyVariant::Interior) {
        for (std::size_t i = 0; i < sc.cx.cells.size(); ++i) {
            const QVec& p = sc.cx.cells[i].sample;
            for (const auto& [a, b] : s.window.hrep) {
                Rat val = 0;
                for (std::size_t c = 0; c < p.size(); ++c) val += p[c] * a[c];
                if (val == b) { cell_ok[i] = 0; break; }
            }
        }
    }
    sc.allowed.resize(sc.levels);
    for (int q = 0; q < sc.levels; ++q)
        for (std::size_t i = 0; i < sc.oc.simplices[q].size(); ++i) {
            bool ok = true;
            for (int c : sc.oc.simplices[q][i])
                if (!cell_ok[c]) { ok = false; break; }
            if (ok) sc.allowed[q].push_back(static_cast<int>(i));
        }

    sc.basis.resize(dec.strat.size());
    const bool relax = variant == PolyVariant::Closed;
    for (int t = 1; t < dec.strat.size(); ++t) {
        const Subcomplex in_p = outside_interior(sc.cx, s.nabla[t], relax);
        sc.basis[t].resize(sc.levels);
        for (int q = 0; q < sc.levels; ++q)
            for (int idx : sc.allowed[q]) {
                bool outside = false;
                for (int c : sc.oc.simplices[q][idx])
                    if (!in_p[c]) { outside = true; break; }
                if (outside) sc.basis[t][q].push_back(idx);
            }
    }
    return sc;
}

int basis_pos(const std::vector<int>& basis, int simplex) {
    const auto it = std::lower_bound(basis.begin(), basis.end(), simplex);
    if (it == basis.end() || *it != simplex) return -1;
    return static_cast<int>(it - basis.begin());
}

// Entries of the relative coboundary basis_q -> basis_{q+1} (triplets).
std::vector<std::tuple<int, int, int>> coboundary_entries(
    const OrderComplex& oc, int q, const std::vector<int>& bq,
    const std::vector<int>& bq1) {
    std::vector<std::tuple<int, int, int>> out;
    for (std::size_t t = 0; t < bq1.size(); ++t) {
        const std::vector<int>& tau = oc.simplices[q + 1][bq1[t]];
        for (std::size_t j = 0; j < tau.size(); ++j) {
            std::vector<int> s = tau;
            s.erase(s.begin() + j);
            const auto it = std::lower_bound(oc.simplices[q].begin(),
                                             oc.simplices[q].end(), s);
            const int raw = static_cast<int>(it - oc.simplices[q].begin());
            const int pos = basis_pos(bq, raw);
            if (pos < 0) continue;
            out.emplace_back(pos, static_cast<int>(t), j % 2 == 0 ? 1 : -1);
        }
    }
    return out;
}

std::vector<std::vector<int>> strata_chains(const Stratification& st) {
    std::vector<std::vector<int>> all;
    std::vector<std::vector<int>> current;
    for (int s = 1; s < st.size(); ++s) current.push_back({s});
    while (!current.empty()) {
        std::sort(current.begin(), current.end());
        all.insert(all.end(), current.begin(), current.end());
        std::vector<std::vector<int>> longer;
        for (const std::vector<int>& c : current)
            for (int s = 1; s < st.size(); ++s)
                if (s != c.back() && st.leq[c.back()][s]) {
                    std::vector<int> ext = c;
                    ext.push_back(s);
                    longer.push_back(std::move(ext));
                }
        current = std::move(longer);
    }
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace

DegreeBox degree_support_box(const WeilDecoration& dec) {
    const Fan& fan = *dec.fan;
    if (!fan.is_complete())
        throw MathError("NotComplete", "degree box requires a complete fan");
    DegreeBox box{ZVec(fan.n, 0), ZVec(fan.n, 0)};
    bool first = true;
    for (const Cone& sigma : fan.max_cones)
        for (int s = 1; s < dec.strat.size(); ++s) {
            const QVec r = cone_vertex(dec.divisor_of(s), sigma);
            for (int c = 0; c < fan.n; ++c) {
                const long long lo = floor_rat(r[c]), hi = ceil_rat(r[c]);
                if (first || lo < box.lo[c]) box.lo[c] = lo;
                if (first || hi > box.hi[c]) box.hi[c] = hi;
            }
            first = false;
        }
    for (int c = 0; c < fan.n; ++c) { box.lo[c] -= 1; box.hi[c] += 1; }
    return box;
}

std::vector<int> klyachko_cech(const WeilDecoration& dec, const ZVec& m) {
    const Fan& fan = *dec.fan;
    if (!fan.is_complete())
        throw MathError("NotComplete", "evaluation complex requires a complete fan");
    const int n = fan.n;
    std::vector<int> h(n + 1, 0);
    if (dec.rank() == 0) return h;

    // level l holds the cones of dimension n - l
    std::vector<std::vector<const Cone*>> cones(n + 1);
    std::vector<std::vector<QMat>> evs(n + 1);
    std::vector<std::vector<int>> offs(n + 1);
    for (int l = 0; l <= n; ++l) {
        offs[l].push_back(0);
        for (const Cone& sigma : fan.cones_by_dim[n - l]) {
            cones[l].push_back(&sigma);
            evs[l].push_back(eval_sigma(dec, sigma, m));
            offs[l].push_back(offs[l].back() +
                              static_cast<int>(evs[l].back().size()));
        }
    }
    std::vector<int> ranks(n + 1, 0);  // ranks[l] = rank of C^{l-1} -> C^l
    for (int l = 1; l <= n; ++l) {
        if (offs[l - 1].back() == 0 || offs[l].back() == 0) continue;
        SparseMat d(offs[l].back(), offs[l - 1].back());
        for (std::size_t si = 0; si < cones[l - 1].size(); ++si) {
            const Cone& sigma = *cones[l - 1][si];
            for (std::size_t j = 0; j < sigma.rays.size(); ++j) {
                Cone tau;
                tau.rays = sigma.rays;
                tau.rays.erase(tau.rays.begin() + j);
                const auto it = std::lower_bound(
                    fan.cones_by_dim[n - l].begin(), fan.cones_by_dim[n - l].end(), tau);
                const std::size_t ti = it - fan.cones_by_dim[n - l].begin();
                const Rat sign = facet_sign(tau, sigma);
                const QMat& from = evs[l - 1][si];
                const QMat& into = evs[l][ti];
                for (std::size_t b = 0; b < from.size(); ++b) {
                    const QVec co = coordinates(into, from[b]);
                    for (std::size_t r = 0; r < co.size(); ++r)
                        if (co[r] != 0)
                            d.add(offs[l][ti] + static_cast<int>(r),
                                  offs[l - 1][si] + static_cast<int>(b), sign * co[r]);
                }
            }
        }
        ranks[l] = d.rank();
    }
    for (int l = 0; l <= n; ++l)
        h[l] = offs[l].back() - ranks[l] - (l + 1 <= n ? ranks[l + 1] : 0);
    return h;
}

std::vector<int> cohomology_polyhedral(const WeilDecoration& dec, const ZVec& m,
                                       PolyVariant variant) {
    const Fan& fan = *dec.fan;
    std::vector<int> h(fan.n + 1, 0);
    if (dec.rank() == 0) return h;
    const AmpleSetup setup = ample_setup(dec, m);
    const PolyScaffold sc = build_scaffold(dec, setup, variant);
    const Stratification& st = dec.strat;
    const std::vector<std::vector<int>> chains = strata_chains(st);
    const int n_chains = static_cast<int>(chains.size());
    int max_len = 0;
    for (const auto& c : chains)
        max_len = std::max(max_len, static_cast<int>(c.size()) - 1);

    // blocks of the total complex at total degree t: (chain, q = t + l)
    struct Block {
        int chain, q, offset, rows, cols;  // rows = dim S0, cols = |basis|
    };
    const int t_min = -max_len, t_max = sc.levels - 1;
    auto blocks_at = [&](int t) {
        std::vector<Block> blocks;
        int off = 0;
        for (int ci = 0; ci < n_chains; ++ci) {
            const int l = static_cast<int>(chains[ci].size()) - 1;
            const int q = t + l;
            if (q < 0 || q >= sc.levels) continue;
            const int rows = st.dim(chains[ci][0]);
            const int cols = static_cast<int>(sc.basis[chains[ci].back()][q].size());
            if (rows == 0 || cols == 0) continue;
            blocks.push_back({ci, q, off, rows, cols});
            off += rows * cols;
        }
        return blocks;
    };
    auto total_dim = [&](const std::vector<Block>& blocks) {
        return blocks.empty() ? 0 : blocks.back().offset +
                                        blocks.back().rows * blocks.back().cols;
    };
    auto find_block = [&](const std::vector<Block>& blocks, int chain, int q) -> const Block* {
        for (const Block& b : blocks)
            if (b.chain == chain && b.q == q) return &b;
        return nullptr;
    };

    std::vector<Block> cur = blocks_at(t_min);
    std::vector<int> rank_in(t_max - t_min + 2, 0);  // rank of D_{t} stored at t - t_min + 1
    std::vector<int> dims(t_max - t_min + 1, 0);
    for (int t = t_min; t <= t_max; ++t) {
        dims[t - t_min] = total_dim(cur);
        const std::vector<Block> nxt = blocks_at(t + 1);
        if (!cur.empty() && !nxt.empty()) {
            SparseMat d(total_dim(nxt), total_dim(cur));
            for (const Block& src : cur) {
                const std::vector<int>& chain = chains[src.chain];
                const int l = static_cast<int>(chain.size()) - 1;
                const int top = chain.back();
                // vertical: coboundary within the column, sign (-1)^l
                if (const Block* tgt = find_block(nxt, src.chain, src.q + 1)) {
                    const int sv = l % 2 == 0 ? 1 : -1;
                    for (const auto& [sp, tp, val] :
                         coboundary_entries(sc.oc, src.q, sc.basis[top][src.q],
                                            sc.basis[top][src.q + 1]))
                        for (int b = 0; b < src.rows; ++b)
                            d.add(tgt->offset + b * tgt->cols + tp,
                                  src.offset + b * src.cols + sp, Rat(sv * val));
                }
                // horizontal: alternating omission, sign (-1)^j
                for (int j = 0; j <= l && l >= 1; ++j) {
                    std::vector<int> omitted = chain;
                    omitted.erase(omitted.begin() + j);
                    const auto it = std::lower_bound(chains.begin(), chains.end(), omitted);
                    const int ci = static_cast<int>(it - chains.begin());
                    const Block* tgt = find_block(nxt, ci, src.q);
                    if (!tgt) continue;
                    const Rat sj = j % 2 == 0 ? 1 : -1;
                    if (j == 0) {
                        // closure inclusion S0 -> S1, simplex basis unchanged
                        const QMat& from = st.closures[chain[0]];
                        const QMat& into = st.closures[chain[1]];
                        for (int b = 0; b < src.rows; ++b) {
                            const QVec co = coordinates(into, from[b]);
                            for (std::size_t r = 0; r < co.size(); ++r) {
                                if (co[r] == 0) continue;
                                for (int sp = 0; sp < src.cols; ++sp)
                                    d.add(tgt->offset + static_cast<int>(r) * tgt->cols + sp,
                                          src.offset + b * src.cols + sp, sj * co[r]);
                            }
                        }
                    } else {
                        // identity on the closure; extension by zero on the
                        // simplex basis when the top stratum changes
                        const std::vector<int>& bsrc = sc.basis[top][src.q];
                        const std::vector<int>& btgt = sc.basis[omitted.back()][src.q];
                        for (int sp = 0; sp < src.cols; ++sp) {
                            const int tp = basis_pos(btgt, bsrc[sp]);
                            if (tp < 0)
                                throw MathError("NotAComplex",
                                                "extension by zero left the basis");
                            for (int b = 0; b < src.rows; ++b)
                                d.add(tgt->offset + b * tgt->cols + tp,
                                      src.offset + b * src.cols + sp, sj);
                        }
                    }
                }
            }
            rank_in[t - t_min + 1] = d.rank();
        }
        cur = nxt;
    }
    for (int t = t_min; t <= t_max; ++t) {
        const int ht = dims[t - t_min] - rank_in[t - t_min] - rank_in[t - t_min + 1];
        if (t >= 0 && t <= fan.n) {
            h[t] = ht;
        } else if (ht != 0) {
            throw MathError("NotAComplex",
                            "total complex has homology outside [0, n]");
        }
    }
    return h;
}

SpectralE1Report spectral_E1(const WeilDecoration& dec, const ZVec& m) {
    SpectralE1Report rep;
    if (dec.rank() == 0) return rep;
    const AmpleSetup setup = ample_setup(dec, m);
    const PolyScaffold sc = build_scaffold(dec, setup, PolyVariant::Closed);
    const Stratification& st = dec.strat;

    std::vector<std::vector<int>> tilde(dec.strat.size());
    for (int t = 1; t < st.size(); ++t) {
        const Subcomplex sub = outside_interior(sc.cx, setup.nabla[t], true);
        tilde[t] = reduced_cohomology(sc.cx, sub);  // index q holds H~^{q-1}
    }
    for (const std::vector<int>& chain : strata_chains(st)) {
        const int l = static_cast<int>(chain.size()) - 1;
        const int d0 = st.dim(chain[0]);
        std::ostringstream label;
        for (std::size_t i = 0; i < chain.size(); ++i)
            label << (i ? "<" : "") << chain[i];
        for (std::size_t q = 0; q < tilde[chain.back()].size(); ++q) {
            const int contrib = d0 * tilde[chain.back()][q];
            if (contrib == 0) continue;
            rep.dims[{l, static_cast<int>(q)}] += contrib;
            rep.labels[{l, static_cast<int>(q)}].push_back(label.str());
        }
    }
    return rep;
}

std::vector<int> height_one_cone(const WeilDecoration& dec, const ZVec& m) {
    const Fan& fan = *dec.fan;
    const Stratification& st = dec.strat;
    if (st.height() != 1 || st.generic < 0)
        throw MathError("NotHeightOne", "stratification is not of height one");
    std::vector<int> atoms;
    for (int s = 1; s < st.size(); ++s)
        if (s != st.generic) atoms.push_back(s);

    // A: + closure(S_k) -> E, stacked basis columns
    int total = 0;
    for (int a : atoms) total += st.dim(a);
    QMat A(dec.rank(), QVec(total, Rat(0)));
    {
        int col = 0;
        for (int a : atoms)
            for (const QVec& b : st.closures[a]) {
                for (int r = 0; r < dec.rank(); ++r) A[r][col] = b[r];
                ++col;
            }
    }
    if (rank(A) != dec.rank())
        throw MathError("ANotSurjective", "atom closures do not span E");
    const QMat ker = kernel_basis(A, total);
    const int kd = static_cast<int>(ker.size());

    const AmpleSetup setup = ample_setup(dec, m);
    const PolyScaffold sc = build_scaffold(dec, setup, PolyVariant::Closed);

    // column -1: ker A (x) C(P(eta)); column 0: + S_k (x) C(P(S_k))
    const std::vector<std::vector<int>>& beta = sc.basis[st.generic];
    auto col0_dim = [&](int q) {
        int d = 0;
        if (q < 0 || q >= sc.levels) return 0;
        for (int a : atoms) d += st.dim(a) * static_cast<int>(sc.basis[a][q].size());
        return d;
    };
    auto col1_dim = [&](int q) {
        if (q < 0 || q >= sc.levels) return 0;
        return kd * static_cast<int>(beta[q].size());
    };
    auto dim_t = [&](int t) { return col1_dim(t + 1) + col0_dim(t); };

    std::vector<int> rank_at(sc.levels + 2, 0);  // rank of D_t at index t+1
    for (int t = -1; t < sc.levels; ++t) {
        const int rows = dim_t(t + 1), cols = dim_t(t);
        if (rows == 0 || cols == 0) continue;
        SparseMat d(rows, cols);
        // layout per total degree: first the column -1 block, then column 0
        const int src_c1 = col1_dim(t + 1);
        const int tgt_c1 = col1_dim(t + 2);
        // vertical in column -1 (sign -1)
        if (src_c1 > 0 && tgt_c1 > 0)
            for (const auto& [sp, tp, val] :
                 coboundary_entries(sc.oc, t + 1, beta[t + 1], beta[t + 2]))
                for (int b = 0; b < kd; ++b)
                    d.add(b * static_cast<int>(beta[t + 2].size()) + tp,
                          b * static_cast<int>(beta[t + 1].size()) + sp, Rat(-val));
        // horizontal: v (x) c -> +_k v_k (x) ext_k(c)
        if (src_c1 > 0 && col0_dim(t + 1) > 0) {
            int tgt_off = tgt_c1;
            int col_base = 0;
            for (int a : atoms) {
                const int da = st.dim(a);
                const std::vector<int>& ba = sc.basis[a][t + 1];
                for (int b = 0; b < kd; ++b) {
                    // component of the kernel vector in the atom's block,
                    // expressed in the atom's closure basis coordinates
                    for (int r = 0; r < da; ++r) {
                        const Rat coeff = ker[b][col_base + r];
                        if (coeff == 0) continue;
                        for (std::size_t sp = 0; sp < beta[t + 1].size(); ++sp) {
                            const int tp = basis_pos(ba, beta[t + 1][sp]);
                            if (tp < 0)
                                throw MathError("NotAComplex",
                                                "extension by zero left the basis");
                            d.add(tgt_off + r * static_cast<int>(ba.size()) + tp,
                                  b * static_cast<int>(beta[t + 1].size()) +
                                      static_cast<int>(sp),
                                  coeff);
                        }
                    }
                }
                tgt_off += da * static_cast<int>(ba.size());
                col_base += da;
            }
        }
        // vertical in column 0 (sign +1)
        if (col0_dim(t) > 0 && col0_dim(t + 1) > 0) {
            int src_off = src_c1, tgt_off = tgt_c1;
            for (int a : atoms) {
                const int da = st.dim(a);
                const std::vector<int>& bq = sc.basis[a][t];
                const std::vector<int>& bq1 = sc.basis[a][t + 1];
                for (const auto& [sp, tp, val] :
                     coboundary_entries(sc.oc, t, bq, bq1))
                    for (int b = 0; b < da; ++b)
                        d.add(tgt_off + b * static_cast<int>(bq1.size()) + tp,
                              src_off + b * static_cast<int>(bq.size()) + sp, Rat(val));
                src_off += da * static_cast<int>(bq.size());
                tgt_off += da * static_cast<int>(bq1.size());
            }
        }
        rank_at[t + 1] = d.rank();
    }
    std::vector<int> h(fan.n + 1, 0);
    for (int t = -1; t <= sc.levels - 1; ++t) {
        const int ht = dim_t(t) - rank_at[t + 1] - (t >= 0 ? rank_at[t] : 0);
        if (t >= 0 && t <= fan.n) {
            h[t] = ht;
        } else if (ht != 0) {
            throw MathError("NotAComplex", "height-one cone has stray homology");
        }
    }
    return h;
}

QMat global_sections(const WeilDecoration& dec, const ZVec& m) {
    try {
        minimal_twist([&](long long k) { return materialise(dec, k).positive; });
    } catch (const MathError&) {
        throw MathError("CannotMaterialise", "no positive materialisation exists");
    }
    const Fan& fan = *dec.fan;
    QMat span;
    for (int s = 1; s < dec.strat.size(); ++s) {
        bool ok = true;
        const ZVec& a = *dec.divisor[s];
        for (std::size_t i = 0; i < fan.rays.size(); ++i)
            if (dot(m, fan.rays[i]) < -a[i]) { ok = false; break; }
        if (ok) span = subspace_sum(span, dec.strat.closures[s]);
    }
    return span;
}

QMat incidence(const Stratification& st) {
    const int k = st.size();
    QMat inc(k, QVec(k, Rat(0)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (st.leq[i][j]) inc[i][j] = 1;
    return inc;
}

QMat mobius(const Stratification& st) {
    const int k = st.size();
    QMat aug = incidence(st);
    for (int i = 0; i < k; ++i) {
        QVec id(k, Rat(0));
        id[i] = 1;
        aug[i].insert(aug[i].end(), id.begin(), id.end());
    }
    aug = rref(aug);
    if (static_cast<int>(aug.size()) != k)
        throw MathError("NotAdmissible", "incidence matrix is singular");
    QMat inv(k, QVec(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) inv[i][j] = aug[i][k + j];
    return inv;
}

QMat mobius_by_chains(const Stratification& st) {
    const int k = st.size();
    QMat strict(k, QVec(k, Rat(0)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j && st.leq[i][j]) strict[i][j] = 1;
    QMat result = identity_matrix(k);
    QMat power = identity_matrix(k);
    Rat sign = -1;
    for (int step = 1; step <= k; ++step) {
        QMat next(k, QVec(k, Rat(0)));
        bool nonzero = false;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                for (int l = 0; l < k; ++l) next[i][j] += power[i][l] * strict[l][j];
                if (next[i][j] != 0) nonzero = true;
            }
        if (!nonzero) break;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) result[i][j] += sign * next[i][j];
        power = std::move(next);
        sign = -sign;
    }
    return result;
}

std::vector<Rat> euler_weights(const Stratification& st) {
    const QMat mu = mobius(st);
    std::vector<Rat> w(st.size(), Rat(0));
    for (int t = 0; t < st.size(); ++t)
        for (int s = 0; s < st.size(); ++s) w[t] += Rat(st.dim(s)) * mu[s][t];
    return w;
}

namespace {

long long chi_degree(const WeilDecoration& dec, const AmpleSetup& setup,
                     const std::vector<Rat>& w, const ZVec& m) {
    const Fan& fan = *dec.fan;
    const LatticePolyhedron window =
        translate(section_polyhedron(ToricDivisor{&fan, scaled_ample(fan, setup.k)}), m);
    Rat chi = 0;
    for (int t = 1; t < dec.strat.size(); ++t) {
        if (w[t] == 0) continue;
        const CellComplex cx = subdivide(window, {setup.nabla[t]});
        const Subcomplex sub = outside_interior(cx, setup.nabla[t], true);
        chi -= w[t] * Rat(reduced_euler(cx, sub));
    }
    if (denominator(chi) != 1)
        throw MathError("NotAnInteger", "Euler characteristic is not integral");
    return static_cast<long long>(numerator(chi));
}

}  // namespace

long long euler_deg0(const WeilDecoration& dec) {
    if (dec.rank() == 0) return 0;
    const AmpleSetup setup = ample_setup(dec, ZVec(dec.fan->n, 0));
    return chi_degree(dec, setup, euler_weights(dec.strat), ZVec(dec.fan->n, 0));
}

std::map<ZVec, long long> euler_equivariant(const WeilDecoration& dec,
                                            const DegreeBox& box) {
    std::map<ZVec, long long> out;
    if (dec.rank() == 0) return out;
    const AmpleSetup setup = ample_setup(dec, ZVec(dec.fan->n, 0));
    const std::vector<Rat> w = euler_weights(dec.strat);
    for_each_degree(box, [&](const ZVec& m) {
        const long long chi = chi_degree(dec, setup, w, m);
        if (chi != 0) out[m] = chi;
    });
    return out;
}

GradedTable graded_table(const WeilDecoration& dec, Method method,
                         const std::optional<DegreeBox>& box_in, bool parallel) {
    GradedTable table;
    table.box = box_in ? *box_in : degree_support_box(dec);
    table.method = method == Method::Cech ? "cech"
                   : method == Method::Polyhedral ? "polyhedral"
                                                  : "polyhedral-interior";
    if (method != Method::Cech && dec.rank() > 0)
        table.twist = minimal_twist(
            [&](long long k) { return k >= 1 && materialise(dec, k).ample; });

    auto compute = [&](const ZVec& m) {
        switch (method) {
            case Method::Cech: return klyachko_cech(dec, m);
            case Method::Polyhedral:
                return cohomology_polyhedral(dec, m, PolyVariant::Closed);
            default:
                return cohomology_polyhedral(dec, m, PolyVariant::Interior);
        }
    };

    // degrees: the box plus its one-cell shell (shell entries must vanish)
    DegreeBox inflated{table.box.lo, table.box.hi};
    for (std::size_t c = 0; c < inflated.lo.size(); ++c) {
        inflated.lo[c] -= 1;
        inflated.hi[c] += 1;
    }
    std::vector<ZVec> degrees;
    for_each_degree(inflated, [&](const ZVec& m) { degrees.push_back(m); });
    std::vector<std::vector<int>> results(degrees.size());
    std::string error;

#ifdef TORIC_HAVE_OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(degrees.size()); ++i) {
            try {
                results[i] = compute(degrees[i]);
            } catch (const std::exception& e) {
#pragma omp critical
                error = e.what();
            }
        }
    } else
#else
    (void)parallel;
#endif
    {
        for (std::size_t i = 0; i < degrees.size(); ++i) results[i] = compute(degrees[i]);
    }
    if (!error.empty()) throw MathError("DegreeFailed", error);

    for (std::size_t i = 0; i < degrees.size(); ++i) {
        bool in_box = true;
        for (std::size_t c = 0; c < degrees[i].size(); ++c)
            if (degrees[i][c] < table.box.lo[c] || degrees[i][c] > table.box.hi[c])
                in_box = false;
        const bool zero = std::all_of(results[i].begin(), results[i].end(),
                                      [](int x) { return x == 0; });
        if (in_box) {
            table.entries[degrees[i]] = results[i];
        } else if (!zero) {
            std::ostringstream os;
            os << "nonzero cohomology on the shell at degree (";
            for (std::size_t c = 0; c < degrees[i].size(); ++c)
                os << (c ? "," : "") << degrees[i][c];
            os << "); the support box heuristic is invalid for this input";
            throw MathError("ShellNotZero", os.str());
        }
    }
    return table;
}

}  // namespace toric
