#include "toric/morphism.hpp"

#include "toric/errors.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

namespace {

std::string stratum_label(const WeilDecoration& dec, int s) {
    std::ostringstream os;
    os << "stratum " << s << " (dim " << dec.strat.dim(s) << ")";
    return os.str();
}

// Is degree m inside the local section region of the (finite) divisor over
// the rays of sigma?
bool degree_active(const Fan& fan, const Cone& sigma, const ZVec& coeffs,
                   const ZVec& m) {
    for (int i : sigma.rays)
        if (dot(m, fan.rays[i]) < -coeffs[i]) return false;
    return true;
}

// Exactness of 0 -> V_0 -> ... -> V_k -> 0 where maps[i] sends V_i into
// V_{i+1}.  Returns the failing position, or -1; functoriality failures are
// reported as position with reason through *why.
int sequence_failure(const std::vector<QMat>& spaces,
                     const std::vector<const QMat*>& maps, std::string* why) {
    const int k = static_cast<int>(maps.size());
    std::vector<int> rk(k, 0);
    for (int i = 0; i < k; ++i) {
        QMat img;
        for (const QVec& b : spaces[i]) img.push_back(toric::apply(*maps[i], b));
        for (const QVec& v : img)
            if (!contains(spaces[i + 1], v)) {
                *why = "image escapes the evaluation space";
                return i;
            }
        rk[i] = rank(img);
    }
    for (int pos = 0; pos <= k; ++pos) {
        const int dim = static_cast<int>(spaces[pos].size());
        const int incoming = pos == 0 ? 0 : rk[pos - 1];
        const int outgoing = pos == k ? 0 : rk[pos];
        const int kernel = dim - outgoing;
        if (kernel != incoming) {
            *why = "homology is nonzero";
            return pos;
        }
    }
    return -1;
}

}  // namespace

void for_each_degree(const DegreeBox& box, const std::function<void(const ZVec&)>& fn) {
    const int n = static_cast<int>(box.lo.size());
    if (static_cast<int>(box.hi.size()) != n)
        throw SchemaError("degree box endpoints of different dimension");
    for (int i = 0; i < n; ++i)
        if (box.lo[i] > box.hi[i]) return;
    ZVec m = box.lo;
    for (;;) {
        fn(m);
        int i = n - 1;
        while (i >= 0 && m[i] == box.hi[i]) { m[i] = box.lo[i]; --i; }
        if (i < 0) return;
        ++m[i];
    }
}

std::vector<std::string> check_morphism(const DecorationMorphism& phi) {
    const WeilDecoration& src = *phi.source;
    const WeilDecoration& tgt = *phi.target;
    if (static_cast<int>(phi.matrix.size()) != tgt.rank())
        throw SchemaError("morphism matrix has wrong number of rows");
    for (const QVec& row : phi.matrix)
        if (static_cast<int>(row.size()) != src.rank())
            throw SchemaError("morphism matrix has wrong number of columns");
    std::vector<std::string> report;
    for (int s = 1; s < src.strat.size(); ++s) {
        QMat img = image(phi.matrix, src.strat.closures[s]);
        if (img.empty()) continue;  // specializations to zero are always fine
        const int t = generic_stratum(tgt, img);
        if (!ext_geq(tgt.divisor[t], src.divisor[s])) {
            std::ostringstream os;
            os << stratum_label(src, s) << ": divisor exceeds the image stratum's";
            report.push_back(os.str());
        }
    }
    return report;
}

ExactnessReport is_exact(const std::vector<DecorationMorphism>& seq,
                         const DegreeBox& box) {
    if (seq.empty()) throw SchemaError("empty morphism sequence");
    const int k = static_cast<int>(seq.size());
    std::vector<const WeilDecoration*> decs;
    decs.push_back(seq[0].source);
    for (const DecorationMorphism& phi : seq) decs.push_back(phi.target);
    const Fan& fan = *decs[0]->fan;
    for (int i = 0; i + 1 < k; ++i) {
        if (seq[i].target != seq[i + 1].source &&
            seq[i].target->rank() != seq[i + 1].source->rank())
            throw MathError("NotComposable", "consecutive morphisms do not chain");
        // zero composite on underlying vector spaces
        for (int c = 0; c < decs[i]->rank(); ++c) {
            QVec e(decs[i]->rank(), Rat(0));
            e[c] = 1;
            const QVec w = toric::apply(seq[i + 1].matrix, toric::apply(seq[i].matrix, e));
            if (std::any_of(w.begin(), w.end(), [](const Rat& x) { return x != 0; }))
                throw MathError("NotComposable", "composite of consecutive maps is nonzero");
        }
    }

    std::vector<const QMat*> maps;
    for (const DecorationMorphism& phi : seq) maps.push_back(&phi.matrix);

    ExactnessReport rep;
    auto check_at = [&](const std::vector<QMat>& spaces, const Cone& sigma,
                        const ZVec& m) {
        std::string why;
        const int pos = sequence_failure(spaces, maps, &why);
        if (pos >= 0 && rep.exact) {
            rep.exact = false;
            rep.reason = why;
            rep.sigma = sigma;
            rep.m = m;
            rep.position = pos;
        }
    };

    // underlying vector spaces
    {
        std::vector<QMat> spaces;
        for (const WeilDecoration* d : decs) spaces.push_back(identity_matrix(d->rank()));
        check_at(spaces, Cone{}, ZVec(fan.n, 0));
        if (!rep.exact) return rep;
    }

    for (const Cone& sigma : fan.max_cones) {
        for_each_degree(box, [&](const ZVec& m) {
            if (!rep.exact) return;
            std::vector<QMat> spaces;
            for (const WeilDecoration* d : decs) spaces.push_back(eval_sigma(*d, sigma, m));
            check_at(spaces, sigma, m);
        });
        if (!rep.exact) return rep;
    }
    return rep;
}

bool is_surjective(const DecorationMorphism& phi, const DegreeBox& box) {
    long long k;
    try {
        k = minimal_twist([&](long long c) {
            return materialise(*phi.source, c).positive &&
                   materialise(*phi.target, c).positive;
        });
    } catch (const MathError&) {
        throw MathError("CannotMaterialise",
                        "no common positive twist for source and target");
    }
    const MaterialisedDecoration src = materialise(*phi.source, k);
    const MaterialisedDecoration tgt = materialise(*phi.target, k);
    bool onto = true;
    for_each_degree(box, [&](const ZVec& m) {
        if (!onto) return;
        const QMat img = image(phi.matrix, eval_global(src, m));
        if (!subspace_leq(eval_global(tgt, m), img)) onto = false;
    });
    return onto;
}

WeilDecoration kernel_decoration(const DecorationMorphism& phi) {
    const WeilDecoration& src = *phi.source;
    const QMat ker = kernel_basis(phi.matrix, src.rank());
    const int kr = static_cast<int>(ker.size());
    std::vector<std::pair<QMat, ExtCoeffs>> strata;
    std::vector<std::string> seen;
    for (int s = 1; s < src.strat.size(); ++s) {
        const QMat cut = subspace_intersection(src.strat.closures[s], ker, src.rank());
        if (cut.empty()) continue;
        const std::string key = subspace_key(cut);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        // divisor of the ambient stratum of a generic point of the cut
        const int amb = generic_stratum(src, cut);
        QMat in_ker;
        for (const QVec& row : cut) in_ker.push_back(coordinates(ker, row));
        strata.push_back({rref(in_ker), src.divisor[amb]});
    }
    return make_decoration(*src.fan, kr, std::move(strata));
}

ChainComplexOverStrata canonical_resolution(const WeilDecoration& dec, int max_len) {
    if (max_len < dec.strat.height())
        throw SchemaError("max_len below the stratification height");
    ChainComplexOverStrata cx;
    cx.dec = &dec;
    const Stratification& st = dec.strat;
    std::vector<std::vector<int>> current;
    for (int s = 1; s < st.size(); ++s) current.push_back({s});
    while (!current.empty() && static_cast<int>(cx.chains.size()) <= max_len) {
        std::sort(current.begin(), current.end());
        cx.chains.push_back(current);
        std::vector<std::vector<int>> longer;
        for (const std::vector<int>& c : current)
            for (int s = 1; s < st.size(); ++s) {
                if (s == c.back()) continue;
                if (st.leq[c.back()][s]) {
                    std::vector<int> ext = c;
                    ext.push_back(s);
                    longer.push_back(std::move(ext));
                }
            }
        current = std::move(longer);
    }

    // d.d = 0 on the underlying graded vector spaces (with every term fully
    // present); sign cancellation then holds for every evaluation.
    auto full_level = [&](int l) {
        // offsets of each chain's block and total dimension
        std::vector<int> off(cx.chains[l].size() + 1, 0);
        for (std::size_t i = 0; i < cx.chains[l].size(); ++i)
            off[i + 1] = off[i] + st.dim(cx.chains[l][i][0]);
        return off;
    };
    auto full_diff = [&](int l) {
        const auto& lo = cx.chains[l - 1];
        const auto& hi = cx.chains[l];
        const std::vector<int> off_lo = full_level(l - 1);
        const std::vector<int> off_hi = full_level(l);
        QMat d(off_lo.back(), QVec(off_hi.back(), Rat(0)));
        for (std::size_t ci = 0; ci < hi.size(); ++ci) {
            const std::vector<int>& c = hi[ci];
            for (std::size_t j = 0; j < c.size(); ++j) {
                std::vector<int> omitted = c;
                omitted.erase(omitted.begin() + j);
                const auto it = std::lower_bound(lo.begin(), lo.end(), omitted);
                const std::size_t ti = it - lo.begin();
                const Rat sign = j % 2 == 0 ? 1 : -1;
                const QMat& from = st.closures[c[0]];
                const QMat& into = st.closures[omitted[0]];
                for (std::size_t b = 0; b < from.size(); ++b) {
                    const QVec co = coordinates(into, from[b]);
                    for (std::size_t t = 0; t < co.size(); ++t)
                        d[off_lo[ti] + t][off_hi[ci] + b] += sign * co[t];
                }
            }
        }
        return d;
    };
    for (int l = 2; l < static_cast<int>(cx.chains.size()); ++l) {
        const QMat a = full_diff(l - 1);
        const QMat b = full_diff(l);
        for (std::size_t col = 0; col < b[0].size(); ++col) {
            QVec v(b.size(), Rat(0));
            for (std::size_t r = 0; r < b.size(); ++r) v[r] = b[r][col];
            const QVec w = toric::apply(a, v);
            for (const Rat& x : w)
                if (x != 0) throw MathError("NotAComplex", "d.d != 0 in the resolution");
        }
    }
    return cx;
}

std::vector<int> resolution_homology(const ChainComplexOverStrata& cx,
                                     const Cone& sigma, const ZVec& m) {
    const WeilDecoration& dec = *cx.dec;
    const Stratification& st = dec.strat;
    const Fan& fan = *dec.fan;
    const QMat ev = eval_sigma(dec, sigma, m);

    const int levels = static_cast<int>(cx.chains.size());
    // active chains per level, with block offsets
    std::vector<std::vector<int>> active(levels);
    std::vector<std::vector<int>> off(levels);
    for (int l = 0; l < levels; ++l) {
        off[l].push_back(0);
        for (std::size_t i = 0; i < cx.chains[l].size(); ++i) {
            const std::vector<int>& c = cx.chains[l][i];
            if (!degree_active(fan, sigma, *dec.divisor[c.back()], m)) continue;
            active[l].push_back(static_cast<int>(i));
            off[l].push_back(off[l].back() + st.dim(c[0]));
        }
    }

    auto level_dim = [&](int l) { return off[l].back(); };

    auto diff = [&](int l) {  // C_l -> C_{l-1} restricted to active chains
        QMat d(level_dim(l - 1), QVec(level_dim(l), Rat(0)));
        for (std::size_t hi = 0; hi < active[l].size(); ++hi) {
            const std::vector<int>& c = cx.chains[l][active[l][hi]];
            for (std::size_t j = 0; j < c.size(); ++j) {
                std::vector<int> omitted = c;
                omitted.erase(omitted.begin() + j);
                const auto& lo_level = cx.chains[l - 1];
                const auto it = std::lower_bound(lo_level.begin(), lo_level.end(), omitted);
                const int raw = static_cast<int>(it - lo_level.begin());
                const auto pos = std::find(active[l - 1].begin(), active[l - 1].end(), raw);
                if (pos == active[l - 1].end())
                    throw MathError("NotAComplex", "omission leaves the active region");
                const std::size_t lo = pos - active[l - 1].begin();
                const Rat sign = j % 2 == 0 ? 1 : -1;
                const QMat& from = st.closures[c[0]];
                const QMat& into = st.closures[omitted[0]];
                for (std::size_t b = 0; b < from.size(); ++b) {
                    const QVec co = coordinates(into, from[b]);
                    for (std::size_t t = 0; t < co.size(); ++t)
                        d[off[l - 1][lo] + t][off[l][hi] + b] += sign * co[t];
                }
            }
        }
        return d;
    };

    // augmentation C_0 -> eval
    QMat aug(ev.size(), QVec(levels ? level_dim(0) : 0, Rat(0)));
    for (std::size_t i = 0; levels && i < active[0].size(); ++i) {
        const int s = cx.chains[0][active[0][i]][0];
        const QMat& from = st.closures[s];
        for (std::size_t b = 0; b < from.size(); ++b) {
            const QVec co = coordinates(ev, from[b]);
            for (std::size_t t = 0; t < co.size(); ++t)
                aug[t][off[0][i] + b] += co[t];
        }
    }

    std::vector<int> ranks(levels + 1, 0);  // ranks[0] = rank(aug), ranks[l] = rank(d_l)
    ranks[0] = rank(aug);
    for (int l = 1; l < levels; ++l) ranks[l] = rank(diff(l));

    std::vector<int> h(levels + 1, 0);
    h[0] = static_cast<int>(ev.size()) - ranks[0];
    for (int l = 0; l < levels; ++l) {
        const int out = l == 0 ? ranks[0] : ranks[l];
        const int in = l + 1 < levels ? ranks[l + 1] : 0;
        h[l + 1] = level_dim(l) - out - in;
    }
    return h;
}

}  // namespace toric
