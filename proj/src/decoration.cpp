#include "toric/decoration.hpp"

#include "toric/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace toric {

ExtCoeffs ext_meet(const ExtCoeffs& a, const ExtCoeffs& b) {
    if (!a) return b;  // (infinity) is neutral
    if (!b) return a;
    ZVec out(a->size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min((*a)[i], (*b)[i]);
    return out;
}

bool ext_geq(const ExtCoeffs& a, const ExtCoeffs& b) {
    if (!a) return true;  // (infinity) >= everything
    if (!b) return false;
    for (std::size_t i = 0; i < a->size(); ++i)
        if ((*a)[i] < (*b)[i]) return false;
    return true;
}

namespace {

void note(std::vector<std::string>* report, const std::string& msg) {
    if (report)
        report->push_back(msg);
    else
        throw MathError("NotAdmissible", msg);
}

std::string ext_to_string(const ExtCoeffs& d) {
    if (!d) return "(infinity)";
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < d->size(); ++i) os << (i ? "," : "") << (*d)[i];
    os << ']';
    return os.str();
}

}  // namespace

Stratification Stratification::build(int rank, std::vector<QMat> raw_closures,
                                     std::vector<std::string>* report) {
    Stratification st;
    st.rank = rank;
    for (QMat& m : raw_closures) st.closures.push_back(rref(std::move(m)));
    if (st.closures.empty() || !st.closures[0].empty())
        note(report, "zero stratum missing or not first");
    {
        std::set<std::string> keys;
        for (const QMat& c : st.closures)
            if (!keys.insert(subspace_key(c)).second)
                note(report, "duplicate stratum closure");
    }
    const int s = st.size();
    st.leq.assign(s, std::vector<bool>(s, false));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) st.leq[i][j] = subspace_leq(st.closures[i], st.closures[j]);
    for (int i = 0; i < s; ++i)
        if (st.dim(i) == rank) st.generic = i;

    // Join table: unique minimal stratum containing the subspace sum.
    st.join.assign(s, std::vector<int>(s, -1));
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j) {
            const QMat sum = subspace_sum(st.closures[i], st.closures[j]);
            int best = -1;
            std::vector<int> candidates;
            for (int k = 0; k < s; ++k)
                if (subspace_leq(sum, st.closures[k])) candidates.push_back(k);
            for (int k : candidates) {
                bool minimal = true;
                for (int o : candidates)
                    if (!st.leq[k][o]) { minimal = false; break; }
                if (minimal) { best = k; break; }
            }
            if (best < 0) note(report, "join of two strata has no least upper bound");
            st.join[i][j] = st.join[j][i] = best;
        }

    // Meet closure: the intersection of two closures must itself be a stratum
    // closure, otherwise some point of E has no unique minimal stratum.
    std::set<std::string> keys;
    for (const QMat& c : st.closures) keys.insert(subspace_key(c));
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j) {
            if (st.leq[i][j] || st.leq[j][i]) continue;
            const QMat meet =
                subspace_intersection(st.closures[i], st.closures[j], rank);
            if (!keys.count(subspace_key(meet)))
                note(report, "intersection of two closures is not a stratum");
        }
    return st;
}

int Stratification::stratum_of_point(const QVec& v) const {
    std::vector<int> containing;
    for (int i = 0; i < size(); ++i)
        if (contains(closures[i], v)) containing.push_back(i);
    for (int c : containing) {
        bool minimal = true;
        for (int o : containing)
            if (!leq[c][o]) { minimal = false; break; }
        if (minimal) return c;
    }
    throw MathError("NotAdmissible", "point without a unique minimal stratum");
}

int Stratification::height() const {
    // Longest strict chain among nonzero strata.
    std::vector<int> depth(size(), 0);
    std::vector<int> order(size());
    for (int i = 0; i < size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return dim(a) < dim(b); });
    int best = 0;
    for (int i : order) {
        if (i == 0) continue;
        for (int j : order) {
            if (j == 0 || j == i || !leq[j][i] || closures[j] == closures[i]) continue;
            depth[i] = std::max(depth[i], depth[j] + 1);
        }
        best = std::max(best, depth[i]);
    }
    return best;
}

ExtCoeffs MaterialisedDecoration::twisted(int s) const {
    const ExtCoeffs& d = base.divisor[s];
    if (!d) return std::nullopt;
    ZVec out = *d;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += twist[i];
    return out;
}

WeilDecoration make_decoration(const Fan& fan, int rank,
                               std::vector<std::pair<QMat, ExtCoeffs>> strata) {
    // Canonicalize, deduplicate, add the zero stratum, order deterministically.
    std::map<std::string, std::pair<QMat, ExtCoeffs>> by_key;
    for (auto& [closure, div] : strata) {
        QMat c = rref(std::move(closure));
        const std::string key = subspace_key(c);
        auto it = by_key.find(key);
        if (it == by_key.end()) {
            by_key.emplace(key, std::make_pair(std::move(c), std::move(div)));
        } else if (it->second.second != div) {
            throw MathError("NotAdmissible",
                            "one closure carries two different divisors");
        }
    }
    by_key.emplace(subspace_key({}), std::make_pair(QMat{}, std::nullopt));

    std::vector<std::pair<QMat, ExtCoeffs>> ordered;
    for (auto& [key, entry] : by_key) ordered.push_back(std::move(entry));
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) {
                         return a.first.size() < b.first.size();
                     });

    WeilDecoration dec;
    dec.fan = &fan;
    std::vector<QMat> closures;
    for (auto& [closure, div] : ordered) {
        closures.push_back(closure);
        dec.divisor.push_back(div);
    }
    dec.strat = Stratification::build(rank, std::move(closures), nullptr);
    for (int s = 0; s < dec.strat.size(); ++s) {
        const ExtCoeffs& d = dec.divisor[s];
        if ((s == 0) != !d.has_value())
            throw MathError("NotAdmissible",
                            "divisor is (infinity) exactly on the zero stratum");
        if (d && d->size() != fan.rays.size())
            throw SchemaError("divisor length does not match the ray count");
    }
    std::vector<std::string> report = validate(dec);
    if (!report.empty()) throw MathError("NotAdmissible", report.front());
    return dec;
}

std::vector<std::string> validate(const WeilDecoration& dec) {
    std::vector<std::string> report;
    Stratification st =
        Stratification::build(dec.rank(), dec.strat.closures, &report);
    if (st.generic < 0) report.push_back("generic stratum (closure = E) missing");
    if (dec.divisor.size() != dec.strat.closures.size()) {
        report.push_back("divisor table size mismatch");
        return report;
    }
    for (int s = 0; s < st.size(); ++s) {
        if (s == 0 && dec.divisor[s])
            report.push_back("zero stratum must carry (infinity)");
        if (s > 0 && !dec.divisor[s])
            report.push_back("nonzero stratum carries (infinity)");
        if (dec.divisor[s] && dec.fan &&
            dec.divisor[s]->size() != dec.fan->rays.size())
            report.push_back("divisor length does not match the ray count");
    }
    // Anti-semilattice morphism and order reversal.
    for (int i = 0; i < st.size(); ++i)
        for (int j = i; j < st.size(); ++j) {
            const int k = st.join[i][j];
            if (k < 0) continue;
            const ExtCoeffs expect = ext_meet(dec.divisor[i], dec.divisor[j]);
            if (dec.divisor[k] != expect)
                report.push_back("divisor(S v T) != divisor(S) ^ divisor(T) at (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 "): " + ext_to_string(dec.divisor[k]) + " vs " +
                                 ext_to_string(expect));
            if (st.leq[i][j] && !ext_geq(dec.divisor[i], dec.divisor[j]))
                report.push_back("order reversal fails at (" + std::to_string(i) +
                                 "," + std::to_string(j) + ")");
        }
    return report;
}

WeilDecoration canonical_stratification(const WeilDecoration& dec) {
    std::set<ZVec> values;
    for (int s = 1; s < dec.strat.size(); ++s) values.insert(*dec.divisor[s]);
    std::vector<std::pair<QMat, ExtCoeffs>> strata;
    for (const ZVec& d : values) {
        QMat closure;
        for (int s = 1; s < dec.strat.size(); ++s)
            if (ext_geq(dec.divisor[s], ExtCoeffs(d)))
                closure = subspace_sum(closure, dec.strat.closures[s]);
        strata.emplace_back(std::move(closure), ExtCoeffs(d));
    }
    try {
        return make_decoration(*dec.fan, dec.rank(), std::move(strata));
    } catch (const MathError& e) {
        throw MathError("NotCoarsenable", e.what());
    }
}

WeilDecoration line_bundle(const Fan& fan, const ZVec& coeffs) {
    return make_decoration(fan, 1, {{identity_matrix(1), ExtCoeffs(coeffs)}});
}

WeilDecoration direct_sum(const WeilDecoration& a, const WeilDecoration& b) {
    if (a.fan != b.fan) throw MathError("FanMismatch", "direct sum across fans");
    const int ra = a.rank(), rb = b.rank();
    std::vector<std::pair<QMat, ExtCoeffs>> strata;
    for (int i = 0; i < a.strat.size(); ++i)
        for (int j = 0; j < b.strat.size(); ++j) {
            if (i == 0 && j == 0) continue;
            QMat closure;
            for (const QVec& row : a.strat.closures[i]) {
                QVec v(ra + rb, Rat(0));
                std::copy(row.begin(), row.end(), v.begin());
                closure.push_back(std::move(v));
            }
            for (const QVec& row : b.strat.closures[j]) {
                QVec v(ra + rb, Rat(0));
                std::copy(row.begin(), row.end(), v.begin() + ra);
                closure.push_back(std::move(v));
            }
            strata.emplace_back(std::move(closure),
                                ext_meet(a.divisor[i], b.divisor[j]));
        }
    return make_decoration(*a.fan, ra + rb, std::move(strata));
}

WeilDecoration twist(const WeilDecoration& dec, const ZVec& coeffs) {
    WeilDecoration out = dec;
    for (int s = 1; s < out.strat.size(); ++s)
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            (*out.divisor[s])[i] += coeffs[i];
    return out;
}

QVec generic_point(const QMat& basis, const std::vector<QMat>& avoid, int ambient) {
    if (basis.empty())
        throw MathError("EmptySubspace", "no generic point of the zero space");
    for (long long t = 1; t < 100000; ++t) {
        QVec v(ambient, Rat(0));
        Rat w = 1;
        for (const QVec& row : basis) {
            for (int c = 0; c < ambient; ++c) v[c] += w * row[c];
            w *= t;
        }
        bool good = true;
        for (const QMat& sub : avoid)
            if (contains(sub, v) && !subspace_leq(basis, sub)) { good = false; break; }
        if (good) return v;
    }
    throw MathError("SearchExhausted", "generic point search did not terminate");
}

int generic_stratum(const WeilDecoration& dec, const QMat& v_basis) {
    const QMat basis = rref(v_basis);
    const QVec v = generic_point(basis, dec.strat.closures, dec.rank());
    return dec.strat.stratum_of_point(v);
}

WeilDecoration hom_decoration(const WeilDecoration& src, const WeilDecoration& tgt,
                              int stratum_cap) {
    if (src.fan != tgt.fan) throw MathError("FanMismatch", "hom across fans");
    const Fan& fan = *src.fan;
    const int re = src.rank(), rf = tgt.rank();
    const int dim = rf * re;  // phi as an rf x re matrix, flattened row-major

    // Linear conditions L_{S,T} = { phi : phi(closure(S)) <= closure(T) }.
    std::vector<QMat> members;
    std::set<std::string> keys;
    auto add_member = [&](QMat m) {
        QMat r = rref(std::move(m));
        if (keys.insert(subspace_key(r)).second) members.push_back(std::move(r));
    };
    add_member(identity_matrix(dim));  // the full space H
    add_member(QMat{});                // the zero subspace
    for (int s = 1; s < src.strat.size(); ++s) {
        for (int t = 0; t < tgt.strat.size(); ++t) {
            QMat constraints;  // functionals on phi that must vanish
            const QMat cofunctionals = kernel_basis(tgt.strat.closures[t], rf);
            for (const QVec& b : src.strat.closures[s])
                for (const QVec& c : cofunctionals) {
                    QVec row(dim, Rat(0));
                    for (int j = 0; j < rf; ++j)
                        for (int i = 0; i < re; ++i) row[j * re + i] = c[j] * b[i];
                    constraints.push_back(std::move(row));
                }
            add_member(kernel_basis(constraints, dim));
        }
    }
    // Close under intersection (the member family must be meet-closed for the
    // arrangement stratification to be admissible).
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            add_member(subspace_intersection(members[i], members[j], dim));
            if (static_cast<int>(members.size()) > stratum_cap)
                throw MathError("BlowUp", "hom stratification exceeds the cap");
        }
    }

    // Divisor of each member from a generic point.
    std::vector<std::pair<QMat, ExtCoeffs>> strata;
    for (const QMat& v : members) {
        if (v.empty()) continue;
        const QVec point = generic_point(v, members, dim);
        QMat phi(rf, QVec(re, Rat(0)));
        for (int j = 0; j < rf; ++j)
            for (int i = 0; i < re; ++i) phi[j][i] = point[j * re + i];
        ExtCoeffs d;  // starts at (infinity)
        for (int s = 1; s < src.strat.size(); ++s) {
            const QMat img = image(phi, src.strat.closures[s]);
            if (img.empty()) continue;
            const int g = generic_stratum(tgt, img);
            ZVec term(fan.rays.size());
            for (std::size_t r = 0; r < term.size(); ++r)
                term[r] = (*tgt.divisor[g])[r] - (*src.divisor[s])[r];
            d = ext_meet(d, ExtCoeffs(term));
        }
        if (!d)
            throw MathError("NotAdmissible", "nonzero hom stratum with no image");
        strata.emplace_back(v, std::move(d));
    }
    WeilDecoration fine = make_decoration(fan, dim, std::move(strata));
    return canonical_stratification(fine);
}

WeilDecoration dual_decoration(const WeilDecoration& dec, int stratum_cap) {
    return hom_decoration(dec, line_bundle(*dec.fan, ZVec(dec.fan->rays.size(), 0)),
                          stratum_cap);
}

QMat klyachko_filtration(const WeilDecoration& dec, int ray, long long level) {
    QMat span;
    for (int s = 1; s < dec.strat.size(); ++s)
        if ((*dec.divisor[s])[ray] >= level)
            span = subspace_sum(span, dec.strat.closures[s]);
    return span;
}

QMat eval_sigma(const WeilDecoration& dec, const Cone& sigma, const ZVec& m) {
    const Fan& fan = *dec.fan;
    QMat span;
    for (int s = 1; s < dec.strat.size(); ++s) {
        bool inside = true;
        for (int i : sigma.rays)
            if (dot(m, fan.rays[i]) < -(*dec.divisor[s])[i]) { inside = false; break; }
        if (inside) span = subspace_sum(span, dec.strat.closures[s]);
    }
    return span;
}

QMat eval_global(const MaterialisedDecoration& mat, const ZVec& m) {
    if (!mat.positive)
        throw MathError("NotPositive", "global evaluation needs a positive twist");
    const Fan& fan = *mat.base.fan;
    QMat span;
    for (int s = 1; s < mat.base.strat.size(); ++s) {
        const ZVec d = *mat.twisted(s);
        bool inside = true;
        for (std::size_t i = 0; i < fan.rays.size(); ++i)
            if (dot(m, fan.rays[i]) < -d[i]) { inside = false; break; }
        if (inside) span = subspace_sum(span, mat.base.strat.closures[s]);
    }
    return span;
}

MaterialisedDecoration materialise(const WeilDecoration& dec, long long k) {
    const Fan& fan = *dec.fan;
    if (!fan.ample)
        throw MathError("NoAmpleAvailable", "fan carries no ample divisor");
    MaterialisedDecoration mat;
    mat.base = dec;
    mat.k = k;
    mat.twist.assign(fan.rays.size(), 0);
    for (std::size_t i = 0; i < fan.rays.size(); ++i) mat.twist[i] = k * (*fan.ample)[i];
    mat.positive = true;
    mat.ample = true;
    for (int s = 1; s < dec.strat.size(); ++s) {
        const ToricDivisor d{&fan, *mat.twisted(s)};
        if (!is_nef(d)) mat.positive = false;
        if (!is_ample(d)) mat.ample = false;
    }
    return mat;
}

MaterialisedDecoration materialise(const WeilDecoration& dec, TwistGoal goal) {
    const Fan& fan = *dec.fan;
    if (!fan.ample)
        throw MathError("NoAmpleAvailable", "fan carries no ample divisor");
    const long long k = minimal_twist([&](long long kk) {
        MaterialisedDecoration mat = materialise(dec, kk);
        return goal == TwistGoal::Ample ? mat.ample : mat.positive;
    });
    return materialise(dec, k);
}

bool is_locally_free(const WeilDecoration& dec) {
    const Fan& fan = *dec.fan;
    const int n = fan.n;
    const int r = dec.rank();
    for (const Cone& sigma : fan.max_cones) {
        // Jump values of the Klyachko filtration along each of the cone's rays.
        std::vector<std::vector<long long>> vals(n);
        for (int i = 0; i < n; ++i) {
            std::set<long long> v;
            for (int s = 1; s < dec.strat.size(); ++s)
                v.insert((*dec.divisor[s])[sigma.rays[i]]);
            vals[i].assign(v.begin(), v.end());
        }
        // d(idx) = dim of the intersection of the filtration pieces, where
        // idx_i == vals[i].size() means the zero subspace beyond the top jump.
        std::map<std::vector<int>, int> dims;
        std::vector<int> idx(n, 0);
        auto dim_at = [&](const std::vector<int>& ix) {
            auto it = dims.find(ix);
            if (it != dims.end()) return it->second;
            QMat inter = identity_matrix(r);
            for (int i = 0; i < n; ++i) {
                if (ix[i] >= static_cast<int>(vals[i].size())) { inter = {}; break; }
                inter = subspace_intersection(
                    inter, klyachko_filtration(dec, sigma.rays[i], vals[i][ix[i]]), r);
            }
            const int d = static_cast<int>(inter.size());
            dims.emplace(ix, d);
            return d;
        };
        // Inclusion-exclusion multiplicities over the jump grid must be
        // non-negative and sum to the rank (simultaneous splitting test).
        long long total = 0;
        for (;;) {
            long long mult = 0;
            for (unsigned eps = 0; eps < (1u << n); ++eps) {
                std::vector<int> ix = idx;
                int bits = 0;
                for (int i = 0; i < n; ++i)
                    if (eps & (1u << i)) { ++ix[i]; ++bits; }
                mult += (bits % 2 ? -1 : 1) * dim_at(ix);
            }
            if (mult < 0) return false;
            total += mult;
            int i = n - 1;
            while (i >= 0 && idx[i] + 1 >= static_cast<int>(vals[i].size())) {
                idx[i] = 0;
                --i;
            }
            if (i < 0) break;
            ++idx[i];
        }
        if (total != r) return false;
    }
    return true;
}

std::string hasse_dot(const WeilDecoration& dec) {
    std::ostringstream os;
    os << "digraph hasse {\n  rankdir=BT;\n";
    const Stratification& st = dec.strat;
    for (int s = 0; s < st.size(); ++s) {
        os << "  s" << s << " [label=\"dim " << st.dim(s) << "\\n"
           << ext_to_string(dec.divisor[s]) << "\"];\n";
    }
    for (int i = 0; i < st.size(); ++i)
        for (int j = 0; j < st.size(); ++j) {
            if (i == j || !st.leq[i][j] || st.dim(i) == st.dim(j)) continue;
            bool covering = true;
            for (int k = 0; k < st.size(); ++k) {
                if (k == i || k == j) continue;
                if (st.leq[i][k] && st.leq[k][j] && st.dim(k) != st.dim(i) &&
                    st.dim(k) != st.dim(j)) {
                    covering = false;
                    break;
                }
            }
            if (covering) os << "  s" << i << " -> s" << j << ";\n";
        }
    os << "}\n";
    return os.str();
}

}  // namespace toric
