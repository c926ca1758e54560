// Compares the serial and OpenMP per-degree graded-table loops on a medium
// fixture and verifies that they produce identical tables.

#include "toric/cohomology.hpp"

#include <chrono>
#include <iostream>

using namespace toric;
using Clock = std::chrono::steady_clock;

namespace {

WeilDecoration fixture() {
    static Fan fan = Fan::from_ample_polytope({{0, 0}, {1, 0}, {0, 1}});
    // tangent sheaf plus twisted line bundles: several strata, a wide box
    std::vector<std::pair<QMat, ExtCoeffs>> strata;
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        QVec dir = to_qvec(fan.rays[i]);
        ZVec a(fan.rays.size(), 0);
        a[i] = 1;
        strata.push_back({QMat{dir}, a});
    }
    strata.push_back({identity_matrix(2), ZVec(fan.rays.size(), 0)});
    WeilDecoration tangent = make_decoration(fan, 2, std::move(strata));

    ZVec minus4(fan.rays.size(), 0), plus2(fan.rays.size(), 0);
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
        if (fan.rays[i] == ZVec{-1, -1}) {
            minus4[i] = -4;
            plus2[i] = 2;
        }
    return direct_sum(direct_sum(twist(tangent, minus4), line_bundle(fan, plus2)),
                      line_bundle(fan, minus4));
}

double run(const WeilDecoration& dec, Method method, bool parallel,
           GradedTable* out) {
    auto t0 = Clock::now();
    *out = graded_table(dec, method, std::nullopt, parallel);
    auto t1 = Clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
    WeilDecoration dec = fixture();
    std::cout << "rank " << dec.rank() << ", " << dec.strat.size() << " strata\n";

    for (Method method : {Method::Cech, Method::Polyhedral}) {
        const char* name = method == Method::Cech ? "cech" : "polyhedral";
        GradedTable serial, parallel;
        double ts = run(dec, method, false, &serial);
        double tp = run(dec, method, true, &parallel);
        bool equal = serial.entries == parallel.entries;
        std::cout << name << ": " << serial.entries.size() << " degrees, serial "
                  << ts << "s, parallel " << tp << "s, speedup " << ts / tp
                  << (equal ? "" : "  TABLES DIFFER") << "\n";
        if (!equal) return 1;
    }
#ifndef TORIC_HAVE_OPENMP
    std::cout << "(built without OpenMP: both runs use the serial loop)\n";
#endif
    return 0;
}
