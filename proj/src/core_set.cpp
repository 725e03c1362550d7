#include "tbp/core_set.hpp"

#include <cmath>

#include "tbp/errors.hpp"

namespace tbp {

CoreSet select_core_set(const ArmSet& arms) {
    const int d = arms.d;
    const int K = arms.K();
    CoreSet cs;
    std::vector<Vec> basis;  // orthonormal basis of the chosen span

    for (int round = 0; round < d; ++round) {
        int best = -1;
        double best_resid = 0.0;
        for (int a = 0; a < K; ++a) {
            Vec r = arms.features[a];
            for (const Vec& q : basis) {
                const double c = dot(q, r);
                for (int i = 0; i < d; ++i) r[i] -= c * q[i];
            }
            const double rn = norm(r);
            if (rn > best_resid + 1e-15) {
                best_resid = rn;
                best = a;
            }
        }
        if (best < 0 || best_resid <= 1e-12)
            throw RankDeficientError("select_core_set: arms do not span R^d");
        cs.indices.push_back(best);
        Vec q = arms.features[best];
        for (const Vec& qq : basis) {
            const double c = dot(qq, q);
            for (int i = 0; i < d; ++i) q[i] -= c * qq[i];
        }
        const double qn = norm(q);
        for (int i = 0; i < d; ++i) q[i] /= qn;
        basis.push_back(std::move(q));
    }

    std::vector<Vec> chosen;
    for (int idx : cs.indices) chosen.push_back(arms.features[idx]);
    cs.c_a0 = min_eig(gram(chosen, Vec(chosen.size(), 1.0))) / std::sqrt(d);
    return cs;
}

}  // namespace tbp
