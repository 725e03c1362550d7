#pragma once
#include <vector>

#include "tbp/model.hpp"

namespace tbp {

/// Spanning subset A0 of d arms plus the forced-exploration constant
/// c_{A0} = lambda_min(gram(A0)) / sqrt(d).
struct CoreSet {
    std::vector<int> indices;  // d arms, in greedy pick order
    double c_a0 = 0.0;
};

/// Volume-greedy selection: d rounds, each picking the arm with the
/// largest component orthogonal to the span of the arms already chosen
/// (ties by lowest index). Throws RankDeficientError when the arms do
/// not span R^d.
CoreSet select_core_set(const ArmSet& arms);

}  // namespace tbp
