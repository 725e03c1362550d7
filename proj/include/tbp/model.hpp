#pragma once
#include <string>
#include <vector>

#include "tbp/linalg.hpp"

namespace tbp {

/// The feature vectors x_1..x_K spanning R^d, with norm bound L.
struct ArmSet {
    int d = 0;
    double L = 1.0;
    std::vector<Vec> features;

    int K() const { return static_cast<int>(features.size()); }

    // K >= d, features span R^d, ||x_a|| < L for all a.
    void validate() const;
};

/// Environment nu = (arms, theta, sigma) plus the task (rho, epsilon).
struct Instance {
    ArmSet arms;
    Vec theta;
    double sigma = 1.0;
    double rho = 0.0;
    double epsilon = 0.0;

    double mean(int arm) const { return dot(arms.features[arm], theta); }

    // JSON object {d, K, L, features, theta, sigma, rho, epsilon}.
    static Instance from_json_text(const std::string& text);
    static Instance load(const std::string& path);
    std::string to_json_text() const;
    void save(const std::string& path) const;
};

/// Point on the simplex over arms.
struct Design {
    Vec weights;

    void validate() const;  // nonnegative, sums to 1 within 1e-12
};

/// Partition of the arms into {above threshold, below-or-at threshold}.
struct AnswerSet {
    std::vector<int> above;  // sorted
    std::vector<int> below;  // sorted

    bool is_above(int arm) const;
};

struct Correctness {
    bool strict = false;
    bool relaxed = false;
};

/// Arms split into those with |x_a^T theta - rho| > epsilon (outside the
/// band, "active") and the rest. Boundary |.| == epsilon lands inside.
struct BandPartition {
    std::vector<int> outside;  // A_{rho,eps}(theta)
    std::vector<int> inside;   // its complement
};

/// {a : x_a^T theta > rho}; exact ties go below.
AnswerSet good_set(const ArmSet& arms, const Vec& theta, double rho);

/// strict: answer equals the true split at rho. relaxed: every arm whose
/// mean clears rho+epsilon is above and every arm below rho-epsilon is
/// below; arms inside the band never count against either.
Correctness correctness(const AnswerSet& answer, const Instance& inst);

BandPartition ambiguous_arms(const ArmSet& arms, const Vec& theta, double rho,
                             double epsilon);

}  // namespace tbp
