#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tbp/envsim.hpp"
#include "tbp/errors.hpp"
#include "tbp/model.hpp"

using namespace tbp;

namespace {

ArmSet basis_arms() {
    ArmSet a;
    a.d = 2;
    a.L = 1.01;
    a.features = {{1.0, 0.0}, {0.0, 1.0}};
    return a;
}

Instance random_instance(RngStream& rng, int d, int k) {
    Instance inst;
    inst.arms.d = d;
    inst.arms.L = 10.0;
    for (int a = 0; a < k; ++a) {
        Vec x(d);
        for (int i = 0; i < d; ++i) x[i] = rng.normal();
        inst.arms.features.push_back(std::move(x));
    }
    inst.theta.resize(d);
    for (int i = 0; i < d; ++i) inst.theta[i] = rng.normal();
    inst.sigma = 1.0;
    inst.rho = rng.normal();
    inst.epsilon = rng.uniform() * 0.5;
    return inst;
}

}  // namespace

TEST_CASE("good_set basics") {
    const AnswerSet ans = good_set(basis_arms(), {1.0, 0.0}, 0.5);
    CHECK(ans.above == std::vector<int>{0});
    CHECK(ans.below == std::vector<int>{1});
}

TEST_CASE("good_set on the hard benchmark instance") {
    // x' has mean 5.5 cos(0.1) > 5, so it belongs above together with e1.
    const Instance inst = benchmark_instance(2);
    const AnswerSet ans = good_set(inst.arms, inst.theta, inst.rho);
    CHECK(ans.above == std::vector<int>{0, 2});
    CHECK(ans.below == std::vector<int>{1, 3});
}

TEST_CASE("good_set with unreachable threshold") {
    const AnswerSet ans = good_set(basis_arms(), {1.0, 2.0}, 1e9);
    CHECK(ans.above.empty());
    CHECK(ans.below.size() == 2);
}

TEST_CASE("good_set puts exact ties below") {
    const AnswerSet ans = good_set(basis_arms(), {0.5, 0.25}, 0.5);
    CHECK(ans.above.empty());
}

TEST_CASE("correctness exact answer") {
    Instance inst;
    inst.arms = basis_arms();
    inst.theta = {1.0, 0.0};
    inst.rho = 0.5;
    inst.epsilon = 0.0;
    const AnswerSet ans = good_set(inst.arms, inst.theta, inst.rho);
    const Correctness c = correctness(ans, inst);
    CHECK(c.strict);
    CHECK(c.relaxed);
}

TEST_CASE("arm inside the band cannot break relaxed correctness") {
    Instance inst;
    inst.arms = basis_arms();
    inst.theta = {1.0, 0.0};
    inst.rho = 0.8;  // arm 0 mean 1.0 = rho + eps/2 with eps 0.4
    inst.epsilon = 0.4;
    // misplace arm 0 (inside the band): strict fails, relaxed survives
    AnswerSet ans;
    ans.below = {0, 1};
    const Correctness c = correctness(ans, inst);
    CHECK_FALSE(c.strict);
    CHECK(c.relaxed);
}

TEST_CASE("benchmark answer {e1} only is wrong both ways") {
    const Instance inst = benchmark_instance(2);
    AnswerSet ans;
    ans.above = {0};
    ans.below = {1, 2, 3};
    const Correctness c = correctness(ans, inst);
    CHECK_FALSE(c.strict);
    CHECK_FALSE(c.relaxed);
}

TEST_CASE("ambiguous_arms") {
    const ArmSet arms = basis_arms();
    SUBCASE("eps 0, nothing at the threshold") {
        const auto p = ambiguous_arms(arms, {1.0, 0.0}, 0.5, 0.0);
        CHECK(p.outside.size() == 2);
        CHECK(p.inside.empty());
    }
    SUBCASE("band swallows one arm") {
        const auto p = ambiguous_arms(arms, {1.0, 0.4}, 0.5, 0.3);
        CHECK(p.outside == std::vector<int>{0});
        CHECK(p.inside == std::vector<int>{1});
    }
    SUBCASE("band swallows everything") {
        const auto p = ambiguous_arms(arms, {1.0, 0.4}, 0.5, 10.0);
        CHECK(p.outside.empty());
    }
    SUBCASE("exact boundary lands inside") {
        // 0.5 + 0.25 is exact in binary, so the mean sits exactly on the
        // band edge
        const auto p = ambiguous_arms(arms, {0.75, 0.0}, 0.5, 0.25);
        CHECK(p.inside == std::vector<int>{0});
    }
}

TEST_CASE("monotone nesting of good sets in epsilon") {
    RngStream rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = random_instance(rng, 2 + rng.uniform_int(3), 6);
        const double eps = rng.uniform();
        const AnswerSet hi = good_set(inst.arms, inst.theta, inst.rho + eps);
        const AnswerSet mid = good_set(inst.arms, inst.theta, inst.rho);
        const AnswerSet lo = good_set(inst.arms, inst.theta, inst.rho - eps);
        for (int a : hi.above) CHECK(mid.is_above(a));
        for (int a : mid.above) CHECK(lo.is_above(a));
    }
}

TEST_CASE("strict correctness implies relaxed") {
    RngStream rng(555);
    for (int trial = 0; trial < 300; ++trial) {
        const Instance inst = random_instance(rng, 2, 5);
        // random answer set
        AnswerSet ans;
        for (int a = 0; a < inst.arms.K(); ++a) {
            if (rng.uniform() < 0.5)
                ans.above.push_back(a);
            else
                ans.below.push_back(a);
        }
        const Correctness c = correctness(ans, inst);
        if (c.strict) CHECK(c.relaxed);
    }
}

TEST_CASE("good_set invariant under positive rescaling") {
    RngStream rng(808);
    for (int trial = 0; trial < 100; ++trial) {
        const Instance inst = random_instance(rng, 3, 6);
        const double c = 0.01 + 10.0 * rng.uniform();
        Vec scaled = inst.theta;
        for (double& v : scaled) v *= c;
        const AnswerSet a = good_set(inst.arms, inst.theta, inst.rho);
        const AnswerSet b = good_set(inst.arms, scaled, inst.rho * c);
        CHECK(a.above == b.above);
    }
}

TEST_CASE("instance json round-trip") {
    const Instance inst = benchmark_instance(3);
    const Instance back = Instance::from_json_text(inst.to_json_text());
    CHECK(back.arms.d == 3);
    CHECK(back.arms.K() == 5);
    CHECK(back.arms.L == doctest::Approx(1.01));
    CHECK(back.theta == inst.theta);
    CHECK(back.rho == inst.rho);
    CHECK(back.sigma == inst.sigma);
    CHECK(back.epsilon == inst.epsilon);
    for (int a = 0; a < 5; ++a) CHECK(back.arms.features[a] == inst.arms.features[a]);
}

TEST_CASE("instance validation rejects bad input") {
    Instance inst = benchmark_instance(2);
    std::string text = inst.to_json_text();
    // sigma must be positive
    auto bad = text;
    const auto pos = bad.find("\"sigma\": 1.0");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 12, "\"sigma\": 0.0");
    CHECK_THROWS(Instance::from_json_text(bad));
}

TEST_CASE("armset validation") {
    ArmSet degenerate;
    degenerate.d = 2;
    degenerate.L = 2.0;
    degenerate.features = {{1.0, 0.0}, {1.0, 0.0}};
    CHECK_THROWS_AS(degenerate.validate(), RankDeficientError);

    ArmSet tall;
    tall.d = 2;
    tall.L = 0.5;  // violated by unit arms
    tall.features = {{1.0, 0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(tall.validate(), DimensionMismatchError);
}
