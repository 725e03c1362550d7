#include "tbp/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tbp/errors.hpp"

namespace tbp {

void ArmSet::validate() const {
    if (d < 1) throw DimensionMismatchError("ArmSet: d must be >= 1");
    if (K() < d) throw DimensionMismatchError("ArmSet: need K >= d");
    for (const auto& x : features) {
        if (static_cast<int>(x.size()) != d)
            throw DimensionMismatchError("ArmSet: feature dim != d");
        if (!(norm(x) < L))
            throw DimensionMismatchError("ArmSet: ||x|| >= L");
    }
    Vec uniform(features.size(), 1.0 / static_cast<double>(K()));
    if (min_eig(gram(features, uniform)) <= 0.0)
        throw RankDeficientError("ArmSet: features do not span R^d");
}

void Design::validate() const {
    double s = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw DimensionMismatchError("Design: negative weight");
        s += w;
    }
    if (std::abs(s - 1.0) > 1e-12)
        throw DimensionMismatchError("Design: weights do not sum to 1");
}

bool AnswerSet::is_above(int arm) const {
    return std::binary_search(above.begin(), above.end(), arm);
}

AnswerSet good_set(const ArmSet& arms, const Vec& theta, double rho) {
    AnswerSet out;
    for (int a = 0; a < arms.K(); ++a) {
        if (dot(arms.features[a], theta) > rho)
            out.above.push_back(a);
        else
            out.below.push_back(a);
    }
    return out;
}

Correctness correctness(const AnswerSet& answer, const Instance& inst) {
    Correctness c;
    const AnswerSet truth = good_set(inst.arms, inst.theta, inst.rho);
    c.strict = answer.above == truth.above;
    c.relaxed = true;
    for (int a = 0; a < inst.arms.K(); ++a) {
        const double m = inst.mean(a);
        if (m > inst.rho + inst.epsilon && !answer.is_above(a)) c.relaxed = false;
        if (m < inst.rho - inst.epsilon && answer.is_above(a)) c.relaxed = false;
    }
    return c;
}

BandPartition ambiguous_arms(const ArmSet& arms, const Vec& theta, double rho,
                             double epsilon) {
    BandPartition p;
    for (int a = 0; a < arms.K(); ++a) {
        const double m = dot(arms.features[a], theta);
        if (m > rho + epsilon || m < rho - epsilon)
            p.outside.push_back(a);
        else
            p.inside.push_back(a);
    }
    return p;
}

Instance Instance::from_json_text(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Instance inst;
    inst.arms.d = j.at("d").get<int>();
    inst.arms.L = j.at("L").get<double>();
    inst.arms.features = j.at("features").get<std::vector<Vec>>();
    if (j.at("K").get<int>() != inst.arms.K())
        throw DimensionMismatchError("instance: K != |features|");
    inst.theta = j.at("theta").get<Vec>();
    inst.sigma = j.at("sigma").get<double>();
    inst.rho = j.at("rho").get<double>();
    inst.epsilon = j.at("epsilon").get<double>();
    if (static_cast<int>(inst.theta.size()) != inst.arms.d)
        throw DimensionMismatchError("instance: |theta| != d");
    if (!(inst.sigma > 0.0))
        throw DimensionMismatchError("instance: sigma must be > 0");
    if (inst.epsilon < 0.0)
        throw DimensionMismatchError("instance: epsilon must be >= 0");
    inst.arms.validate();
    return inst;
}

std::string Instance::to_json_text() const {
    nlohmann::json j;
    j["d"] = arms.d;
    j["K"] = arms.K();
    j["L"] = arms.L;
    j["features"] = arms.features;
    j["theta"] = theta;
    j["sigma"] = sigma;
    j["rho"] = rho;
    j["epsilon"] = epsilon;
    return j.dump(2);
}

Instance Instance::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

void Instance::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << to_json_text() << "\n";
}

}  // namespace tbp
