#include "ltq/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "ltq/error.hpp"
#include "ltq/rng.hpp"

namespace ltq {

namespace {

using json = nlohmann::json;

double parse_bound(const json& obj, const char* key, double unbounded, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return unbounded;
    if (it->is_number()) return it->get<double>();
    if (it->is_string()) {
        const auto s = it->get<std::string>();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    }
    throw ConfigError(path + "." + key, "expected a number, null, \"-inf\" or \"inf\"");
}

IntervalPredicate parse_predicate(const json& obj, const std::string& path) {
    if (!obj.is_object()) throw ConfigError(path, "predicate must be an object");
    IntervalPredicate p;
    auto m = obj.find("metric");
    if (m == obj.end() || !m->is_string()) throw ConfigError(path + ".metric", "missing metric name");
    const auto name = parse_metric_name(m->get<std::string>());
    if (!name) throw ConfigError(path + ".metric", "unknown metric \"" + m->get<std::string>() + "\"");
    p.metric = *name;
    p.lower = parse_bound(obj, "lower", -std::numeric_limits<double>::infinity(), path);
    p.upper = parse_bound(obj, "upper", std::numeric_limits<double>::infinity(), path);
    if (auto mode = obj.find("mode"); mode != obj.end()) {
        if (*mode == "inside")
            p.mode = IntervalMode::inside;
        else if (*mode == "outside")
            p.mode = IntervalMode::outside;
        else
            throw ConfigError(path + ".mode", "expected \"inside\" or \"outside\"");
    }
    for (const auto& key : obj.items()) {
        if (key.key() != "metric" && key.key() != "lower" && key.key() != "upper" &&
            key.key() != "mode")
            throw ConfigError(path + "." + key.key(), "unknown field");
    }
    return p;
}

std::vector<IntervalPredicate> parse_stage(const json& domain, const char* key,
                                           const std::string& path) {
    auto it = domain.find(key);
    const std::string here = path + "." + key;
    if (it == domain.end()) throw ConfigError(here, "missing stage");
    if (!it->is_array()) throw ConfigError(here, "stage must be an array");
    std::vector<IntervalPredicate> out;
    for (std::size_t i = 0; i < it->size(); ++i)
        out.push_back(parse_predicate((*it)[i], here + "[" + std::to_string(i) + "]"));
    return out;
}

const double& require(const MetricVector& v, MetricName m) {
    const auto& x = v[m];
    if (!x) throw Error("metric " + std::string(to_string(m)) + " is not computable");
    return *x;
}

bool all_pass(const std::vector<IntervalPredicate>& stage, const MetricVector& v) {
    return std::all_of(stage.begin(), stage.end(),
                       [&](const IntervalPredicate& p) { return p.passes(*v[p.metric]); });
}

} // namespace

bool IntervalPredicate::passes(double value) const noexcept {
    const bool inside = value >= lower && value < upper;
    return mode == IntervalMode::inside ? inside : (value < lower || value >= upper);
}

ThresholdConfig::ThresholdConfig(std::map<std::string, DomainThresholds> domains)
    : domains_(std::move(domains)) {
    if (!domains_.count("default")) throw ConfigError("domains.default", "required entry missing");
    for (const auto& [name, d] : domains_) {
        const std::string path = "domains." + name;
        if (d.stage1_holistic.empty()) throw ConfigError(path + ".stage1_holistic", "stage is empty");
        if (d.stage2_chaotic.empty()) throw ConfigError(path + ".stage2_chaotic", "stage is empty");
        auto check = [&](const std::vector<IntervalPredicate>& stage, const char* key) {
            for (std::size_t i = 0; i < stage.size(); ++i) {
                const auto& p = stage[i];
                const std::string here = path + "." + key + "[" + std::to_string(i) + "]";
                if (std::isnan(p.lower) || std::isnan(p.upper))
                    throw ConfigError(here, "bound is NaN");
                if (p.lower > p.upper)
                    throw ConfigError(here, "inverted bounds: lower > upper");
            }
        };
        check(d.stage1_holistic, "stage1_holistic");
        check(d.stage2_chaotic, "stage2_chaotic");
    }
}

ThresholdConfig ThresholdConfig::parse(std::istream& in) {
    json root;
    try {
        root = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid threshold JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("", "top level must be an object");
    auto doms = root.find("domains");
    if (doms == root.end() || !doms->is_object()) throw ConfigError("domains", "missing object");
    std::map<std::string, DomainThresholds> out;
    for (const auto& [name, body] : doms->items()) {
        const std::string path = "domains." + name;
        if (!body.is_object()) throw ConfigError(path, "domain entry must be an object");
        out[name] = {parse_stage(body, "stage1_holistic", path),
                     parse_stage(body, "stage2_chaotic", path)};
    }
    return ThresholdConfig(std::move(out));
}

ThresholdConfig ThresholdConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open threshold file");
    return parse(in);
}

const DomainThresholds& ThresholdConfig::for_domain(const std::string& domain) const {
    auto it = domains_.find(domain);
    return it != domains_.end() ? it->second : domains_.at("default");
}

Category classify(const MetricVector& metrics, const std::string& domain,
                  const ThresholdConfig& config) {
    const auto& t = config.for_domain(domain);
    for (const auto& p : t.stage1_holistic) require(metrics, p.metric);
    for (const auto& p : t.stage2_chaotic) require(metrics, p.metric);
    if (all_pass(t.stage1_holistic, metrics)) return Category::holistic;
    if (all_pass(t.stage2_chaotic, metrics)) return Category::chaotic;
    return Category::aggregated;
}

std::vector<ScoredDocument> sample_around(std::span<const ScoredDocument> scored,
                                          MetricName metric, double lo, double hi,
                                          std::size_t k, std::uint64_t seed) {
    if (k == 0) throw Error("sample size k must be at least 1");
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < scored.size(); ++i) {
        if (!scored[i].metrics) continue;
        const auto& v = (*scored[i].metrics)[metric];
        if (v && *v >= lo && *v < hi) pool.push_back(i);
    }
    Rng rng(seed);
    shuffle(pool, rng);
    if (pool.size() > k) pool.resize(k);
    std::sort(pool.begin(), pool.end());
    std::vector<ScoredDocument> out;
    out.reserve(pool.size());
    for (std::size_t i : pool) out.push_back(scored[i]);
    return out;
}

} // namespace ltq
