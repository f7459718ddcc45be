#include "ltq/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "ltq/error.hpp"
#include "ltq/rng.hpp"

namespace ltq {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr std::array kStrategies = {
    MixtureStrategy::all_categories,
    MixtureStrategy::holistic_only,
    MixtureStrategy::holistic_plus_aggregated,
    MixtureStrategy::upsample_aggregated,
};

bool eligible(MixtureStrategy s, Category c) {
    switch (s) {
    case MixtureStrategy::all_categories: return true;
    case MixtureStrategy::holistic_only: return c == Category::holistic;
    case MixtureStrategy::holistic_plus_aggregated:
    case MixtureStrategy::upsample_aggregated: return c != Category::chaotic;
    }
    return false;
}

struct PoolDoc {
    const ScoredDocument* doc;
    std::uint64_t n_tokens;
};

struct Stratum {
    std::string label;
    std::vector<PoolDoc> docs;  // sorted by id
    double target = 0.0;
};

class Filler {
public:
    Filler(Manifest& m, Rng& rng) : m_(m), rng_(rng) {}

    // Fills toward stratum.target minus any overshoot carried from the
    // previous stratum.
    void fill(const Stratum& s) {
        const double goal = s.target - carry_;
        std::uint64_t realized = 0;
        if (goal > 0.0 && !s.docs.empty()) {
            std::vector<std::size_t> order(s.docs.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            shuffle(order, rng_);
            const std::uint32_t cap = m_.recipe.repeat_cap;
            for (std::uint32_t pass = 0; pass < cap && static_cast<double>(realized) < goal; ++pass) {
                for (std::size_t k : order) {
                    if (static_cast<double>(realized) >= goal) break;
                    add(s.docs[k]);
                    realized += s.docs[k].n_tokens;
                }
            }
            if (static_cast<double>(realized) < goal)
                m_.warnings.push_back("stratum " + s.label + " realized " + std::to_string(realized) +
                                      " of " + std::to_string(static_cast<std::uint64_t>(goal)) +
                                      " tokens at repeat cap " + std::to_string(cap));
        } else if (goal > 0.0) {
            m_.warnings.push_back("stratum " + s.label + " has no eligible documents");
        }
        carry_ = std::max(0.0, static_cast<double>(realized) - goal);
    }

private:
    void add(const PoolDoc& d) {
        auto [it, inserted] = index_.try_emplace(d.doc->document.id, m_.entries.size());
        if (!inserted) {
            ++m_.entries[it->second].repeat_count;
            return;
        }
        m_.entries.push_back({.id = d.doc->document.id,
                              .repeat_count = 1,
                              .language = d.doc->document.language,
                              .domain = d.doc->document.domain,
                              .category = *d.doc->category,
                              .n_tokens = d.n_tokens});
    }

    Manifest& m_;
    Rng& rng_;
    std::unordered_map<std::string, std::size_t> index_;
    double carry_ = 0.0;
};

std::map<std::string, double> parse_weights(const json& v, const std::string& path) {
    if (v.is_string()) {
        if (v.get<std::string>() == "llama") return llama_domain_weights();
        throw ConfigError(path, "unknown weight preset \"" + v.get<std::string>() + "\"");
    }
    if (!v.is_object()) throw ConfigError(path, "expected an object or a preset name");
    std::map<std::string, double> out;
    for (const auto& [k, w] : v.items()) {
        if (!w.is_number()) throw ConfigError(path + "." + k, "weight must be a number");
        out[k] = w.get<double>();
    }
    return out;
}

ojson tally_json(const Tally& t) { return {{"docs", t.docs}, {"tokens", t.tokens}}; }

} // namespace

std::string_view to_string(MixtureStrategy s) noexcept {
    switch (s) {
    case MixtureStrategy::all_categories: return "all_categories";
    case MixtureStrategy::holistic_only: return "holistic_only";
    case MixtureStrategy::holistic_plus_aggregated: return "holistic_plus_aggregated";
    case MixtureStrategy::upsample_aggregated: return "upsample_aggregated";
    }
    return "?";
}

const std::map<std::string, double>& llama_domain_weights() {
    static const std::map<std::string, double> w = {
        {"CommonCrawl", 67.0}, {"C4", 15.0},  {"GitHub", 4.5},       {"Wikipedia", 4.5},
        {"Book", 4.5},         {"ArXiv", 2.5}, {"StackExchange", 2.0},
    };
    return w;
}

void MixtureRecipe::validate() const {
    if (!(en_ratio >= 0.0) || !(zh_ratio >= 0.0) || en_ratio + zh_ratio <= 0.0)
        throw ConfigError("language_ratio", "ratios must be non-negative with a positive sum");
    if (!(aggregated_target_share > 0.0 && aggregated_target_share < 1.0))
        throw ConfigError("aggregated_target_share", "must lie in (0, 1)");
    if (!(share_tolerance > 0.0 && share_tolerance < 1.0))
        throw ConfigError("share_tolerance", "must lie in (0, 1)");
    if (repeat_cap < 1) throw ConfigError("repeat_cap", "must be at least 1");
    if (total_tokens == 0) throw ConfigError("total_tokens", "must be positive");
    for (const auto& [lang, weights] : domain_weights) {
        const std::string path = "domain_weights." + std::string(to_string(lang));
        bool any_positive = weights.empty();
        for (const auto& [dom, w] : weights) {
            if (!(w >= 0.0) || !std::isfinite(w))
                throw ConfigError(path + "." + dom, "weight must be finite and non-negative");
            any_positive = any_positive || w > 0.0;
        }
        if (!any_positive) throw ConfigError(path, "needs at least one positive weight");
    }
}

MixtureRecipe MixtureRecipe::parse(std::istream& in) {
    json root;
    try {
        root = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid recipe JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("", "top level must be an object");
    MixtureRecipe r;
    for (const auto& [key, v] : root.items()) {
        try {
            if (key == "strategy") {
                const auto s = v.get<std::string>();
                auto it = std::find_if(kStrategies.begin(), kStrategies.end(),
                                       [&](MixtureStrategy x) { return to_string(x) == s; });
                if (it == kStrategies.end()) throw ConfigError(key, "unknown strategy \"" + s + "\"");
                r.strategy = *it;
            } else if (key == "language_ratio") {
                r.en_ratio = v.value("EN", 0.0);
                r.zh_ratio = v.value("ZH", 0.0);
                for (const auto& [lk, lv] : v.items())
                    if (lk != "EN" && lk != "ZH") throw ConfigError(key + "." + lk, "unknown language");
            } else if (key == "aggregated_target_share") {
                r.aggregated_target_share = v.get<double>();
            } else if (key == "share_tolerance") {
                r.share_tolerance = v.get<double>();
            } else if (key == "repeat_cap") {
                r.repeat_cap = v.get<std::uint32_t>();
            } else if (key == "domain_weights") {
                for (const auto& [lk, lv] : v.items()) {
                    const auto lang = parse_language(lk);
                    if (!lang) throw ConfigError(key + "." + lk, "unknown language");
                    r.domain_weights[*lang] = parse_weights(lv, key + "." + lk);
                }
            } else if (key == "total_tokens") {
                r.total_tokens = v.get<std::uint64_t>();
            } else if (key == "seed") {
                r.seed = v.get<std::uint64_t>();
            } else {
                throw ConfigError(key, "unknown field");
            }
        } catch (const json::exception& e) {
            throw ConfigError(key, e.what());
        }
    }
    r.validate();
    return r;
}

MixtureRecipe MixtureRecipe::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open recipe");
    return parse(in);
}

Manifest build_manifest(std::span<const ScoredDocument> labeled, const MixtureRecipe& recipe) {
    recipe.validate();
    Manifest m;
    m.recipe = recipe;

    std::map<Language, std::vector<PoolDoc>> pools;
    for (const auto& d : labeled) {
        if (!d.category) throw Error("document \"" + d.document.id + "\" has no category");
        if (!d.n_tokens) throw Error("document \"" + d.document.id + "\" has no token count");
        if (*d.n_tokens == 0 || !eligible(recipe.strategy, *d.category)) continue;
        pools[d.document.language].push_back({&d, *d.n_tokens});
    }
    for (auto& [lang, pool] : pools)
        std::sort(pool.begin(), pool.end(), [](const PoolDoc& a, const PoolDoc& b) {
            return a.doc->document.id < b.doc->document.id;
        });

    const double total = static_cast<double>(recipe.total_tokens);
    const double ratio_sum = recipe.en_ratio + recipe.zh_ratio;
    const std::map<Language, double> language_budget = {
        {Language::EN, total * recipe.en_ratio / ratio_sum},
        {Language::ZH, total * recipe.zh_ratio / ratio_sum},
    };
    const bool upsample = recipe.strategy == MixtureStrategy::upsample_aggregated;

    std::vector<Stratum> strata;
    for (const auto& [lang, budget] : language_budget) {
        if (budget <= 0.0) continue;
        const std::string lname(to_string(lang));
        auto pool_it = pools.find(lang);
        if (pool_it == pools.end() || pool_it->second.empty())
            throw Error("no eligible documents for language " + lname);
        const auto& pool = pool_it->second;

        // domain -> weight (a single "*" domain for whole-pool sampling)
        std::map<std::string, double> weights;
        std::map<std::string, std::vector<PoolDoc>> by_domain;
        auto wit = recipe.domain_weights.find(lang);
        if (wit == recipe.domain_weights.end() || wit->second.empty()) {
            weights["*"] = 1.0;
            by_domain["*"] = pool;
        } else {
            for (const auto& d : pool) by_domain[d.doc->document.domain].push_back(d);
            for (const auto& [dom, w] : wit->second) {
                if (w <= 0.0) continue;
                if (!by_domain.count(dom)) {
                    m.warnings.push_back("domain " + lname + "/" + dom +
                                         " has weight but no eligible documents");
                    continue;
                }
                weights[dom] = w;
            }
            if (weights.empty())
                throw Error("no eligible documents in any weighted domain for language " + lname);
        }
        double weight_sum = 0.0;
        for (const auto& [dom, w] : weights) weight_sum += w;

        for (const auto& [dom, w] : weights) {
            const double dom_budget = budget * w / weight_sum;
            const auto& docs = by_domain[dom];
            const std::string label = lname + "/" + dom;
            if (!upsample) {
                strata.push_back({label, docs, dom_budget});
                continue;
            }
            Stratum hol{label + "/holistic", {}, dom_budget * (1.0 - recipe.aggregated_target_share)};
            Stratum agg{label + "/aggregated", {}, dom_budget * recipe.aggregated_target_share};
            for (const auto& d : docs)
                (*d.doc->category == Category::holistic ? hol : agg).docs.push_back(d);
            strata.push_back(std::move(hol));
            strata.push_back(std::move(agg));
        }
    }

    Rng rng(recipe.seed);
    Filler filler(m, rng);
    for (const auto& s : strata) filler.fill(s);

    if (upsample) {
        const double share = aggregated_share(summarize_manifest(m));
        if (std::abs(share - recipe.aggregated_target_share) > recipe.share_tolerance)
            m.warnings.push_back("aggregated share " + std::to_string(share) + " misses target " +
                                 std::to_string(recipe.aggregated_target_share));
    }
    return m;
}

StatsReport summarize_manifest(const Manifest& m) {
    StatsReport r;
    for (const auto& e : m.entries) r.add(e.domain, e.language, e.category, e.n_tokens, e.repeat_count);
    return r;
}

double aggregated_share(const StatsReport& r) {
    const auto hol = r.category_total(Category::holistic).tokens;
    const auto agg = r.category_total(Category::aggregated).tokens;
    return hol + agg == 0 ? 0.0 : static_cast<double>(agg) / static_cast<double>(hol + agg);
}

void write_manifest(const Manifest& m, std::ostream& out) {
    for (const auto& e : m.entries) {
        ojson line;
        line["id"] = e.id;
        line["repeat_count"] = e.repeat_count;
        out << line.dump() << '\n';
    }

    const auto stats = summarize_manifest(m);
    const auto& r = m.recipe;
    ojson recipe;
    recipe["strategy"] = std::string(to_string(r.strategy));
    recipe["language_ratio"] = {{"EN", r.en_ratio}, {"ZH", r.zh_ratio}};
    recipe["aggregated_target_share"] = r.aggregated_target_share;
    recipe["share_tolerance"] = r.share_tolerance;
    recipe["repeat_cap"] = r.repeat_cap;
    auto& weights = recipe["domain_weights"];
    weights = ojson::object();
    for (const auto& [lang, ws] : r.domain_weights) {
        auto& lw = weights[std::string(to_string(lang))];
        lw = ojson::object();
        for (const auto& [dom, w] : ws) lw[dom] = w;
    }
    recipe["total_tokens"] = r.total_tokens;

    ojson summary;
    summary["recipe"] = recipe;
    summary["seed"] = r.seed;
    summary["entries"] = m.entries.size();
    summary["total"] = tally_json(stats.total());
    auto& langs = summary["languages"];
    langs = ojson::object();
    for (Language l : {Language::EN, Language::ZH})
        langs[std::string(to_string(l))] = tally_json(stats.language_total(l));
    auto& cats = summary["categories"];
    cats = ojson::object();
    for (Category c : kAllCategories) cats[std::string(to_string(c))] = tally_json(stats.category_total(c));
    summary["aggregated_share"] = aggregated_share(stats);
    auto& doms = summary["domains"];
    doms = ojson::object();
    for (const auto& [key, t] : stats.cells()) {
        auto& d = doms[key.first];
        if (d.is_null()) d = ojson::object();
        d[std::string(to_string(key.second))] = tally_json(t);
    }
    summary["warnings"] = m.warnings;
    out << ojson{{"summary", summary}}.dump() << '\n';
}

} // namespace ltq
