#include "ltq/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <set>

#include <json.hpp>

#include "ltq/error.hpp"

namespace ltq {

std::size_t length_bucket(std::uint64_t n_tokens, std::span<const std::uint64_t> edges) {
    return static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), n_tokens) -
                                    edges.begin());
}

StatsReport::StatsReport(std::vector<std::uint64_t> length_edges)
    : edges_(std::move(length_edges)), buckets_(edges_.size() + 1) {
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i] <= edges_[i - 1]) throw ConfigError("length_edges", "must be strictly ascending");
}

void StatsReport::add(const std::string& domain, Language language, Category category,
                      std::uint64_t n_tokens, std::uint64_t weight) {
    const Tally t{weight, n_tokens * weight};
    cells_[{domain, category}] += t;
    languages_[language] += t;
    buckets_[length_bucket(n_tokens, edges_)] += t;
}

void StatsReport::merge(const StatsReport& other) {
    if (other.edges_ != edges_) throw Error("cannot merge reports with different length edges");
    for (const auto& [k, t] : other.cells_) cells_[k] += t;
    for (const auto& [k, t] : other.languages_) languages_[k] += t;
    for (std::size_t i = 0; i < buckets_.size(); ++i) buckets_[i] += other.buckets_[i];
}

Tally StatsReport::total() const {
    Tally t;
    for (const auto& [k, v] : cells_) t += v;
    return t;
}

Tally StatsReport::domain_total(const std::string& domain) const {
    Tally t;
    for (Category c : kAllCategories)
        if (auto it = cells_.find({domain, c}); it != cells_.end()) t += it->second;
    return t;
}

Tally StatsReport::category_total(Category c) const {
    Tally t;
    for (const auto& [k, v] : cells_)
        if (k.second == c) t += v;
    return t;
}

Tally StatsReport::language_total(Language l) const {
    auto it = languages_.find(l);
    return it == languages_.end() ? Tally{} : it->second;
}

double StatsReport::token_share(Category c) const {
    const auto all = total().tokens;
    return all == 0 ? 0.0 : static_cast<double>(category_total(c).tokens) / static_cast<double>(all);
}

double StatsReport::doc_share(Category c) const {
    const auto all = total().docs;
    return all == 0 ? 0.0 : static_cast<double>(category_total(c).docs) / static_cast<double>(all);
}

StatsReport aggregate(std::span<const ScoredDocument> labeled,
                      std::vector<std::uint64_t> length_edges) {
    StatsReport r(std::move(length_edges));
    for (const auto& d : labeled) {
        if (!d.category) throw Error("document \"" + d.document.id + "\" has no category");
        if (!d.n_tokens) throw Error("document \"" + d.document.id + "\" has no token count");
        r.add(d.document.domain, d.document.language, *d.category, *d.n_tokens);
    }
    return r;
}

namespace {

std::string bucket_label(const std::vector<std::uint64_t>& edges, std::size_t i) {
    auto k = [](std::uint64_t v) {
        return v % 1024 == 0 ? std::to_string(v / 1024) + "K" : std::to_string(v);
    };
    const std::string lo = i == 0 ? "0" : k(edges[i - 1]);
    const std::string hi = i == edges.size() ? "inf" : k(edges[i]);
    return "[" + lo + "," + hi + ")";
}

nlohmann::ordered_json tally_json(const Tally& t) {
    return {{"docs", t.docs}, {"tokens", t.tokens}};
}

} // namespace

void write_report_json(const StatsReport& r, std::ostream& out) {
    nlohmann::ordered_json j;
    j["total"] = tally_json(r.total());
    auto& cats = j["categories"];
    cats = nlohmann::ordered_json::object();
    for (Category c : kAllCategories) {
        auto t = tally_json(r.category_total(c));
        t["token_share"] = r.token_share(c);
        t["doc_share"] = r.doc_share(c);
        cats[std::string(to_string(c))] = t;
    }
    auto& langs = j["languages"];
    langs = nlohmann::ordered_json::object();
    for (Language l : {Language::EN, Language::ZH})
        langs[std::string(to_string(l))] = tally_json(r.language_total(l));
    auto& doms = j["domains"];
    doms = nlohmann::ordered_json::object();
    std::set<std::string> names;
    for (const auto& [k, v] : r.cells()) names.insert(k.first);
    for (const auto& name : names) {
        auto entry = tally_json(r.domain_total(name));
        for (Category c : kAllCategories) {
            auto it = r.cells().find({name, c});
            entry[std::string(to_string(c))] = tally_json(it == r.cells().end() ? Tally{} : it->second);
        }
        doms[name] = entry;
    }
    auto& buckets = j["length_buckets"];
    buckets = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.buckets().size(); ++i) {
        auto b = tally_json(r.buckets()[i]);
        b["range"] = bucket_label(r.length_edges(), i);
        buckets.push_back(b);
    }
    out << j.dump(2) << '\n';
}

void write_report_text(const StatsReport& r, std::ostream& out) {
    const auto total = r.total();
    out << "documents: " << total.docs << "  tokens: " << total.tokens << "\n\n";
    out << std::left << std::setw(12) << "category" << std::right << std::setw(12) << "docs"
        << std::setw(16) << "tokens" << std::setw(10) << "share" << '\n';
    for (Category c : kAllCategories) {
        const auto t = r.category_total(c);
        out << std::left << std::setw(12) << to_string(c) << std::right << std::setw(12) << t.docs
            << std::setw(16) << t.tokens << std::setw(9) << std::fixed << std::setprecision(1)
            << 100.0 * r.token_share(c) << "%\n";
    }
    out << "\nby domain (docs/tokens: holistic | aggregated | chaotic)\n";
    std::set<std::string> names;
    for (const auto& [k, v] : r.cells()) names.insert(k.first);
    for (const auto& name : names) {
        out << "  " << name << ':';
        for (Category c : kAllCategories) {
            auto it = r.cells().find({name, c});
            const Tally t = it == r.cells().end() ? Tally{} : it->second;
            out << "  " << t.docs << '/' << t.tokens;
        }
        out << '\n';
    }
    out << "\nby length (tokens)\n";
    for (std::size_t i = 0; i < r.buckets().size(); ++i)
        out << "  " << std::left << std::setw(14) << bucket_label(r.length_edges(), i) << std::right
            << std::setw(10) << r.buckets()[i].docs << std::setw(16) << r.buckets()[i].tokens << '\n';
    out.unsetf(std::ios::floatfield);
}

std::uint64_t HistogramCounts::total() const {
    return std::accumulate(bins.begin(), bins.end(), underflow + overflow);
}

namespace {

void validate_edges(const std::vector<double>& edges) {
    if (edges.size() < 2) throw Error("histogram needs at least two edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!std::isfinite(edges[i])) throw Error("histogram edges must be finite");
        if (i > 0 && !(edges[i] > edges[i - 1]))
            throw Error("histogram edges must be strictly ascending");
    }
}

void place(HistogramCounts& h, const std::vector<double>& edges, double v) {
    if (v < edges.front()) {
        ++h.underflow;
    } else if (v >= edges.back()) {
        ++h.overflow;
    } else {
        const auto it = std::upper_bound(edges.begin(), edges.end(), v);
        ++h.bins[static_cast<std::size_t>(it - edges.begin()) - 1];
    }
}

} // namespace

HistogramData histogram(std::span<const double> values, std::vector<double> edges) {
    validate_edges(edges);
    HistogramData h;
    h.counts.bins.assign(edges.size() - 1, 0);
    for (double v : values)
        if (std::isfinite(v)) place(h.counts, edges, v);
    h.edges = std::move(edges);
    return h;
}

HistogramData histogram(std::span<const ScoredDocument> docs, MetricName metric,
                        std::vector<double> edges) {
    validate_edges(edges);
    HistogramData h;
    h.metric = std::string(to_string(metric));
    h.counts.bins.assign(edges.size() - 1, 0);
    const bool labeled = !docs.empty() && std::all_of(docs.begin(), docs.end(), [](const auto& d) {
        return d.category.has_value();
    });
    if (labeled) {
        h.by_category.emplace();
        for (Category c : kAllCategories) (*h.by_category)[c].bins.assign(edges.size() - 1, 0);
    }
    for (const auto& d : docs) {
        if (!d.metrics) continue;
        const auto& v = (*d.metrics)[metric];
        if (!v || !std::isfinite(*v)) continue;
        place(h.counts, edges, *v);
        if (labeled) place((*h.by_category)[*d.category], edges, *v);
    }
    h.edges = std::move(edges);
    return h;
}

void write_histogram_csv(const HistogramData& h, std::ostream& out) {
    out << "edge_lo,edge_hi,count";
    if (h.by_category)
        for (Category c : kAllCategories) out << ',' << to_string(c);
    out << '\n';
    auto num = [](double v) {
        if (std::isinf(v)) return std::string(v < 0 ? "-inf" : "inf");
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    };
    auto row = [&](double lo, double hi, std::uint64_t count, auto pick) {
        out << num(lo) << ',' << num(hi) << ',' << count;
        if (h.by_category)
            for (Category c : kAllCategories) out << ',' << pick(h.by_category->at(c));
        out << '\n';
    };
    const double inf = std::numeric_limits<double>::infinity();
    row(-inf, h.edges.front(), h.counts.underflow, [](const HistogramCounts& c) { return c.underflow; });
    for (std::size_t i = 0; i + 1 < h.edges.size(); ++i)
        row(h.edges[i], h.edges[i + 1], h.counts.bins[i],
            [i](const HistogramCounts& c) { return c.bins[i]; });
    row(h.edges.back(), inf, h.counts.overflow, [](const HistogramCounts& c) { return c.overflow; });
}

} // namespace ltq
