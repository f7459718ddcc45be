#include "ltq/corpus.hpp"

#include <json.hpp>

#include "ltq/error.hpp"

namespace ltq {

namespace {

using json = nlohmann::ordered_json;

std::string required_string(const json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end()) throw RecordError(line, std::string("missing field \"") + key + "\"");
    if (!it->is_string()) throw RecordError(line, std::string("field \"") + key + "\" must be a string");
    return it->get<std::string>();
}

std::optional<double> metric_value(const json& v, const std::string& key, std::size_t line) {
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) throw RecordError(line, "field \"" + key + "\" must be a number or null");
    return v.get<double>();
}

} // namespace

ScoredDocument parse_record(std::string_view json_line, std::size_t line) {
    json obj;
    try {
        obj = json::parse(json_line);
    } catch (const json::parse_error& e) {
        throw RecordError(line, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw RecordError(line, "record must be a JSON object");

    ScoredDocument out;
    auto& doc = out.document;
    doc.id = required_string(obj, "id", line);
    if (doc.id.empty()) throw RecordError(line, "empty id");
    doc.text = required_string(obj, "text", line);
    doc.domain = required_string(obj, "domain", line);
    const auto lang = required_string(obj, "language", line);
    const auto parsed = parse_language(lang);
    if (!parsed) throw RecordError(line, "unknown language \"" + lang + "\"");
    doc.language = *parsed;

    if (auto it = obj.find("n_tokens"); it != obj.end() && !it->is_null()) {
        if (!it->is_number_unsigned()) throw RecordError(line, "n_tokens must be a non-negative integer");
        out.n_tokens = it->get<std::size_t>();
    }

    const json* nested = nullptr;
    if (auto it = obj.find("metrics"); it != obj.end()) {
        if (!it->is_object()) throw RecordError(line, "\"metrics\" must be an object");
        nested = &*it;
    }
    for (MetricName m : kAllMetrics) {
        const std::string name(to_string(m));
        const std::string flat = "metrics." + name;
        const json* v = nullptr;
        if (auto it = obj.find(flat); it != obj.end())
            v = &*it;
        else if (nested)
            if (auto jt = nested->find(name); jt != nested->end()) v = &*jt;
        if (!v) continue;
        if (!out.metrics) out.metrics.emplace();
        (*out.metrics)[m] = metric_value(*v, flat, line);
    }

    if (auto it = obj.find("category"); it != obj.end() && !it->is_null()) {
        if (!it->is_string()) throw RecordError(line, "category must be a string");
        const auto c = parse_category(it->get<std::string>());
        if (!c) throw RecordError(line, "unknown category \"" + it->get<std::string>() + "\"");
        out.category = *c;
    }
    return out;
}

std::string format_record(const ScoredDocument& d) {
    json obj;
    obj["id"] = d.document.id;
    obj["domain"] = d.document.domain;
    obj["language"] = std::string(to_string(d.document.language));
    if (d.n_tokens) obj["n_tokens"] = *d.n_tokens;
    if (d.metrics) {
        for (MetricName m : kAllMetrics) {
            const auto& v = (*d.metrics)[m];
            obj["metrics." + std::string(to_string(m))] = v ? json(*v) : json(nullptr);
        }
    }
    if (d.category) obj["category"] = std::string(to_string(*d.category));
    obj["text"] = d.document.text;
    return obj.dump();
}

RecordReader::RecordReader(std::istream& in, RecordPolicy policy) : in_(in), policy_(policy) {}

std::optional<ScoredDocument> RecordReader::next() {
    std::string buf;
    while (std::getline(in_, buf)) {
        ++line_;
        if (!buf.empty() && buf.back() == '\r') buf.pop_back();
        if (buf.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            auto rec = parse_record(buf, line_);
            if (!seen_ids_.insert(rec.document.id).second)
                throw RecordError(line_, "duplicate id \"" + rec.document.id + "\"");
            return rec;
        } catch (const RecordError&) {
            if (policy_ == RecordPolicy::abort) throw;
            ++skipped_;
        }
    }
    if (in_.bad()) throw Error("input stream read failure after line " + std::to_string(line_));
    return std::nullopt;
}

std::size_t write_scored(std::span<const ScoredDocument> docs, std::ostream& sink) {
    std::size_t written = 0;
    for (const auto& d : docs) {
        sink << format_record(d) << '\n';
        if (!sink) throw Error("write failed after " + std::to_string(written) + " records");
        ++written;
    }
    sink.flush();
    if (!sink) throw Error("flush failed after " + std::to_string(written) + " records");
    return written;
}

} // namespace ltq
