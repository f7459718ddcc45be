#include "ltq/remote.hpp"

#include <httplib.h>
#include <json.hpp>

#include "ltq/error.hpp"

namespace ltq {

namespace {

using json = nlohmann::json;

json call(const Endpoint& ep, std::chrono::seconds timeout, const char* method,
          std::string_view route, const json* body) {
    httplib::Client client(ep.host, ep.port);
    client.set_connection_timeout(std::chrono::seconds(10));
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    const std::string path = ep.path(route);
    const std::string where = "http://" + ep.host + ":" + std::to_string(ep.port) + path;
    auto res = body ? client.Post(path, body->dump(), "application/json") : client.Get(path);
    if (!res) throw TransportError(std::string(method) + " " + where + ": " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300)
        throw TransportError(std::string(method) + " " + where + ": HTTP " +
                             std::to_string(res->status) + ": " + res->body);
    try {
        return json::parse(res->body);
    } catch (const json::parse_error& e) {
        throw TransportError(where + ": response is not JSON: " + e.what());
    }
}

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw TransportError(where + ": response lacks \"" + std::string(key) + "\"");
    try {
        return it->get<T>();
    } catch (const json::exception& e) {
        throw TransportError(where + ": bad \"" + std::string(key) + "\": " + e.what());
    }
}

} // namespace

Endpoint Endpoint::parse(std::string_view url) {
    constexpr std::string_view scheme = "http://";
    if (url.substr(0, scheme.size()) != scheme)
        throw ConfigError(std::string(url), "endpoint must start with http://");
    url.remove_prefix(scheme.size());
    Endpoint ep;
    const auto slash = url.find('/');
    std::string_view authority = url.substr(0, slash);
    if (slash != std::string_view::npos) ep.prefix = std::string(url.substr(slash));
    while (!ep.prefix.empty() && ep.prefix.back() == '/') ep.prefix.pop_back();
    const auto colon = authority.rfind(':');
    if (colon != std::string_view::npos) {
        const std::string port(authority.substr(colon + 1));
        try {
            std::size_t used = 0;
            ep.port = std::stoi(port, &used);
            if (used != port.size() || ep.port <= 0 || ep.port > 65535) throw std::out_of_range(port);
        } catch (const std::exception&) {
            throw ConfigError(std::string(url), "bad port \"" + port + "\"");
        }
        authority = authority.substr(0, colon);
    }
    if (authority.empty()) throw ConfigError(std::string(url), "missing host");
    ep.host = std::string(authority);
    return ep;
}

RemoteLmScorer::RemoteLmScorer(std::string url, std::chrono::seconds timeout)
    : endpoint_(Endpoint::parse(url)), timeout_(timeout) {}

ScoreResult RemoteLmScorer::score(std::span<const TokenId> context,
                                  std::span<const TokenId> target) const {
    if (context.empty() || target.empty())
        throw Error("LM scorer requires nonempty context and target");
    const json body = {{"context", std::vector<TokenId>(context.begin(), context.end())},
                       {"target", std::vector<TokenId>(target.begin(), target.end())}};
    const json res = call(endpoint_, timeout_, "POST", "/score", &body);
    return {field<double>(res, "acc", "/score"), field<double>(res, "nll", "/score")};
}

HandshakeInfo RemoteLmScorer::handshake() const {
    const json res = call(endpoint_, timeout_, "GET", "/handshake", nullptr);
    HandshakeInfo info;
    info.tokenizer_name = field<std::string>(res, "tokenizer_name", "/handshake");
    info.max_context = field<std::int64_t>(res, "max_context", "/handshake");
    if (auto it = res.find("versions"); it != res.end()) info.versions = it->dump();
    return info;
}

void RemoteLmScorer::check_tokenizer(const std::string& expected) const {
    const auto info = handshake();
    if (info.tokenizer_name != expected)
        throw ConfigError("tokenizer_name", "LM service uses tokenizer \"" + info.tokenizer_name +
                                                "\" but the pipeline is configured with \"" +
                                                expected + "\"");
}

RemotePairScorer::RemotePairScorer(std::string url, std::chrono::seconds timeout)
    : endpoint_(Endpoint::parse(url)), timeout_(timeout) {}

PairProbability RemotePairScorer::score_pair(std::string_view a, std::string_view b) const {
    const json body = {{"a", std::string(a)}, {"b", std::string(b)}};
    const json res = call(endpoint_, timeout_, "POST", "/pair", &body);
    return {field<double>(res, "p_no_conn", "/pair")};
}

std::vector<PairProbability> RemotePairScorer::score_pairs(std::span<const SentencePair> pairs) const {
    json list = json::array();
    for (const auto& [a, b] : pairs) list.push_back(json::array({std::string(a), std::string(b)}));
    const json body = {{"pairs", std::move(list)}};
    const json res = call(endpoint_, timeout_, "POST", "/pair", &body);
    const auto probs = field<std::vector<double>>(res, "p_no_conn", "/pair");
    if (probs.size() != pairs.size())
        throw TransportError("/pair: expected " + std::to_string(pairs.size()) + " probabilities, got " +
                             std::to_string(probs.size()));
    std::vector<PairProbability> out;
    out.reserve(probs.size());
    for (double p : probs) out.push_back({p});
    return out;
}

RemoteTokenizer::RemoteTokenizer(std::string url, std::string name, std::chrono::seconds timeout)
    : endpoint_(Endpoint::parse(url)), name_(std::move(name)), timeout_(timeout) {}

TokenSequence RemoteTokenizer::tokenize(std::string_view text) const {
    const json body = {{"text", std::string(text)}};
    const json res = call(endpoint_, timeout_, "POST", "/tokenize", &body);
    auto surfaces = field<std::vector<std::string>>(res, "surfaces", "/tokenize");
    if (auto it = res.find("ids"); it != res.end()) {
        auto ids = field<std::vector<TokenId>>(res, "ids", "/tokenize");
        if (ids.size() != surfaces.size())
            throw TransportError("/tokenize: ids and surfaces differ in length");
        return {std::move(ids), std::move(surfaces)};
    }
    return intern_surfaces(std::move(surfaces));
}

} // namespace ltq
