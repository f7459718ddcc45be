#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltq {

// Base for every error the toolkit raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input record; carries the 1-based line number.
class RecordError : public Error {
public:
    RecordError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Invalid configuration; `path` names the offending field, e.g.
// "domains.C4.stage1_holistic[0].metric".
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& what)
        : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// Network or remote-service failure.
class TransportError : public Error {
public:
    using Error::Error;
};

// A scorer failed or broke its contract while scoring item `index`
// (window index for LM scoring, pair index for pair scoring).
class ScorerError : public Error {
public:
    ScorerError(std::size_t index, const std::string& what)
        : Error("item " + std::to_string(index) + ": " + what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

} // namespace ltq
