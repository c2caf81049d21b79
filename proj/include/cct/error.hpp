#pragma once

#include <stdexcept>
#include <string>

namespace cct {

// Source text the grammar rejects. Units raising this are skipped and
// counted downstream, never truncated.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Cosine similarity of a zero-norm vector.
class DegenerateVector : public std::runtime_error {
public:
    explicit DegenerateVector(const std::string& what) : std::runtime_error(what) {}
};

// Training loss became non-finite.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cct
