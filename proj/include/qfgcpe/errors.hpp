#pragma once

#include <stdexcept>
#include <string>

namespace qfgcpe {

// Series or quadrature failed to reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// The requested quantity is mathematically divergent (e.g. Frechet QFGCPE
// with eta <= 1/a).
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qfgcpe
