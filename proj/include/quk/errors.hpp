#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace quk {

// Enumeration or search budget exceeded.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A rank/nullity decision fell inside the guard band around the singular
// value threshold. Carries the full spectrum of the offending stage.
struct AmbiguousSpectrumError : std::runtime_error {
    AmbiguousSpectrumError(const std::string& what, std::vector<double> spectrum)
        : std::runtime_error(what), singular_values(std::move(spectrum)) {}
    std::vector<double> singular_values;
};

// Two independent computation routes that must agree disagreed.
struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace quk
