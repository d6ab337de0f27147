#pragma once

#include <string>
#include <vector>

namespace qfgcpe {

/// Sorted nonnegative observations with a provenance note (file path or
/// generator description).
struct Sample {
    std::vector<double> values; // nondecreasing
    std::string source;
};

} // namespace qfgcpe
