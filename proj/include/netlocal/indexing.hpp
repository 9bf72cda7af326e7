#pragma once

#include <vector>

#include "netlocal/errors.hpp"

namespace netlocal {

/// Lexicographic flattening of integer tuples; the leftmost entry is the
/// most significant digit.
struct TupleSpace {
    std::vector<int> radices;

    long long size() const {
        long long n = 1;
        for (int r : radices) n *= r;
        return n;
    }

    long long flatten(const std::vector<int>& tuple) const {
        if (tuple.size() != radices.size()) throw DimensionError("tuple length mismatch");
        long long idx = 0;
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (tuple[i] < 0 || tuple[i] >= radices[i]) throw DimensionError("tuple entry out of range");
            idx = idx * radices[i] + tuple[i];
        }
        return idx;
    }

    std::vector<int> unflatten(long long idx) const {
        std::vector<int> tuple(radices.size(), 0);
        for (int i = static_cast<int>(radices.size()) - 1; i >= 0; --i) {
            tuple[i] = static_cast<int>(idx % radices[i]);
            idx /= radices[i];
        }
        return tuple;
    }
};

}  // namespace netlocal
