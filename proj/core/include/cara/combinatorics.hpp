#pragma once

#include <cstddef>
#include <vector>

namespace cara {

/// Calls f(indices) for every k-subset of {0, ..., n-1} in lexicographic order
/// until f returns false. Returns the number of subsets visited.
template <typename F>
std::size_t for_each_combination(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return 0;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::size_t visited = 0;
    for (;;) {
        ++visited;
        if (!f(static_cast<const std::vector<std::size_t>&>(idx))) return visited;
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) return visited;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// Binomial coefficient, saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t k);

/// The i-th prime, 0-based (2, 3, 5, ...).
unsigned long nth_prime(std::size_t i);

}  // namespace cara
