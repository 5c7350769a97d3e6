#include "nmcode/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace nmcode {

std::vector<uint32_t> Rng::subset(uint32_t n, uint32_t k) {
    if (k > n) throw std::invalid_argument("Rng::subset: k > n");
    // Partial Fisher-Yates on an index array.
    std::vector<uint32_t> idx(n);
    for (uint32_t i = 0; i < n; ++i) idx[i] = i;
    for (uint32_t i = 0; i < k; ++i) {
        uint32_t j = i + static_cast<uint32_t>(below(n - i));
        std::swap(idx[i], idx[j]);
    }
    std::vector<uint32_t> out(idx.begin(), idx.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace nmcode
