#include "apointlab/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace apl {

std::size_t PrimeTable::upper_index(double x) const {
    const auto it = std::upper_bound(
        primes.begin(), primes.end(), x,
        [](double v, std::uint64_t p) { return v < double(p); });
    return static_cast<std::size_t>(it - primes.begin());
}

PrimeTable primes_up_to(std::uint64_t limit) {
    if (limit < 2) throw std::domain_error("primes_up_to: limit < 2");
    if (limit > 1000000000ull)
        throw std::length_error("primes_up_to: limit > 1e9");

    PrimeTable table;
    table.limit = limit;
    table.primes.push_back(2);

    // sieve over odd numbers: bit i <-> 2i+3
    const std::uint64_t n_odd = (limit >= 3) ? (limit - 3) / 2 + 1 : 0;
    std::vector<std::uint64_t> composite((n_odd + 63) / 64, 0);
    auto mark = [&](std::uint64_t i) { composite[i >> 6] |= 1ull << (i & 63); };
    auto is_set = [&](std::uint64_t i) {
        return (composite[i >> 6] >> (i & 63)) & 1ull;
    };
    for (std::uint64_t i = 0; i < n_odd; ++i) {
        if (is_set(i)) continue;
        const std::uint64_t p = 2 * i + 3;
        if (p * p <= limit) {
            for (std::uint64_t j = (p * p - 3) / 2; j < n_odd; j += p) mark(j);
        }
    }
    for (std::uint64_t i = 0; i < n_odd; ++i) {
        if (!is_set(i)) table.primes.push_back(2 * i + 3);
    }

    table.logs.reserve(table.primes.size());
    table.inv_sqrt.reserve(table.primes.size());
    for (std::uint64_t p : table.primes) {
        table.logs.push_back(std::log(double(p)));
        table.inv_sqrt.push_back(1.0 / std::sqrt(double(p)));
    }
    return table;
}

}  // namespace apl
