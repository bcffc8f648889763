#pragma once

#include <cstdint>
#include <vector>

namespace apl {

// Sieved prime table with the per-prime constants the Dirichlet-polynomial
// sums keep reusing. Immutable after construction, safe to share across
// threads.
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;  // ascending
    std::vector<double> logs;           // ln p
    std::vector<double> inv_sqrt;       // p^{-1/2}

    std::size_t count() const { return primes.size(); }
    // Index one past the last prime <= x.
    std::size_t upper_index(double x) const;
};

// Sieve of Eratosthenes over the odd numbers. 2 <= limit <= 10^9; throws
// std::length_error above that.
PrimeTable primes_up_to(std::uint64_t limit);

}  // namespace apl
