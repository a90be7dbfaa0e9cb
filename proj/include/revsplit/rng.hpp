#ifndef REVSPLIT_RNG_HPP
#define REVSPLIT_RNG_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

namespace revsplit {

// splitmix64 finalizer; fixed across platforms so seeded runs are
// bit-reproducible everywhere.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Splittable seed derivation: children of a master seed are independent of
// sibling order, so trials can run in any order or in parallel.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(master ^ 0x5851f42d4c957f2dull) + splitmix64(a) +
                      0x9e3779b97f4a7c15ull * b);
}

/// Small counter-based PRNG. Not std::mt19937 on purpose: the standard
/// distributions are implementation-defined, which would break cross-stdlib
/// reproducibility of seeded experiments.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_++); }

    // uniform in [0, n) without modulo bias
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    // sorted k-subset of {0..n-1} via partial Fisher-Yates
    std::vector<int> sample(int n, int k);

  private:
    std::uint64_t state_;
};

inline std::vector<int> Rng::sample(int n, int k) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace revsplit

#endif
