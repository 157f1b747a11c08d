#include "zetalaw/rng.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace zetalaw {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> stream) {
    std::uint64_t h = mix64(master);
    for (std::uint64_t s : stream) h = mix64(h ^ (s + 0x9e3779b97f4a7c15ULL));
    return h;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Rejection on the top of the range removes modulo bias.
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[below(i)]);
    return perm;
}

std::vector<std::size_t> Rng::sample(std::vector<std::size_t> pool, std::size_t k) {
    const std::size_t n = pool.size();
    for (std::size_t i = 0; i < k && i < n; ++i) std::swap(pool[i], pool[i + below(n - i)]);
    pool.resize(std::min(k, n));
    return pool;
}

}  // namespace zetalaw
