#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace quk {

// Canonical prime-power factorization d = p1^m1 * ... * pn^mn, primes ascending.
struct Factorization {
    std::int64_t d = 0;
    std::vector<std::pair<std::int64_t, int>> factors;  // (prime, exponent)

    bool is_prime() const { return factors.size() == 1 && factors[0].second == 1; }
    bool is_prime_power() const { return factors.size() == 1; }
    // The pairwise coprime parts p_k^{m_k}, ascending.
    std::vector<std::int64_t> prime_power_parts() const;
};

Factorization factorize(std::int64_t d);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// Minimal Bezout pair (a, b) with a*p + b*q = 1, a reduced into (-q/2, q/2].
std::pair<std::int64_t, std::int64_t> bezout(std::int64_t p, std::int64_t q);

// The bijection x -> (x mod d1)*d2 + (x mod d2) on {0, ..., d1*d2-1}.
std::vector<std::size_t> crt_index_map(std::int64_t d1, std::int64_t d2);

struct SL2Element {
    std::int64_t a = 1, b = 0, c = 0, d = 1;  // row-major [[a, b], [c, d]]
    std::int64_t n = 0;                       // modulus
};

inline constexpr std::int64_t kSl2DefaultCap = 30;

// All elements of SL(2, Z/nZ) by exhaustive filtering, in lexicographic
// (a, b, c, d) order. O(n^4), guarded by the cap.
std::vector<SL2Element> enumerate_sl2(std::int64_t n, std::int64_t cap = kSl2DefaultCap);

}  // namespace quk
