#include "quk/arith.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "quk/errors.hpp"

namespace quk {

std::vector<std::int64_t> Factorization::prime_power_parts() const {
    std::vector<std::int64_t> parts;
    parts.reserve(factors.size());
    for (const auto& [p, m] : factors) {
        std::int64_t q = 1;
        for (int i = 0; i < m; ++i) q *= p;
        parts.push_back(q);
    }
    return parts;
}

Factorization factorize(std::int64_t d) {
    if (d <= 1) throw std::invalid_argument("factorize: d must be >= 2");
    Factorization f;
    f.d = d;
    std::int64_t rem = d;
    for (std::int64_t p = 2; p * p <= rem; ++p) {
        if (rem % p != 0) continue;
        int m = 0;
        while (rem % p == 0) {
            rem /= p;
            ++m;
        }
        f.factors.emplace_back(p, m);
    }
    if (rem > 1) f.factors.emplace_back(rem, 1);
    return f;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return std::gcd(a, b);
}

std::pair<std::int64_t, std::int64_t> bezout(std::int64_t p, std::int64_t q) {
    if (p < 1 || q < 1) throw std::invalid_argument("bezout: inputs must be positive");
    const std::int64_t g = std::gcd(p, q);
    if (g != 1) {
        std::ostringstream msg;
        msg << "bezout: gcd(" << p << ", " << q << ") = " << g << ", expected coprime inputs";
        throw std::invalid_argument(msg.str());
    }
    // Extended Euclid for a*p + b*q = 1.
    std::int64_t r0 = p, r1 = q, s0 = 1, s1 = 0;
    while (r1 != 0) {
        const std::int64_t k = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - k * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - k * s1);
    }
    std::int64_t a = s0;
    // Reduce a into (-q/2, q/2] so the pair is deterministic.
    a %= q;
    while (2 * a > q) a -= q;
    while (2 * a <= -q) a += q;
    const std::int64_t b = (1 - a * p) / q;
    return {a, b};
}

std::vector<std::size_t> crt_index_map(std::int64_t d1, std::int64_t d2) {
    if (d1 < 1 || d2 < 1) throw std::invalid_argument("crt_index_map: dimensions must be positive");
    if (std::gcd(d1, d2) != 1) {
        std::ostringstream msg;
        msg << "crt_index_map: gcd(" << d1 << ", " << d2 << ") = " << std::gcd(d1, d2)
            << ", expected coprime factors";
        throw std::invalid_argument(msg.str());
    }
    std::vector<std::size_t> pi(static_cast<std::size_t>(d1 * d2));
    for (std::int64_t x = 0; x < d1 * d2; ++x)
        pi[static_cast<std::size_t>(x)] = static_cast<std::size_t>((x % d1) * d2 + (x % d2));
    return pi;
}

std::vector<SL2Element> enumerate_sl2(std::int64_t n, std::int64_t cap) {
    if (n < 2) throw std::invalid_argument("enumerate_sl2: modulus must be >= 2");
    if (n > cap) {
        std::ostringstream msg;
        msg << "enumerate_sl2: modulus " << n << " exceeds enumeration cap " << cap;
        throw BudgetError(msg.str());
    }
    std::vector<SL2Element> out;
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b)
            for (std::int64_t c = 0; c < n; ++c)
                for (std::int64_t d = 0; d < n; ++d) {
                    std::int64_t det = (a * d - b * c) % n;
                    if (det < 0) det += n;
                    if (det == 1) out.push_back({a, b, c, d, n});
                }
    return out;
}

}  // namespace quk
