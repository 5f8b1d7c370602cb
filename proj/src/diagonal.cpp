#include "quk/diagonal.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "quk/arith.hpp"
#include "quk/errors.hpp"
#include "quk/pauli.hpp"

namespace quk {

PhaseFunction make_phase_function(std::int64_t d, std::vector<cplx> values) {
    if (d < 2) throw std::invalid_argument("phase function: dimension must be >= 2");
    if (static_cast<std::int64_t>(values.size()) != d)
        throw std::invalid_argument("phase function: need exactly d values");
    for (const cplx& v : values)
        if (std::abs(std::abs(v) - 1.0) > 1e-12)
            throw std::invalid_argument("phase function: values must have unit modulus");
    const cplx z0 = values[0];
    for (cplx& v : values) {
        v /= z0;
        v /= std::abs(v);  // snap to exact unit modulus
    }
    values[0] = 1.0;
    return {d, std::move(values)};
}

PhaseFunction ts_phase_function(std::int64_t d, std::int64_t s) {
    if (d < 2 || s < 2) throw std::invalid_argument("ts_phase_function: d, s must be >= 2");
    std::vector<cplx> values(static_cast<std::size_t>(d));
    for (std::int64_t k = 0; k < d; ++k) values[static_cast<std::size_t>(k)] = root_of_unity(k, s);
    return {d, std::move(values)};
}

Mat t_zeta(const PhaseFunction& zeta) {
    Mat t = Mat::Zero(zeta.d, zeta.d);
    for (std::int64_t k = 0; k < zeta.d; ++k) t(k, k) = zeta.values[static_cast<std::size_t>(k)];
    return t;
}

Mat t_s(std::int64_t d, std::int64_t s) {
    return t_zeta(ts_phase_function(d, s));
}

CoboundaryTable coboundary(const PhaseFunction& zeta) {
    const std::int64_t d = zeta.d;
    Mat delta(d, d);
    // fill x <= y and mirror, so the symmetry invariant holds bit-exactly
    for (std::int64_t x = 0; x < d; ++x)
        for (std::int64_t y = x; y < d; ++y) {
            const cplx num = zeta.values[static_cast<std::size_t>((x + y) % d)];
            delta(x, y) = num * std::conj(zeta.values[static_cast<std::size_t>(x)]) *
                          std::conj(zeta.values[static_cast<std::size_t>(y)]);
            delta(y, x) = delta(x, y);
        }
    return {d, std::move(delta)};
}

bool bicharacter_test(const CoboundaryTable& table, double eps) {
    const std::int64_t d = table.d;
    for (std::int64_t x = 0; x < d; ++x)
        for (std::int64_t y = 0; y < d; ++y)
            for (std::int64_t z = 0; z < d; ++z) {
                const cplx lhs = table.delta(x, (y + z) % d);
                const cplx rhs = table.delta(x, y) * table.delta(x, z);
                if (std::abs(lhs - rhs) > eps) return false;
            }
    return true;
}

bool diagonal_is_clifford(const PhaseFunction& zeta) {
    const bool via_bicharacter = bicharacter_test(coboundary(zeta));
    const bool via_conjugation = clifford_membership(zeta.d, t_zeta(zeta)).member;
    if (via_bicharacter != via_conjugation) {
        std::ostringstream msg;
        msg << "diagonal_is_clifford: bicharacter route says " << via_bicharacter
            << " but operational membership says " << via_conjugation << " (d = " << zeta.d << ")";
        throw ConsistencyError(msg.str());
    }
    return via_conjugation;
}

bool ts_divisibility_criterion(std::int64_t d, std::int64_t s) {
    if (d < 2 || s < 2) throw std::invalid_argument("ts_divisibility_criterion: d, s must be >= 2");
    return heisenberg_phase_order(d) % s == 0;
}

cplx coboundary_row_dft(const PhaseFunction& zeta, std::int64_t u, std::int64_t n) {
    const std::int64_t d = zeta.d;
    const CoboundaryTable table = coboundary(zeta);
    cplx acc = 0.0;
    for (std::int64_t k = 0; k < d; ++k)
        acc += table.delta(u % d, k) * root_of_unity(-n * k, d);
    return acc / std::sqrt(static_cast<double>(d));
}

namespace {

std::vector<std::int64_t> mixing_divisors(std::int64_t d, bool& prime_power) {
    const Factorization f = factorize(d);
    prime_power = f.is_prime_power();
    std::vector<std::int64_t> divisors;
    if (prime_power) {
        const std::int64_t p = f.factors[0].first;
        for (std::int64_t u = p; u < d; u *= p) divisors.push_back(u);
    } else {
        for (std::int64_t u = 2; u < d; ++u)
            if (d % u == 0) divisors.push_back(u);
    }
    return divisors;
}

}  // namespace

MixingReport orbit_mixing_test(const PhaseFunction& zeta, double eps_dft) {
    MixingReport report;
    report.d = zeta.d;
    report.per_divisor.clear();
    const auto divisors = mixing_divisors(zeta.d, report.prime_power_scope);
    report.mixing = true;
    for (std::int64_t u : divisors) {
        MixingReport::DivisorRow row;
        row.u = u;
        for (std::int64_t n = 1; n < zeta.d; ++n) {
            if (std::gcd(n, zeta.d) != 1) continue;
            if (std::abs(coboundary_row_dft(zeta, u, n)) > eps_dft) row.nonzero_units.push_back(n);
        }
        if (row.nonzero_units.empty()) report.mixing = false;
        report.per_divisor.push_back(std::move(row));
    }
    return report;
}

cplx ts_dft_closed_form(std::int64_t d, std::int64_t s, std::int64_t u, std::int64_t n) {
    if (d < 2 || s < 2) throw std::invalid_argument("ts_dft_closed_form: d, s must be >= 2");
    if (u <= 0 || u >= d || d % u != 0)
        throw std::invalid_argument("ts_dft_closed_form: u must be a proper divisor of d");
    if (std::gcd(((n % d) + d) % d, d) != 1) {
        std::ostringstream msg;
        msg << "ts_dft_closed_form: n = " << n << " is not a unit mod " << d;
        throw std::invalid_argument(msg.str());
    }
    const cplx lambda_s = root_of_unity(-d, s);  // exp(-2*pi*i*d/s)
    const cplx num = (cplx(1.0) - root_of_unity(n * u, d)) * (cplx(1.0) - lambda_s);
    const cplx den = cplx(1.0) - root_of_unity(-n, d);
    return num / den / std::sqrt(static_cast<double>(d));
}

}  // namespace quk
