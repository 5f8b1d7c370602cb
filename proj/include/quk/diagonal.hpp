#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "quk/matrix.hpp"

namespace quk {

// Phase function zeta: Z_d -> U(1) with zeta(0) = 1 (normalized on construction).
struct PhaseFunction {
    std::int64_t d = 0;
    std::vector<cplx> values;
};

PhaseFunction make_phase_function(std::int64_t d, std::vector<cplx> values);
PhaseFunction ts_phase_function(std::int64_t d, std::int64_t s);

Mat t_zeta(const PhaseFunction& zeta);
// T_s = diag(exp(2*pi*i*k/s)), k = 0..d-1. t_s(d, d) is exactly pauli_z(d).
Mat t_s(std::int64_t d, std::int64_t s);

// delta(x, y) = zeta(x+y) / (zeta(x) zeta(y)), index addition mod d.
struct CoboundaryTable {
    std::int64_t d = 0;
    Mat delta;
};

CoboundaryTable coboundary(const PhaseFunction& zeta);

// True iff delta(x, y+z) = delta(x, y) * delta(x, z) for all triples (exhaustive).
bool bicharacter_test(const CoboundaryTable& table, double eps = 1e-9);

// Bicharacter route cross-checked against operational clifford_membership of
// t_zeta; the two must agree or a ConsistencyError is thrown.
bool diagonal_is_clifford(const PhaseFunction& zeta);

// The closed-form divisibility predicate for the T_s family: Clifford iff
// s | K_d. Kept separate because it disagrees with the operational test at
// even prime powers (e.g. d=4, s=8); callers compare the two explicitly.
bool ts_divisibility_criterion(std::int64_t d, std::int64_t s);

struct MixingReport {
    std::int64_t d = 0;
    std::optional<std::int64_t> s;  // set when derived from a T_s gate
    bool prime_power_scope = true;  // false: d is not a prime power; all proper divisors listed
    bool mixing = false;            // every listed divisor has a nonzero unit coefficient
    struct DivisorRow {
        std::int64_t u = 0;
        std::vector<std::int64_t> nonzero_units;
    };
    std::vector<DivisorRow> per_divisor;
};

// DFT of k -> delta(u, k) restricted to unit frequencies, for every proper
// divisor u of d (p..p^{m-1} when d = p^m).
MixingReport orbit_mixing_test(const PhaseFunction& zeta, double eps_dft = 1e-9);

// Direct DFT sum (1/sqrt(d)) sum_k delta(u, k) omega^{-nk}; the oracle side.
cplx coboundary_row_dft(const PhaseFunction& zeta, std::int64_t u, std::int64_t n);

// (1/sqrt(d)) (1 - omega^{nu}) (1 - lambda_s) / (1 - omega^{-n}) with
// lambda_s = exp(-2*pi*i*d/s); requires n a unit mod d and u a proper divisor.
cplx ts_dft_closed_form(std::int64_t d, std::int64_t s, std::int64_t u, std::int64_t n);

}  // namespace quk
