#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quk/arith.hpp"
#include "quk/certgeom.hpp"
#include "quk/matrix.hpp"

namespace quk {

// CN |x>|y> = |x>|y + x mod q>, control factor first, row-major tensor basis.
Mat cn_gate(std::int64_t p, std::int64_t q);

// SWAP on C^k tensor C^k.
Mat swap_gate(std::int64_t k);

// The CN gate realized inside a single dimension-d qudit through the CRT
// relabeling: Pi^dag CN Pi, with d = p*q and gcd(p, q) = 1.
Mat intra_qudit_cn(std::int64_t d, std::int64_t p, std::int64_t q);

struct MagicCheckResult {
    Mat lhs;  // CN (I tensor Z^dag) CN^dag
    Mat rhs;  // T_q on dim p tensor Z_q^dag
    double max_abs_deviation = 0.0;
};

MagicCheckResult induced_magic_check(std::int64_t p, std::int64_t q);

// T_q^a T_p^b on dimension p with a*p + b*q = 1; equals t_s(p, p*q).
Mat bezout_t_synthesis(std::int64_t p, std::int64_t q);

// Rank of the k^2 x l^2 realignment; 1 iff V is a tensor product.
int operator_schmidt_rank(const Mat& v, std::int64_t k, std::int64_t l, double rel_tol = 1e-9);

enum class NormalizerVerdict { InProduct, ProductTimesSwap, Outside };

// Schmidt-rank route cross-validated against the local-algebra conjugation
// route; disagreement raises ConsistencyError.
NormalizerVerdict normalizer_membership(const Mat& v, std::int64_t k, std::int64_t l);

struct LocalCorrelationParts {
    Mat p1;      // traceless on factor 1, identity on factor 2
    Mat p2;      // identity on factor 1, traceless on factor 2
    Mat m;       // traceless on both factors
    Mat scalar;  // multiple of the identity
};

// Orthogonal split M = scalar + p1 + p2 + m; the parts sum to M exactly.
LocalCorrelationParts decompose_local_correlation(const Mat& m, std::int64_t k, std::int64_t l);

// True iff V is entangling in the Brylinski sense: neither a product nor a
// product times SWAP (checked by operator Schmidt ranks).
bool brylinski_check(const Mat& v, std::int64_t d);

enum class TrichotomyCase { PrimeI, PrimePowerII, CoprimeIII };

struct TrichotomyVerdict {
    TrichotomyCase case_tag = TrichotomyCase::PrimeI;
    Factorization factorization;
    std::optional<std::int64_t> recommended_s;  // cases I and II
    std::optional<double> bound;                // ts_universality_bound(d), cases I and II
    std::vector<std::string> recommended_gates;
};

TrichotomyVerdict trichotomy_classify(std::int64_t d);

// Builds the named gates of a trichotomy verdict (X, H, P plus the diagonal or
// intra-qudit supplements).
std::vector<Mat> recommended_gate_matrices(const TrichotomyVerdict& verdict, std::int64_t d);

enum class DensityStatus { Dense, Finite, Inconclusive };

struct DensityBudgets {
    int max_word_len = 8;
    std::size_t closure_cap = 40000;
};

struct DensityBudgetsUsed {
    std::size_t search_elements = 0;
    int search_depth = 0;
    bool search_frontier_exhausted = false;
    std::size_t closure_count = 0;
    bool closure_complete = false;
    bool closure_attempted = false;
};

struct DensityVerdict {
    DensityStatus status = DensityStatus::Inconclusive;
    bool irreducible = false;
    std::optional<InfinitenessCertificate> certificate;
    std::optional<std::size_t> finite_order;
    DensityBudgets budgets;
    DensityBudgetsUsed used;
    std::string diagnostic;  // set when Inconclusive
};

// Full pipeline: irreducibility via commutant dimension, infiniteness via the
// near-identity certificate search, finiteness via projective closure.
DensityVerdict density_certify(std::int64_t d, const std::vector<Mat>& generators,
                               const DensityBudgets& budgets = {});

}  // namespace quk
