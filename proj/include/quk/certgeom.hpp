#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quk/matrix.hpp"

namespace quk {

struct SpectralReport {
    std::vector<double> eigenphases;  // sorted, in [0, 1)
    double span = 0.0;                // minimal covering arc length, in turns
    double proj_distance = 0.0;       // 2 sin(pi * span / 2)
    double centering_phase = 0.0;     // midpoint of the minimal covering arc
};

SpectralReport spectral_report(const Mat& u);

struct WordToken {
    int generator = 0;
    bool inverse = false;
};

std::string word_token_name(const WordToken& t);

struct InfinitenessCertificate {
    Mat element;
    std::vector<WordToken> word;
    double proj_distance = 0.0;
    std::vector<double> eigenphases;
};

// Present iff 0 < proj_distance < 1/2 - guard band; scalar (span ~ 0) inputs
// never certify. The returned certificate has an empty word.
std::optional<InfinitenessCertificate> certificate_check(const Mat& u);

// pi (d - 1) / (2 arcsin(1/4)): smallest T_s resolution guaranteeing a direct
// near-identity certificate.
double ts_universality_bound(std::int64_t d);

struct SearchBudget {
    int max_word_len = 8;
    std::size_t max_elements = 40000;
};

struct SearchOutcome {
    std::optional<InfinitenessCertificate> certificate;
    std::size_t elements_explored = 0;
    int depth_reached = 0;
    bool frontier_exhausted = false;  // whole projective closure enumerated
};

// Breadth-first search over words in the generators and their inverses,
// projectively deduplicated; returns the first (shortest, lexicographically
// least) certificate, or an exhausted/capped outcome.
SearchOutcome certificate_search(std::int64_t d, const std::vector<Mat>& generators,
                                 const SearchBudget& budget = {});

}  // namespace quk
