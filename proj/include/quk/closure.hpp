#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "quk/matrix.hpp"

namespace quk {

struct ProjectiveCanonicalForm {
    std::int64_t dim = 0;
    Mat entries;      // phase-normalized on the largest-magnitude entry, rounded to 8 decimals
    std::string key;  // serialization of the rounded entries
};

// Multiply U by the conjugate phase of its largest-magnitude entry (ties: lowest
// row-major index), round to 8 decimals, serialize. U and e^{i phi} U get equal keys.
ProjectiveCanonicalForm canonicalize(const Mat& u);

// Set of unitaries modulo global phase. Duplicates are usually caught by an
// exact lookup on the rounded canonical key; the authoritative path is a
// bucket index over quantized phase-invariant trace statistics with
// neighbor probing, so membership never depends on a rounding boundary.
// Final equality is an epsilon comparison after phase alignment.
class ProjectiveSet {
public:
    explicit ProjectiveSet(double eps = 1e-8) : eps_(eps) {}

    // Returns the element index and whether it was newly inserted. The stored
    // representative is pivot-phase-normalized.
    std::pair<std::size_t, bool> insert(const Mat& u);
    std::size_t size() const { return elements_.size(); }
    const Mat& element(std::size_t i) const { return elements_[i]; }
    const std::vector<Mat>& elements() const { return elements_; }

private:
    double eps_;
    std::vector<Mat> elements_;
    std::vector<Eigen::VectorXd> magnitudes_;  // entry magnitudes, prefilter for equality
    std::unordered_map<std::string, std::uint32_t> key_index_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

struct ClosureResult {
    bool complete = false;
    std::size_t count = 0;
    std::size_t cap = 0;
    std::vector<Mat> elements;  // canonical representatives, BFS order
};

// BFS closure under multiplication by the generators and their inverses over
// projective canonical forms; complete iff it stabilizes below the cap.
ClosureResult projective_closure(const std::vector<Mat>& generators, std::size_t cap);

}  // namespace quk
