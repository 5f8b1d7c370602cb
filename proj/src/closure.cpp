#include "quk/closure.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <stdexcept>

namespace quk {

namespace {

// Pivot phase normalization: rotate so the largest-magnitude entry (ties by
// lowest row-major index, with a small tolerance so floating noise cannot flip
// the choice between genuinely equal magnitudes) becomes real positive.
Mat phase_normalize(const Mat& u) {
    const Eigen::Index n = u.rows();
    double best = 0.0;
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < u.cols(); ++c) best = std::max(best, std::abs(u(r, c)));
    cplx pivot = 1.0;
    bool found = false;
    for (Eigen::Index r = 0; r < n && !found; ++r)
        for (Eigen::Index c = 0; c < u.cols() && !found; ++c)
            if (std::abs(u(r, c)) >= best - 1e-9) {
                pivot = u(r, c);
                found = true;
            }
    const double mag = std::abs(pivot);
    return mag > 0 ? Mat(u * (std::conj(pivot) / mag)) : u;
}

double round8(double x) {
    const double r = std::round(x * 1e8) / 1e8;
    return r == 0.0 ? 0.0 : r;  // normalize -0
}

// Three phase-invariant statistics; quantized with neighbor probing on lookup.
struct BucketStats {
    double q1, q2, q3;
};

BucketStats bucket_stats(const Mat& u) {
    const Mat u2 = u * u;
    return {std::abs(u.trace()), std::abs(u2.trace()), std::abs((u2 * u).trace())};
}

std::uint64_t bucket_key(const BucketStats& s, std::int64_t s1, std::int64_t s2, std::int64_t s3) {
    const std::int64_t b1 = static_cast<std::int64_t>(std::floor(s.q1 / 1e-3)) + s1;
    const std::int64_t b2 = static_cast<std::int64_t>(std::floor(s.q2 / 1e-3)) + s2;
    const std::int64_t b3 = static_cast<std::int64_t>(std::floor(s.q3 / 1e-3)) + s3;
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (std::int64_t b : {b1, b2, b3}) {
        h ^= static_cast<std::uint64_t>(b);
        h *= 0x100000001B3ull;
    }
    return h;
}

Eigen::VectorXd entry_magnitudes(const Mat& u) {
    return Eigen::Map<const Vec>(u.data(), u.size()).cwiseAbs();
}

}  // namespace

ProjectiveCanonicalForm canonicalize(const Mat& u) {
    ProjectiveCanonicalForm form;
    form.dim = u.rows();
    Mat normalized = phase_normalize(u);
    for (Eigen::Index r = 0; r < normalized.rows(); ++r)
        for (Eigen::Index c = 0; c < normalized.cols(); ++c)
            normalized(r, c) = cplx(round8(normalized(r, c).real()), round8(normalized(r, c).imag()));
    form.entries = normalized;

    std::string key;
    key.reserve(static_cast<std::size_t>(normalized.size()) * 24);
    char buf[48];
    for (Eigen::Index r = 0; r < normalized.rows(); ++r)
        for (Eigen::Index c = 0; c < normalized.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.8f,%.8f;", normalized(r, c).real(), normalized(r, c).imag());
            key += buf;
        }
    form.key = std::move(key);
    return form;
}

std::pair<std::size_t, bool> ProjectiveSet::insert(const Mat& u) {
    const Mat candidate = phase_normalize(u);

    // Fast path: identical rounded canonical key.
    const std::string key = canonicalize(candidate).key;
    if (const auto it = key_index_.find(key); it != key_index_.end()) return {it->second, false};

    // Authoritative path: probe the invariant buckets; a magnitude prefilter
    // rejects most non-matches before the phase-aligned comparison.
    const BucketStats stats = bucket_stats(candidate);
    const Eigen::VectorXd mags = entry_magnitudes(candidate);
    const Eigen::Index n_entries = mags.size();
    for (std::int64_t s1 = -1; s1 <= 1; ++s1)
        for (std::int64_t s2 = -1; s2 <= 1; ++s2)
            for (std::int64_t s3 = -1; s3 <= 1; ++s3) {
                const auto it = buckets_.find(bucket_key(stats, s1, s2, s3));
                if (it == buckets_.end()) continue;
                for (std::uint32_t idx : it->second) {
                    const Eigen::VectorXd& other = magnitudes_[idx];
                    bool plausible = true;
                    for (Eigen::Index e = 0; e < n_entries && plausible; ++e)
                        if (std::abs(mags(e) - other(e)) > eps_) plausible = false;
                    if (plausible && projectively_equal(candidate, elements_[idx], eps_))
                        return {idx, false};
                }
            }

    const std::size_t idx = elements_.size();
    elements_.push_back(candidate);
    magnitudes_.push_back(mags);
    key_index_.emplace(key, static_cast<std::uint32_t>(idx));
    buckets_[bucket_key(stats, 0, 0, 0)].push_back(static_cast<std::uint32_t>(idx));
    return {idx, true};
}

ClosureResult projective_closure(const std::vector<Mat>& generators, std::size_t cap) {
    if (generators.empty()) throw std::invalid_argument("projective_closure: empty generator list");
    if (cap < 1) throw std::invalid_argument("projective_closure: cap must be >= 1");
    const Eigen::Index n = generators.front().rows();
    std::vector<Mat> steps;
    for (const Mat& g : generators) {
        if (g.rows() != n || g.cols() != n)
            throw std::invalid_argument("projective_closure: generator dimension mismatch");
        require_unitary(g, kUnitaryTol, "closure generator");
        steps.push_back(g);
        steps.push_back(g.adjoint());
    }

    ProjectiveSet set;
    set.insert(Mat::Identity(n, n));
    std::deque<std::size_t> frontier{0};
    bool capped = false;
    while (!frontier.empty() && !capped) {
        const std::size_t idx = frontier.front();
        frontier.pop_front();
        const Mat base = set.element(idx);
        for (const Mat& step : steps) {
            const auto [new_idx, inserted] = set.insert(base * step);
            if (!inserted) continue;
            frontier.push_back(new_idx);
            if (set.size() >= cap) {
                capped = true;
                break;
            }
        }
    }

    ClosureResult result;
    result.cap = cap;
    result.count = set.size();
    result.complete = !capped;
    result.elements = set.elements();
    return result;
}

}  // namespace quk
