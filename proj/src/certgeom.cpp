#include "quk/certgeom.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

#include "quk/closure.hpp"
#include "quk/linalg.hpp"

namespace quk {

namespace {

constexpr double kCertMargin = 1e-9;  // guard band below the strict 1/2 threshold

double wrap_unit(double x) {
    x -= std::floor(x);
    return x >= 1.0 ? 0.0 : x;
}

}  // namespace

SpectralReport spectral_report(const Mat& u) {
    require_unitary(u, kUnitaryTol, "spectral_report input");
    SpectralReport report;
    report.eigenphases = unitary_eigenphases(u);
    const std::size_t n = report.eigenphases.size();

    // Minimal covering arc = complement of the largest gap between consecutive
    // sorted phases (cyclically).
    double largest_gap = 0.0;
    std::size_t gap_end = 0;  // phase index where the covering arc starts
    for (std::size_t i = 0; i < n; ++i) {
        const double next = i + 1 < n ? report.eigenphases[i + 1] : report.eigenphases[0] + 1.0;
        const double gap = next - report.eigenphases[i];
        if (gap > largest_gap) {
            largest_gap = gap;
            gap_end = (i + 1) % n;
        }
    }
    report.span = std::max(0.0, 1.0 - largest_gap);
    report.proj_distance = 2.0 * std::sin(std::numbers::pi * report.span / 2.0);
    report.centering_phase = wrap_unit(report.eigenphases[gap_end] + report.span / 2.0);
    return report;
}

std::string word_token_name(const WordToken& t) {
    std::string name = "g" + std::to_string(t.generator);
    if (t.inverse) name += "^-1";
    return name;
}

std::optional<InfinitenessCertificate> certificate_check(const Mat& u) {
    const SpectralReport report = spectral_report(u);
    if (report.span <= kCertMargin) return std::nullopt;  // scalar within noise
    if (report.proj_distance >= 0.5 - kCertMargin) return std::nullopt;
    InfinitenessCertificate cert;
    cert.element = u;
    cert.proj_distance = report.proj_distance;
    cert.eigenphases = report.eigenphases;
    return cert;
}

double ts_universality_bound(std::int64_t d) {
    if (d < 2) throw std::invalid_argument("ts_universality_bound: d must be >= 2");
    return std::numbers::pi * static_cast<double>(d - 1) / (2.0 * std::asin(0.25));
}

SearchOutcome certificate_search(std::int64_t d, const std::vector<Mat>& generators,
                                 const SearchBudget& budget) {
    if (generators.empty()) throw std::invalid_argument("certificate_search: empty generator list");
    if (budget.max_word_len < 1 || budget.max_elements < 1)
        throw std::invalid_argument("certificate_search: budgets must be positive");
    std::vector<Mat> steps;
    std::vector<WordToken> tokens;
    for (int i = 0; i < static_cast<int>(generators.size()); ++i) {
        const Mat& g = generators[static_cast<std::size_t>(i)];
        if (g.rows() != d || g.cols() != d)
            throw std::invalid_argument("certificate_search: generator dimension mismatch");
        require_unitary(g, kUnitaryTol, "certificate_search generator");
        steps.push_back(g);
        tokens.push_back({i, false});
        steps.push_back(g.adjoint());
        tokens.push_back({i, true});
    }

    SearchOutcome outcome;
    ProjectiveSet set;
    set.insert(Mat::Identity(d, d));
    std::vector<std::vector<WordToken>> words{{}};
    std::deque<std::size_t> frontier{0};
    bool capped = false;
    bool depth_limited = false;
    while (!frontier.empty() && !capped) {
        const std::size_t idx = frontier.front();
        frontier.pop_front();
        const std::vector<WordToken> base_word = words[idx];
        if (static_cast<int>(base_word.size()) >= budget.max_word_len) {
            depth_limited = true;
            continue;
        }
        const Mat base = set.element(idx);
        for (std::size_t t = 0; t < steps.size(); ++t) {
            const Mat candidate = base * steps[t];
            const auto [new_idx, inserted] = set.insert(candidate);
            if (!inserted) continue;
            std::vector<WordToken> word = base_word;
            word.push_back(tokens[t]);
            words.push_back(word);
            outcome.depth_reached = std::max(outcome.depth_reached, static_cast<int>(word.size()));
            if (auto cert = certificate_check(set.element(new_idx))) {
                cert->word = std::move(word);
                outcome.certificate = std::move(cert);
                outcome.elements_explored = set.size();
                return outcome;
            }
            frontier.push_back(new_idx);
            if (set.size() >= budget.max_elements) {
                capped = true;
                break;
            }
        }
    }
    outcome.elements_explored = set.size();
    outcome.frontier_exhausted = !capped && !depth_limited;
    return outcome;
}

}  // namespace quk
