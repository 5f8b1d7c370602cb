#include "quk/jsonio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace quk {

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string matrix_to_json(const Mat& m) {
    JsonWriter w;
    w.begin_object();
    w.key("dim").value(static_cast<std::int64_t>(m.rows()));
    w.key("entries").begin_array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        w.begin_array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            w.begin_array();
            w.value(m(r, c).real());
            w.value(m(r, c).imag());
            w.end_array();
        }
        w.end_array();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

Mat matrix_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("matrix JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw std::invalid_argument("matrix JSON must be an object with \"dim\" and \"entries\"");
    const std::int64_t dim = j["dim"].get<std::int64_t>();
    if (dim < 1) throw std::invalid_argument("matrix JSON: dim must be positive");
    const auto& entries = j["entries"];
    if (!entries.is_array() || static_cast<std::int64_t>(entries.size()) != dim)
        throw std::invalid_argument("matrix JSON: entries must hold dim rows");
    Mat m(dim, dim);
    for (std::int64_t r = 0; r < dim; ++r) {
        const auto& row = entries[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<std::int64_t>(row.size()) != dim)
            throw std::invalid_argument("matrix JSON: each row must hold dim entries");
        for (std::int64_t c = 0; c < dim; ++c) {
            const auto& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
                throw std::invalid_argument("matrix JSON: entries must be [re, im] pairs");
            m(r, c) = cplx(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

Mat matrix_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return matrix_from_json_text(buf.str());
}

void JsonWriter::separator() {
    if (!need_comma_.empty() && need_comma_.back() && !pending_key_) out_ += ',';
    if (!need_comma_.empty() && !pending_key_) need_comma_.back() = true;
    pending_key_ = false;
}

JsonWriter& JsonWriter::begin_object() {
    separator();
    out_ += '{';
    need_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    need_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separator();
    out_ += '[';
    need_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    need_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    separator();
    out_ += '"';
    out_ += k;
    out_ += "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separator();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::size_t v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    return value(static_cast<std::int64_t>(v));
}

JsonWriter& JsonWriter::value(bool v) {
    separator();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    separator();
    out_ += '"';
    for (char ch : v) {
        if (ch == '"' || ch == '\\') out_ += '\\';
        out_ += ch;
    }
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::null_value() {
    separator();
    out_ += "null";
    return *this;
}

std::string adjoint_report_json(std::int64_t d, int commutant_dim, const OrbitTable& orbits) {
    JsonWriter w;
    w.begin_object();
    w.key("d").value(d);
    w.key("commutant_dim").value(commutant_dim);
    w.key("orbits").begin_array();
    for (const auto& orbit : orbits.orbits) {
        w.begin_object();
        w.key("invariant").value(orbit.invariant);
        w.key("size").value(orbit.members.size());
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

std::string mixing_report_json(const MixingReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("d").value(report.d);
    w.key("s");
    if (report.s)
        w.value(*report.s);
    else
        w.null_value();
    w.key("mixing").value(report.mixing);
    w.key("per_divisor").begin_array();
    for (const auto& row : report.per_divisor) {
        w.begin_object();
        w.key("u").value(row.u);
        w.key("nonzero_units").begin_array();
        for (std::int64_t n : row.nonzero_units) w.value(n);
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.key("scope").value(report.prime_power_scope ? std::string("prime_power")
                                                  : std::string("composite_extension"));
    w.end_object();
    return w.str();
}

std::string certificate_json(const InfinitenessCertificate& cert) {
    JsonWriter w;
    w.begin_object();
    w.key("word").begin_array();
    for (const WordToken& t : cert.word) w.value(word_token_name(t));
    w.end_array();
    w.key("proj_distance").value(cert.proj_distance);
    w.key("eigenphases").begin_array();
    for (double phase : cert.eigenphases) w.value(phase);
    w.end_array();
    w.end_object();
    return w.str();
}

std::string closure_report_json(const ClosureResult& closure) {
    JsonWriter w;
    w.begin_object();
    w.key("complete").value(closure.complete);
    w.key("count").value(closure.count);
    w.key("cap").value(closure.cap);
    w.end_object();
    return w.str();
}

std::string density_verdict_json(std::int64_t d, const DensityVerdict& verdict) {
    JsonWriter w;
    w.begin_object();
    w.key("d").value(d);
    const char* status = verdict.status == DensityStatus::Dense      ? "Dense"
                         : verdict.status == DensityStatus::Finite   ? "Finite"
                                                                     : "Inconclusive";
    w.key("status").value(std::string(status));
    w.key("irreducible").value(verdict.irreducible);
    w.key("certificate");
    if (verdict.certificate) {
        w.begin_object();
        w.key("word").begin_array();
        for (const WordToken& t : verdict.certificate->word) w.value(word_token_name(t));
        w.end_array();
        w.key("proj_distance").value(verdict.certificate->proj_distance);
        w.key("eigenphases").begin_array();
        for (double phase : verdict.certificate->eigenphases) w.value(phase);
        w.end_array();
        w.end_object();
    } else {
        w.null_value();
    }
    w.key("finite_order");
    if (verdict.finite_order)
        w.value(*verdict.finite_order);
    else
        w.null_value();
    w.key("budgets").begin_object();
    w.key("max_word_len").value(verdict.budgets.max_word_len);
    w.key("closure_cap").value(verdict.budgets.closure_cap);
    w.key("search_elements").value(verdict.used.search_elements);
    w.key("search_depth").value(verdict.used.search_depth);
    w.key("search_frontier_exhausted").value(verdict.used.search_frontier_exhausted);
    w.key("closure_attempted").value(verdict.used.closure_attempted);
    w.key("closure_count").value(verdict.used.closure_count);
    w.key("closure_complete").value(verdict.used.closure_complete);
    w.end_object();
    if (!verdict.diagnostic.empty()) w.key("diagnostic").value(verdict.diagnostic);
    w.end_object();
    return w.str();
}

}  // namespace quk
