#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quk/adjoint.hpp"
#include "quk/certgeom.hpp"
#include "quk/closure.hpp"
#include "quk/composite.hpp"
#include "quk/diagonal.hpp"
#include "quk/matrix.hpp"

namespace quk {

// Shared matrix format: {"dim": n, "entries": [[[re, im], ...], ...]} row-major.
std::string matrix_to_json(const Mat& m);
Mat matrix_from_json_text(const std::string& text);
Mat matrix_from_json_file(const std::string& path);

// Minimal deterministic JSON writer; every number is printed with 12
// significant digits so identical runs produce identical bytes.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(std::int64_t v);
    JsonWriter& value(std::size_t v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& null_value();
    const std::string& str() const { return out_; }

private:
    void separator();
    std::string out_;
    std::vector<bool> need_comma_;
    bool pending_key_ = false;
};

std::string format_double(double v);  // %.12g

// Report emitters for the documented external interfaces.
std::string adjoint_report_json(std::int64_t d, int commutant_dim, const OrbitTable& orbits);
std::string mixing_report_json(const MixingReport& report);
std::string certificate_json(const InfinitenessCertificate& cert);
std::string closure_report_json(const ClosureResult& closure);
std::string density_verdict_json(std::int64_t d, const DensityVerdict& verdict);

}  // namespace quk
