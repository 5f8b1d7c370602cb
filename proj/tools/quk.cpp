#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quk/adjoint.hpp"
#include "quk/certgeom.hpp"
#include "quk/composite.hpp"
#include "quk/diagonal.hpp"
#include "quk/errors.hpp"
#include "quk/jsonio.hpp"
#include "quk/pauli.hpp"

namespace {

using namespace quk;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitNonUnitary = 3;
constexpr int kExitFinite = 10;
constexpr int kExitInconclusive = 11;

void emit(const std::string& json, const std::string& out_path) {
    std::cout << json << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << json << "\n";
    }
}

int fail(int code, const std::string& message, const std::string& out_path) {
    JsonWriter w;
    w.begin_object();
    w.key("error").value(message);
    w.end_object();
    emit(w.str(), out_path);
    return code;
}

struct GateSpec {
    std::string text;
    std::optional<std::int64_t> ts_s;  // set for Ts(s)
};

// Registry: X, Z, H, P, Ts(s), CN(p,q), intraCN(p,q), matrix:<path>.
Mat parse_gate(const std::string& spec, std::int64_t d, GateSpec* info) {
    if (info) info->text = spec;
    auto args_of = [&](const std::string& name) -> std::optional<std::vector<std::int64_t>> {
        if (spec.rfind(name + "(", 0) != 0 || spec.back() != ')') return std::nullopt;
        std::vector<std::int64_t> args;
        std::string body = spec.substr(name.size() + 1, spec.size() - name.size() - 2);
        std::size_t pos = 0;
        while (pos <= body.size()) {
            const std::size_t comma = body.find(',', pos);
            const std::string tok = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
            if (tok.empty()) throw std::invalid_argument("bad gate arguments in '" + spec + "'");
            args.push_back(std::stoll(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return args;
    };

    if (spec == "X") return pauli_x(d);
    if (spec == "Z") return pauli_z(d);
    if (spec == "H") return hadamard(d);
    if (spec == "P") return phase_gate(d);
    if (auto args = args_of("Ts")) {
        if (args->size() != 1) throw std::invalid_argument("Ts takes one argument, e.g. Ts(8)");
        if (info) info->ts_s = (*args)[0];
        return t_s(d, (*args)[0]);
    }
    if (auto args = args_of("intraCN")) {
        if (args->size() != 2) throw std::invalid_argument("intraCN takes two arguments, e.g. intraCN(2,3)");
        return intra_qudit_cn(d, (*args)[0], (*args)[1]);
    }
    if (auto args = args_of("CN")) {
        if (args->size() != 2) throw std::invalid_argument("CN takes two arguments, e.g. CN(2,3)");
        const Mat cn = cn_gate((*args)[0], (*args)[1]);
        if (cn.rows() != d)
            throw std::invalid_argument("CN(p,q) has dimension p*q, which must equal d");
        return cn;
    }
    if (spec.rfind("matrix:", 0) == 0) {
        const Mat m = matrix_from_json_file(spec.substr(7));
        if (m.rows() != d) throw std::invalid_argument("matrix file dimension does not match d");
        return m;
    }
    throw std::invalid_argument("unknown gate spec '" + spec +
                                "'; expected X, Z, H, P, Ts(s), CN(p,q), intraCN(p,q) or matrix:<path>");
}

const char* case_name(TrichotomyCase c) {
    switch (c) {
        case TrichotomyCase::PrimeI: return "PrimeI";
        case TrichotomyCase::PrimePowerII: return "PrimePowerII";
        default: return "CoprimeIII";
    }
}

int cmd_classify(std::int64_t d, const std::string& out_path) {
    if (d < 2 || d > 100) return fail(kExitBadInput, "classify requires 2 <= d <= 100", out_path);
    const TrichotomyVerdict verdict = trichotomy_classify(d);
    JsonWriter w;
    w.begin_object();
    w.key("d").value(d);
    w.key("case").value(std::string(case_name(verdict.case_tag)));
    w.key("factors").begin_array();
    for (const auto& [p, m] : verdict.factorization.factors) {
        w.begin_array();
        w.value(p);
        w.value(static_cast<std::int64_t>(m));
        w.end_array();
    }
    w.end_array();
    w.key("prime_power_parts").begin_array();
    for (std::int64_t part : verdict.factorization.prime_power_parts()) w.value(part);
    w.end_array();
    w.key("bound");
    if (verdict.bound)
        w.value(*verdict.bound);
    else
        w.null_value();
    w.key("recommended_s");
    if (verdict.recommended_s)
        w.value(*verdict.recommended_s);
    else
        w.null_value();
    w.key("recommended_gates").begin_array();
    for (const auto& g : verdict.recommended_gates) w.value(g);
    w.end_array();
    w.end_object();
    emit(w.str(), out_path);
    return kExitOk;
}

bool is_diagonal(const Mat& m) {
    Mat off = m;
    off.diagonal().setZero();
    return max_abs(off) < 1e-12;
}

int cmd_check_gate(std::int64_t d, const std::string& spec, double tol, const std::string& out_path) {
    if (d < 2) return fail(kExitBadInput, "check-gate requires d >= 2", out_path);
    Mat gate;
    GateSpec info;
    try {
        gate = parse_gate(spec, d, &info);
    } catch (const std::exception& e) {
        return fail(kExitBadInput, e.what(), out_path);
    }
    const double deviation = unitarity_deviation(gate);
    if (deviation > tol) {
        JsonWriter w;
        w.begin_object();
        w.key("error").value(std::string("gate is not unitary"));
        w.key("unitary_deviation").value(deviation);
        w.key("tolerance").value(tol);
        w.end_object();
        emit(w.str(), out_path);
        return kExitNonUnitary;
    }

    const CliffordWitness witness = clifford_membership(d, gate);
    const SpectralReport spectral = spectral_report(gate);
    const bool has_certificate = certificate_check(gate).has_value();

    JsonWriter w;
    w.begin_object();
    w.key("d").value(d);
    w.key("gate").value(spec);
    w.key("unitary_deviation").value(deviation);
    w.key("clifford").value(witness.member);
    w.key("sl2_image");
    if (witness.sl2_image) {
        const SL2Element& s = *witness.sl2_image;
        w.begin_array();
        w.begin_array().value(s.a).value(s.b).end_array();
        w.begin_array().value(s.c).value(s.d).end_array();
        w.end_array();
    } else {
        w.null_value();
    }
    w.key("failure_axis");
    if (witness.failure_axis)
        w.value(std::string(*witness.failure_axis == ConjugationAxis::X ? "X" : "Z"));
    else
        w.null_value();
    w.key("spectral").begin_object();
    w.key("eigenphases").begin_array();
    for (double phase : spectral.eigenphases) w.value(phase);
    w.end_array();
    w.key("span").value(spectral.span);
    w.key("proj_distance").value(spectral.proj_distance);
    w.key("centering_phase").value(spectral.centering_phase);
    w.end_object();
    w.key("certificate").value(has_certificate);

    w.key("diagonal");
    if (is_diagonal(gate)) {
        std::vector<cplx> diag(static_cast<std::size_t>(d));
        for (std::int64_t k = 0; k < d; ++k)
            diag[static_cast<std::size_t>(k)] = gate(k, k) / std::abs(gate(k, k));
        const PhaseFunction zeta = make_phase_function(d, std::move(diag));
        const bool bichar = bicharacter_test(coboundary(zeta));
        MixingReport mixing = orbit_mixing_test(zeta);
        mixing.s = info.ts_s;
        w.begin_object();
        w.key("bicharacter").value(bichar);
        w.key("ts_divisibility_criterion");
        if (info.ts_s) {
            const bool predicted_clifford = ts_divisibility_criterion(d, *info.ts_s);
            w.value(predicted_clifford);
            w.key("divisibility_discrepancy").value(predicted_clifford != witness.member);
        } else {
            w.null_value();
            w.key("divisibility_discrepancy").null_value();
        }
        w.key("mixing_report");
        // inline the mixing report object
        w.begin_object();
        w.key("d").value(mixing.d);
        w.key("s");
        if (mixing.s)
            w.value(*mixing.s);
        else
            w.null_value();
        w.key("mixing").value(mixing.mixing);
        w.key("per_divisor").begin_array();
        for (const auto& row : mixing.per_divisor) {
            w.begin_object();
            w.key("u").value(row.u);
            w.key("nonzero_units").begin_array();
            for (std::int64_t n : row.nonzero_units) w.value(n);
            w.end_array();
            w.end_object();
        }
        w.end_array();
        w.key("scope").value(std::string(mixing.prime_power_scope ? "prime_power" : "composite_extension"));
        w.end_object();
        w.end_object();
    } else {
        w.null_value();
    }
    w.end_object();
    emit(w.str(), out_path);
    return kExitOk;
}

int cmd_certify(std::int64_t d, const std::vector<std::string>& specs, const DensityBudgets& budgets,
                double tol, const std::string& out_path) {
    if (d < 2) return fail(kExitBadInput, "certify requires d >= 2", out_path);
    std::vector<Mat> gates;
    try {
        for (const std::string& spec : specs) gates.push_back(parse_gate(spec, d, nullptr));
    } catch (const std::exception& e) {
        return fail(kExitBadInput, e.what(), out_path);
    }
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const double deviation = unitarity_deviation(gates[i]);
        if (deviation > tol) {
            JsonWriter w;
            w.begin_object();
            w.key("error").value("gate '" + specs[i] + "' is not unitary");
            w.key("unitary_deviation").value(deviation);
            w.end_object();
            emit(w.str(), out_path);
            return kExitNonUnitary;
        }
    }
    const DensityVerdict verdict = density_certify(d, gates, budgets);
    emit(density_verdict_json(d, verdict), out_path);
    switch (verdict.status) {
        case DensityStatus::Dense: return kExitOk;
        case DensityStatus::Finite: return kExitFinite;
        default: return kExitInconclusive;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qudit Clifford resources: classification, gate checks, density certification"};
    app.require_subcommand(1);

    std::int64_t d = 0;
    std::string gate_spec;
    std::vector<std::string> gate_specs;
    std::string out_path;
    double tol = kUnitaryTol;
    DensityBudgets budgets;

    CLI::App* classify = app.add_subcommand("classify", "trichotomy classification of a dimension");
    classify->add_option("d", d, "qudit dimension")->required();
    classify->add_option("--json", out_path, "also write the JSON result to this path");

    CLI::App* check = app.add_subcommand("check-gate", "Clifford membership and spectral report");
    check->add_option("d", d, "qudit dimension")->required();
    check->add_option("gate", gate_spec, "gate spec: X, Z, H, P, Ts(s), CN(p,q), intraCN(p,q), matrix:<path>")
        ->required();
    check->add_option("--tol", tol, "unitarity tolerance");
    check->add_option("--json", out_path, "also write the JSON result to this path");

    CLI::App* certify = app.add_subcommand("certify", "density certification pipeline");
    certify->add_option("d", d, "qudit dimension")->required();
    certify->add_option("gates", gate_specs, "gate specs")->required()->expected(-1);
    certify->add_option("--budget-words", budgets.max_word_len, "certificate search word length budget");
    certify->add_option("--budget-closure", budgets.closure_cap, "projective closure element cap");
    certify->add_option("--tol", tol, "unitarity tolerance");
    certify->add_option("--json", out_path, "also write the JSON result to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitBadInput;
    }

    try {
        if (classify->parsed()) return cmd_classify(d, out_path);
        if (check->parsed()) return cmd_check_gate(d, gate_spec, tol, out_path);
        if (certify->parsed()) return cmd_certify(d, gate_specs, budgets, tol, out_path);
    } catch (const std::invalid_argument& e) {
        return fail(kExitBadInput, e.what(), out_path);
    } catch (const quk::BudgetError& e) {
        return fail(kExitBadInput, e.what(), out_path);
    } catch (const std::exception& e) {
        return fail(kExitBadInput, std::string("internal error: ") + e.what(), out_path);
    }
    return kExitBadInput;
}
