#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "quk/adjoint.hpp"
#include "quk/certgeom.hpp"
#include "quk/closure.hpp"
#include "quk/diagonal.hpp"
#include "quk/jsonio.hpp"
#include "quk/linalg.hpp"
#include "quk/matrix.hpp"
#include "quk/pauli.hpp"

using namespace quk;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QUK_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) result.output.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("matrix json round trip") {
    DeterministicRng rng(11);
    const Mat u = random_unitary(3, rng);
    const Mat back = matrix_from_json_text(matrix_to_json(u));
    CHECK(max_abs_diff(u, back) < 1e-11);  // 12 significant digits
    CHECK_THROWS_AS(matrix_from_json_text("{\"dim\": 2}"), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json_text("not json"), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json_text("{\"dim\": 2, \"entries\": [[1, 2], [3, 4]]}"),
                    std::invalid_argument);
}

TEST_CASE("json writer formats") {
    JsonWriter w;
    w.begin_object();
    w.key("a").value(0.5);
    w.key("b").begin_array().value(std::int64_t(1)).value(true).null_value().end_array();
    w.key("c").value(std::string("x\"y"));
    w.end_object();
    CHECK(w.str() == "{\"a\":0.5,\"b\":[1,true,null],\"c\":\"x\\\"y\"}");
    CHECK(format_double(2.0 * std::sin(3.14159265358979324 / 16)) == "0.390180644032");
}

TEST_CASE("report emitters match the documented shapes") {
    const auto adjoint_json = adjoint_report_json(6, 3, orbit_decomposition(6));
    CHECK(adjoint_json.find("\"d\":6") != std::string::npos);
    CHECK(adjoint_json.find("\"commutant_dim\":3") != std::string::npos);
    CHECK(adjoint_json.find("{\"invariant\":1,\"size\":24}") != std::string::npos);
    CHECK(adjoint_json.find("{\"invariant\":2,\"size\":8}") != std::string::npos);
    CHECK(adjoint_json.find("{\"invariant\":3,\"size\":3}") != std::string::npos);

    MixingReport mixing = orbit_mixing_test(ts_phase_function(4, 3));
    mixing.s = 3;
    const auto mixing_json = mixing_report_json(mixing);
    CHECK(mixing_json.find("\"d\":4,\"s\":3,\"mixing\":true") != std::string::npos);
    CHECK(mixing_json.find("{\"u\":2,\"nonzero_units\":[1,3]}") != std::string::npos);

    const auto closure_json =
        closure_report_json(projective_closure({pauli_x(2), hadamard(2), phase_gate(2)}, 100));
    CHECK(closure_json == "{\"complete\":true,\"count\":24,\"cap\":100}");

    const auto outcome = certificate_search(2, {pauli_x(2), hadamard(2), phase_gate(2), t_s(2, 8)});
    REQUIRE(outcome.certificate.has_value());
    const auto cert_json = certificate_json(*outcome.certificate);
    CHECK(cert_json.find("\"word\":[\"g3\"]") != std::string::npos);
    CHECK(cert_json.find("\"proj_distance\":0.390180644032") != std::string::npos);
    CHECK(cert_json.find("\"eigenphases\":[0,0.125]") != std::string::npos);
}

TEST_CASE("classify command") {
    const auto prime = run_cli("classify 7");
    CHECK(prime.exit_code == 0);
    CHECK(prime.output.find("\"case\":\"PrimeI\"") != std::string::npos);

    const auto pp = run_cli("classify 9");
    CHECK(pp.exit_code == 0);
    CHECK(pp.output.find("\"case\":\"PrimePowerII\"") != std::string::npos);
    CHECK(pp.output.find("\"recommended_s\":50") != std::string::npos);
    CHECK(pp.output.find("\"bound\":49.7") != std::string::npos);

    const auto coprime = run_cli("classify 6");
    CHECK(coprime.exit_code == 0);
    CHECK(coprime.output.find("\"case\":\"CoprimeIII\"") != std::string::npos);
    CHECK(coprime.output.find("\"prime_power_parts\":[2,3]") != std::string::npos);

    CHECK(run_cli("classify 1").exit_code == 2);
    CHECK(run_cli("classify 101").exit_code == 2);
}

TEST_CASE("check-gate command") {
    const auto t = run_cli("check-gate 2 'Ts(8)'");
    CHECK(t.exit_code == 0);
    CHECK(t.output.find("\"clifford\":false") != std::string::npos);
    CHECK(t.output.find("\"certificate\":true") != std::string::npos);
    CHECK(t.output.find("\"proj_distance\":0.390180644032") != std::string::npos);
    CHECK(t.output.find("\"divisibility_discrepancy\":false") != std::string::npos);

    const auto p = run_cli("check-gate 3 P");
    CHECK(p.exit_code == 0);
    CHECK(p.output.find("\"clifford\":true") != std::string::npos);
    CHECK(p.output.find("\"sl2_image\":[[1,0],[1,1]]") != std::string::npos);

    const auto ts2 = run_cli("check-gate 4 'Ts(2)'");
    CHECK(ts2.exit_code == 0);
    CHECK(ts2.output.find("\"clifford\":true") != std::string::npos);

    // the even-prime-power discrepancy is reported, not silent
    const auto ts8 = run_cli("check-gate 4 'Ts(8)'");
    CHECK(ts8.exit_code == 0);
    CHECK(ts8.output.find("\"clifford\":false") != std::string::npos);
    CHECK(ts8.output.find("\"ts_divisibility_criterion\":true") != std::string::npos);
    CHECK(ts8.output.find("\"divisibility_discrepancy\":true") != std::string::npos);

    CHECK(run_cli("check-gate 2 'Frob(1)'").exit_code == 2);
}

TEST_CASE("check-gate matrix files and exit codes") {
    {
        std::ofstream out("/tmp/quk_bad_matrix.json");
        out << "{\"dim\": 2, \"entries\": [[[2,0],[0,0]],[[0,0],[1,0]]]}";
    }
    CHECK(run_cli("check-gate 2 matrix:/tmp/quk_bad_matrix.json").exit_code == 3);  // non-unitary
    {
        std::ofstream out("/tmp/quk_malformed.json");
        out << "{\"dim\": 2";
    }
    CHECK(run_cli("check-gate 2 matrix:/tmp/quk_malformed.json").exit_code == 2);
    {
        std::ofstream out("/tmp/quk_h2.json");
        out << matrix_to_json(hadamard(2));
    }
    const auto h = run_cli("check-gate 2 matrix:/tmp/quk_h2.json");
    CHECK(h.exit_code == 0);
    CHECK(h.output.find("\"clifford\":true") != std::string::npos);
}

TEST_CASE("cn gate specs parse with dimension validation") {
    const auto ok = run_cli("check-gate 6 'CN(2,3)'");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("\"gate\":\"CN(2,3)\"") != std::string::npos);
    CHECK(run_cli("check-gate 8 'CN(2,3)'").exit_code == 2);   // 2*3 != 8
    CHECK(run_cli("check-gate 6 'intraCN(2,3)'").exit_code == 0);
    CHECK(run_cli("check-gate 8 'intraCN(2,4)'").exit_code == 2);  // not coprime
    CHECK(run_cli("check-gate 2 'Ts(1)'").exit_code == 2);
}

TEST_CASE("certify command exit codes") {
    const auto finite = run_cli("certify 2 X H P");
    CHECK(finite.exit_code == 10);
    CHECK(finite.output.find("\"status\":\"Finite\"") != std::string::npos);
    CHECK(finite.output.find("\"finite_order\":24") != std::string::npos);

    const auto dense = run_cli("certify 2 X H P 'Ts(8)'");
    CHECK(dense.exit_code == 0);
    CHECK(dense.output.find("\"status\":\"Dense\"") != std::string::npos);
    CHECK(dense.output.find("\"word\":[\"g3\"]") != std::string::npos);

    const auto inconclusive = run_cli("certify 2 X H P 'Ts(8)' --budget-words 0");
    CHECK(inconclusive.exit_code == 2);  // invalid budget rejected
}

TEST_CASE("identical invocations produce byte-identical output") {
    const auto a = run_cli("classify 9");
    const auto b = run_cli("classify 9");
    CHECK(a.output == b.output);
    const auto c = run_cli("certify 3 X H P");
    const auto e = run_cli("certify 3 X H P");
    CHECK(c.output == e.output);
    const auto f = run_cli("check-gate 6 'Ts(7)'");
    const auto g = run_cli("check-gate 6 'Ts(7)'");
    CHECK(f.output == g.output);
}

TEST_CASE("json file output flag") {
    const auto res = run_cli("classify 7 --json /tmp/quk_classify7.json");
    CHECK(res.exit_code == 0);
    std::ifstream in("/tmp/quk_classify7.json");
    std::string line;
    std::getline(in, line);
    CHECK(line + "\n" == res.output);
}

}  // TEST_SUITE
