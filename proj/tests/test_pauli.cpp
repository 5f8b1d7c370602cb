#include <cmath>

#include "doctest.h"
#include "quk/errors.hpp"
#include "quk/linalg.hpp"
#include "quk/pauli.hpp"

using namespace quk;

namespace {

// Twisted Fourier kernel omega^{t j k} / sqrt(n); t = 1 is hadamard(n).
Mat twisted_hadamard(std::int64_t n, std::int64_t t) {
    Mat h(n, n);
    for (std::int64_t k = 0; k < n; ++k)
        for (std::int64_t j = 0; j < n; ++j)
            h(k, j) = root_of_unity(t * j * k, n) / std::sqrt(static_cast<double>(n));
    return h;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t n) {
    for (std::int64_t x = 1; x < n; ++x)
        if ((a * x) % n == 1) return x;
    return 0;
}

}  // namespace

TEST_SUITE("pauli") {

TEST_CASE("qubit paulis are exact") {
    Mat x_expected(2, 2), z_expected(2, 2);
    x_expected << 0, 1, 1, 0;
    z_expected << 1, 0, 0, -1;
    CHECK(max_abs_diff(pauli_x(2), x_expected) == 0.0);
    CHECK(max_abs_diff(pauli_z(2), z_expected) < 1e-15);
}

TEST_CASE("ZX = omega XZ entrywise at d=3") {
    const Mat lhs = pauli_z(3) * pauli_x(3);
    const Mat rhs = root_of_unity(1, 3) * (pauli_x(3) * pauli_z(3));
    CHECK(max_abs_diff(lhs, rhs) < 1e-15);
}

TEST_CASE("generators have order d at d=4") {
    const Mat x = pauli_x(4), z = pauli_z(4);
    CHECK(max_abs_diff(x * x * x * x, Mat::Identity(4, 4)) < 1e-15);
    CHECK(max_abs_diff(z * z * z * z, Mat::Identity(4, 4)) < 1e-14);
}

TEST_CASE("phase gate small dimensions") {
    const Mat p2 = phase_gate(2);
    CHECK(std::abs(p2(0, 0) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(p2(1, 1) - cplx(0, 1)) < 1e-15);
    const Mat p3 = phase_gate(3);
    CHECK(std::abs(p3(0, 0) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(p3(1, 1) - root_of_unity(1, 3)) < 1e-15);
    CHECK(std::abs(p3(2, 2) - cplx(1, 0)) < 1e-15);
}

TEST_CASE("hadamard is unitary, squares to index negation, fourth power is identity") {
    for (std::int64_t d : {2, 3, 4, 5, 6, 7}) {
        const Mat h = hadamard(d);
        CHECK(is_unitary(h, 1e-12));
        const Mat h2 = h * h;
        Mat negation = Mat::Zero(d, d);
        for (std::int64_t j = 0; j < d; ++j) negation(((d - j) % d), j) = 1.0;
        CHECK(max_abs_diff(h2, negation) < 1e-13);
        CHECK(max_abs_diff(h2 * h2, Mat::Identity(d, d)) < 1e-13);
    }
}

TEST_CASE("pauli_v matches monomial construction and phase order") {
    CHECK(heisenberg_phase_order(3) == 3);
    CHECK(heisenberg_phase_order(4) == 8);
    const Mat v = pauli_v(3, {2, 1, 2});  // omega_3^2 X^2 Z
    const Mat direct = root_of_unity(2, 3) * pauli_x(3) * pauli_x(3) * pauli_z(3);
    CHECK(max_abs_diff(v, direct) < 1e-14);
}

TEST_CASE("commutation phase examples and antisymmetry") {
    CHECK(commutation_phase(2, {0, 1, 0}, {1, 0, 0}) == 1);  // Z X Z^dag = -X
    CHECK(commutation_phase(5, {3, 2, 0}, {3, 2, 0}) == 0);
    CHECK(commutation_phase(3, {1, 0, 0}, {0, 1, 0}) == 2);
    for (std::int64_t d = 2; d <= 8; ++d)
        for (std::int64_t va = 0; va < d; ++va)
            for (std::int64_t vb = 0; vb < d; ++vb)
                for (std::int64_t ua = 0; ua < d; ++ua)
                    for (std::int64_t ub = 0; ub < d; ++ub) {
                        const auto e1 = commutation_phase(d, {va, vb, 0}, {ua, ub, 0});
                        const auto e2 = commutation_phase(d, {ua, ub, 0}, {va, vb, 0});
                        CHECK((e1 + e2) % d == 0);
                    }
}

TEST_CASE("commutation phase agrees with matrix conjugation") {
    for (std::int64_t d : {2, 3, 5}) {
        for (std::int64_t va = 0; va < d; ++va)
            for (std::int64_t vb = 0; vb < d; ++vb)
                for (std::int64_t ua = 0; ua < d; ++ua)
                    for (std::int64_t ub = 0; ub < d; ++ub) {
                        const Mat vv = pauli_v(d, {va, vb, 0});
                        const Mat vu = pauli_v(d, {ua, ub, 0});
                        const std::int64_t e = commutation_phase(d, {va, vb, 0}, {ua, ub, 0});
                        CHECK(max_abs_diff(vv * vu * vv.adjoint(), root_of_unity(e, d) * vu) < 1e-12);
                    }
    }
}

TEST_CASE("pauli recognition round trip and rejections") {
    const auto match = is_pauli_up_to_phase(3, root_of_unity(2, 3) * pauli_v(3, {2, 1, 0}));
    REQUIRE(match.has_value());
    CHECK(match->index.a == 2);
    CHECK(match->index.b == 1);
    CHECK(std::abs(match->phase - root_of_unity(2, 3)) < 1e-12);

    CHECK_FALSE(is_pauli_up_to_phase(2, hadamard(2)).has_value());

    const auto id4 = is_pauli_up_to_phase(4, Mat::Identity(4, 4));
    REQUIRE(id4.has_value());
    CHECK(id4->index.a == 0);
    CHECK(id4->index.b == 0);
    CHECK(std::abs(id4->phase - cplx(1, 0)) < 1e-12);

    Mat not_unitary = Mat::Zero(2, 2);
    not_unitary(0, 0) = 2.0;
    CHECK_THROWS_AS(is_pauli_up_to_phase(2, not_unitary), std::invalid_argument);
}

TEST_CASE("exhaustive recognition: every pauli with every phase exponent") {
    for (std::int64_t d : {2, 3, 4, 6}) {
        const std::int64_t k_d = heisenberg_phase_order(d);
        for (std::int64_t a = 0; a < d; ++a)
            for (std::int64_t b = 0; b < d; ++b) {
                const auto got = is_pauli_up_to_phase(d, pauli_v(d, {a, b, (a + b) % k_d}));
                REQUIRE(got.has_value());
                CHECK(got->index.a == a);
                CHECK(got->index.b == b);
            }
    }
}

TEST_CASE("clifford membership: generator images of the symplectic map") {
    for (std::int64_t d : {2, 3, 5, 6}) {
        const auto h = clifford_membership(d, hadamard(d));
        REQUIRE(h.member);
        CHECK(h.sl2_image->a == 0);
        CHECK(h.sl2_image->b == (d - 1));  // -1 mod d
        CHECK(h.sl2_image->c == 1);
        CHECK(h.sl2_image->d == 0);

        const auto p = clifford_membership(d, phase_gate(d));
        REQUIRE(p.member);
        CHECK(p.sl2_image->a == 1);
        CHECK(p.sl2_image->b == 0);
        CHECK(p.sl2_image->c == 1);
        CHECK(p.sl2_image->d == 1);

        const auto x = clifford_membership(d, pauli_x(d));
        REQUIRE(x.member);  // kernel element: identity image
        CHECK(x.sl2_image->a == 1);
        CHECK(x.sl2_image->b == 0);
        CHECK(x.sl2_image->c == 0);
        CHECK(x.sl2_image->d == 1);
    }
}

TEST_CASE("clifford membership: qubit T gate fails on the X axis") {
    Mat t = Mat::Zero(2, 2);
    t(0, 0) = 1.0;
    t(1, 1) = std::polar(1.0, 3.14159265358979324 / 4.0);
    const auto witness = clifford_membership(2, t);
    CHECK_FALSE(witness.member);
    CHECK_FALSE(witness.sl2_image.has_value());
    REQUIRE(witness.failure_axis.has_value());
    CHECK(*witness.failure_axis == ConjugationAxis::X);
}

TEST_CASE("membership is closed under products and the SL2 image is multiplicative") {
    for (std::int64_t d : {2, 3, 4}) {
        const std::vector<Mat> gens = {pauli_x(d), hadamard(d), phase_gate(d)};
        DeterministicRng rng(91 + d);
        for (int trial = 0; trial < 12; ++trial) {
            const int len = 2 + static_cast<int>(rng.next_u64() % 5);
            Mat word = Mat::Identity(d, d);
            SL2Element expected{1, 0, 0, 1, d};
            for (int i = 0; i < len; ++i) {
                const auto& g = gens[rng.next_u64() % 3];
                const auto w = clifford_membership(d, g);
                word = word * g;
                const SL2Element& m = *w.sl2_image;
                SL2Element next;
                next.n = d;
                next.a = ((expected.a * m.a + expected.b * m.c) % d + d) % d;
                next.b = ((expected.a * m.b + expected.b * m.d) % d + d) % d;
                next.c = ((expected.c * m.a + expected.d * m.c) % d + d) % d;
                next.d = ((expected.c * m.b + expected.d * m.d) % d + d) % d;
                expected = next;
            }
            const auto w = clifford_membership(d, word);
            REQUIRE(w.member);
            CHECK(w.sl2_image->a == expected.a);
            CHECK(w.sl2_image->b == expected.b);
            CHECK(w.sl2_image->c == expected.c);
            CHECK(w.sl2_image->d == expected.d);
        }
    }
}

TEST_CASE("members conjugate every pauli to a pauli, d <= 6") {
    for (std::int64_t d = 2; d <= 6; ++d) {
        const Mat u = hadamard(d) * phase_gate(d) * pauli_x(d);  // a member by closure
        REQUIRE(clifford_membership(d, u).member);
        for (std::int64_t a = 0; a < d; ++a)
            for (std::int64_t b = 0; b < d; ++b) {
                if (a == 0 && b == 0) continue;
                const Mat conj = u * pauli_v(d, {a, b, 0}) * u.adjoint();
                CHECK(is_pauli_up_to_phase(d, conj).has_value());
            }
    }
}

TEST_CASE("crt conjugation: X factorizes literally, H and P factorize with the residue twist") {
    const std::vector<std::pair<std::int64_t, std::int64_t>> pairs = {{2, 3}, {3, 4}, {4, 9}};
    for (const auto& [d1, d2] : pairs) {
        const std::int64_t d = d1 * d2;
        CAPTURE(d1);
        CAPTURE(d2);

        CHECK(max_abs_diff(crt_conjugate(d1, d2, pauli_x(d)), kron(pauli_x(d1), pauli_x(d2))) < 1e-12);
        CHECK(max_abs_diff(crt_conjugate(d1, d2, Mat::Identity(d, d)), Mat::Identity(d, d)) == 0.0);

        // H_d maps to H^{(t1)} (x) H^{(t2)} with t_i = (d/d_i)^{-1} mod d_i, global phase 1
        const std::int64_t t1 = inv_mod(d2 % d1, d1);
        const std::int64_t t2 = inv_mod(d1 % d2, d2);
        const Mat h_image = crt_conjugate(d1, d2, hadamard(d));
        CHECK(projective_deviation(h_image, kron(twisted_hadamard(d1, t1), twisted_hadamard(d2, t2))) <
              1e-10);

        // P_d maps to a tensor product of local diagonal Clifford gates; the
        // factors are the diagonal sampled along each CRT axis
        const Mat p_image = crt_conjugate(d1, d2, phase_gate(d));
        Mat f1 = Mat::Zero(d1, d1), f2 = Mat::Zero(d2, d2);
        for (std::int64_t x = 0; x < d1; ++x) f1(x, x) = p_image(x * d2, x * d2);
        for (std::int64_t y = 0; y < d2; ++y) f2(y, y) = p_image(y, y);
        CHECK(projective_deviation(p_image, kron(f1, f2)) < 1e-10);
        CHECK(clifford_membership(d1, f1).member);
        CHECK(clifford_membership(d2, f2).member);
    }
    CHECK_THROWS_AS(crt_conjugate(2, 4, Mat::Identity(8, 8)), std::invalid_argument);
}

TEST_CASE("crt images of H and P stay inside the local clifford groups") {
    // the twisted factors are clifford members, confirming the group-level factorization
    const Mat h_image = crt_conjugate(2, 3, hadamard(6));
    const Mat h3_twisted = twisted_hadamard(3, 2);
    CHECK(projective_deviation(h_image, kron(hadamard(2), h3_twisted)) < 1e-12);
    CHECK(clifford_membership(3, h3_twisted).member);
}

}  // TEST_SUITE
