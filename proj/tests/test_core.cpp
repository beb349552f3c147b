#include <doctest.h>

#include <cmath>
#include <cstring>

#include "atrid/errors.hpp"
#include "atrid/rng.hpp"
#include "atrid/structured.hpp"

using namespace atrid;

TEST_CASE("validate: dominant tridiagonal example") {
    StructuredMatrix m(3, {4, 4, 4}, {1, 1}, {1, 1});
    auto rep = validate(m);
    CHECK(rep.is_dominant);
    CHECK(rep.margin == doctest::Approx(2.0));
}

TEST_CASE("validate: non-dominant rows reported") {
    StructuredMatrix m(3, {1, 1, 1}, {1, 1}, {1, 1});
    auto rep = validate(m);
    CHECK_FALSE(rep.is_dominant);
    CHECK(rep.worst_row == 2);  // |1| - (|1| + |1|) = -1, the interior row
}

TEST_CASE("validate: corner terms enter the row sums") {
    StructuredMatrix m(3, {4, 4, 4}, {1, 1}, {1, 1}, 0.0, 2.5);
    auto rep = validate(m);
    // row 1 off-diagonal sum = |c_1| + |d2| = 3.5
    CHECK(rep.margin == doctest::Approx(0.5));
    CHECK(rep.worst_row == 1);
}

TEST_CASE("corners at n < 3 collide with the band and are rejected") {
    CHECK_THROWS_AS(StructuredMatrix(2, {3, 3}, {1}, {1}, 1.0, 0.0), StructureError);
    CHECK_THROWS_AS(StructuredMatrix(1, {7}, {}, {}, 0.0, 1.0), StructureError);
    CHECK_THROWS_AS(random_dominant(2, 0.5, CornerFlags{true, false}, 1), StructureError);
}

TEST_CASE("length mismatches are rejected") {
    CHECK_THROWS_AS(StructuredMatrix(3, {4, 4}, {1, 1}, {1, 1}), StructureError);
    CHECK_THROWS_AS(StructuredMatrix(3, {4, 4, 4}, {1}, {1, 1}), StructureError);
    CHECK_THROWS_AS(StructuredMatrix(0, {}, {}, {}), StructureError);
}

TEST_CASE("to_dense places the band and corners") {
    CHECK(to_dense(StructuredMatrix(1, {7}, {}, {})) == DenseMatrix{{7}});

    StructuredMatrix sw(3, {4, 4, 4}, {1, 1}, {1, 1}, 1.0, 0.0);
    CHECK(to_dense(sw) == DenseMatrix{{4, 1, 0}, {1, 4, 1}, {1, 1, 4}});

    StructuredMatrix ne(3, {4, 4, 4}, {1, 1}, {1, 1}, 0.0, 1.0);
    CHECK(to_dense(ne) == DenseMatrix{{4, 1, 1}, {1, 4, 1}, {0, 1, 4}});
}

TEST_CASE("structural nonzero count") {
    for (std::size_t n : {3ul, 5ul, 16ul}) {
        for (int corners = 0; corners < 4; ++corners) {
            CornerFlags cf{(corners & 1) != 0, (corners & 2) != 0};
            auto m = random_dominant(n, 0.5, cf, 99 + n + corners);
            const std::size_t expected =
                3 * n - 2 + (cf.sw ? 1 : 0) + (cf.ne ? 1 : 0);
            CHECK(to_dense(m).nonzero_count() == expected);
        }
    }
}

TEST_CASE("random_dominant: margin guarantee and determinism") {
    for (double margin : {0.1, 0.5, 1.0}) {
        for (std::size_t n : {1ul, 2ul, 3ul, 5ul, 17ul, 64ul}) {
            auto m = random_dominant(n, margin, CornerFlags{n >= 3, n >= 3}, 42 + n);
            auto rep = validate(m);
            CHECK(rep.is_dominant);
            CHECK(rep.margin >= margin);
        }
    }
    auto a = random_dominant(5, 1.0, CornerFlags{}, 7);
    auto b = random_dominant(5, 1.0, CornerFlags{}, 7);
    CHECK(a == b);
    CHECK(validate(a).is_dominant);
}

TEST_CASE("subdiagonal magnitudes are floored away from zero") {
    auto m = random_dominant(64, 0.1, CornerFlags{true, true}, 3);
    for (double b : m.sub()) CHECK(std::fabs(b) >= 0.1);
}

TEST_CASE("apply matches the dense product") {
    auto m = random_dominant(9, 0.3, CornerFlags{true, true}, 21);
    std::vector<double> x(9);
    Rng rng(5);
    for (auto& v : x) v = rng.symmetric();
    auto y_structured = m.apply(x);
    auto y_dense = multiply(to_dense(m), x);
    CHECK(max_abs_diff(y_structured, y_dense) <= 1e-15 * to_dense(m).inf_norm());
}

TEST_CASE("matrix text format: n=1 round trip") {
    StructuredMatrix m(1, {7}, {}, {});
    CHECK(write_matrix(m) == "1\n7\n\n\n0 0\n");
    CHECK(read_matrix(write_matrix(m)) == m);
}

TEST_CASE("matrix text format: parses the documented example") {
    auto m = read_matrix("2\n3 3\n1\n1\n0 0\n");
    CHECK(m.order() == 2);
    CHECK(m.diag()[0] == 3);
    CHECK(m.sub()[0] == 1);
    CHECK(m.super()[0] == 1);
}

TEST_CASE("matrix text format: short diagonal is a parse error with position") {
    try {
        read_matrix("2\n3\n1\n1\n0 0\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("matrix text format: round trip is bit-exact, negative zero included") {
    StructuredMatrix m(4, {4.25, -0.0, 1e-300, 3.5e9}, {0.1, -0.25, 1e17},
                       {-2.0, 0.0, 5e-17}, 0.0, 0.0);
    auto back = read_matrix(write_matrix(m));
    CHECK(back == m);
    CHECK(std::signbit(back.diag()[1]));

    Rng rng(11);
    for (int round = 0; round < 50; ++round) {
        auto r = random_dominant(1 + rng.next_u64() % 20, 0.2,
                                 CornerFlags{}, rng.next_u64());
        CHECK(read_matrix(write_matrix(r)) == r);
    }
}

TEST_CASE("matrix text format: malformed inputs raise ParseError") {
    CHECK_THROWS_AS(read_matrix(""), ParseError);
    CHECK_THROWS_AS(read_matrix("0\n\n\n\n0 0\n"), ParseError);
    CHECK_THROWS_AS(read_matrix("x\n7\n\n\n0 0\n"), ParseError);
    CHECK_THROWS_AS(read_matrix("1\n7\n\n\n0 0\nextra\n"), ParseError);
    CHECK_THROWS_AS(read_matrix("1\nnan\n\n\n0 0\n"), ParseError);
    CHECK_THROWS_AS(read_matrix("1\n7 8\n\n\n0 0\n"), ParseError);
    CHECK_THROWS_AS(read_matrix("2\n3 3\n1\n1\n0\n"), ParseError);
    // corner collision in a structurally complete file
    CHECK_THROWS_AS(read_matrix("2\n3 3\n1\n1\n1 0\n"), StructureError);
}

TEST_CASE("parser fuzz: arbitrary bytes never crash") {
    Rng rng(0xf22);
    const char pool[] = "0123456789.eE+- \t\nnaif";
    for (int round = 0; round < 2000; ++round) {
        std::string text;
        const std::size_t len = rng.next_u64() % 120;
        for (std::size_t i = 0; i < len; ++i)
            text += pool[rng.next_u64() % (sizeof(pool) - 1)];
        try {
            read_matrix(text);
        } catch (const Error&) {
            // any library error is acceptable; crashes are not
        }
    }
}
