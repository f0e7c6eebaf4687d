#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "qoac/combinatorics.hpp"
#include "qoac/linalg.hpp"

using namespace qoac;

namespace {

Mat mat(const FieldPtr& f, std::vector<GFVec> rows) { return Mat::from_rows(f, rows); }

Mat random_mat(const FieldPtr& f, int n, int m, std::mt19937& rng) {
    Mat M(f, n, m);
    std::uniform_int_distribution<unsigned> pick(0, f->q() - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) M.set(i, j, static_cast<GFElem>(pick(rng)));
    return M;
}

}  // namespace

TEST_CASE("rank examples") {
    auto f2 = make_field(2);
    REQUIRE(rank(Mat::zeros(f2, 3, 3)) == 0);
    REQUIRE(rank(Mat::identity(f2, 3)) == 3);
    REQUIRE(rank(mat(f2, {{1, 1}, {1, 1}})) == 1);
}

TEST_CASE("rref examples") {
    auto f2 = make_field(2);
    auto [R1, piv1] = rref(mat(f2, {{0, 1}, {0, 1}}));
    REQUIRE(R1 == mat(f2, {{0, 1}, {0, 0}}));
    REQUIRE(piv1 == std::vector<int>{1});

    auto [RI, pivI] = rref(Mat::identity(f2, 3));
    REQUIRE(RI == Mat::identity(f2, 3));
    REQUIRE(pivI == std::vector<int>{0, 1, 2});

    // det = 2*2 - 1*1 = 3 = 0 mod 3, so rank 1
    auto f3 = make_field(3);
    auto [R2, piv2] = rref(mat(f3, {{2, 1}, {1, 2}}));
    REQUIRE(R2 == mat(f3, {{1, 2}, {0, 0}}));
    REQUIRE(piv2 == std::vector<int>{0});
}

TEST_CASE("bit-packed and generic elimination agree over F_2") {
    auto f2 = make_field(2);
    std::mt19937 rng(777);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + int(rng() % 6), m = 1 + int(rng() % 9);
        Mat M = random_mat(f2, n, m, rng);
        std::vector<GFVec> generic_rows(n), packed_rows(n);
        for (int i = 0; i < n; ++i) generic_rows[i] = packed_rows[i] = M.row(i);
        auto piv_g = detail::rref_generic(*f2, generic_rows);
        auto piv_p = rref_rows(*f2, packed_rows);  // dispatches to the packed kernel
        REQUIRE(piv_g == piv_p);
        REQUIRE(generic_rows == packed_rows);
        REQUIRE(rank(M) == static_cast<int>(piv_g.size()));
    }
}

TEST_CASE("rank equals row and column space dimension") {
    auto f2 = make_field(2);
    // exhaustive over all 2x2 and 2x3 matrices over F_2
    for (auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}}) {
        const int cells = n * m;
        for (unsigned bits = 0; bits < (1u << cells); ++bits) {
            Mat M(f2, n, m);
            for (int k = 0; k < cells; ++k)
                if (bits & (1u << k)) M.set(k / m, k % m, 1);
            const int r = rank(M);
            REQUIRE(row_space(M).dim() == r);
            REQUIRE(col_space(M).dim() == r);
        }
    }
    auto f3 = make_field(3);
    std::mt19937 rng(4242);
    for (int t = 0; t < 100; ++t) {
        Mat M = random_mat(f3, 3, 4, rng);
        REQUIRE(row_space(M).dim() == rank(M));
        REQUIRE(col_space(M).dim() == rank(M));
    }
}

TEST_CASE("row and column space examples") {
    auto f2 = make_field(2);
    Mat E11 = Mat::unit(f2, 2, 2, 0, 0);
    REQUIRE(col_space(E11) == Subspace::spanned_by(f2, {1, 0}));
    REQUIRE(row_space(mat(f2, {{1, 1}, {1, 1}})) == Subspace::spanned_by(f2, {1, 1}));
    REQUIRE(row_space(Mat::zeros(f2, 2, 2)).dim() == 0);
}

TEST_CASE("trace pairing") {
    auto f2 = make_field(2);
    Mat E11 = Mat::unit(f2, 2, 2, 0, 0), E22 = Mat::unit(f2, 2, 2, 1, 1);
    REQUIRE(trace_pairing(E11, E11) == 1);
    REQUIRE(trace_pairing(E11, E22) == 0);
    Mat ones = mat(f2, {{1, 1}, {1, 1}});
    REQUIRE(trace_pairing(ones, ones) == 0);  // four ones, characteristic 2
    REQUIRE_THROWS_AS(trace_pairing(E11, Mat::zeros(f2, 2, 3)), std::invalid_argument);

    auto f3 = make_field(3);
    std::mt19937 rng(99);
    for (int t = 0; t < 50; ++t) {
        Mat A = random_mat(f3, 2, 3, rng), B = random_mat(f3, 2, 3, rng),
            C = random_mat(f3, 2, 3, rng);
        REQUIRE(trace_pairing(A, B) == trace_pairing(B, A));
        REQUIRE(trace_pairing(A + B, C) == f3->add(trace_pairing(A, C), trace_pairing(B, C)));
    }
}

TEST_CASE("subspace lattice operations") {
    auto f2 = make_field(2);
    Subspace e1 = Subspace::spanned_by(f2, {1, 0});
    Subspace e2 = Subspace::spanned_by(f2, {0, 1});
    REQUIRE(e1.orthogonal() == e2);

    Subspace a = Subspace::span(f2, 3, {{1, 0, 0}, {0, 1, 0}});
    Subspace b = Subspace::span(f2, 3, {{0, 1, 0}, {0, 0, 1}});
    REQUIRE(subspace_intersect(a, b) == Subspace::spanned_by(f2, {0, 1, 0}));
    REQUIRE(subspace_sum(Subspace::spanned_by(f2, {1, 0}), Subspace::spanned_by(f2, {0, 1})) ==
            Subspace::full(f2, 2));

    REQUIRE_THROWS_AS(subspace_sum(e1, a), std::invalid_argument);
}

TEST_CASE("orthogonal complement is an involution, exhaustive over F_2^4") {
    auto f2 = make_field(2);
    int seen = 0;
    for (int d = 0; d <= 4; ++d)
        for_each_subspace(f2, 4, d, [&](const Subspace& S) {
            REQUIRE(S.orthogonal().orthogonal() == S);
            REQUIRE(S.orthogonal().dim() == 4 - S.dim());
            ++seen;
        });
    REQUIRE(seen == 67);
}

TEST_CASE("dimension formula for sum and intersection") {
    auto f3 = make_field(3);
    std::mt19937 rng(31337);
    std::uniform_int_distribution<unsigned> pick(0, 2);
    for (int t = 0; t < 100; ++t) {
        std::vector<GFVec> ra(2, GFVec(4)), rb(2, GFVec(4));
        for (auto& r : ra)
            for (auto& x : r) x = static_cast<GFElem>(pick(rng));
        for (auto& r : rb)
            for (auto& x : r) x = static_cast<GFElem>(pick(rng));
        Subspace A = Subspace::span(f3, 4, ra), B = Subspace::span(f3, 4, rb);
        REQUIRE(subspace_sum(A, B).dim() + subspace_intersect(A, B).dim() == A.dim() + B.dim());
        REQUIRE(subspace_sum(A, B).contains(A));
        REQUIRE(A.contains(subspace_intersect(A, B)));
    }
}

TEST_CASE("subspace containment") {
    auto f2 = make_field(2);
    Subspace S = Subspace::span(f2, 3, {{1, 1, 0}, {0, 0, 1}});
    REQUIRE(S.contains({1, 1, 1}));
    REQUIRE_FALSE(S.contains({1, 0, 0}));
    REQUIRE(Subspace::full(f2, 3).contains(S));
    REQUIRE(S.contains(Subspace::zero(f2, 3)));
}
