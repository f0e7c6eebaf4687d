#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "qoac/invariants.hpp"

using namespace qoac;

namespace {
std::vector<int> w(std::initializer_list<int> v) { return std::vector<int>(v); }
Rational rat(long long n, long long d) { return Rational(n, d); }
}  // namespace

TEST_CASE("generalized weights oracle on anchor codes") {
    auto f2 = make_field(2);

    Code C = construct_cshk(f2, 2, 2, 1, 1, 1);
    REQUIRE(generalized_weights_oracle(C).a == w({1, 1, 2}));

    // Mat(V), dim V = r: weight i on the whole i-th m-block
    for (int r = 0; r <= 3; ++r) {
        Code A = mat_support(f2, coordinate_subspace(f2, 3, r), 3);
        WeightProfile p = generalized_weights_oracle(A);
        REQUIRE(static_cast<int>(p.a.size()) == 3 * r);
        for (int i = 1; i <= r; ++i)
            for (int pos = (i - 1) * 3 + 1; pos <= i * 3; ++pos) REQUIRE(p.a[pos - 1] == i);
    }

    // a_1 of a one-dimensional code equals the rank of its generator,
    // exhaustively over all nonzero 2x3 matrices over F_2
    for (unsigned bits = 1; bits < 64; ++bits) {
        Mat M(f2, 2, 3);
        for (int k = 0; k < 6; ++k)
            if (bits & (1u << k)) M.set(k / 3, k % 3, 1);
        Code line = Code::from_matrices({M});
        REQUIRE(generalized_weights_oracle(line).a[0] == rank(M));
    }
}

TEST_CASE("generalized weights closed form") {
    REQUIRE(generalized_weights_closed_form(1, 1, 2, 2).a == w({1, 1, 2}));
    REQUIRE(generalized_weights_closed_form(2, 1, 3, 3).a == w({1, 1, 1, 2, 2, 2, 3}));
    // s = 0, k = m: the full space, weight ceil(i/m)
    REQUIRE(generalized_weights_closed_form(0, 2, 2, 2).a == w({1, 1, 2, 2}));
    REQUIRE_THROWS_AS(generalized_weights_closed_form(0, 0, 2, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(generalized_weights_closed_form(3, 0, 2, 2), std::invalid_argument);
}

TEST_CASE("weights: closed form matches the oracle off the square row-support overlap") {
    // On square shapes with k > s, row-support anticodes give strictly
    // better intersections than the column-support family the block
    // formula accounts for, so agreement is only expected elsewhere.
    for (unsigned q : {2u, 3u}) {
        auto f = field_of_order(q);
        for (int n = 1; n <= 3; ++n)
            for (int m = n; m <= 3; ++m)
                for (int s = 0; s <= n; ++s)
                    for (int k = 0; k <= m; ++k) {
                        if (s * m + (n - s) * k == 0) continue;
                        if (n == m && k > s && k < m) continue;
                        Code C = construct_cshk(f, n, m, s, n - s, k);
                        REQUIRE(generalized_weights_closed_form(s, k, n, m) ==
                                generalized_weights_oracle(C));
                    }
    }
}

TEST_CASE("weights: documented divergence on square shapes with k > s") {
    // The code spanned by E11 and E21 in F_2^{2x2} is itself a row-support
    // optimal anticode of dimension 2, so the anticode search reaches
    // a_2 = 1; the block formula yields 2. Both values are pinned.
    auto f2 = make_field(2);
    Code C = construct_cshk(f2, 2, 2, 0, 2, 1);
    REQUIRE(generalized_weights_oracle(C).a == w({1, 1}));
    REQUIRE(generalized_weights_closed_form(0, 1, 2, 2).a == w({1, 2}));
}

TEST_CASE("weight profile properties") {
    auto f2 = make_field(2);
    for (int s = 0; s <= 2; ++s)
        for (int k = 0; k <= 3; ++k) {
            if (s == 0 && k == 0) continue;
            Code C = construct_cshk(f2, 2, 3, s, 2 - s, k);
            if (C.dim() == 0) continue;
            WeightProfile p = generalized_weights_oracle(C);
            for (std::size_t i = 1; i < p.a.size(); ++i) REQUIRE(p.a[i] >= p.a[i - 1]);
            REQUIRE(p.a.front() >= 1);
            REQUIRE(p.a.back() <= 2);
            // C contains Mat(<e_1..e_s>), so a_{im} = i for i <= s
            for (int i = 1; i <= s; ++i) REQUIRE(p.a[i * 3 - 1] == i);
        }
}

TEST_CASE("rank distribution oracle") {
    auto f2 = make_field(2);
    RankDistribution z = rank_distribution_oracle(Code::zero(f2, 2, 2));
    REQUIRE(z.counts == std::vector<BigInt>{1, 0, 0});

    REQUIRE(rank_distribution_oracle(Code::full(f2, 2, 2)).counts ==
            std::vector<BigInt>{1, 9, 6});

    REQUIRE(rank_distribution_oracle(construct_cshk(f2, 2, 2, 1, 1, 1)).counts ==
            std::vector<BigInt>{1, 5, 2});
}

TEST_CASE("rank distribution closed form") {
    RankDistribution d = rank_distribution_closed_form(1, 1, 2, 2, 2);
    REQUIRE(d.counts == std::vector<BigInt>{1, 5, 2});
    // k = 0: pure column band, counts are phi_q(s, m, r)
    RankDistribution band = rank_distribution_closed_form(2, 0, 3, 3, 2);
    for (int r = 0; r <= 3; ++r) REQUIRE(band.counts[r] == count_rank_matrices(2, 3, r, 2));
    // s = 0, k = m: the full space
    RankDistribution full = rank_distribution_closed_form(0, 3, 3, 3, 2);
    for (int r = 0; r <= 3; ++r) REQUIRE(full.counts[r] == count_rank_matrices(3, 3, r, 2));

    // q = 3 spot check against enumeration
    auto f3 = make_field(3);
    REQUIRE(rank_distribution_closed_form(1, 2, 2, 3, 3) ==
            rank_distribution_oracle(construct_cshk(f3, 2, 3, 1, 1, 2)));
}

TEST_CASE("extension-field enumeration matches the closed form") {
    // regression: the odometer step size is an index delta as a field
    // element, not always 1 (over F_4, 1+1 = 0)
    auto f4 = make_field(2, 2);
    Code C = construct_cshk(f4, 2, 2, 1, 1, 1);
    REQUIRE(rank_distribution_oracle(C).counts == std::vector<BigInt>{1, 27, 36});
    REQUIRE(rank_distribution_oracle(C) == rank_distribution_closed_form(1, 1, 2, 2, 4));
    REQUIRE(maxrk(C) == 2);
    REQUIRE(is_dually_qoac(C));

    std::set<GFVec> words;
    CodewordEnumerator en(C);
    while (auto M = en.next()) REQUIRE(words.insert(M->vectorize()).second);
    REQUIRE(words.size() == 64);

    auto f9 = make_field(3, 2);
    Code D = construct_cshk(f9, 2, 2, 1, 1, 1);
    REQUIRE(rank_distribution_oracle(D) == rank_distribution_closed_form(1, 1, 2, 2, 9));
}

TEST_CASE("rank distribution invariants on gallery codes") {
    auto f2 = make_field(2);
    for (const Code& C : {gallery_tied_diagonal(f2), construct_cshk(f2, 3, 3, 1, 2, 2),
                          gallery_hollow_block(f2, 2, 3, 1, 1)}) {
        RankDistribution d = rank_distribution_oracle(C);
        REQUIRE(d.counts[0] == 1);
        BigInt total = 0;
        for (const auto& c : d.counts) total += c;
        REQUIRE(total == codeword_count(C));
        const int mr = maxrk(C);
        for (int r = mr + 1; r < static_cast<int>(d.counts.size()); ++r)
            REQUIRE(d.counts[r] == 0);
    }
}

TEST_CASE("rank functions of the two q-polymatroids") {
    auto f2 = make_field(2);
    Code C = construct_cshk(f2, 2, 2, 1, 1, 1);

    REQUIRE(rho_col(C, Subspace::full(f2, 2)) == rat(3, 2));  // dim/m
    REQUIRE(rho_col(C, Subspace::zero(f2, 2)) == 0);
    REQUIRE(rho_row(C, Subspace::spanned_by(f2, {1, 0})) == 1);
    REQUIRE(rho_row(C, Subspace::full(f2, 2)) == rat(3, 2));  // dim/n

    REQUIRE_THROWS_AS(rho_col(C, Subspace::full(f2, 3)), std::invalid_argument);

    // closed forms agree with the definition for every subspace, q=2, n<=m<=2
    for (int n = 1; n <= 2; ++n)
        for (int m = n; m <= 2; ++m)
            for (int s = 0; s <= n; ++s)
                for (int h = 0; s + h <= n; ++h)
                    for (int k = 0; k <= m; ++k) {
                        Code X = (s + h == 0) ? Code::zero(f2, n, m)
                                              : construct_cshk(f2, n, m, s, h, k);
                        for (int d = 0; d <= n; ++d)
                            for_each_subspace(f2, n, d, [&](const Subspace& J) {
                                REQUIRE(rho_col_closed_form(s, h, k, n, m, J) == rho_col(X, J));
                            });
                        for (int d = 0; d <= m; ++d)
                            for_each_subspace(f2, m, d, [&](const Subspace& K) {
                                REQUIRE(rho_row_closed_form(s, h, k, n, m, K) == rho_row(X, K));
                            });
                    }
}

TEST_CASE("rank-function axioms hold for gallery codes") {
    auto f2 = make_field(2);
    for (const Code& C : {construct_cshk(f2, 2, 2, 1, 1, 1), gallery_hollow_block(f2, 2, 3, 1, 1),
                          construct_cshk(f2, 3, 3, 1, 2, 2)}) {
        for (PolymatroidSide side : {PolymatroidSide::Columns, PolymatroidSide::Rows}) {
            AxiomCheckResult res = verify_qpolymatroid_axioms(C, side);
            INFO(res.witness);
            REQUIRE(res.ok);
            REQUIRE(res.checks > 0);
        }
    }
}

TEST_CASE("axiom checker catches corrupted rank tables") {
    auto f2 = make_field(2);
    Code C = construct_cshk(f2, 2, 2, 1, 1, 1);

    // deflate the full-space value: some A strictly inside now has
    // rho(A) > rho(full), a monotonicity violation
    auto deflated = [&](const Subspace& S) {
        return S.dim() == 2 ? Rational(0) : rho_col(C, S);
    };
    AxiomCheckResult r1 = check_rank_axioms_exhaustive(f2, 2, deflated);
    REQUIRE_FALSE(r1.ok);
    REQUIRE(r1.witness.find("monotonicity") != std::string::npos);

    // inflate one value beyond its dimension bound
    auto inflated = [&](const Subspace& S) {
        return S.dim() == 1 ? Rational(5) : rho_col(C, S);
    };
    AxiomCheckResult r2 = check_rank_axioms_exhaustive(f2, 2, inflated);
    REQUIRE_FALSE(r2.ok);
    REQUIRE(r2.witness.find("bounds") != std::string::npos);

    // sampled mode finds gross corruption too
    AxiomCheckResult r3 = check_rank_axioms_sampled(f2, 2, inflated, 500, 42);
    REQUIRE_FALSE(r3.ok);

    // and passes the genuine rank function
    AxiomCheckResult r4 = verify_qpolymatroid_axioms(C, PolymatroidSide::Rows, false,
                                                     kDefaultSubspaceCap, 300, 7);
    REQUIRE(r4.ok);
    REQUIRE(r4.checks == 300);
}

TEST_CASE("qOAC recognition through the rank function") {
    auto f2 = make_field(2);
    REQUIRE(qoac_via_polymatroid(construct_cshk(f2, 2, 2, 1, 1, 1)));
    REQUIRE(qoac_via_polymatroid(gallery_hollow_block(f2, 2, 3, 1, 1)));

    Code MV = mat_support(f2, Subspace::spanned_by(f2, {1, 0}), 2);
    REQUIRE_THROWS_AS(qoac_via_polymatroid(MV), std::invalid_argument);  // m | dim

    // agreement with the enumeration predicate wherever defined
    for (int d = 0; d <= 6; ++d)
        for_each_subspace(f2, 6, d, [&](const Subspace& S) {
            Code C(f2, 2, 3, S);
            if (C.dim() == 0 || C.dim() % 3 == 0) return;
            REQUIRE(qoac_via_polymatroid(C) == is_qoac(C));
        });
}
