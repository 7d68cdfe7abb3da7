#include "torbun/lattice.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace torbun;

namespace {

IntMat mat(std::initializer_list<std::initializer_list<int>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows.begin()->size()) : 0;
    IntMat m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (int v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

void check_snf_contract(const IntMat& a) {
    SnfResult s = snf(a);
    REQUIRE(s.u * a * s.v == s.d);
    REQUIRE(boost::multiprecision::abs(oracle::int_det(s.u)) == 1);
    REQUIRE(boost::multiprecision::abs(oracle::int_det(s.v)) == 1);
    int n = std::min(a.rows(), a.cols());
    for (int i = 0; i < s.d.rows(); ++i)
        for (int j = 0; j < s.d.cols(); ++j)
            if (i != j) REQUIRE(s.d(i, j) == 0);
    for (int i = 0; i < n; ++i) REQUIRE(s.d(i, i) >= 0);
    for (int i = 0; i + 1 < n; ++i) {
        if (s.d(i, i) == 0) REQUIRE(s.d(i + 1, i + 1) == 0);
        else REQUIRE(s.d(i + 1, i + 1) % s.d(i, i) == 0);
    }
    std::vector<Int> want = oracle::snf_diagonal_oracle(a);
    for (int i = 0; i < n; ++i) REQUIRE(s.d(i, i) == want[i]);
}

}  // namespace

TEST_CASE("snf of the identity is the identity") {
    SnfResult s = snf(IntMat::identity(2));
    REQUIRE(s.d == IntMat::identity(2));
    check_snf_contract(IntMat::identity(2));
}

TEST_CASE("snf frozen diagonals") {
    SnfResult a = snf(mat({{2, 0}, {0, 3}}));
    REQUIRE(a.d(0, 0) == 1);
    REQUIRE(a.d(1, 1) == 6);

    SnfResult b = snf(mat({{2, 4}, {6, 8}}));
    REQUIRE(b.d(0, 0) == 2);
    REQUIRE(b.d(1, 1) == 4);

    check_snf_contract(mat({{2, 0}, {0, 3}}));
    check_snf_contract(mat({{2, 4}, {6, 8}}));
}

TEST_CASE("snf rejects empty input") {
    REQUIRE_THROWS_AS(snf(IntMat(0, 3)), Error);
}

TEST_CASE("snf random contract, sizes up to 5x5") {
    auto g = oracle::seeded(20260814);
    for (int trial = 0; trial < 120; ++trial) {
        int r = 1 + static_cast<int>(trial % 5);
        int c = 1 + static_cast<int>((trial / 5) % 5);
        check_snf_contract(oracle::random_mat(g, r, c, -9, 9));
    }
}

TEST_CASE("is_saturated") {
    REQUIRE_FALSE(is_saturated(Sublattice(2, mat({{2, 0}}))));
    REQUIRE(is_saturated(Sublattice(2, mat({{1, 0}}))));
    REQUIRE(is_saturated(Sublattice(2, mat({{1, 1}}))));
    REQUIRE_THROWS_AS(is_saturated(Sublattice(2, mat({{1, 1}, {2, 2}}))), Error);
}

TEST_CASE("saturate examples") {
    Sublattice a = saturate(Sublattice(2, mat({{2, 0}})));
    REQUIRE(a.basis == mat({{1, 0}}));

    Sublattice b = saturate(Sublattice(2, mat({{1, 1}})));
    REQUIRE(b.basis == mat({{1, 1}}));

    Sublattice c = saturate(Sublattice(2, mat({{2, 4}, {6, 8}})));
    REQUIRE(c.rank() == 2);
    REQUIRE(is_saturated(c));
    REQUIRE(coordinates_in(c, {Int(1), Int(0)}).has_value());
    REQUIRE(coordinates_in(c, {Int(0), Int(1)}).has_value());
}

TEST_CASE("saturate is idempotent and contains the input") {
    auto g = oracle::seeded(77);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + trial % 3;
        int k = 1 + trial % n;
        IntMat b = oracle::random_mat(g, k, n, -6, 6);
        if (torbun::rank(to_rational(b)) != k) continue;
        Sublattice s(n, b);
        Sublattice sat = saturate(s);
        REQUIRE(is_saturated(sat));
        REQUIRE(sat.rank() == k);
        REQUIRE(saturate(sat).basis == sat.basis);
        for (int i = 0; i < k; ++i)
            REQUIRE(coordinates_in(sat, b.row(i)).has_value());
    }
}

TEST_CASE("complement examples") {
    Sublattice a = complement(Sublattice(2, mat({{1, 0}})));
    REQUIRE(a.basis == mat({{0, 1}}));

    Sublattice s(2, mat({{1, 1}}));
    Sublattice b = complement(s);
    REQUIRE(b.rank() == 1);
    IntMat stacked(2, 2);
    stacked.set_row(0, s.basis.row(0));
    stacked.set_row(1, b.basis.row(0));
    REQUIRE(boost::multiprecision::abs(oracle::int_det(stacked)) == 1);

    Sublattice full = complement(Sublattice::full(3));
    REQUIRE(full.rank() == 0);

    REQUIRE_THROWS_AS(complement(Sublattice(2, mat({{2, 0}}))), Error);
}

TEST_CASE("complement of zero sublattice is everything") {
    Sublattice z = Sublattice::zero(2);
    Sublattice c = complement(z);
    REQUIRE(c.rank() == 2);
    REQUIRE(is_saturated(c));
}

TEST_CASE("stacking saturated basis with its complement is unimodular") {
    auto g = oracle::seeded(4242);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + trial % 4;
        int k = 1 + trial % n;
        IntMat b = oracle::random_mat(g, k, n, -5, 5);
        if (torbun::rank(to_rational(b)) != k) continue;
        Sublattice s = saturate(Sublattice(n, b));
        Sublattice c = complement(s);
        REQUIRE(s.rank() + c.rank() == n);
        IntMat stacked(n, n);
        for (int i = 0; i < s.rank(); ++i) stacked.set_row(i, s.basis.row(i));
        for (int i = 0; i < c.rank(); ++i) stacked.set_row(s.rank() + i, c.basis.row(i));
        REQUIRE(boost::multiprecision::abs(oracle::int_det(stacked)) == 1);
    }
}

TEST_CASE("int_kernel") {
    IntMat k = int_kernel(mat({{1, 1}}));
    REQUIRE(k.rows() == 1);
    REQUIRE(k(0, 0) + k(0, 1) == 0);
    REQUIRE(boost::multiprecision::abs(k(0, 0)) == 1);

    IntMat k2 = int_kernel(mat({{2, 4, 6}}));
    REQUIRE(k2.rows() == 2);
    for (int i = 0; i < 2; ++i)
        REQUIRE(2 * k2(i, 0) + 4 * k2(i, 1) + 6 * k2(i, 2) == 0);
    REQUIRE(is_saturated(Sublattice(3, k2)));

    IntMat none = int_kernel(IntMat::identity(2));
    REQUIRE(none.rows() == 0);
}

TEST_CASE("coordinates_in") {
    Sublattice s(2, mat({{1, 1}, {0, 1}}));
    auto x = coordinates_in(s, {Int(3), Int(5)});
    REQUIRE(x.has_value());
    REQUIRE((*x)[0] == 3);
    REQUIRE((*x)[1] == 2);

    Sublattice axis(2, mat({{2, 0}}));
    REQUIRE_FALSE(coordinates_in(axis, {Int(1), Int(0)}).has_value());
    auto y = coordinates_in(axis, {Int(4), Int(0)});
    REQUIRE(y.has_value());
    REQUIRE((*y)[0] == 2);
    REQUIRE_FALSE(coordinates_in(axis, {Int(0), Int(3)}).has_value());
}
