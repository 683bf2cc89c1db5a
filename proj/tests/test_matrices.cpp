#include <cmath>
#include <numbers>

#include "copos/rng.hpp"
#include "copos/s_family.hpp"
#include "copos/sym_matrix.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace copos;

namespace {

constexpr double kPi = std::numbers::pi;

ThetaVector random_theta(Rng& rng, double sum_target) {
    std::array<double, 5> u{};
    double s = 0.0;
    for (double& v : u) {
        v = rng.uniform(0.05, 1.0);
        s += v;
    }
    for (double& v : u) v *= sum_target / s;
    return ThetaVector(u);
}

} // namespace

TEST_CASE("SymMatrix basics") {
    SymMatrix m(3);
    m.set(0, 2, 4.5);
    CHECK(m(2, 0) == 4.5);
    CHECK(m(0, 2) == 4.5);
    m.set(2, 0, -1.0);
    CHECK(m(0, 2) == -1.0);

    auto a = SymMatrix::from_rows({{1.0, 2.0}, {2.0, 3.0}});
    CHECK(a(0, 1) == 2.0);
    CHECK_THROWS_AS(SymMatrix::from_rows({{1.0, 2.0}, {2.5, 3.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SymMatrix(0), std::invalid_argument);

    auto b = a.without_index(0);
    CHECK(b.order() == 1);
    CHECK(b(0, 0) == 3.0);

    std::vector<double> x{1.0, 2.0};
    CHECK(a.quad_form(x) == doctest::Approx(1.0 + 2.0 * 2.0 * 2.0 + 3.0 * 4.0));
}

TEST_CASE("apply_permutation relabels consistently") {
    auto a = SymMatrix::from_rows({{1, 2, 3}, {2, 4, 5}, {3, 5, 6}});
    std::vector<int> perm{2, 0, 1};
    auto b = apply_permutation(a, perm);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(b(i, j) == a(perm[i], perm[j]));
}

TEST_CASE("ThetaVector validation") {
    CHECK_THROWS_AS(ThetaVector(-0.1, 0, 0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(ThetaVector(1.0, 1.0, 1.0, 0.2, 0.1), std::invalid_argument);
    // Stored raw: a sum within the construction slack is kept as given.
    ThetaVector t(kPi - 1e-13, 0, 0, 0, 0);
    CHECK(t[0] == kPi - 1e-13);
}

TEST_CASE("build_s: Horn matrix at theta = 0") {
    const auto h = build_s(ThetaVector(0, 0, 0, 0, 0));
    const auto expected = SymMatrix::from_rows({{1, -1, 1, 1, -1},
                                                {-1, 1, -1, 1, 1},
                                                {1, -1, 1, -1, 1},
                                                {1, 1, -1, 1, -1},
                                                {-1, 1, 1, -1, 1}});
    CHECK(max_abs_diff(h, expected) == 0.0);
    CHECK(max_abs_diff(horn_matrix(), expected) == 0.0);
}

TEST_CASE("build_s: uniform pi/5 angles against scalar cosine") {
    const auto s = build_s(ThetaVector(kPi / 5, kPi / 5, kPi / 5, kPi / 5, kPi / 5));
    for (int i = 0; i < 5; ++i) {
        CHECK(s(i, i) == 1.0);
        CHECK(s(i, cyc(i, 1)) == doctest::Approx(-std::cos(kPi / 5)).epsilon(1e-15));
        CHECK(s(i, cyc(i, 2)) == doctest::Approx(std::cos(2 * kPi / 5)).epsilon(1e-15));
    }
}

TEST_CASE("build_s: cosine values at 0, pi/2, pi") {
    const auto s = build_s(ThetaVector(kPi / 2, 0, 0, 0, kPi / 2));
    CHECK(s(0, 1) == doctest::Approx(0.0).epsilon(1e-15));  // -cos(pi/2)
    CHECK(s(0, 4) == doctest::Approx(0.0).epsilon(1e-15));  // -cos(theta_5)
    CHECK(s(0, 2) == doctest::Approx(0.0).epsilon(1e-15));  // cos(theta_1 + theta_2)
    CHECK(s(0, 3) == doctest::Approx(0.0).epsilon(1e-15));  // cos(theta_4 + theta_5) = cos(pi/2)
    CHECK(s(1, 4) == doctest::Approx(-1.0));                // cos(theta_5 + theta_1) = cos(pi)
    CHECK(s(1, 3) == doctest::Approx(1.0));                 // cos(theta_2 + theta_3) = cos(0)
}

TEST_CASE("build_s rejects invalid parameters") {
    CHECK_THROWS(build_s(ThetaVector(std::array<double, 5>{2, 2, 0, 0, 0})));
}

TEST_CASE("Horn form zero set by direct evaluation") {
    const auto h = horn_matrix();
    // Consecutive-pair points are zeros of the form.
    for (int i = 0; i < 5; ++i) {
        std::vector<double> x(5, 0.0);
        x[i] = 0.5;
        x[cyc(i, 1)] = 0.5;
        CHECK(h.quad_form(x) == doctest::Approx(0.0).epsilon(1e-15));
    }
    // (1,1,0,0,1)/3 is not a zero: the form evaluates to 1/9 there.
    std::vector<double> y{1.0 / 3, 1.0 / 3, 0.0, 0.0, 1.0 / 3};
    CHECK(h.quad_form(y) == doctest::Approx(1.0 / 9).epsilon(1e-12));
}

TEST_CASE("rank2_factors: uniform pi/5 display values") {
    const ThetaVector t(kPi / 5, kPi / 5, kPi / 5, kPi / 5, kPi / 5);
    const auto f = rank2_factors(t);
    CHECK(f.c[0] == 1.0);
    CHECK(f.s[0] == 0.0);
    CHECK(f.c[1] == doctest::Approx(-std::cos(kPi / 5)));
    CHECK(f.c[2] == doctest::Approx(std::cos(2 * kPi / 5)));
    CHECK(f.c[3] == doctest::Approx(std::cos(2 * kPi / 5)));
    CHECK(f.c[4] == doctest::Approx(-std::cos(kPi / 5)));
    CHECK(f.s[1] == doctest::Approx(std::sin(kPi / 5)));
    CHECK(f.s[2] == doctest::Approx(-std::sin(2 * kPi / 5)));
    CHECK(f.s[3] == doctest::Approx(std::sin(2 * kPi / 5)));
    CHECK(f.s[4] == doctest::Approx(-std::sin(kPi / 5)));
    CHECK(max_abs_diff(f.compose(), build_s(t)) <= 1e-12);
}

TEST_CASE("rank2_factors: degenerate angle (pi,0,0,0,0) gives rank one") {
    const ThetaVector t(kPi, 0, 0, 0, 0);
    const auto f = rank2_factors(t);
    CHECK(f.c[0] == doctest::Approx(1.0));
    CHECK(f.c[1] == doctest::Approx(1.0));
    CHECK(f.c[2] == doctest::Approx(-1.0));
    CHECK(f.c[3] == doctest::Approx(1.0));
    CHECK(f.c[4] == doctest::Approx(-1.0));
    for (int i = 0; i < 5; ++i) CHECK(std::abs(f.s[i]) <= 1e-15);
    CHECK(max_abs_diff(f.compose(), build_s(t)) <= 1e-12);
}

TEST_CASE("rank2_factors: generic sum-pi angles reproduce build_s") {
    const ThetaVector t(0.7, 0.5, 0.6, 0.8, kPi - 2.6);
    const auto f = rank2_factors(t);
    CHECK(max_abs_diff(f.compose(), build_s(t)) <= 1e-10);
}

TEST_CASE("rank2_factors rejects angle sums away from pi") {
    CHECK_THROWS_AS(rank2_factors(ThetaVector(0.1, 0.1, 0.1, 0.1, 0.1)), std::invalid_argument);
}

TEST_CASE("classify_s on the named examples") {
    CHECK(classify_s(ThetaVector(0, 0, 0, 0, 0)) == SFamilyClass::Horn);
    CHECK(classify_s(ThetaVector(0.1, 0.1, 0.1, 0.1, 0.1)) == SFamilyClass::Hildebrand);
    CHECK(classify_s(ThetaVector(0.3, 0, 0.2, 0.1, 0.1)) == SFamilyClass::NIrreducible);
    CHECK(classify_s(ThetaVector(1.0, 1.0, 0.5, 0.3, kPi - 2.8)) == SFamilyClass::PsdBoundary);
    // Boundary ties resolve toward the boundary class.
    CHECK(classify_s(ThetaVector(0.5, 0.5, 0.5, 0.5, kPi - 2.0 + 5e-13)) ==
          SFamilyClass::PsdBoundary);
    CHECK(classify_s(ThetaVector(0.1, 5e-13, 0.1, 0.1, 0.1)) == SFamilyClass::NIrreducible);
}

TEST_CASE("schur_complement closed forms") {
    const auto id5 = SymMatrix::identity(5);
    CHECK(max_abs_diff(schur_complement(id5, 0), SymMatrix::identity(4)) == 0.0);

    const double b = 0.37;
    const auto a2 = SymMatrix::from_rows({{1.0, b}, {b, 1.0}});
    const auto r = schur_complement(a2, 0);
    CHECK(r.order() == 1);
    CHECK(r(0, 0) == doctest::Approx(1.0 - b * b).epsilon(1e-15));

    CHECK_THROWS_AS(schur_complement(SymMatrix(3), 0), std::domain_error);
}

TEST_CASE("schur_complement of an S-family member against the inverse-block oracle") {
    const auto s = build_s(ThetaVector(0.2, 0.2, 0.2, 0.2, 0.2));
    const auto mine = schur_complement(s, 4);
    const auto ref = oracles::schur_via_inverse(s, 4);
    CHECK(max_abs_diff(mine, ref) <= 1e-10);
}

TEST_CASE("property: build_s outputs are unit-diagonal with entries in [-1,1]") {
    Rng rng(20260808);
    for (int trial = 0; trial < 10'000; ++trial) {
        const auto t = random_theta(rng, rng.uniform(0.0, 1.0) * kPi);
        const auto s = build_s(t);
        for (int i = 0; i < 5; ++i) {
            CHECK(s(i, i) == 1.0);
            for (int j = i + 1; j < 5; ++j) {
                CHECK(s(i, j) >= -1.0);
                CHECK(s(i, j) <= 1.0);
            }
        }
    }
}

TEST_CASE("property: sum-pi members are PSD of rank at most two") {
    Rng rng(77);
    for (int trial = 0; trial < 1'000; ++trial) {
        const auto t = random_theta(rng, kPi);
        const auto s = build_s(t);
        const auto f = rank2_factors(t);
        CHECK(max_abs_diff(f.compose(), s) <= 1e-10);
        CHECK(oracles::min_eigenvalue(s) >= -1e-9);
        CHECK(oracles::singular_value(s, 3) <= 1e-9);
    }
}

TEST_CASE("property: raising angles lowers the (i, i+2) cosine entries") {
    Rng rng(91);
    int kept = 0;
    while (kept < 1'000) {
        const auto t = random_theta(rng, rng.uniform(0.3, 0.9) * kPi);
        std::array<double, 5> up{};
        for (int i = 0; i < 5; ++i) up[i] = t[i] + rng.uniform(0.0, 0.25);
        bool ok = true;
        double sum = 0.0;
        for (double v : up) sum += v;
        if (sum > kPi) continue;
        for (int i = 0; i < 5; ++i)
            if (up[i] + up[cyc(i, 1)] > kPi) ok = false;
        if (!ok) continue;
        ++kept;
        const auto lo = build_s(t);
        const auto hi = build_s(ThetaVector(up));
        for (int i = 0; i < 5; ++i) CHECK(hi(i, cyc(i, 2)) <= lo(i, cyc(i, 2)) + 1e-14);
    }
}

TEST_CASE("property: classify_s partitions parameter space") {
    Rng rng(4242);
    for (int trial = 0; trial < 10'000; ++trial) {
        double target = rng.uniform(0.0, 1.0) * kPi;
        if (trial % 7 == 0) target = kPi;  // exercise the boundary band
        auto t = random_theta(rng, target);
        if (trial % 3 == 0) {
            auto v = t.values();
            v[rng.uniform_int(0, 4)] = 0.0;
            t = ThetaVector(v);
        }
        // Re-evaluate the class predicates independently, with boundary ties
        // resolved toward the boundary class.
        const bool zero = t.is_zero(1e-12);
        const bool at_pi = t.sum() >= kPi - 1e-12;
        const bool has_zero_comp = t.min_component() <= 1e-12;
        SFamilyClass expect;
        if (zero)
            expect = SFamilyClass::Horn;
        else if (at_pi)
            expect = SFamilyClass::PsdBoundary;
        else if (has_zero_comp)
            expect = SFamilyClass::NIrreducible;
        else
            expect = SFamilyClass::Hildebrand;
        CHECK(classify_s(t) == expect);
    }
}

TEST_CASE("property: schur_complement matches the inverse-block oracle") {
    Rng rng(1313);
    for (int trial = 0; trial < 1'000; ++trial) {
        const int n = rng.uniform_int(3, 6);
        // PSD plus noise, kept invertible by a diagonal shift.
        SymMatrix a(n);
        std::vector<double> col(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) {
            for (double& v : col) v = rng.uniform(-1.0, 1.0);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) a.add_at(i, j, col[i] * col[j]);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) a.add_at(i, j, 0.05 * rng.uniform(-1.0, 1.0));
        for (int i = 0; i < n; ++i) a.add_at(i, i, 0.75);
        const int k = rng.uniform_int(0, n - 1);
        const auto mine = schur_complement(a, k);
        const auto ref = oracles::schur_via_inverse(a, k);
        CHECK(max_abs_diff(mine, ref) <= 1e-12 * std::max(1.0, a.max_abs() * a.max_abs()));
    }
}
