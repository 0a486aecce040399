#include <random>

#include "doctest.h"
#include "singerlat/error.hpp"
#include "singerlat/series.hpp"

using namespace singerlat;

namespace {

Series random_series(const FiniteField& f, std::mt19937& rng, int val, int prec) {
    std::uniform_int_distribution<Elem> coef(0, f.order() - 1);
    std::vector<Elem> c(prec - val);
    for (auto& x : c) x = coef(rng);
    if (c[0] == 0) c[0] = 1;
    return Series::from_coeffs(f, val, c, prec);
}

// Reference truncated product by the convolution definition.
std::vector<Elem> naive_product(const FiniteField& f, const std::vector<Elem>& a, const std::vector<Elem>& b,
                                std::size_t n) {
    std::vector<Elem> out(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (j < a.size() && i - j < b.size()) out[i] = f.add(out[i], f.mul(a[j], b[i - j]));
    return out;
}

}  // namespace

TEST_CASE("inverse of 1+Y") {
    auto f2 = FiniteField::prime(2);
    const Series s = Series::from_coeffs(*f2, 0, {1, 1}, 10);
    const Series inv = s.inverse(10);
    for (int n = 0; n < 10; ++n) CHECK(inv.coeff(n) == 1);
    CHECK((inv * s).equals_to_precision(Series::constant(*f2, 1)));

    auto f5 = FiniteField::prime(5);
    const Series t = Series::from_coeffs(*f5, 0, {1, 1}, 8);
    const Series ti = t.inverse(8);
    for (int n = 0; n < 8; ++n) CHECK(ti.coeff(n) == (n % 2 ? 4u : 1u));
}

TEST_CASE("monomials and valuations") {
    auto f3 = FiniteField::prime(3);
    const Series y = Series::monomial(*f3, 1, 1);
    const Series yi = Series::monomial(*f3, 1, -1);
    CHECK((y * yi) == Series::constant(*f3, 1));
    CHECK((y * yi).is_exact());
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> v(-4, 4);
        const int va = v(rng), vb = v(rng);
        const Series a = random_series(*f3, rng, va, va + 12);
        const Series b = random_series(*f3, rng, vb, vb + 12);
        CHECK((a * b).valuation() == va + vb);
        const Series s = a + b;
        if (!s.is_zero()) CHECK(s.valuation() >= std::min(va, vb));
        CHECK((Series::monomial(*f3, 1, 2) * a).valuation() == va + 2);
    }
}

TEST_CASE("products and inverses match the convolution definition") {
    auto f4 = FiniteField::extension(FiniteField::prime(2), {1, 1, 1});
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Series a = random_series(*f4, rng, 0, 15);
        const Series b = random_series(*f4, rng, 0, 12);
        const Series ab = a * b;
        CHECK(ab.absolute_precision() == 12);
        const auto ref = naive_product(*f4, a.raw_coeffs(), b.raw_coeffs(), 12);
        for (int n = 0; n < 12; ++n) CHECK(ab.coeff(n) == ref[n]);
        const Series ai = a.inverse(30);
        CHECK(ai.absolute_precision() == 15);
        CHECK((a * ai - Series::constant(*f4, 1)).is_zero());
    }
}

TEST_CASE("precision bookkeeping") {
    auto f5 = FiniteField::prime(5);
    const Series a = Series::from_coeffs(*f5, 0, {1, 2, 3}, 5);
    const Series b = Series::from_coeffs(*f5, 2, {1}, 4);
    CHECK((a + b).absolute_precision() == 4);
    CHECK((a * b).absolute_precision() == 4);  // relative 2 from b, valuation 2
    const Series exact = Series::from_coeffs(*f5, -1, {1, 4});
    CHECK((exact * exact).is_exact());
    CHECK((exact * a).absolute_precision() == 4);
    CHECK_THROWS_AS(a.coeff(5), Error);
    CHECK_THROWS_AS(Series(*f5).inverse(5), Error);
    CHECK_THROWS_AS(Series::zero(*f5, 3).inverse(5), Error);
    CHECK(Series::zero(*f5, 3).to_string() == "O(Y^3)");
    CHECK(Series::from_coeffs(*f5, -1, {2, 0, 1}, 4).to_string() == "2*Y^-1 + 1*Y^1 + O(Y^4)");
    auto q = Series::from_coeffs(*f5, 0, {1, 2, 1}).exact_quotient(Series::from_coeffs(*f5, 0, {1, 1}));
    REQUIRE(q);
    CHECK(*q == Series::from_coeffs(*f5, 0, {1, 1}));
    CHECK_FALSE(Series::from_coeffs(*f5, 0, {1, 0, 1}).exact_quotient(Series::from_coeffs(*f5, 0, {1, 1})));
}

TEST_CASE("dth_root") {
    auto f5 = FiniteField::prime(5);
    const Series s = Series::from_coeffs(*f5, 0, {1, 1}, 16);
    auto r = dth_root(s, 3);
    REQUIRE(r);
    CHECK(r->coeff(1) == 2);
    CHECK((r->pow(3) - s).is_zero());

    // exact power
    const Series base = Series::from_coeffs(*f5, 0, {1, 1});
    auto e = dth_root(base.pow(4), 4);
    REQUIRE(e);
    CHECK(*e == base);

    // characteristic p: 1+Y has no p-th root
    for (unsigned p : {2u, 3u, 5u}) {
        auto fp = FiniteField::prime(p);
        CHECK_FALSE(dth_root(Series::from_coeffs(*fp, 0, {1, 1}, 12), p));
        auto sq = dth_root(Series::from_coeffs(*fp, 0, {1, 0, 1}, 12).pow(p), p);
        REQUIRE(sq);
    }

    // random roots verified by powering
    std::mt19937 rng(3);
    auto f7 = FiniteField::prime(7);
    for (unsigned m : {2u, 3u, 6u, 7u, 14u}) {
        for (int trial = 0; trial < 20; ++trial) {
            const Series x = random_series(*f7, rng, 0, 20);
            const Series target = x.pow(m);
            auto root = dth_root(target, m);
            REQUIRE(root);
            CHECK((root->pow(m) - target).is_zero());
        }
    }
}

TEST_CASE("NoRoot answers agree with exhaustive search at tiny precision") {
    for (unsigned q : {2u, 3u, 4u}) {
        auto f = q == 4 ? FiniteField::extension(FiniteField::prime(2), {1, 1, 1}) : FiniteField::prime(q);
        const int prec = 4;
        std::uint64_t total = 1;
        for (int i = 0; i < prec; ++i) total *= q;
        for (unsigned m : {2u, 3u, 4u}) {
            // Every unit s at precision 4; a root exists iff some truncated candidate powers to s.
            std::vector<bool> is_power(total, false);
            auto code_of = [&](const Series& s) {
                std::uint64_t c = 0;
                for (int n = prec - 1; n >= 0; --n) c = c * q + s.coeff(n);
                return c;
            };
            auto series_of = [&](std::uint64_t code) {
                std::vector<Elem> c(prec);
                for (int n = 0; n < prec; ++n) {
                    c[n] = static_cast<Elem>(code % q);
                    code /= q;
                }
                return Series::from_coeffs(*f, 0, c, prec);
            };
            for (std::uint64_t code = 0; code < total; ++code) {
                const Series x = series_of(code);
                if (x.is_zero() || x.valuation() != 0) continue;
                is_power[code_of(x.pow(m))] = true;
            }
            for (std::uint64_t code = 0; code < total; ++code) {
                const Series s = series_of(code);
                if (s.is_zero() || s.valuation() != 0) continue;
                auto r = dth_root(s, m);
                CAPTURE(q);
                CAPTURE(m);
                CAPTURE(s.to_string());
                CHECK(r.has_value() == is_power[code]);
                if (r) CHECK((r->pow(m) - s).is_zero());
            }
        }
    }
}

TEST_CASE("norm equation solutions") {
    const std::vector<std::pair<std::uint64_t, unsigned>> grid = {
        {2, 2}, {2, 3}, {3, 3}, {4, 3}, {5, 3}, {2, 4}, {3, 4}, {3, 2}, {4, 2}, {5, 2}, {2, 6}, {9, 3}, {3, 6}};
    for (auto [q, d] : grid) {
        const auto fp = FieldParams::from_q(q, d);
        const Series x = solve_norm_unit(fp, 24);
        CAPTURE(q);
        CAPTURE(d);
        CHECK(x.absolute_precision() == 24);
        CHECK(x.coeff(0) == 1);
        CHECK(fp.trace(x.coeff(1)) == 1);
        const Series n = series_norm(fp, x);
        CHECK((n - Series::from_coeffs(fp.E(), 0, {1, 1})).is_zero());
    }
    // gcd(p, d) = 1 gives coefficients in K.
    const auto f8 = FieldParams::from_q(2, 3);
    const Series x = solve_norm_unit(f8, 24);
    CHECK(x.coeff(1) == 1);
    for (Elem c : x.raw_coeffs()) CHECK(c < f8.q());
    // (q=4,d=2): x_1 solves T(x_1) = 1 in F_16 / F_4.
    const auto f16 = FieldParams::from_q(4, 2);
    CHECK(f16.trace(solve_norm_unit(f16, 4).coeff(1)) == 1);
}
