#include "doctest.h"
#include "singerlat/error.hpp"
#include "singerlat/report.hpp"

using namespace singerlat;

namespace {

RunConfig config(std::uint32_t p, std::uint32_t a, std::uint32_t d) {
    RunConfig c;
    c.p = p;
    c.a = a;
    c.d = d;
    return c;
}

}  // namespace

TEST_CASE("grid parsing") {
    CHECK(parse_grid("default") == default_grid());
    CHECK(parse_grid("") == default_grid());
    const auto g = parse_grid("3:2,4:3");
    REQUIRE(g.size() == 2);
    CHECK(g[0] == std::pair<unsigned, std::uint64_t>{3, 2});
    CHECK(g[1] == std::pair<unsigned, std::uint64_t>{4, 3});
    CHECK_THROWS_AS(parse_grid("3-2"), Error);
    CHECK_THROWS_AS(parse_grid("x:2"), Error);
}

TEST_CASE("config validation happens before any computation") {
    CHECK_THROWS_AS(config(4, 1, 3).field(), Error);  // 4 is not prime
    CHECK_THROWS_AS(config(2, 0, 3).field(), Error);
    CHECK_THROWS_AS(config(2, 1, 1).field(), Error);
    try {
        (void)FieldParams::from_q(9999, 3);
        FAIL("9999 accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SizeCapExceeded);
    }
    RunConfig big = config(7, 4, 3);  // q^d = 7^12
    try {
        (void)big.field();
        FAIL("7^12 accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SizeCapExceeded);
    }
}

TEST_CASE("rational formatting") {
    CHECK(rational_string(Rational(3, 7)) == "3/7");
    CHECK(rational_string(Rational(4, 2)) == "2");
}

TEST_CASE("table rows for d = 3") {
    // Oracle values from the closed forms in q, with |S| = (q^3-1)/(q-1).
    const TableRow r2 = table_row(config(2, 1, 3));
    CHECK(r2.s_order == 7);
    CHECK(r2.h_order == 21);
    CHECK(r2.h_psl == 21);
    CHECK(r2.index == 1);
    REQUIRE(r2.cov_prime);
    REQUIRE(r2.cov0);
    CHECK(*r2.cov_prime == Rational(3, 7));
    CHECK(*r2.cov0 == Rational(1, 7));
    CHECK(r2.status == "measured");

    const TableRow r3 = table_row(config(3, 1, 3));
    CHECK(r3.s_order == 13);
    CHECK(r3.h_order == 39);
    CHECK(r3.h_psl == 13);
    CHECK(r3.index == 3);
    REQUIRE(r3.cov_prime);
    REQUIRE(r3.cov0);
    CHECK(*r3.cov_prime == Rational(3, 13));
    CHECK(*r3.cov0 == Rational(1, 13));
    REQUIRE(r3.cov_gamma1);
    CHECK(*r3.cov_gamma1 == Rational(1, 8));
}

TEST_CASE("table row for (4,2) uses measured stabiliser orders") {
    const TableRow r = table_row(config(2, 1, 4));
    CHECK(r.s_order == 15);
    CHECK(r.h_order == 60);
    CHECK(r.h_psl == 15);
    CHECK(r.index == 4);
    CHECK(!r.cov_gamma1);
    REQUIRE(r.cov_prime);
    CHECK(*r.cov_prime == Rational(4, 15));
}

TEST_CASE("verify at (3,2) passes and is deterministic") {
    RunConfig c = config(2, 1, 3);
    const Report a = run_verify(c);
    CHECK(a.ok());
    CHECK(a.first_failure() == nullptr);
    const std::string ja = report_to_json(a).dump();
    const std::string jb = report_to_json(run_verify(c)).dump();
    CHECK(ja == jb);

    const auto j = report_to_json(a);
    CHECK(j["schema"] == "singerlat.report");
    CHECK(j["schema_version"] == kReportSchemaVersion);
    CHECK(j["config"]["p"] == 2);
    CHECK(j["ok"] == true);
    CHECK(!j.contains("first_failure"));
    bool saw_cov = false;
    for (const auto& cl : j["claims"]) {
        CHECK(cl["status"] != "fail");
        if (cl["id"] == "lattgrp.covolume") {
            saw_cov = true;
            CHECK(cl["certificate"].dump().find("3/7") != std::string::npos);
            CHECK(cl["certificate"].dump().find("1/7") != std::string::npos);
        }
    }
    CHECK(saw_cov);
    CHECK(report_to_text(a).find("all certifiable claims pass") != std::string::npos);
}

TEST_CASE("a failing claim is reported first") {
    Report r;
    r.config = config(2, 1, 3);
    r.claims.push_back({"a", Status::Pass, "", {}});
    r.claims.push_back({"b", Status::Unverified, "", {}});
    r.claims.push_back({"c", Status::Fail, "", {}});
    r.claims.push_back({"d", Status::Fail, "", {}});
    CHECK(!r.ok());
    REQUIRE(r.first_failure());
    CHECK(r.first_failure()->id == "c");
    CHECK(report_to_json(r)["first_failure"] == "c");
    CHECK(report_to_text(r).find("first failure: c") != std::string::npos);
}

TEST_CASE("individual checks at small parameters") {
    const FieldParams fp = FieldParams::from_q(2, 3);
    const Context ctx(fp);
    CHECK(check_field_axioms(fp, 4096, 1).ok);
    CHECK(check_norm_equation(ctx, 24).ok);
    CHECK(check_det_identity(ctx, 512, 1).ok);
    CHECK(check_h_structure(ctx).ok);
    CHECK(check_h_psl(ctx).ok);
    CHECK(check_singer(fp).ok);
}
