#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "singerlat/lattgrp.hpp"

namespace singerlat {

inline constexpr int kReportSchemaVersion = 1;

struct RunConfig {
    std::uint32_t p = 2, a = 1, d = 3;
    int precision = kDefaultPrecision;
    unsigned radius = 2, slack = 1, word_bound = kDefaultWordBound;
    std::size_t ball_cap = kDefaultBallCap;
    std::uint64_t size_cap = kDefaultSizeCap;
    std::uint64_t seed = 1;

    // Validates the parameters and the size cap before any table is built.
    FieldParams field() const;
    SearchConfig search() const;
    nlohmann::json to_json() const;
};

enum class Status { Pass, Fail, Unverified, Info };
const char* status_name(Status s);

struct Claim {
    std::string id;
    Status status = Status::Pass;
    std::string summary;
    nlohmann::json certificate;
};

struct Report {
    RunConfig config;
    std::vector<Claim> claims;
    bool ok() const;  // no claim failed
    const Claim* first_failure() const;
};

// Individual checks, shared by the report and the test drivers.
struct CheckResult {
    bool ok = true;
    nlohmann::json detail;
};
// Frobenius and norm/trace identities on E; exhaustive over pairs when
// q^d <= exhaustive_limit, otherwise sampled.
CheckResult check_field_axioms(const FieldParams& fp, std::uint64_t exhaustive_limit, std::uint64_t seed);
CheckResult check_norm_equation(const Context& ctx, int prec);
// det(z Psi(a tau^k)) against the closed form; all (a, k) when q^d <= limit.
CheckResult check_det_identity(const Context& ctx, std::uint64_t exhaustive_limit, std::uint64_t seed);
// H closed of order d |S|, and H cap Gamma = 1.
CheckResult check_h_structure(const Context& ctx);
// |H cap PSL| against the closed form and the index.
CheckResult check_h_psl(const Context& ctx);
CheckResult check_singer(const FieldParams& fp);

// Full claim suite for one (p, a, d).
Report run_verify(const RunConfig& cfg);
nlohmann::json report_to_json(const Report& r);
std::string report_to_text(const Report& r);

struct TableRow {
    unsigned d = 0;
    std::uint64_t q = 0, p = 0;
    std::uint64_t s_order = 0, h_order = 0, h_psl = 0, index = 0;
    std::optional<Rational> cov_prime, cov0;  // from measured stabiliser orders
    std::optional<Rational> cov_gamma1;       // hypothetical, d = 3 only
    std::string status;                       // measured or unverified
};

TableRow table_row(const RunConfig& cfg);
std::vector<std::pair<unsigned, std::uint64_t>> default_grid();  // (d, q)
// "default" or a comma list of d:q pairs.
std::vector<std::pair<unsigned, std::uint64_t>> parse_grid(const std::string& text);
std::string rational_string(const Rational& r);
nlohmann::json table_to_json(const std::vector<TableRow>& rows, const RunConfig& cfg);
std::string table_to_text(const std::vector<TableRow>& rows);

}  // namespace singerlat
