#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "singerlat/error.hpp"
#include "singerlat/report.hpp"

using namespace singerlat;

namespace {

struct Options {
    RunConfig cfg;
    std::optional<std::uint64_t> q;
    std::string grid = "default";
    std::string format = "table";
    std::string out;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--p", o.cfg.p, "characteristic");
    cmd->add_option("--a", o.cfg.a, "q = p^a");
    cmd->add_option("--q", o.q, "field size, overrides --p and --a");
    cmd->add_option("--d", o.cfg.d, "degree");
    cmd->add_option("--precision", o.cfg.precision, "series precision")->check(CLI::PositiveNumber);
    cmd->add_option("--radius", o.cfg.radius, "ball radius");
    cmd->add_option("--word-bound", o.cfg.word_bound, "word length bound");
    cmd->add_option("--seed", o.cfg.seed, "seed for sampled checks");
    cmd->add_option("--out", o.out, "output file instead of stdout");
}

// Turns --q into (p, a); the size cap is checked before factoring q.
void resolve_q(Options& o) {
    if (!o.q) return;
    const FieldParams fp = FieldParams::from_q(*o.q, o.cfg.d, o.cfg.size_cap);
    o.cfg.p = fp.p();
    o.cfg.a = fp.a();
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + o.out + " for writing");
    f << text;
    if (!f) throw std::runtime_error("write to " + o.out + " failed");
}

int cmd_verify(Options& o) {
    resolve_q(o);
    const Report rep = run_verify(o.cfg);
    if (o.format == "json") emit(o, report_to_json(rep).dump(2) + "\n");
    else emit(o, report_to_text(rep));
    if (const Claim* f = rep.first_failure()) {
        std::cerr << "first failing claim: " << f->id << "\n";
        return 1;
    }
    return 0;
}

int cmd_table(Options& o) {
    // Grid entries are independent; rows keep grid order.
    std::vector<std::future<TableRow>> jobs;
    for (auto [d, q] : parse_grid(o.grid)) {
        Options e = o;
        e.cfg.d = d;
        e.q = q;
        resolve_q(e);
        jobs.push_back(std::async(std::launch::async, [cfg = e.cfg] { return table_row(cfg); }));
    }
    std::vector<TableRow> rows;
    for (auto& j : jobs) rows.push_back(j.get());
    if (o.format == "json") emit(o, table_to_json(rows, o.cfg).dump(2) + "\n");
    else emit(o, table_to_text(rows));
    return 0;
}

int cmd_export_ball(Options& o) {
    resolve_q(o);
    const FieldParams fp = o.cfg.field();
    const Context ctx(fp, o.cfg.precision);
    const Ball b = ball(fp.K(), standard_vertex(fp.K(), fp.d(), 0), o.cfg.radius, o.cfg.ball_cap);
    // Colour by Gamma'_0 orbits when its generators can be found.
    std::optional<std::vector<std::size_t>> orbit;
    try {
        SearchConfig s = o.cfg.search();
        s.radius = 1;
        s.slack = 0;
        const auto sub = build_sublattices(ctx, discover_gamma_gens(ctx, s).gens, o.cfg.word_bound);
        orbit = orbit_partition(b, sub.gamma0_prime.elements());
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SearchExhausted && e.code() != ErrorCode::WordSearchExhausted) throw;
        std::cerr << "orbit colouring unavailable: " << e.what() << "\n";
    }
    const auto* col = orbit ? &*orbit : nullptr;
    if (o.format == "dot") emit(o, ball_to_dot(b, col));
    else emit(o, ball_to_json(b, fp, col) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Singer-cycle lattices in PGL_d over F_q((t))"};
    app.require_subcommand(1);
    Options o;

    auto* verify = app.add_subcommand("verify", "run the claim suite for one (p, a, d)");
    add_common(verify, o);
    verify->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));

    auto* table = app.add_subcommand("table", "covolume and index table over a grid");
    add_common(table, o);
    table->add_option("--grid", o.grid, "default or d:q,d:q,...");
    table->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));

    auto* exp = app.add_subcommand("export-ball", "write a ball around v0 with types and orbit colours");
    add_common(exp, o);
    exp->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot", "table"}));

    CLI11_PARSE(app, argc, argv);
    try {
        if (*verify) return cmd_verify(o);
        if (*table) return cmd_table(o);
        if (o.format == "table") o.format = "json";
        return cmd_export_ball(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
