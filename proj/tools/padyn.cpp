// padyn: minimal decomposition of p-adic power-series dynamics.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "padyn/verify.hpp"

namespace {

using namespace padyn;

constexpr int kExitUnresolved = 2;
constexpr int kExitPrecision = 3;

Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail(errc::invalid_input, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& ex) {
        fail(errc::invalid_input, path + ": " + ex.what());
    }
}

void emit(const std::string& text, const std::string& out)
{
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) fail(errc::invalid_input, "cannot write " + out);
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct Config {
    std::string ring_path;
    std::string map_path;
    int max_level = 0;
    int precision = 0;
    int level = 1;
    bool trust = false;
    std::string format = "json";
    std::string out;
    std::string alpha;
    std::string beta = "0";
    int depth = 4;
    std::uint64_t seed = 1;
    std::string inject = "none";
};

int cmd_ring(const Config& c)
{
    const auto r = parse_ring(read_json(c.ring_path), c.precision);
    emit(dump(to_json(*r)), c.out);
    return 0;
}

int cmd_decompose(const Config& c)
{
    const auto r = parse_ring(read_json(c.ring_path), c.precision);
    const auto phi = parse_map(read_json(c.map_path), r);
    const int L = c.max_level > 0 ? c.max_level : (std::min(r->precision(), phi.precision()) - r->e() - 2) / 2;
    std::clog << "decompose: " << ring_label(*r) << " N=" << r->precision() << " max-level=" << L << "\n";
    const auto t = decompose(phi, DecomposeOptions{L, c.trust});
    emit(c.format == "dot" ? to_dot(t) : dump(to_json(t)), c.out);
    std::clog << "decompose: " << t.nodes.size() << " nodes, " << t.count(VerdictKind::unresolved) << " unresolved\n";
    return t.has_unresolved() ? kExitUnresolved : 0;
}

int cmd_affine(const Config& c)
{
    const auto r = parse_ring(read_json(c.ring_path), c.precision);
    const auto rep = affine_classify(parse_literal(c.alpha), parse_literal(c.beta), r);
    emit(dump(to_json(rep, c.depth)), c.out);
    return 0;
}

int cmd_cycles(const Config& c)
{
    const auto r = parse_ring(read_json(c.ring_path), c.precision);
    const auto phi = parse_map(read_json(c.map_path), r);
    const auto g = find_cycles(induce(phi, c.level));
    const bool classified = required_precision(*r, c.level) <= std::min(r->precision(), phi.precision());
    if (!classified) std::clog << "cycles: precision too small for invariants at level " << c.level << "\n";
    const auto dphi = derivative(phi);
    Json j;
    j["ring"] = to_json(*r);
    j["map"] = to_json(phi);
    j["level"] = c.level;
    Json cyc = Json::array();
    for (const auto& cy : g.cycles) {
        std::optional<CycleInvariants> inv;
        std::optional<Classification> cls;
        if (classified) {
            inv = invariants(phi, dphi, cy);
            cls = classify(*inv);
        }
        cyc.push_back(cycle_json(*r, cy, cls, inv));
    }
    j["cycles"] = std::move(cyc);
    j["tail_points"] = g.tail_count();
    emit(dump(j), c.out);
    return 0;
}

int cmd_verify(const Config& c)
{
    VerifyOptions opt;
    opt.seed = c.seed;
    opt.inject = c.inject;
    if (c.precision > 0) opt.precision = c.precision;
    const auto res = run_verify(verify_rings(opt.precision), opt);
    const Json j = to_json(res, opt);
    for (const auto& pr : res)
        if (!pr.passed()) std::clog << "verify: " << pr.name << " [" << pr.ring << "] failed: " << pr.failure->detail << "\n";
    emit(dump(j), c.out);
    return j["ok"].get<bool>() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Minimal decomposition of power-series dynamics on the integers of a p-adic field"};
    app.require_subcommand(1);
    Config c;

    auto add_ring = [&](CLI::App* s) {
        s->add_option("--ring", c.ring_path, "Ring descriptor JSON file")->required()->check(CLI::ExistingFile);
        s->add_option("--precision", c.precision, "Override the ring's precision N (pi-adic digits)")
            ->check(CLI::PositiveNumber);
    };
    auto add_out = [&](CLI::App* s) { s->add_option("--out", c.out, "Write the report here instead of stdout"); };

    auto* ring = app.add_subcommand("ring", "Validate a ring descriptor and print its normalized form");
    add_ring(ring);
    add_out(ring);

    auto* dec = app.add_subcommand("decompose", "Decompose O_K under a map into minimal components");
    add_ring(dec);
    dec->add_option("--map", c.map_path, "Map descriptor JSON file")->required()->check(CLI::ExistingFile);
    dec->add_option("--max-level", c.max_level, "Deepest level analysed (default (min(N, map precision) - e - 2) / 2)")
        ->check(CLI::PositiveNumber);
    dec->add_flag("--trust-predictions", c.trust, "Skip the one-level lifting check of each prediction");
    dec->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "dot"}));
    add_out(dec);

    auto* aff = app.add_subcommand("affine", "Closed-form decomposition of x -> alpha x + beta");
    add_ring(aff);
    aff->add_option("--alpha", c.alpha, "Multiplier: integer or JSON element literal")->required();
    aff->add_option("--beta", c.beta, "Translation: integer or JSON element literal");
    aff->add_option("--depth", c.depth, "Number of E-vector entries in E_head")->check(CLI::PositiveNumber);
    aff->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json"}));
    add_out(aff);

    auto* cyc = app.add_subcommand("cycles", "Cycles of the induced map on O_K / pi^n");
    add_ring(cyc);
    cyc->add_option("--map", c.map_path, "Map descriptor JSON file")->required()->check(CLI::ExistingFile);
    cyc->add_option("--level", c.level, "Level n")->check(CLI::NonNegativeNumber);
    add_out(cyc);

    auto* ver = app.add_subcommand("verify", "Run the seeded property suites");
    ver->add_option("--seed", c.seed, "Random seed");
    ver->add_option("--precision", c.precision, "Ring precision for the suites (default 16)")->check(CLI::PositiveNumber);
    ver->add_option("--inject", c.inject, "Fault injection")->check(CLI::IsMember({"none", "classify"}));
    add_out(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        return app.exit(ex) == 0 ? 0 : 1;
    }

    try {
        if (ring->parsed()) return cmd_ring(c);
        if (dec->parsed()) return cmd_decompose(c);
        if (aff->parsed()) return cmd_affine(c);
        if (cyc->parsed()) return cmd_cycles(c);
        return cmd_verify(c);
    } catch (const error& ex) {
        std::cerr << "padyn: " << ex.what() << "\n";
        return ex.code() == errc::precision_exhausted ? kExitPrecision : 1;
    } catch (const std::exception& ex) {
        std::cerr << "padyn: " << ex.what() << "\n";
        return 1;
    }
}
