#include <doctest.h>

#include "fewcoef/afe/report.hpp"
#include "fewcoef/cli/builtins.hpp"
#include "fewcoef/cli/cache.hpp"
#include "fewcoef/cli/commands.hpp"
#include "fewcoef/numerics/errors.hpp"

#include <filesystem>
#include <sstream>

using namespace fewcoef;
using mp::Real;

namespace {

std::string temp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("fewcoef_test_" + name);
    std::filesystem::remove_all(p);
    return p.string();
}

cli::RunConfig zeta_config() {
    cli::RunConfig c;
    c.instance = "zeta";
    c.digits = 20;
    c.cutoff = 60;
    return c;
}

}  // namespace

TEST_CASE("rational and complex parsing") {
    CHECK(cli::parse_rational("3") == 3);
    CHECK(cli::parse_rational("-2/5") == mpq_class(-2, 5));
    CHECK(cli::parse_rational("0.75") == mpq_class(3, 4));
    CHECK(cli::parse_rational("-1.5e-3") == mpq_class(-3, 2000));
    CHECK(cli::parse_rational(" 3/2 ") == mpq_class(3, 2));
    CHECK(cli::parse_rational("010") == 10);
    CHECK_THROWS_AS(cli::parse_rational("abc"), InputError);
    CHECK_THROWS_AS(cli::parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(cli::parse_rational(""), InputError);

    auto a = cli::parse_complex("1/2+10i");
    CHECK(a.first == mpq_class(1, 2));
    CHECK(a.second == 10);
    auto b = cli::parse_complex("0.5 - 3i");
    CHECK(b.first == mpq_class(1, 2));
    CHECK(b.second == -3);
    CHECK(cli::parse_complex("7i").second == 7);
    CHECK(cli::parse_complex("-i").second == -1);
    CHECK(cli::parse_complex("2").second == 0);
    CHECK(cli::parse_complex("1e-1+2e+1i").second == 20);
}

TEST_CASE("beta ranges are exact and inclusive") {
    auto r = cli::parse_range("-3/2:1/20:7/2");
    REQUIRE(r.size() == 101);
    CHECK(r.front() == mpq_class(-3, 2));
    CHECK(r.back() == mpq_class(7, 2));
    CHECK(r[50] == 1);
    CHECK(cli::parse_range("1:1:0").empty());
    CHECK_THROWS_AS(cli::parse_range("0:0:1"), InputError);
    CHECK_THROWS_AS(cli::parse_range("0:1"), InputError);
    CHECK(cli::parse_list("-1, 1/2,0.4").size() == 3);
    CHECK_THROWS_AS(cli::parse_index_list("2,3.5"), InputError);
}

TEST_CASE("config validation") {
    auto c = zeta_config();
    CHECK_NOTHROW(c.validate());
    c.digits = 2;
    CHECK_THROWS_AS(c.validate(), InputError);
    c = zeta_config();
    c.gauss_c = -1;
    CHECK_THROWS_AS(c.validate(), InputError);
    c = zeta_config();
    c.instance = "no-such-instance";
    CHECK_THROWS_AS(cli::build_instance(c, 128), InputError);
    c = zeta_config();
    c.symbols = {};
    std::ostringstream os;
    CHECK_THROWS_AS(cli::cmd_recover(c, os), InputError);
}

TEST_CASE("builtin instances") {
    auto c = zeta_config();
    c.known_through = 5;
    auto z = cli::build_instance(c, 128);
    CHECK(z.inst.coeffs[30].kind == lmodel::CoefficientEntry::Kind::known);
    CHECK(z.inst.coeffs[14].kind == lmodel::CoefficientEntry::Kind::unknown);
    CHECK(z.inst.coeffs[14].symbol == 14);

    c.instance = "delta";
    c.known_through = -1;
    auto d = cli::build_instance(c, 128);
    CHECK(d.inst.coeffs.symbols().size() == 59);
    CHECK(d.inst.fe.degree == 2);

    c.instance = "upsilon20-stan";
    c.cutoff = 200;
    auto u = cli::build_instance(c, 128);
    CHECK(u.inst.fe.degree == 5);
    CHECK_FALSE(u.notes.empty());
    CHECK(u.inst.coeffs[83].kind == lmodel::CoefficientEntry::Kind::unknown);
    CHECK(u.fingerprint != d.fingerprint);
}

TEST_CASE("evaluation text form round trips exactly") {
    auto c = zeta_config();
    c.instance = "delta";
    c.s_im = 6;
    c.known_through = 7;
    c.betas = {mpq_class(1, 4)};
    c.gauss_c = mpq_class(1, 100);
    c.center = 6;
    auto b = cli::build_instance(c, 200);
    auto e = cli::run_evaluations(c, b).front();
    std::stringstream ss;
    afe::write_evaluation(ss, e);
    auto r = afe::read_evaluation(ss);
    CHECK(r.known_part == e.known_part);
    CHECK(r.known_part.bits() == e.known_part.bits());
    CHECK(r.s.im == e.s.im);
    CHECK(r.g.c == e.g.c);
    CHECK(r.tail_bound == e.tail_bound);
    CHECK(r.rounding_bound == e.rounding_bound);
    CHECK(r.last_computed == e.last_computed);
    CHECK(r.plan.bits == e.plan.bits);
    REQUIRE(r.delta.size() == e.delta.size());
    for (size_t n = 0; n < e.delta.size(); ++n) CHECK(r.delta[n] == e.delta[n]);
    REQUIRE(r.deltas.size() == e.deltas.size());
    for (const auto& [q, v] : e.deltas) CHECK(r.deltas.at(q) == v);
    CHECK(afe::error_l1_index(r, b.inst.coeffs) == afe::error_l1_index(e, b.inst.coeffs));

    std::stringstream bad("evaluation 1\n");
    CHECK_THROWS_AS(afe::read_evaluation(bad), InputError);
}

TEST_CASE("cache stores, reloads and rejects mismatched keys") {
    auto dir = temp_dir("cache");
    auto c = zeta_config();
    c.cache_dir = dir;
    c.betas = {mpq_class(0), mpq_class(1, 2)};
    auto b = cli::build_instance(c, 150);
    auto first = cli::run_evaluations(c, b);
    cli::EvalCache cache(dir);
    auto key = cli::evaluation_key(c, b, mpq_class(1, 2));
    auto hit = cache.load("zeta", key);
    REQUIRE(hit.has_value());
    CHECK(hit->known_part == first[1].known_part);
    CHECK_FALSE(cache.load("zeta", key + "x").has_value());

    // a file whose key line disagrees is a miss
    std::filesystem::copy_file(cache.path("zeta", key), cache.path("zeta", key + "y"));
    CHECK_FALSE(cache.load("zeta", key + "y").has_value());

    auto again = cli::run_evaluations(c, b);
    CHECK(again[0].known_part == first[0].known_part);
    int leftovers = 0;
    for (const auto& f : std::filesystem::recursive_directory_iterator(dir))
        if (f.path().string().find(".tmp") != std::string::npos) ++leftovers;
    CHECK(leftovers == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("commands: eval, scan, ls, lp") {
    auto c = zeta_config();
    std::ostringstream ev;
    cli::cmd_eval(c, ev);
    CHECK(ev.str().find("# fewcoef ") == 0);
    CHECK(ev.str().find("Z = -1.46035450880958681") != std::string::npos);

    std::ostringstream empty;
    cli::cmd_scan(c, empty);
    CHECK(empty.str().substr(empty.str().rfind('#')).find("\nbeta,log10_abs_value,log10_error\n") != std::string::npos);

    c.s_im = 10;
    c.known_through = 7;
    c.betas = {mpq_class(0), mpq_class(1, 4), mpq_class(1, 2)};
    std::ostringstream scan1, scan2;
    cli::cmd_scan(c, scan1);
    cli::cmd_scan(c, scan2);
    CHECK(scan1.str() == scan2.str());
    CHECK(scan1.str().find("\n1/4,") != std::string::npos);

    std::ostringstream ls, curve, lp;
    cli::cmd_ls(c, ls);
    CHECK(ls.str().find("weights (beta, c):") != std::string::npos);
    c.curve = true;
    cli::cmd_ls(c, curve);
    CHECK(curve.str().find("\n3,") != std::string::npos);
    c.curve = false;
    c.betas = {mpq_class(1, 4)};
    cli::cmd_lp(c, lp);
    CHECK(lp.str().find("halfwidth") != std::string::npos);
}

TEST_CASE("log10 text") {
    mp::ScopedBits g(128);
    CHECK(cli::log10_text(Real(1000)) == "3.000000");
    CHECK(cli::log10_text(Real(0)) == "-inf");
    CHECK(cli::log10_text(mp::pow2(-10000, 128)) == "-3010.299957");
}
