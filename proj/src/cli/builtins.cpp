#include "fewcoef/cli/builtins.hpp"

#include "fewcoef/cli/cache.hpp"
#include "fewcoef/forms/forms.hpp"
#include "fewcoef/numerics/errors.hpp"
#include "fewcoef/satake/satake.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fewcoef::cli {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

lmodel::CoefficientTable zeta_table(long cutoff) {
    lmodel::CoefficientTable t(cutoff, 1);
    for (long n = 2; n <= cutoff; ++n) t.set_known_exact(n, 1);
    return t;
}

lmodel::CoefficientTable read_coefficients(const std::string& path, int degree, long cutoff) {
    auto t = lmodel::all_unknown_table(cutoff, degree);
    std::istringstream in(slurp(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        long n = 0;
        std::string v;
        if (!(ls >> n)) continue;
        if (!(ls >> v) || n < 1) throw InputError(path + ":" + std::to_string(lineno) + ": expected 'n value'");
        if (n <= cutoff) t.set_known_exact(n, parse_rational(v));
    }
    return t;
}

BuiltInstance upsilon(const RunConfig& cfg, lmodel::Rho rho, long cutoff, mp::Bits bits) {
    BuiltInstance b;
    long kt = cfg.known_through >= 0 ? cfg.known_through : 79;
    std::string path = cfg.hecke_table.empty() ? default_hecke_table() : cfg.hecke_table;
    auto data = satake::read_hecke_table(path, 20);
    std::vector<satake::HeckeDatum> used;
    long covered = 1;
    bool complete = true;
    for (long p = 2; p <= kt && complete; ++p) {
        if (!lmodel::is_prime(p)) continue;
        auto it = std::find_if(data.begin(), data.end(), [p](const auto& d) { return d.p == p; });
        if (it == data.end()) {
            complete = false;
        } else {
            used.push_back(*it);
            covered = p;
        }
    }
    lmodel::CoefficientTable t;
    if (complete) {
        t = satake::coefficients_from_hecke(used, rho, cutoff, bits);
    } else {
        t = satake::pattern_table(rho, kt, cutoff);
        b.notes.push_back("eigenvalue table covers primes <= " + std::to_string(covered) + " only; known values " +
                          "unavailable, coefficients of the approximate functional equation are still exact");
    }
    b.inst = {std::string("upsilon20-") + lmodel::rho_name(rho), lmodel::fe_for(rho, 20), t};
    b.fingerprint = "kt=" + std::to_string(kt) + ";table=" + path + ";values=" + (t.values_available() ? "1" : "0");
    return b;
}

}  // namespace

std::vector<std::string> builtin_labels() {
    return {"zeta",        "delta",          "s24-f1",         "s24-f2",          "s24-f1-pow5",
            "s24-f2-pow5", "upsilon20-stan", "upsilon20-adj", "upsilon20-spin"};
}

std::string default_hecke_table() { return std::string(FEWCOEF_DATA_DIR) + "/upsilon20_hecke.tsv"; }

lmodel::CoefficientTable restrict_known(const lmodel::CoefficientTable& t, long known_through) {
    auto out = t;
    auto spf = lmodel::smallest_prime_factors(t.cutoff());
    for (long n = 2; n <= t.cutoff(); ++n) {
        long m = n, largest = 1;
        while (m > 1) {
            largest = std::max(largest, spf[m]);
            m /= spf[m];
        }
        if (largest > known_through) out.set_unknown(n, n);
    }
    return out;
}

BuiltInstance build_instance(const RunConfig& cfg, mp::Bits bits) {
    mp::ScopedBits g(bits);
    const std::string& label = cfg.instance;
    BuiltInstance b;
    long cutoff = cfg.cutoff;
    auto fp = [&](long kt) {
        return "kt=" + std::to_string(kt) + ";cutoff=" + std::to_string(cutoff);
    };
    if (label == "zeta") {
        if (!cutoff) cutoff = 400;
        long kt = cfg.known_through >= 0 ? cfg.known_through : cutoff;
        b.inst = {"zeta", lmodel::fe_zeta(), restrict_known(zeta_table(cutoff), kt)};
        b.fingerprint = fp(kt);
    } else if (label == "delta") {
        if (!cutoff) cutoff = 1000;
        long kt = cfg.known_through >= 0 ? cfg.known_through : 1;
        auto d = forms::delta_instance(cutoff, bits);
        b.inst = {"delta", d.fe, restrict_known(d.coeffs, kt)};
        b.fingerprint = fp(kt);
    } else if (label == "s24-f1" || label == "s24-f2") {
        if (!cutoff) cutoff = 1000;
        long kt = cfg.known_through >= 0 ? cfg.known_through : 1;
        auto d = forms::s24_instance(label == "s24-f1" ? 0 : 1, cutoff, bits);
        b.inst = {label, d.fe, restrict_known(d.coeffs, kt)};
        b.fingerprint = fp(kt);
    } else if (label == "s24-f1-pow5" || label == "s24-f2-pow5") {
        if (!cutoff) cutoff = 4000;
        long kt = cfg.known_through >= 0 ? cfg.known_through : 79;
        auto d = forms::s24_instance(label == "s24-f1-pow5" ? 0 : 1, cutoff, bits);
        b.inst = forms::power_lift(d.coeffs, d.fe, 5, kt, cutoff, bits);
        b.inst.label = label;
        b.fingerprint = fp(kt);
    } else if (label == "upsilon20-stan" || label == "upsilon20-adj" || label == "upsilon20-spin") {
        if (!cutoff) cutoff = label == "upsilon20-adj" ? 4000 : 1000;
        b = upsilon(cfg, lmodel::parse_rho(label.substr(10)), cutoff, bits);
        b.fingerprint += ";cutoff=" + std::to_string(cutoff);
    } else {
        std::ifstream probe(label);
        if (!probe) {
            std::string known;
            for (const auto& l : builtin_labels()) known += " " + l;
            throw InputError("--instance '" + label + "' is neither a builtin (" + known.substr(1) +
                             ") nor a readable functional-equation file");
        }
        if (!cutoff) cutoff = 1000;
        std::string text = slurp(label);
        auto fe = lmodel::FunctionalEquation::from_text(text);
        auto t = cfg.coeff_file.empty() ? lmodel::all_unknown_table(cutoff, fe.degree)
                                        : read_coefficients(cfg.coeff_file, fe.degree, cutoff);
        b.inst = {fe.label.empty() ? label : fe.label, fe, t};
        b.fingerprint = "fe=" + fnv1a_hex(text) + ";coeffs=" + fnv1a_hex(cfg.coeff_file.empty() ? "" : slurp(cfg.coeff_file)) +
                        ";cutoff=" + std::to_string(cutoff);
    }
    b.inst.validate();
    return b;
}

}  // namespace fewcoef::cli
