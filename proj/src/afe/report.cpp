#include "fewcoef/afe/report.hpp"

#include "fewcoef/numerics/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace fewcoef::afe {

using mp::Complex;
using mp::Real;

namespace {

std::string dhex(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

double read_double(std::istream& is) {
    std::string t;
    is >> t;
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (t.empty() || *end != '\0') throw InputError("bad number in evaluation file: '" + t + "'");
    return v;
}

// precision:hex, so that every value comes back bit for bit
std::string rhex(const Real& x) { return std::to_string(x.bits()) + ':' + x.hex(); }

Real read_real(std::istream& is) {
    std::string t;
    is >> t;
    size_t colon = t.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument("");
        long bits = std::stol(t.substr(0, colon));
        if (bits < MPFR_PREC_MIN || bits > (1L << 24)) throw std::invalid_argument("");
        mp::ScopedBits g(static_cast<mp::Bits>(bits));
        return Real::parse(t.substr(colon + 1), 0);
    } catch (const std::exception&) {
        throw InputError("bad number in evaluation file: '" + t + "'");
    }
}

void expect(std::istream& is, const std::string& word) {
    std::string t;
    is >> t;
    if (t != word) throw InputError("evaluation file: expected '" + word + "', found '" + t + "'");
}

}  // namespace

void write_evaluation(std::ostream& os, const Evaluation& e) {
    os << "evaluation 2\n";
    os << "bits " << e.bits << '\n';
    os << "instance " << e.instance_label << '\n';
    os << "s " << rhex(e.s.re) << ' ' << rhex(e.s.im) << '\n';
    os << "g " << rhex(e.g.b) << ' ' << rhex(e.g.c) << ' ' << rhex(e.g.t0) << '\n';
    os << "degree " << e.degree << '\n';
    os << "cutoff " << e.cutoff << '\n';
    os << "values " << (e.values_available ? 1 : 0) << '\n';
    os << "plan " << rhex(e.plan.quad.nu) << ' ' << rhex(e.plan.quad.step) << ' ' << rhex(e.plan.quad.half_width)
       << ' ' << e.plan.nodes_per_side << ' ' << e.plan.bits << ' ' << dhex(e.plan.cancellation_bits) << '\n';
    os << "known " << rhex(e.known_part) << ' ' << rhex(e.known_imag) << '\n';
    os << "tail_bound " << rhex(e.tail_bound) << '\n';
    os << "rounding " << rhex(e.rounding_bound) << '\n';
    os << "tail " << dhex(e.tail.intercept) << ' ' << dhex(e.tail.slope) << ' ' << e.tail.fit_from << ' '
       << e.tail.fit_to << ' ' << dhex(e.tail.predicted_last) << ' ' << dhex(e.tail.actual_last) << ' '
       << (e.tail.decaying ? 1 : 0) << '\n';
    os << "phase " << rhex(e.z_normalizer_phase.re) << ' ' << rhex(e.z_normalizer_phase.im) << '\n';
    os << "imag_ratio " << dhex(e.kernel_imag_ratio) << '\n';
    os << "last " << e.last_computed << '\n';
    for (size_t n = 1; n < e.delta.size(); ++n)
        if (!e.delta[n].is_zero()) os << "d " << n << ' ' << rhex(e.delta[n]) << '\n';
    for (const auto& [q, v] : e.deltas) os << "q " << q << ' ' << rhex(v) << '\n';
    os << "end\n";
}

Evaluation read_evaluation(std::istream& is) {
    expect(is, "evaluation");
    int version = 0;
    is >> version;
    if (version != 2) throw InputError("unsupported evaluation file version");
    Evaluation e;
    expect(is, "bits");
    is >> e.bits;
    if (!is || e.bits < MPFR_PREC_MIN) throw InputError("evaluation file: bad precision");
    mp::ScopedBits g(e.bits);
    expect(is, "instance");
    is >> e.instance_label;
    expect(is, "s");
    e.s.re = read_real(is);
    e.s.im = read_real(is);
    expect(is, "g");
    e.g.b = read_real(is);
    e.g.c = read_real(is);
    e.g.t0 = read_real(is);
    expect(is, "degree");
    is >> e.degree;
    expect(is, "cutoff");
    is >> e.cutoff;
    int values = 0;
    expect(is, "values");
    is >> values;
    e.values_available = values != 0;
    expect(is, "plan");
    e.plan.quad.nu = read_real(is);
    e.plan.quad.step = read_real(is);
    e.plan.quad.half_width = read_real(is);
    is >> e.plan.nodes_per_side >> e.plan.bits;
    e.plan.cancellation_bits = read_double(is);
    expect(is, "known");
    e.known_part = read_real(is);
    e.known_imag = read_real(is);
    expect(is, "tail_bound");
    e.tail_bound = read_real(is);
    expect(is, "rounding");
    e.rounding_bound = read_real(is);
    expect(is, "tail");
    e.tail.intercept = read_double(is);
    e.tail.slope = read_double(is);
    is >> e.tail.fit_from >> e.tail.fit_to;
    e.tail.predicted_last = read_double(is);
    e.tail.actual_last = read_double(is);
    int decaying = 0;
    is >> decaying;
    e.tail.decaying = decaying != 0;
    expect(is, "phase");
    e.z_normalizer_phase.re = read_real(is);
    e.z_normalizer_phase.im = read_real(is);
    expect(is, "imag_ratio");
    e.kernel_imag_ratio = read_double(is);
    expect(is, "last");
    is >> e.last_computed;
    if (!is || e.cutoff < 1) throw InputError("evaluation file: truncated header");
    e.delta.assign(static_cast<size_t>(e.cutoff) + 1, Real(0));
    std::string tag;
    while (is >> tag) {
        if (tag == "end") return e;
        long key = 0;
        is >> key;
        if (tag == "d") {
            if (key < 1 || key > e.cutoff) throw InputError("evaluation file: index out of range");
            e.delta[static_cast<size_t>(key)] = read_real(is);
        } else if (tag == "q") {
            e.deltas[key] = read_real(is);
        } else {
            throw InputError("evaluation file: unknown record '" + tag + "'");
        }
    }
    throw InputError("evaluation file: missing 'end'");
}

std::string describe_evaluation(const Evaluation& e, const lmodel::CoefficientTable& table, int digits, int top) {
    mp::ScopedBits g(e.bits);
    std::ostringstream os;
    os << "instance   " << e.instance_label << '\n';
    os << "s          " << e.s.re.str(12) << (e.s.im.sign() < 0 ? " - " : " + ") << mp::abs(e.s.im).str(12) << "i\n";
    os << "g          " << e.g.describe() << '\n';
    os << "plan       nu=" << e.plan.quad.nu.str(6) << " step=" << e.plan.quad.step.str(6)
       << " nodes/side=" << e.plan.nodes_per_side << " bits=" << e.plan.bits
       << " cancellation=" << static_cast<int>(e.plan.cancellation_bits) << '\n';
    os << "known part " << e.known_part.str(digits) << '\n';
    std::vector<std::pair<Real, lmodel::Symbol>> order;
    for (const auto& [q, v] : e.deltas) order.emplace_back(mp::abs(v), q);
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    os << "largest unknown terms (coefficient of b_q):\n";
    for (int i = 0; i < top && i < static_cast<int>(order.size()); ++i)
        os << "  b_" << order[i].second << "  " << e.deltas.at(order[i].second).str(12) << '\n';
    os << "L1 error   " << error_l1_index(e, table).str(6) << "  (per symbol " << error_l1(e, table.degree(), table.bound_constant()).str(6)
       << ")\n";
    os << "tail       bound=" << e.tail_bound.str(4) << " slope=" << e.tail.slope << " fit=[" << e.tail.fit_from << ','
       << e.tail.fit_to << "] predicted/actual=" << (e.tail.actual_last > 0 ? e.tail.predicted_last / e.tail.actual_last : 0.0)
       << (e.tail.decaying ? "" : " NOT DECAYING") << '\n';
    os << "rounding   " << e.rounding_bound.str(4) << '\n';
    os << "computed   n <= " << e.last_computed << " of " << e.cutoff << '\n';
    return os.str();
}

}  // namespace fewcoef::afe
