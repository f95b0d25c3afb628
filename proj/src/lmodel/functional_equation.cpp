#include "fewcoef/lmodel/functional_equation.hpp"

#include "fewcoef/numerics/errors.hpp"
#include "fewcoef/numerics/gamma.hpp"

#include <ostream>
#include <sstream>

namespace fewcoef::lmodel {

using mp::Complex;
using mp::Real;

namespace {

mpq_class parse_q(const std::string& tok) {
    mpq_class q;
    if (tok.empty() || q.set_str(tok, 10) != 0) throw InputError("bad rational '" + tok + "'");
    q.canonicalize();
    return q;
}

mpq_class pow_q(const mpq_class& x, int m) {
    mpq_class r = 1;
    for (int i = 0; i < m; ++i) r *= x;
    return r;
}

}  // namespace

void FunctionalEquation::validate() const {
    if (!(q_rational > 0)) throw InputError(label + ": Q must be positive");
    if (shifts.empty()) throw InputError(label + ": no gamma factors");
    mpq_class kappa_sum = 0;
    for (const auto& g : shifts) {
        if (g.kappa != mpq_class(1, 2) && g.kappa != 1) throw InputError(label + ": kappa must be 1/2 or 1");
        if (g.lambda_re < 0) throw InputError(label + ": gamma shift with negative real part");
        kappa_sum += g.kappa;
    }
    if (2 * kappa_sum != degree) throw InputError(label + ": degree does not equal 2 * sum of kappa");
    if (epsilon_re * epsilon_re + epsilon_im * epsilon_im != 1) throw InputError(label + ": |epsilon| != 1");
}

Real FunctionalEquation::log_Q(mp::Bits bits) const {
    mp::ScopedBits g(bits);
    Real r = mp::log(Real(q_rational));
    if (q_pi_power != 0) r += Real(q_pi_power) * mp::log(mp::pi(bits));
    return r;
}

Real FunctionalEquation::Q(mp::Bits bits) const {
    mp::ScopedBits g(bits);
    return mp::exp(log_Q(bits));
}

Complex FunctionalEquation::epsilon(mp::Bits bits) const {
    mp::ScopedBits g(bits);
    return {Real(epsilon_re), Real(epsilon_im)};
}

Complex FunctionalEquation::log_gamma_factor(const Complex& s, const PrecisionContext& ctx) const {
    mp::ScopedBits g(ctx.working_bits);
    Complex acc(0);
    for (const auto& sh : shifts)
        acc += numerics::log_gamma(s * Real(sh.kappa) + Complex(Real(sh.lambda_re), Real(sh.lambda_im)), ctx);
    return acc;
}

Complex FunctionalEquation::log_gamma_factor_dual(const Complex& s, const PrecisionContext& ctx) const {
    mp::ScopedBits g(ctx.working_bits);
    Complex acc(0);
    for (const auto& sh : shifts)
        acc += numerics::log_gamma(s * Real(sh.kappa) + Complex(Real(sh.lambda_re), -Real(sh.lambda_im)), ctx);
    return acc;
}

FunctionalEquation FunctionalEquation::power(int m) const {
    if (m < 1) throw InputError("power must be at least 1");
    if (m > 1 && !poles.empty()) throw InputError(label + ": powers of functional equations with poles are not supported");
    FunctionalEquation out;
    out.label = m == 1 ? label : label + "^" + std::to_string(m);
    out.degree = degree * m;
    out.q_rational = pow_q(q_rational, m);
    out.q_pi_power = q_pi_power * m;
    for (int i = 0; i < m; ++i) out.shifts.insert(out.shifts.end(), shifts.begin(), shifts.end());
    // ε^m for ε = a + bi with rational parts
    mpq_class re = 1, im = 0;
    for (int i = 0; i < m; ++i) {
        mpq_class nr = re * epsilon_re - im * epsilon_im;
        mpq_class ni = re * epsilon_im + im * epsilon_re;
        re = nr;
        im = ni;
    }
    out.epsilon_re = re;
    out.epsilon_im = im;
    out.poles = poles;
    return out;
}

std::string FunctionalEquation::to_text() const {
    std::ostringstream os;
    os << "label " << label << "\n";
    os << "degree " << degree << "\n";
    os << "Q " << q_rational.get_str() << " pi^ " << q_pi_power.get_str() << "\n";
    for (const auto& g : shifts)
        os << "gamma " << g.kappa.get_str() << " " << g.lambda_re.get_str() << " " << g.lambda_im.get_str() << "\n";
    os << "epsilon " << epsilon_re.get_str() << " " << epsilon_im.get_str() << "\n";
    for (const auto& p : poles)
        os << "pole " << p.s_re.get_str() << " " << p.s_im.get_str() << " " << p.r_re.get_str() << " "
           << p.r_im.get_str() << "\n";
    return os.str();
}

FunctionalEquation FunctionalEquation::from_text(const std::string& text) {
    FunctionalEquation fe;
    fe.shifts.clear();
    bool have_degree = false, have_q = false, have_label = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        auto need = [&](size_t n) {
            if (tok.size() != n)
                throw InputError("line " + std::to_string(lineno) + ": '" + key + "' expects " + std::to_string(n) +
                                 " fields");
        };
        if (key == "label") {
            need(1);
            fe.label = tok[0];
            have_label = true;
        } else if (key == "degree") {
            need(1);
            try {
                fe.degree = std::stoi(tok[0]);
            } catch (const std::exception&) {
                throw InputError("line " + std::to_string(lineno) + ": bad degree");
            }
            have_degree = true;
        } else if (key == "Q") {
            if (tok.size() == 1) {
                fe.q_rational = parse_q(tok[0]);
                fe.q_pi_power = 0;
            } else {
                need(3);
                if (tok[1] != "pi^") throw InputError("line " + std::to_string(lineno) + ": expected 'pi^'");
                fe.q_rational = parse_q(tok[0]);
                fe.q_pi_power = parse_q(tok[2]);
            }
            have_q = true;
        } else if (key == "gamma") {
            need(3);
            fe.shifts.push_back({parse_q(tok[0]), parse_q(tok[1]), parse_q(tok[2])});
        } else if (key == "epsilon") {
            need(2);
            fe.epsilon_re = parse_q(tok[0]);
            fe.epsilon_im = parse_q(tok[1]);
        } else if (key == "pole") {
            need(4);
            fe.poles.push_back({parse_q(tok[0]), parse_q(tok[1]), parse_q(tok[2]), parse_q(tok[3])});
        } else {
            throw InputError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (!have_label || !have_degree || !have_q) throw InputError("functional equation needs label, degree and Q");
    fe.validate();
    return fe;
}

std::ostream& operator<<(std::ostream& os, const FunctionalEquation& fe) { return os << fe.to_text(); }

Rho parse_rho(const std::string& name) {
    if (name == "spin") return Rho::spin;
    if (name == "stan") return Rho::stan;
    if (name == "adj") return Rho::adj;
    throw InputError("unknown representation '" + name + "'");
}

const char* rho_name(Rho rho) {
    switch (rho) {
        case Rho::spin: return "spin";
        case Rho::stan: return "stan";
        case Rho::adj: return "adj";
    }
    return "?";
}

FunctionalEquation fe_for(Rho rho, int k) {
    if (k < 10 || k % 2 != 0) throw InputError("weight must be even and at least 10");
    FunctionalEquation fe;
    const mpq_class half(1, 2);
    fe.label = std::string(rho_name(rho)) + "-k" + std::to_string(k);
    switch (rho) {
        case Rho::spin:
            // Γ_C(s + 1/2) Γ_C(s + k - 3/2)
            fe.degree = 4;
            fe.q_rational = mpq_class(1, 4);
            fe.q_pi_power = -2;
            fe.shifts = {{1, half, 0}, {1, mpq_class(2 * k - 3, 2), 0}};
            fe.epsilon_re = (k % 2 == 0) ? 1 : -1;
            break;
        case Rho::stan:
            // Γ_R(s) Γ_C(s + k - 2) Γ_C(s + k - 1)
            fe.degree = 5;
            fe.q_rational = mpq_class(1, 4);
            fe.q_pi_power = mpq_class(-5, 2);
            fe.shifts = {{half, 0, 0}, {1, k - 2, 0}, {1, k - 1, 0}};
            break;
        case Rho::adj:
            // Γ_R(s + 1)^2 Γ_C(s + 1) Γ_C(s + k - 2) Γ_C(s + k - 1) Γ_C(s + 2k - 3)
            fe.degree = 10;
            fe.q_rational = mpq_class(1, 16);
            fe.q_pi_power = -5;
            fe.shifts = {{half, half, 0}, {half, half, 0}, {1, 1, 0}, {1, k - 2, 0}, {1, k - 1, 0}, {1, 2 * k - 3, 0}};
            break;
    }
    fe.validate();
    return fe;
}

FunctionalEquation fe_classical(int k) {
    if (k < 2 || k % 2 != 0) throw InputError("classical weight must be even");
    FunctionalEquation fe;
    fe.label = "classical-k" + std::to_string(k);
    fe.degree = 2;
    fe.q_rational = mpq_class(1, 2);
    fe.q_pi_power = -1;
    fe.shifts = {{1, mpq_class(k - 1, 2), 0}};
    fe.epsilon_re = (k % 4 == 0) ? 1 : -1;
    fe.validate();
    return fe;
}

FunctionalEquation fe_zeta() {
    FunctionalEquation fe;
    fe.label = "zeta";
    fe.degree = 1;
    fe.q_rational = 1;
    fe.q_pi_power = mpq_class(-1, 2);
    fe.shifts = {{mpq_class(1, 2), 0, 0}};
    fe.poles = {{1, 0, 1, 0}, {0, 0, -1, 0}};
    fe.validate();
    return fe;
}

}  // namespace fewcoef::lmodel
