#include "fewcoef/cli/config.hpp"

#include "fewcoef/numerics/errors.hpp"

#include <cctype>
#include <sstream>

namespace fewcoef::cli {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

mpq_class pow10(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? mpq_class(1, p) : mpq_class(p);
}

mpq_class parse_decimal(const std::string& t) {
    std::string mant = t;
    long exp = 0;
    size_t e = t.find_first_of("eE");
    if (e != std::string::npos) {
        mant = t.substr(0, e);
        try {
            size_t used = 0;
            exp = std::stol(t.substr(e + 1), &used);
            if (used != t.size() - e - 1) throw InputError("");
        } catch (const std::exception&) {
            throw InputError("bad exponent in '" + t + "'");
        }
    }
    bool neg = !mant.empty() && (mant[0] == '-' || mant[0] == '+');
    if (neg && mant[0] == '+') neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant = mant.substr(1);
    size_t dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty()) throw InputError("'" + t + "' is not a number");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("'" + t + "' is not a number");
    mpq_class q(mpz_class(digits, 10), 1);
    q *= pow10(exp);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

}  // namespace

mpq_class parse_rational(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) throw InputError("empty number");
    size_t slash = t.find('/');
    if (slash == std::string::npos) return parse_decimal(t);
    mpq_class num = parse_decimal(t.substr(0, slash));
    mpq_class den = parse_decimal(t.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + t + "'");
    mpq_class q = num / den;
    q.canonicalize();
    return q;
}

std::pair<mpq_class, mpq_class> parse_complex(const std::string& text) {
    std::string t;
    for (char c : text)
        if (c != ' ') t += c;
    if (t.empty()) throw InputError("empty complex number");
    if (t.back() != 'i') return {parse_rational(t), 0};
    std::string body = t.substr(0, t.size() - 1);
    // split at the last sign that is not leading and not part of an exponent
    size_t cut = std::string::npos;
    for (size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    auto imag = [&](std::string part) {
        if (part.empty() || part == "+") return mpq_class(1);
        if (part == "-") return mpq_class(-1);
        return parse_rational(part);
    };
    if (cut == std::string::npos) return {0, imag(body)};
    return {parse_rational(body.substr(0, cut)), imag(body.substr(cut))};
}

std::vector<mpq_class> parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw InputError("--beta-range expects a:step:b, got '" + text + "'");
    mpq_class a = parse_rational(parts[0]), step = parse_rational(parts[1]), b = parse_rational(parts[2]);
    if (step <= 0) throw InputError("--beta-range step must be positive");
    std::vector<mpq_class> out;
    for (mpq_class x = a; x <= b; x += step) out.push_back(x);
    return out;
}

std::vector<mpq_class> parse_list(const std::string& text) {
    std::vector<mpq_class> out;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');)
        if (!trim(p).empty()) out.push_back(parse_rational(p));
    return out;
}

std::vector<long> parse_index_list(const std::string& text) {
    std::vector<long> out;
    for (const auto& q : parse_list(text)) {
        if (q.get_den() != 1 || q < 1) throw InputError("indices must be positive integers: '" + text + "'");
        out.push_back(q.get_num().get_si());
    }
    return out;
}

optimize::Grouping parse_grouping(const std::string& text) {
    if (text == "index") return optimize::Grouping::per_index;
    if (text == "symbol") return optimize::Grouping::per_symbol;
    throw InputError("--grouping must be 'index' or 'symbol'");
}

const char* grouping_name(optimize::Grouping g) { return g == optimize::Grouping::per_index ? "index" : "symbol"; }

std::string rational_text(const mpq_class& q) { return q.get_str(); }

void RunConfig::validate() const {
    if (instance.empty()) throw InputError("--instance is required");
    if (digits < 5 || digits > 2000) throw InputError("--digits must be between 5 and 2000");
    if (cutoff < 0) throw InputError("--cutoff must be positive");
    if (cutoff > 0 && cutoff < 10) throw InputError("--cutoff must be at least 10");
    if (symbol_cut < 2) throw InputError("--symbol-cut must be at least 2");
    if (gauss_c < 0) throw InputError("--gauss-c must be non-negative");
    if (known_through < -1) throw InputError("--known-through must be non-negative");
    for (auto q : free)
        if (q < 2) throw InputError("--free symbols must be at least 2");
    for (auto q : symbols)
        if (q < 2) throw InputError("--symbols must be at least 2");
}

std::vector<lmodel::TestFunction> RunConfig::test_functions(mp::Bits bits) const {
    mp::ScopedBits g(bits);
    std::vector<lmodel::TestFunction> out;
    mp::Real c(gauss_c), t0(center);
    if (betas.empty()) out.push_back(lmodel::TestFunction::beta(mp::Real(0), c, t0));
    for (const auto& b : betas) out.push_back(lmodel::TestFunction::beta(mp::Real(b), c, t0));
    return out;
}

std::string RunConfig::header(const std::string& command) const {
    std::ostringstream os;
    os << "# fewcoef " << kVersion << " " << command << '\n';
    os << "# instance: " << instance << '\n';
    os << "# s: " << rational_text(s_re) << (s_im < 0 ? " - " : " + ") << rational_text(abs(s_im)) << "i\n";
    os << "# digits: " << digits << " (working bits " << context().working_bits << ")\n";
    os << "# beta:";
    if (betas.empty()) os << " 0";
    for (const auto& b : betas) os << ' ' << rational_text(b);
    os << '\n';
    os << "# gauss-c: " << rational_text(gauss_c) << "  center: " << rational_text(center) << '\n';
    os << "# cutoff: " << (cutoff ? std::to_string(cutoff) : std::string("default"))
       << "  known-through: " << (known_through >= 0 ? std::to_string(known_through) : std::string("default"))
       << "  symbol-cut: " << symbol_cut << "  grouping: " << (grouping ? grouping_name(*grouping) : "default") << '\n';
    if (!free.empty()) {
        os << "# free:";
        for (auto q : free) os << ' ' << q;
        os << '\n';
    }
    return os.str();
}

}  // namespace fewcoef::cli
