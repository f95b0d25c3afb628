#include "fewcoef/numerics/mp.hpp"

#include <cctype>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace fewcoef::mp {

namespace {
thread_local Bits tl_bits = 256;
}

Bits working_bits() { return tl_bits; }

void set_working_bits(Bits bits) {
    if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX) throw std::invalid_argument("precision out of range");
    tl_bits = bits;
}

Real Real::parse(std::string_view text, int base) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    // digit-group separators ("3.03930 70838") are accepted
    std::string compact;
    for (char c : s)
        if (c != ' ' && c != '_') compact.push_back(c);
    if (compact.empty()) throw std::invalid_argument("empty number");
    Real r;
    char* end = nullptr;
    mpfr_strtofr(r.v_, compact.c_str(), &end, base, MPFR_RNDN);
    if (end == nullptr || *end != '\0' || end == compact.c_str())
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    return r;
}

std::string Real::str(int digits) const {
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
    if (digits <= 0) digits = static_cast<int>(static_cast<double>(bits()) * 0.30103) + 1;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

std::string Real::fixed(int decimals) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", decimals, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

std::string Real::hex() const {
    if (!is_finite()) return str();
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%Ra", v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
    int digits = os.precision() > 0 ? static_cast<int>(os.precision()) : 17;
    return os << x.str(digits);
}

Real pi(Bits bits) {
    Real r = Real::with_bits(bits);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

Real ln2(Bits bits) {
    Real r = Real::with_bits(bits);
    mpfr_const_log2(r.get(), MPFR_RNDN);
    return r;
}

Real pow2(long e, Bits bits) {
    Real r = Real::with_bits(bits);
    mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
    return r;
}

namespace {
template <class F>
Real unary(const Real& x, F f) {
    Real r = Real::with_bits(x.bits());
    f(r.get(), x.get(), MPFR_RNDN);
    return r;
}
}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log10(const Real& x) { return unary(x, mpfr_log10); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }

void sin_cos(Real& s, Real& c, const Real& x) {
    s.round_to(x.bits());
    c.round_to(x.bits());
    mpfr_sin_cos(s.get(), c.get(), x.get(), MPFR_RNDN);
}

Real atan2(const Real& y, const Real& x) {
    Real r = Real::with_bits(std::max(x.bits(), y.bits()));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& x, const Real& y) {
    Real r = Real::with_bits(std::max(x.bits(), y.bits()));
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& x, long n) {
    Real r = Real::with_bits(x.bits());
    mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}

Real hypot(const Real& x, const Real& y) {
    Real r = Real::with_bits(std::max(x.bits(), y.bits()));
    mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

Real floor(const Real& x) {
    Real r = Real::with_bits(x.bits());
    mpfr_floor(r.get(), x.get());
    return r;
}

Real ldexp(const Real& x, long e) {
    Real r = Real::with_bits(x.bits());
    mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

Complex& Complex::operator*=(const Complex& o) {
    Real a = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(a);
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    Real d = norm(o);
    Real a = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(a);
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
    int digits = os.precision() > 0 ? static_cast<int>(os.precision()) : 17;
    os << z.re.str(digits) << (z.im.sign() < 0 ? "-" : "+") << abs(z.im).str(digits) << "i";
    return os;
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex exp(const Complex& z) {
    Real m = exp(z.re);
    Real s = Real::with_bits(z.bits()), c = Real::with_bits(z.bits());
    sin_cos(s, c, z.im);
    return {m * c, m * s};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex sqrt(const Complex& z) {
    if (z.re.is_zero() && z.im.is_zero()) return z;
    Real r = abs(z);
    Real a = sqrt((r + abs(z.re)) / 2L);
    if (z.re.sign() >= 0) return {a, z.im / (2L * a)};
    Real b = z.im.sign() < 0 ? -a : a;
    return {abs(z.im) / (2L * a), b};
}

Complex pow(const Complex& base, const Complex& e) { return exp(e * log(base)); }

Complex pow(const Real& x, const Complex& z) { return exp(z * log(x)); }

Complex polar(const Real& r, const Real& theta) {
    Real s = Real::with_bits(theta.bits()), c = Real::with_bits(theta.bits());
    sin_cos(s, c, theta);
    return {r * c, r * s};
}

Complex reciprocal(const Complex& z) {
    Real d = norm(z);
    return {z.re / d, -z.im / d};
}

Complex i_times(const Complex& z) { return {-z.im, z.re}; }

Complex parse_complex(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I' && s.back() != 'j') return Complex(Real::parse(s), Real(0));
    s.pop_back();
    // find the sign separating real and imaginary parts (skip exponent signs)
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_of = [](const std::string& part) {
        if (part.empty() || part == "+") return Real(1);
        if (part == "-") return Real(-1);
        return Real::parse(part);
    };
    if (split == std::string::npos) return Complex(Real(0), imag_of(s));
    return Complex(Real::parse(s.substr(0, split)), imag_of(s.substr(split)));
}

}  // namespace fewcoef::mp
