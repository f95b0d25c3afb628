#pragma once

// Arbitrary-precision real and complex scalars on top of MPFR.
//
// Every Real owns an mpfr_t. New values are created at the calling thread's
// working precision (see ScopedBits); binary operations round to the larger
// of the two operand precisions.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace fewcoef::mp {

using Bits = mpfr_prec_t;

/// Thread-local working precision used for freshly created values.
Bits working_bits();
void set_working_bits(Bits bits);

/// Sets the thread's working precision for the lifetime of the guard.
class ScopedBits {
public:
    explicit ScopedBits(Bits bits) : saved_(working_bits()) { set_working_bits(bits); }
    ~ScopedBits() { set_working_bits(saved_); }
    ScopedBits(const ScopedBits&) = delete;
    ScopedBits& operator=(const ScopedBits&) = delete;

private:
    Bits saved_;
};

class Real {
public:
    Real() { mpfr_init2(v_, working_bits()); mpfr_set_zero(v_, 1); }
    Real(int x) : Real(static_cast<long>(x)) {}
    Real(long x) { mpfr_init2(v_, working_bits()); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(long long x) : Real(static_cast<long>(x)) {}
    Real(unsigned long x) { mpfr_init2(v_, working_bits()); mpfr_set_ui(v_, x, MPFR_RNDN); }
    Real(double x) { mpfr_init2(v_, working_bits()); mpfr_set_d(v_, x, MPFR_RNDN); }
    explicit Real(const mpz_class& x) { mpfr_init2(v_, working_bits()); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
    explicit Real(const mpq_class& x) { mpfr_init2(v_, working_bits()); mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }

    /// Zero with an explicit precision.
    static Real with_bits(Bits bits) {
        Real r(NoInit{});
        mpfr_init2(r.v_, bits);
        mpfr_set_zero(r.v_, 1);
        return r;
    }
    /// Parses a decimal (or `base`) literal; throws std::invalid_argument on junk.
    static Real parse(std::string_view text, int base = 10);

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        v_[0] = o.v_[0];
        o.v_[0]._mpfr_d = nullptr;
    }
    Real& operator=(const Real& o) {
        if (this == &o) return *this;
        if (v_[0]._mpfr_d == nullptr)
            mpfr_init2(v_, mpfr_get_prec(o.v_));
        else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_))
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        std::swap(v_[0], o.v_[0]);
        return *this;
    }
    ~Real() {
        if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
    }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    Bits bits() const { return mpfr_get_prec(v_); }
    /// Rounds in place to a new precision.
    Real& round_to(Bits bits) {
        mpfr_prec_round(v_, bits, MPFR_RNDN);
        return *this;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    /// Base-2 exponent e with 0.5 <= |x|/2^e < 1; very negative for zero.
    long exponent2() const { return mpfr_zero_p(v_) ? -(1L << 40) : mpfr_get_exp(v_); }
    /// Decimal text with `digits` significant digits (scientific when needed).
    std::string str(int digits = 0) const;
    /// Fixed-point decimal text with `decimals` digits after the point.
    std::string fixed(int decimals) const;
    /// Exact hexadecimal text ("0x1.8p+1"); parse(text, 0) restores it.
    std::string hex() const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real operator-() const {
        Real r = with_bits(bits());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { widen(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { widen(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { widen(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { widen(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

    friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }
    friend Real operator*(const Real& a, long b) {
        Real r = with_bits(a.bits());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator*(long b, const Real& a) { return a * b; }
    friend Real operator/(const Real& a, long b) {
        Real r = with_bits(a.bits());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
        if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
        int c = mpfr_cmp(a.v_, b.v_);
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }

    friend std::ostream& operator<<(std::ostream& os, const Real& x);

private:
    struct NoInit {};
    explicit Real(NoInit) {}

    void widen(const Real& o) {
        if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
    }

    template <class Op>
    static Real binary(const Real& a, const Real& b, Op op) {
        Real r = with_bits(std::max(a.bits(), b.bits()));
        op(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

Real pi(Bits bits = working_bits());
Real ln2(Bits bits = working_bits());
/// 2^e at the given precision.
Real pow2(long e, Bits bits = working_bits());

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log10(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
void sin_cos(Real& s, Real& c, const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real hypot(const Real& x, const Real& y);
Real floor(const Real& x);
Real ldexp(const Real& x, long e);
inline const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }
inline const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }

/// Exact conversion from a rational at the working precision.
inline Real to_real(const mpq_class& q) { return Real(q); }

struct Complex {
    Real re;
    Real im;

    Complex() = default;
    Complex(Real r) : re(std::move(r)), im(Real::with_bits(re.bits())) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(double r) : re(r), im(0) {}
    Complex(double r, double i) : re(r), im(i) {}
    Complex(int r) : re(r), im(0) {}

    Bits bits() const { return std::max(re.bits(), im.bits()); }
    Complex& round_to(Bits bits) {
        re.round_to(bits);
        im.round_to(bits);
        return *this;
    }

    Complex operator-() const { return {-re, -im}; }
    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const Real& o) { re *= o; im *= o; return *this; }
    Complex& operator/=(const Real& o) { re /= o; im /= o; return *this; }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator*(Complex a, const Real& b) { return a *= b; }
    friend Complex operator*(const Real& b, Complex a) { return a *= b; }
    friend Complex operator/(Complex a, const Real& b) { return a /= b; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

    friend std::ostream& operator<<(std::ostream& os, const Complex& z);
};

Complex conj(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex exp(const Complex& z);
/// Principal branch.
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& base, const Complex& e);
/// x^z for positive real x.
Complex pow(const Real& x, const Complex& z);
Complex polar(const Real& r, const Real& theta);
Complex reciprocal(const Complex& z);
Complex i_times(const Complex& z);

/// Parses "a", "a+bi", "a-bi", "bi" forms (no spaces required).
Complex parse_complex(std::string_view text);

}  // namespace fewcoef::mp
