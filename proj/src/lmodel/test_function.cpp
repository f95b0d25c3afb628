#include "fewcoef/lmodel/test_function.hpp"

#include <sstream>

namespace fewcoef::lmodel {

using mp::Complex;
using mp::Real;

TestFunction TestFunction::beta(const Real& beta, const Real& c, const Real& t0) {
    TestFunction g;
    g.b = -beta;
    g.c = c;
    g.t0 = t0;
    return g;
}

bool TestFunction::valid_for(int degree) const {
    if (c.sign() < 0) return false;
    if (c.sign() > 0) return true;
    return mp::abs(b) * 4L < mp::pi(b.bits()) * static_cast<long>(degree);
}

Complex TestFunction::log_at(const Complex& s) const {
    // i b s + c (s - i t0)^2
    Complex shifted(s.re, s.im - t0);
    Complex out = mp::i_times(s) * b;
    if (!c.is_zero()) out += shifted * shifted * c;
    return out;
}

Complex TestFunction::operator()(const Complex& s) const { return mp::exp(log_at(s)); }

std::string TestFunction::describe() const {
    std::ostringstream os;
    os << "g(s)=exp(i*" << b.str(12) << "*s";
    if (!c.is_zero()) os << " + " << c.str(12) << "*(s-" << t0.str(12) << "i)^2";
    os << ")";
    return os.str();
}

}  // namespace fewcoef::lmodel
