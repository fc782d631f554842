#include "probe/prob.hpp"

#include "probe/error.hpp"

#include <charconv>
#include <cmath>

namespace probe {

namespace {

std::string double_str(double d) {
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, d);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".e") == std::string::npos && s.find("nan") == std::string::npos) s += ".0";
    return s;
}

} // namespace

double Prob::to_double() const {
    if (is_exact()) return rational().get_d();
    return std::get<double>(v_);
}

bool Prob::is_zero() const {
    if (is_exact()) return sgn(rational()) == 0;
    return std::get<double>(v_) == 0.0;
}

bool Prob::is_negative() const {
    if (is_exact()) return sgn(rational()) < 0;
    return std::get<double>(v_) < -kProbTolerance;
}

bool Prob::exceeds_one() const {
    if (is_exact()) return rational() > 1;
    return std::get<double>(v_) > 1.0 + kProbTolerance;
}

Prob Prob::operator+(const Prob& o) const {
    if (is_exact() && o.is_exact()) return Prob(mpq_class(rational() + o.rational()));
    return Prob(to_double() + o.to_double());
}

Prob Prob::operator-(const Prob& o) const {
    if (is_exact() && o.is_exact()) return Prob(mpq_class(rational() - o.rational()));
    return Prob(to_double() - o.to_double());
}

Prob Prob::operator*(const Prob& o) const {
    if (is_exact() && o.is_exact()) return Prob(mpq_class(rational() * o.rational()));
    return Prob(to_double() * o.to_double());
}

bool approx_equal(const Prob& a, const Prob& b, double tol) {
    if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
    return std::fabs(a.to_double() - b.to_double()) <= tol;
}

std::string Prob::str() const {
    if (is_exact()) return rational().get_str();
    return double_str(std::get<double>(v_));
}

Prob Prob::parse(const std::string& text) {
    bool integral = !text.empty();
    for (char c : text)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-')) integral = false;
    if (integral || text.find('/') != std::string::npos) {
        mpq_class q;
        if (q.set_str(text, 10) != 0) throw Error("malformed probability '" + text + "'");
        q.canonicalize();
        return Prob(q);
    }
    double d = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), d);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw Error("malformed probability '" + text + "'");
    return Prob(d);
}

} // namespace probe
