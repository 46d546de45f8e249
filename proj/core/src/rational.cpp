#include "cara/rational.hpp"

#include <cmath>
#include <sstream>

#include "cara/error.hpp"

namespace cara {

namespace {

bool is_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (!is_digits(digits)) throw InputError("malformed rational '" + std::string(whole) + "'");
    std::string text(s.front() == '+' ? s.substr(1) : s);
    return mpz_class(text, 10);
}

}  // namespace

Rational ratio(long numerator, long denominator) {
    if (denominator == 0) throw InputError("zero denominator");
    Rational q(numerator, denominator);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) throw InputError("empty rational literal");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(text.substr(0, slash), text);
        mpz_class den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view ip = text.substr(0, dot);
        std::string_view fp = text.substr(dot + 1);
        bool negative = !ip.empty() && ip.front() == '-';
        if (!ip.empty() && (ip.front() == '-' || ip.front() == '+')) ip.remove_prefix(1);
        if ((!ip.empty() && !is_digits(ip)) || (!fp.empty() && !is_digits(fp)) || (ip.empty() && fp.empty()))
            throw InputError("malformed rational '" + std::string(text) + "'");
        std::string digits = std::string(ip) + std::string(fp);
        mpz_class num(digits.empty() ? "0" : digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
        Rational q(negative ? mpz_class(-num) : num, den);
        q.canonicalize();
        return q;
    }
    return Rational(parse_integer(text, text));
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double x) {
    if (!std::isfinite(x)) throw InputError("non-finite value cannot be made exact");
    return Rational(x);
}

Rational round_to(double x, long denominator) {
    if (!std::isfinite(x)) throw InputError("non-finite value cannot be rounded");
    double scaled = std::nearbyint(x * static_cast<double>(denominator));
    Rational q{mpz_class(scaled), mpz_class(denominator)};
    q.canonicalize();
    return q;
}

Point Point::from_ints(std::initializer_list<long> values) {
    std::vector<Rational> c;
    c.reserve(values.size());
    for (long v : values) c.emplace_back(v);
    return Point(std::move(c));
}

bool Point::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

Point& Point::operator+=(const Point& other) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
    return *this;
}

Point& Point::operator-=(const Point& other) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
    return *this;
}

Point& Point::operator*=(const Rational& s) {
    for (auto& c : coords_) c *= s;
    return *this;
}

Point& Point::operator/=(const Rational& s) {
    for (auto& c : coords_) c /= s;
    return *this;
}

Point operator+(Point a, const Point& b) { return a += b; }
Point operator-(Point a, const Point& b) { return a -= b; }
Point operator-(Point a) { return a *= Rational(-1); }
Point operator*(const Rational& s, Point a) { return a *= s; }
Point operator*(Point a, const Rational& s) { return a *= s; }
Point operator/(Point a, const Rational& s) { return a /= s; }

Rational dot(const Point& a, const Point& b) {
    Rational s(0);
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

Rational squared_norm(const Point& a) { return dot(a, a); }

Rational squared_distance(const Point& a, const Point& b) { return squared_norm(a - b); }

Point concat(const Point& head, const Point& tail) {
    std::vector<Rational> c = head.coords();
    c.insert(c.end(), tail.coords().begin(), tail.coords().end());
    return Point(std::move(c));
}

Point tensor(const Point& a, const Point& b) {
    std::vector<Rational> c;
    c.reserve(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) c.emplace_back(a[i] * b[j]);
    return Point(std::move(c));
}

std::vector<double> to_doubles(const Point& p) {
    std::vector<double> out;
    out.reserve(p.dim());
    for (const auto& c : p.coords()) out.push_back(c.get_d());
    return out;
}

Point from_doubles(const std::vector<double>& values) {
    std::vector<Rational> c;
    c.reserve(values.size());
    for (double v : values) c.push_back(from_double(v));
    return Point(std::move(c));
}

std::string to_string(const Point& p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) os << ", ";
        os << format_rational(p[i]);
    }
    os << ')';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Point& p) { return os << to_string(p); }

void require_dim(const std::vector<Point>& points, std::size_t dim, std::string_view what) {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i].dim() != dim)
            throw InputError(std::string(what) + ": point " + std::to_string(i) + " has dimension " +
                             std::to_string(points[i].dim()) + ", expected " + std::to_string(dim));
}

std::size_t common_dim(const std::vector<Point>& points, std::string_view what) {
    if (points.empty()) throw InputError(std::string(what) + ": empty point list");
    std::size_t d = points.front().dim();
    require_dim(points, d, what);
    return d;
}

}  // namespace cara
