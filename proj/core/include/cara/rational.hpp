#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cara {

/// Exact rational scalar. Always kept in canonical form (lowest terms,
/// positive denominator); every mpq_class operation preserves this.
using Rational = mpq_class;

/// Canonical n/d. Prefer this over mpq_class(n, d), which skips canonicalization.
Rational ratio(long numerator, long denominator);

/// Parses "num/den", "int" or a finite decimal such as "-1.25".
/// Throws InputError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" text, "num" when the denominator is one.
std::string format_rational(const Rational& q);

/// Nearest double; only for reporting and sampling heuristics.
double to_double(const Rational& q);

/// Exact conversion of a finite double.
Rational from_double(double x);

/// Round a double to the nearest multiple of 1/denominator.
Rational round_to(double x, long denominator);

/// Fixed-width, coordinate-exact point in R^d.
class Point {
public:
    Point() = default;
    explicit Point(std::size_t dim) : coords_(dim, Rational(0)) {}
    explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {}
    Point(std::initializer_list<Rational> coords) : coords_(coords) {}

    static Point from_ints(std::initializer_list<long> values);

    std::size_t dim() const { return coords_.size(); }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    Rational& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;

    Point& operator+=(const Point& other);
    Point& operator-=(const Point& other);
    Point& operator*=(const Rational& s);
    Point& operator/=(const Rational& s);

    friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend bool operator<(const Point& a, const Point& b) { return a.coords_ < b.coords_; }

private:
    std::vector<Rational> coords_;
};

Point operator+(Point a, const Point& b);
Point operator-(Point a, const Point& b);
Point operator-(Point a);
Point operator*(const Rational& s, Point a);
Point operator*(Point a, const Rational& s);
Point operator/(Point a, const Rational& s);

Rational dot(const Point& a, const Point& b);
Rational squared_norm(const Point& a);
Rational squared_distance(const Point& a, const Point& b);

/// Appends `tail` to the coordinates of `head`.
Point concat(const Point& head, const Point& tail);

/// Kronecker product: coordinate (i * b.dim() + j) equals a[i] * b[j].
Point tensor(const Point& a, const Point& b);

std::vector<double> to_doubles(const Point& p);
Point from_doubles(const std::vector<double>& values);

std::string to_string(const Point& p);
std::ostream& operator<<(std::ostream& os, const Point& p);

/// Throws InputError unless every point has dimension `dim`.
void require_dim(const std::vector<Point>& points, std::size_t dim, std::string_view what);

/// Common dimension of a nonempty list; throws InputError on mismatch or empty input.
std::size_t common_dim(const std::vector<Point>& points, std::string_view what);

}  // namespace cara
