#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cara/colorful.hpp"
#include "cara/join_hulls.hpp"
#include "cara/kconvexity.hpp"
#include "cara/tverberg.hpp"

namespace cara::io {

using nlohmann::json;

/// Parses text, reporting syntax errors with the source name and byte offset.
json parse_document(const std::string& text, const std::string& source);
json load_file(const std::filesystem::path& path);
/// Two-space indented, trailing newline.
void save_file(const std::filesystem::path& path, const json& doc);

// Readers take the JSON path of the value for diagnostics, e.g.
// "family.members[2].vertices[0]".

const json& require(const json& obj, const std::string& key, const std::string& path);
std::size_t read_size(const json& v, const std::string& path);
Rational read_rational(const json& v, const std::string& path);
Point read_point(const json& v, const std::string& path);
std::vector<Point> read_points(const json& v, const std::string& path);
Family read_family(const json& v, const std::string& path);
CompactumRep read_compactum(const json& v, const std::string& path);
ColorSystem read_color_system(const json& v, const std::string& path);
ConvexCombination read_combination(const json& v, const std::string& path);
Matrix read_matrix(const json& v, const std::string& path);

json write(const Rational& q);
json write(const Point& p);
json write(const std::vector<Point>& points);
json write(const Family& family);
json write(const CompactumRep& rep);
json write(const ColorSystem& system);
json write(const ConvexCombination& comb);
json write(const Matrix& m);

/// {"exact": "n/d", "approx": 17 significant digits}.
json approx(const Rational& q);
/// 17-significant-digit decimal of q.
std::string decimal(const Rational& q);
/// List of approx() entries.
json audit_trail(const std::vector<Rational>& values);
std::vector<Rational> read_audit_trail(const json& v, const std::string& path);

json write(const KappaBound& bound);
KappaBound read_kappa_bound(const json& v, const std::string& path);

json write(const KConvexityVerdict& verdict);
KConvexityVerdict read_kconv_verdict(const json& v, const std::string& path);

json write(const FlatCertificate& cert);
FlatCertificate read_flat_certificate(const json& v, const std::string& path);

json write(const ColorfulCertificate& cert);
ColorfulCertificate read_colorful_certificate(const json& v, const std::string& path);

json write(const TverbergCertificate& cert);
TverbergCertificate read_tverberg_certificate(const json& v, const std::string& path);

}  // namespace cara::io
