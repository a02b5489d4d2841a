#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "rfk/diagram.hpp"
#include "rfk/experiments.hpp"
#include "rfk/kac_rice.hpp"
#include "rfk/laurent.hpp"
#include "rfk/sphere_model.hpp"
#include "rfk/trig_series.hpp"

namespace rfk::io {

/// Keys keep insertion order so every document has one fixed textual form.
using Json = nlohmann::ordered_json;

/// A number when it fits in 64 bits, otherwise a decimal string.
Json to_json(const BigInt& v);
BigInt bigint_from_json(const Json& j);

Json to_json(const CoefficientLaw& law);
Json to_json(const TrigSeries& s);                 // {"a":[...],"b":[...]}
Json to_json(const PlaneCurve& c);                 // {"x":series,"y":series}
Json to_json(const SpaceCurve& c);                 // {"x":...,"y":...,"z":...}
Json to_json(const CrossingDiagram& d);            // {"n","gauss":[[label,"O"|"U",sign]...],"params"}
Json to_json(const LaurentPolynomial& p);          // {"min_exp","coeffs"}
Json to_json(const SpherePolygon& poly);           // {"vertices":[[x,y,z]...]}
Json to_json(const KacRiceReport& r);              // {"alpha","value","delta","delta_half_value","k_max","mode"}
Json to_json(const ModelSpec& m);
Json to_json(const KnotSample& s);

TrigSeries series_from_json(const Json& j);
PlaneCurve plane_curve_from_json(const Json& j);   // a "z" member is ignored
SpaceCurve space_curve_from_json(const Json& j);
CrossingDiagram diagram_from_json(const Json& j);
LaurentPolynomial polynomial_from_json(const Json& j);
SpherePolygon polygon_from_json(const Json& j);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

std::string census_csv(const CensusResult& c);                          // name,count
std::string roots_csv(const std::vector<std::complex<double>>& roots);  // re,im
std::string profiles_csv(const std::vector<CoefficientProfile>& ps);    // sample,exponent,log_abs_coeff
std::string tails_csv(const TailResult& t);                             // N,p,lo,hi
std::string samples_jsonl(const std::vector<KnotSample>& samples);

/// Complex-plane scatter with the unit circle drawn for reference.
std::string roots_svg(const std::vector<std::complex<double>>& roots, const std::string& title);
/// One polyline per profile, log|coefficient| against exponent.
std::string profiles_svg(const std::vector<CoefficientProfile>& ps, const std::string& title);

/// Whole-file text I/O; IoError on failure. write_text creates missing parent directories.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& content);
Json read_json(const std::filesystem::path& path);  // IoError, or ValidationError on bad JSON

}  // namespace rfk::io
