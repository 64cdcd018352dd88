#ifndef SHAPESEP_INSTANCE_IO_HPP
#define SHAPESEP_INSTANCE_IO_HPP

#include <string>

#include <json.hpp>

#include "shapesep/generators.hpp"
#include "shapesep/separators.hpp"

namespace shapesep {

using nlohmann::json;

/// Numbers serialize as JSON numbers when integral, "p/q" strings otherwise;
/// both forms are accepted on input.
json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);

json scalar_to_json(const Scalar& s);

json shape_to_json(const Shape& s);
Shape shape_from_json(const json& j);

json representation_to_json(const Representation& r);
Representation representation_from_json(const json& j);

json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

json bundle_to_json(const InstanceBundle& b);
InstanceBundle bundle_from_json(const json& j);

json separator_result_to_json(const SeparatorResult& r);
json tameness_to_json(const TamenessCertificate& c);
json comparability_report_to_json(const ComparabilityReport& r);
json scaling_fit_to_json(const ScalingFit& f);
json dichotomy_to_json(const DichotomyResult& r);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);
json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);

/// CSV rows "r,col,argmax,bound" with the composed constants in a comment
/// header; the bound column is delta * r^d.
std::string col_profile_csv(const ColoringProfile& p, const ComposedBound& bound);

/// CSV rows "n,size,bound,method".
std::string scaling_csv(const ScalingFit& f);

} // namespace shapesep

#endif
