#pragma once

#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "kha/kclass.hpp"
#include "kha/laurent.hpp"
#include "kha/quiver.hpp"
#include "kha/rational_function.hpp"
#include "kha/shuffle.hpp"
#include "kha/wallcross.hpp"

namespace kha::io {

using json = nlohmann::json;

/// Quiver, optional potential and torus, and named elements over them.
struct Workspace {
    Quiver quiver;
    std::optional<Potential> potential;
    std::optional<TorusWeighting> torus;
    std::map<std::string, LaurentPoly> elements;

    /// The stored torus, or the rank-0 torus when none was given.
    TorusWeighting torus_or_trivial() const;
    ShuffleAlgebra algebra() const;

    friend bool operator==(const Workspace&, const Workspace&) = default;
};

/// Parses text; JSON syntax errors become SchemaError at the document root.
json parse_text(const std::string& text);
/// Compact canonical text: sorted keys, no whitespace, trailing newline.
std::string dump(const json& j);

json to_json(const DimVector& d);
DimVector dim_from_json(const json& j, const std::string& path = "");

json to_json(const StabilityCondition& theta);
/// Accepts integers or rational strings such as "3/2".
StabilityCondition theta_from_json(const json& j, const std::string& path = "");

json to_json(const Quiver& q);
Quiver quiver_from_json(const json& j, const std::string& path = "");

json to_json(const Potential& w);
Potential potential_from_json(const Quiver& q, const json& j, const std::string& path = "");

json to_json(const TorusWeighting& t);
TorusWeighting torus_from_json(const Quiver& q, const json& j, const std::string& path = "");

json to_json(const Workspace& ws);
Workspace workspace_from_json(const json& j);

json to_json(const LaurentPoly& p);
/// Without `vertex_order` the z-vertices follow the (sorted) JSON key order. With it,
/// vertices are placed in that order; absent ones get count 0, unknown ones are an error.
LaurentPoly laurent_from_json(const json& j, const std::string& path = "",
                              const std::vector<std::string>* vertex_order = nullptr);

json to_json(const FramedModuleElement& m);
FramedModuleElement framed_from_json(const ShuffleAlgebra& algebra, const json& j, const std::string& path = "");

json to_json(const RationalFunction& f);
RationalFunction rational_from_json(const json& j, const std::string& path = "");

json to_json(const NoncommPathPoly& p);
NoncommPathPoly path_poly_from_json(const Quiver& q, const json& j, const std::string& path = "");

json to_json(const WeightList& s);
WeightList weights_from_json(const json& j, const std::string& path = "");

json to_json(const HNStrata& s);
HNStrata strata_from_json(const StabilityCondition& theta, const json& j, const std::string& path = "");

json to_json(const GenerationReport& r);
GenerationReport report_from_json(const json& j, const std::string& path = "");

json to_json(const RelationSearchReport& r);

json to_json(const LowestWeight& w);

std::string rational_to_string(const Rational& x);

} // namespace kha::io
