#pragma once

// JSON encodings for matrices, domains, representation sequences and
// meshes. Malformed input raises kInvalidFormat.

#include <string>
#include <vector>

#include "json.hpp"
#include "pconvex/domain.hpp"
#include "pconvex/normalize.hpp"
#include "pconvex/plconvex.hpp"

namespace pconvex {

using Json = nlohmann::json;

Json to_json(const Vec& v);
Json to_json(const Mat& m);  // row-major nested arrays
Vec vector_from_json(const Json& j);
Mat matrix_from_json(const Json& j);

DomainSpec domain_spec_from_json(const Json& j);
ConvexDomain domain_from_json(const Json& j);
Json domain_to_json(const ConvexDomain& domain);

RepSequence sequence_from_json(const Json& j);
// Generators of a single-term sequence.
std::vector<ProjTransform> generators_from_json(const Json& j);

SimplicialHypersurface mesh_from_json(const Json& j);
Json mesh_to_json(const SimplicialHypersurface& s);
Json certificate_to_json(const ConvexityCertificate& c);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
// "0.5,0,1" -> vector; throws kInvalidFormat.
Vec parse_vector(const std::string& text);

}  // namespace pconvex
