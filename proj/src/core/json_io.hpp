// JSON document formats for complexes, local systems, cocycles,
// trivializations, covering specs, and towers, plus a name -> document
// workspace for cross-references.

#ifndef FLATK_JSON_IO_HPP
#define FLATK_JSON_IO_HPP

#include <json.hpp>
#include <map>

#include "cohomology.hpp"
#include "descent.hpp"

namespace flatk {

using Json = nlohmann::json;

class Workspace {
public:
    void load(const std::string& name, Json doc);
    bool has(const std::string& name) const { return docs_.count(name) != 0; }
    const Json& get(const std::string& name) const;

private:
    std::map<std::string, Json> docs_;
};

// ref: inline object, or string name resolved in the workspace
SpacePtr parse_space(const Json& ref, const Workspace* ws);
TwoComplex parse_complex(const Json& doc, const Workspace* ws);
FieldCtx parse_field(const Json& ref);
Matrix parse_matrix(const FieldCtx& ctx, const Json& rows);
LocalSystem parse_locsys(const Json& ref, const Workspace* ws);
CechCocycle parse_cocycle(const Json& ref, const Workspace* ws);
Trivialization parse_trivialization(const Json& ref, const Workspace* ws);
Covering parse_cover_spec(const Json& ref, const Workspace* ws);
Tower parse_tower(const Json& ref, const Workspace* ws);

Json complex_to_json(const TwoComplex& x);
Json matrix_to_json(const Matrix& m);
Json locsys_to_json(const LocalSystem& e);
Json cocycle_to_json(const CechCocycle& c);
Json covering_to_json(const Covering& c);

}  // namespace flatk

#endif
