#pragma once

#include "brpic/brpic.hpp"
#include "brpic/errors.hpp"
#include "brpic/hopf.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>

namespace brpic::io {

using json = nlohmann::json;

// Malformed JSON input; path names the offending field, e.g. "datum.W.basis[1][0]".
struct FieldError : StructuralError {
    FieldError(std::string path, const std::string& what)
        : StructuralError(path + ": " + what), path(std::move(path)) {}
    std::string path;
};

// Scalars are written in the cyclo text form. Reading also accepts integers and
// the object form {"N": 4, "coeffs": ["0", "1"]}.
json to_json(const Scalar& s);
json cyclo_object(const Scalar& s);
Scalar scalar_from_json(const json& j, const std::string& path);

json to_json(const FinAbGroup& G);
FinAbGroup group_from_json(const json& j, const std::string& path);

// Elements are {"coords": [...]}, characters {"exps": [...]}; bare arrays are accepted on input.
json element_to_json(const Coords& g);
json character_to_json(const Coords& chi);
Coords element_from_json(const json& j, const FinAbGroup& G, const std::string& path);
Coords character_from_json(const json& j, const FinAbGroup& G, const std::string& path);

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& path);

json to_json(const Subspace& W);
Subspace subspace_from_json(const json& j, const std::string& path);
json to_json(const BilinearForm& b);
BilinearForm form_from_json(const json& j, const std::string& path);

json to_json(const OrthAut& a);
OrthAut orth_from_json(const json& j, const FinAbGroup& G, const std::string& path);

json to_json(const GModule& V);
// Reads "group", "u" and "V" from a spec object and validates the module.
GModule module_from_json(const json& j, const std::string& path = "");

// RDatum {"kind": "R", "W", "beta", "alpha"}; ODatum {"kind": "O", "T", "alpha"}.
// Without "kind" the presence of "T" selects the O form.
json to_json(const RDatum& r);
json to_json(const ODatum& o);
using Datum = std::variant<RDatum, ODatum>;
Datum datum_from_json(const json& j, const GModule& V, const std::string& path);

json to_json(const TwoCocycle& psi);
json to_json(const AlphaComponent& c);
json to_json(const BrpicDescription& d);

// {"dim", "basis": labels, "mult": [[i, j, k, c]], "coaction": [[a, h, x, c]]}.
// For a Hopf algebra the coaction is the coproduct.
struct AlgebraDump {
    Algebra alg;
    std::size_t host_dim = 0;
    std::vector<Sparse> coaction;  // keys h * alg.dim + x
};
json to_json(const AlgebraDump& d);
AlgebraDump algebra_from_json(const json& j, const std::string& path);
AlgebraDump dump_of(const HopfAlg& H);
AlgebraDump dump_of(const ComodAlg& A);

struct ProblemSpec {
    GModule V;
    std::optional<json> datum, datum2;
    std::optional<std::size_t> bound;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> suite;
};
// With group_only, "u" and "V" may be absent (V is then empty and u is left empty);
// commands that only need G, such as the orthogonal group listing, use this.
ProblemSpec spec_from_json(const json& j, bool group_only = false);
json to_json(const ProblemSpec& s);

}  // namespace brpic::io
