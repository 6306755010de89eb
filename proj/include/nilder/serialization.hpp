#ifndef NILDER_SERIALIZATION_HPP
#define NILDER_SERIALIZATION_HPP

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nilder/decomposition.hpp"
#include "nilder/endomorphism.hpp"
#include "nilder/factor_solvers.hpp"

namespace nilder {

using Json = nlohmann::json;

/// Malformed or inconsistent JSON payload.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Field elements are strings: "3" for GF(p), "-2/7" for rationals. Integers are accepted on input.
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, Field field);

// {"rows": r, "cols": c, "entries": [[...], ...]}
Json to_json(const Mat& m);
Mat mat_from_json(const Json& j, Field field);

// {"sizes": [n1, ..., nt]}
Json to_json(const Partition& p);
Partition partition_from_json(const Json& j);

/// Algebra header {"field": characteristic (0 for Q), "partition": {...}}.
Json algebra_header(const NilAlgebra& algebra);
AlgebraPtr algebra_from_header(const Json& j);

/// {"algebra": header, "coords": [...]}
Json element_to_json(const NilAlgebra& algebra, const Vec& coords);
Vec element_from_json(const Json& j, const NilAlgebra& algebra);

// {"algebra": header, "matrix": d×d matrix}
Json to_json(const Endo& f);
Endo endo_from_json(const Json& j);
/// Reads the matrix against an algebra that is already known; a header, if present, must match.
Endo endo_from_json(const Json& j, const AlgebraPtr& algebra);

Json to_json(const DerBasis& basis);

// {"in_shape": [r, c], "out_shape": [r, c], "action": matrix}
Json to_json(const BlockLinMap& map);
BlockLinMap blocklinmap_from_json(const Json& j, Field field);

// psi components are null outside characteristic 2.
Json to_json(const DerivationDecomposition& d);
DerivationDecomposition decomposition_from_json(const Json& j, const AlgebraPtr& algebra);

}  // namespace nilder

#endif  // NILDER_SERIALIZATION_HPP
