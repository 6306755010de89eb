#include "nilder/serialization.hpp"

namespace nilder {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing key '") + key + "'");
  return *it;
}

std::size_t size_value(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw FormatError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

Json shape_json(Shape s) { return Json::array({s.rows, s.cols}); }

Shape shape_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("shape must be [rows, cols]");
  return {size_value(j[0], "shape"), size_value(j[1], "shape")};
}

}  // namespace

Json to_json(const Scalar& s) { return s.to_string(); }

Scalar scalar_from_json(const Json& j, Field field) {
  try {
    if (j.is_string()) return field.parse(j.get<std::string>());
    if (j.is_number_integer()) return field.from_int(j.get<std::int64_t>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad field element: ") + e.what());
  } catch (const std::domain_error& e) {
    throw FormatError(std::string("bad field element: ") + e.what());
  }
  throw FormatError("field element must be a string or an integer");
}

Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Mat mat_from_json(const Json& j, Field field) {
  const auto rows = size_value(member(j, "rows"), "rows");
  const auto cols = size_value(member(j, "cols"), "cols");
  const auto& entries = member(j, "entries");
  if (!entries.is_array() || entries.size() != rows) throw FormatError("entries must hold one array per row");
  Mat m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!entries[r].is_array() || entries[r].size() != cols)
      throw FormatError("row " + std::to_string(r) + " must hold " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(entries[r][c], field);
  }
  return m;
}

Json to_json(const Partition& p) { return {{"sizes", p.sizes()}}; }

Partition partition_from_json(const Json& j) {
  const auto& sizes = member(j, "sizes");
  if (!sizes.is_array()) throw FormatError("sizes must be an array");
  std::vector<std::size_t> out;
  for (const auto& s : sizes) out.push_back(size_value(s, "block size"));
  try {
    return Partition(std::move(out));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Json algebra_header(const NilAlgebra& algebra) {
  return {{"field", algebra.field().characteristic()}, {"partition", to_json(algebra.partition())}};
}

AlgebraPtr algebra_from_header(const Json& j) {
  const auto& field = member(j, "field");
  if (!field.is_number_integer()) throw FormatError("field must be an integer characteristic");
  try {
    return make_algebra(Field::make(field.get<std::int64_t>()), partition_from_json(member(j, "partition")));
  } catch (const FieldError& e) {
    throw FormatError(e.what());
  }
}

Json element_to_json(const NilAlgebra& algebra, const Vec& coords) {
  Json c = Json::array();
  for (const auto& x : coords) c.push_back(to_json(x));
  return {{"algebra", algebra_header(algebra)}, {"coords", std::move(c)}};
}

Vec element_from_json(const Json& j, const NilAlgebra& algebra) {
  const auto& coords = member(j, "coords");
  if (!coords.is_array() || coords.size() != algebra.dimension())
    throw FormatError("coords must hold " + std::to_string(algebra.dimension()) + " entries");
  Vec out;
  for (const auto& x : coords) out.push_back(scalar_from_json(x, algebra.field()));
  return out;
}

Json to_json(const Endo& f) {
  return {{"algebra", algebra_header(f.algebra())}, {"matrix", to_json(f.matrix())}};
}

Endo endo_from_json(const Json& j) { return endo_from_json(j, algebra_from_header(member(j, "algebra"))); }

Endo endo_from_json(const Json& j, const AlgebraPtr& algebra) {
  if (j.is_object() && j.contains("algebra")) {
    auto header = algebra_from_header(j["algebra"]);
    if (header->field() != algebra->field() || !(header->partition() == algebra->partition()))
      throw FormatError("endomorphism belongs to a different algebra");
  }
  Mat m = mat_from_json(member(j, "matrix"), algebra->field());
  try {
    return Endo(algebra, std::move(m));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const DerBasis& basis) {
  Json out = Json::array();
  for (const auto& g : basis.generators) out.push_back(to_json(g));
  return out;
}

Json to_json(const BlockLinMap& map) {
  return {{"in_shape", shape_json(map.in_shape())},
          {"out_shape", shape_json(map.out_shape())},
          {"action", to_json(map.action())}};
}

BlockLinMap blocklinmap_from_json(const Json& j, Field field) {
  auto in = shape_from_json(member(j, "in_shape"));
  auto out = shape_from_json(member(j, "out_shape"));
  try {
    return BlockLinMap(in, out, mat_from_json(member(j, "action"), field));
  } catch (const FormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const DerivationDecomposition& d) {
  auto optional_endo = [](const std::optional<Endo>& f) -> Json { return f ? to_json(*f) : Json(nullptr); };
  return {{"X", to_json(d.x)},
          {"varphi_1t", to_json(d.varphi_1t)},
          {"phi_12_2t", to_json(d.phi_12_2t)},
          {"phi_t1t_1t1", to_json(d.phi_t1t_1t1)},
          {"psi_12_13", optional_endo(d.psi_12_13)},
          {"psi_t1_t2", optional_endo(d.psi_t1_t2)}};
}

DerivationDecomposition decomposition_from_json(const Json& j, const AlgebraPtr& algebra) {
  auto optional_endo = [&](const char* key) -> std::optional<Endo> {
    const auto& v = member(j, key);
    if (v.is_null()) return std::nullopt;
    return endo_from_json(v, algebra);
  };
  Mat x = mat_from_json(member(j, "X"), algebra->field());
  if (x.rows() != algebra->matrix_size() || x.cols() != algebra->matrix_size())
    throw FormatError("X must be " + std::to_string(algebra->matrix_size()) + "x" +
                      std::to_string(algebra->matrix_size()));
  return {std::move(x),
          endo_from_json(member(j, "varphi_1t"), algebra),
          endo_from_json(member(j, "phi_12_2t"), algebra),
          endo_from_json(member(j, "phi_t1t_1t1"), algebra),
          optional_endo("psi_12_13"),
          optional_endo("psi_t1_t2")};
}

}  // namespace nilder
