// Copyright 2026 The qdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdyn/serialize.hpp"

#include "qdyn/errors.hpp"

namespace qdyn {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DimensionMismatch("complex must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw DimensionMismatch("matrix must be a non-empty array");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) throw DimensionMismatch("ragged matrix");
    for (const auto& z : row) entries.push_back(complex_from_json(z));
  }
  return ComplexMatrix::from_row_major(rows, cols, std::move(entries));
}

json to_json(const AMap& a) {
  return json{{"dim", a.dim()}, {"matrix", matrix_to_json(a.matrix())}};
}

AMap amap_from_json(const json& j) {
  return AMap(j.at("dim").get<std::size_t>(), matrix_from_json(j.at("matrix")));
}

json to_json(const CanonicalDecomposition& d) {
  json ops = json::array();
  for (const auto& c : d.operators) ops.push_back(matrix_to_json(c));
  return json{{"dim", d.dim},
              {"eigenvalues", d.eigenvalues},
              {"operators", std::move(ops)},
              {"classification", std::string(to_string(d.classification))},
              {"negativity", d.negativity}};
}

CanonicalDecomposition decomposition_from_json(const json& j) {
  CanonicalDecomposition d;
  d.dim = j.at("dim").get<std::size_t>();
  d.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  for (const auto& op : j.at("operators")) d.operators.push_back(matrix_from_json(op));
  const auto cls = j.at("classification").get<std::string>();
  if (cls != "CP" && cls != "NCP") throw InvalidMap("classification must be CP or NCP");
  d.classification = cls == "CP" ? Classification::CP : Classification::NCP;
  d.negativity = j.at("negativity").get<double>();
  if (d.operators.size() != d.eigenvalues.size()) {
    throw DimensionMismatch("operators and eigenvalues differ in length");
  }
  return d;
}

}  // namespace qdyn
