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

// JSON encoding for maps and decompositions. Complex numbers are [re, im]
// pairs and matrices nested row-major arrays.

#pragma once

#include <json.hpp>

#include "qdyn/dynmap.hpp"

namespace qdyn {

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// {"dim", "matrix"}.
nlohmann::json to_json(const AMap& a);
AMap amap_from_json(const nlohmann::json& j);

/// {"dim", "eigenvalues", "operators", "classification", "negativity"}.
nlohmann::json to_json(const CanonicalDecomposition& d);
CanonicalDecomposition decomposition_from_json(const nlohmann::json& j);

}  // namespace qdyn
