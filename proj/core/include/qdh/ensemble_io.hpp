// Copyright 2026 The qdh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QDH_ENSEMBLE_IO_HPP
#define QDH_ENSEMBLE_IO_HPP

#include <string>

#include "qdh/ensemble.hpp"

namespace qdh {

/// Ensemble file format: a JSON document
///   {"dA": int, "dB": int, "eta0": float, "rho0": M, "rho1": M}
/// where M is a row-major nested array of [re, im] pairs and floats are
/// IEEE-754 doubles. Non-Hermitian or non-finite inputs are rejected.
TwoStateEnsemble parse_ensemble_json(const std::string& text);
TwoStateEnsemble read_ensemble_file(const std::string& path);

/// Serializes with full double precision (17 significant digits).
std::string ensemble_to_json(const TwoStateEnsemble& e);
void write_ensemble_file(const TwoStateEnsemble& e, const std::string& path);

}  // namespace qdh

#endif  // QDH_ENSEMBLE_IO_HPP
