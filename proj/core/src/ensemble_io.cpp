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

#include "qdh/ensemble_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qdh {

namespace {

using nlohmann::json;

Matrix parse_matrix(const json& rows, int side, const char* name) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != side) {
    throw std::invalid_argument(std::string(name) + ": expected " +
                                std::to_string(side) + " rows");
  }
  Matrix m(side, side);
  for (int r = 0; r < side; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != side) {
      throw std::invalid_argument(std::string(name) + ": row " +
                                  std::to_string(r) + " has wrong length");
    }
    for (int c = 0; c < side; ++c) {
      const json& entry = row[c];
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number()) {
        throw std::invalid_argument(std::string(name) +
                                    ": entries must be [re, im] pairs");
      }
      const double re = entry[0].get<double>();
      const double im = entry[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw std::invalid_argument(std::string(name) +
                                    ": non-finite entry rejected");
      }
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void append_matrix(std::string& out, const Matrix& m) {
  out += "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r > 0) out += ",";
    out += "\n    [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ",";
      out += "[" + format_double(m(r, c).real()) + "," +
             format_double(m(r, c).imag()) + "]";
    }
    out += "]";
  }
  out += "\n  ]";
}

}  // namespace

TwoStateEnsemble parse_ensemble_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("ensemble JSON: ") + err.what());
  }
  for (const char* key : {"dA", "dB", "eta0", "rho0", "rho1"}) {
    if (!doc.contains(key)) {
      throw std::invalid_argument(std::string("ensemble JSON: missing key ") +
                                  key);
    }
  }
  const int dim_a = doc["dA"].get<int>();
  const int dim_b = doc["dB"].get<int>();
  if (dim_a < 1 || dim_b < 1) {
    throw std::invalid_argument("ensemble JSON: dimensions must be positive");
  }
  const double eta0 = doc["eta0"].get<double>();
  if (!std::isfinite(eta0)) {
    throw std::invalid_argument("ensemble JSON: eta0 must be finite");
  }
  const int side = dim_a * dim_b;
  // The BipartiteOperator constructor rejects non-Hermitian matrices.
  BipartiteOperator rho0(dim_a, dim_b, parse_matrix(doc["rho0"], side, "rho0"));
  BipartiteOperator rho1(dim_a, dim_b, parse_matrix(doc["rho1"], side, "rho1"));
  return TwoStateEnsemble(eta0, 1.0 - eta0, std::move(rho0), std::move(rho1));
}

TwoStateEnsemble read_ensemble_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open ensemble file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ensemble_json(buf.str());
}

std::string ensemble_to_json(const TwoStateEnsemble& e) {
  std::string out = "{\n";
  out += "  \"dA\": " + std::to_string(e.dim_a()) + ",\n";
  out += "  \"dB\": " + std::to_string(e.dim_b()) + ",\n";
  out += "  \"eta0\": " + format_double(e.eta0()) + ",\n";
  out += "  \"rho0\": ";
  append_matrix(out, e.rho0().matrix());
  out += ",\n  \"rho1\": ";
  append_matrix(out, e.rho1().matrix());
  out += "\n}\n";
  return out;
}

void write_ensemble_file(const TwoStateEnsemble& e, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot write ensemble file: " + path);
  }
  out << ensemble_to_json(e);
}

}  // namespace qdh
