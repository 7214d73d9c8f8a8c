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

#ifndef QDH_HIDING_SIM_HPP
#define QDH_HIDING_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qdh/ensemble.hpp"
#include "qdh/rng.hpp"

namespace qdh {

/// One round of the hiding protocol: the hider samples an L-bit string
/// (state rho_{b_l} shared in round l) and broadcasts the secret bit
/// XORed with the string's parity. The joint L-copy state is never
/// materialized; everything factorizes per copy.
struct HidingInstance {
  const TwoStateEnsemble* base = nullptr;  // non-owning; outlives instance
  int copies = 0;
  int secret_bit = 0;
  std::vector<std::uint8_t> string;
  int broadcast = 0;  // secret_bit XOR parity(string)
};

/// Modulo-2 sum of the entries.
int parity(const std::vector<std::uint8_t>& bits);

/// Samples the hider's string i.i.d. with P(b_l = i) = eta_i and computes
/// the broadcast bit.
HidingInstance hide(const TwoStateEnsemble& base, int copies, int secret_bit,
                    SplitMix64& rng);

/// Per-copy local measurement in fixed product bases followed by optimal
/// classical parity post-processing; a concrete LOCC adversary.
struct AdversaryStrategy {
  enum class Kind { kPerCopyLocalBases };
  Kind kind = Kind::kPerCopyLocalBases;
  Matrix basis_a;  // columns form an orthonormal basis of C^{d_A}
  Matrix basis_b;

  static AdversaryStrategy computational(int dim_a, int dim_b);

  /// Throws unless both bases are unitary to 1e-10.
  void validate() const;
};

/// Measures the support of rho0 on every copy (perfect for orthogonal
/// ensembles) and XORs the recovered parity into the broadcast. Throws if
/// the base states are not orthogonal, since the decoder is only exact in
/// that case.
int global_decode(const HidingInstance& inst, SplitMix64& rng);

/// Samples each copy's local-basis outcome by the Born rule, forms the
/// per-copy posterior bias, combines biases into the parity posterior and
/// guesses the likelier parity (ties toward 0).
int adversary_decode(const HidingInstance& inst,
                     const AdversaryStrategy& strategy, SplitMix64& rng);

struct SimReport {
  std::uint64_t trials = 0;
  int m = 0;
  std::int64_t copies = 1;  // 3^m
  double global_success = 0.0;
  double adversary_success = 0.0;
  double adversary_stderr = 0.0;
  double bound = 1.0;  // 1/2 + contraction^[m](tr_abs_h)
  std::uint64_t seed = 0;

  std::string to_json() const;
  std::string to_csv() const;
};

/// Runs `trials` independent protocol rounds at L = 3^m copies with both
/// the global decoder and the local-basis adversary, and attaches the
/// certified concealment bound derived from tr_abs_h (the trace norm of a
/// hiding certificate for the base ensemble). Identical inputs produce
/// bit-identical reports.
SimReport run_sim(const TwoStateEnsemble& base, int m, std::uint64_t trials,
                  const AdversaryStrategy& strategy, std::uint64_t seed,
                  double tr_abs_h);

}  // namespace qdh

#endif  // QDH_HIDING_SIM_HPP
