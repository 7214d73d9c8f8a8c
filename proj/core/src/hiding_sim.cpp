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

#include "qdh/hiding_sim.hpp"

#include <cmath>
#include <cstdio>

#include "qdh/bounds.hpp"

namespace qdh {

namespace {

constexpr double kOrthogonalityTol = 1e-9;
constexpr double kUnitaryTol = 1e-10;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Samples an index from a cumulative distribution (last entry ~ 1).
int sample_cdf(const std::vector<double>& cdf, double u) {
  for (std::size_t i = 0; i + 1 < cdf.size(); ++i) {
    if (u < cdf[i]) return static_cast<int>(i);
  }
  return static_cast<int>(cdf.size() - 1);
}

// Per-copy context for the global decoder: outcome-0 probability of the
// support measurement of rho0 under each state.
struct GlobalContext {
  double p_outcome0[2];

  explicit GlobalContext(const TwoStateEnsemble& base) {
    const BipartiteOperator proj = support_projector(base.rho0());
    p_outcome0[0] = (base.rho0().matrix() * proj.matrix()).trace().real();
    p_outcome0[1] = (base.rho1().matrix() * proj.matrix()).trace().real();
  }
};

// Per-copy context for the adversary: outcome distributions under both
// states in the chosen product basis, plus the posterior bias
// delta(o) = P(b=0|o) - P(b=1|o) for each outcome.
struct AdversaryContext {
  std::vector<double> cdf[2];
  std::vector<double> delta;

  AdversaryContext(const TwoStateEnsemble& base,
                   const AdversaryStrategy& strategy) {
    strategy.validate();
    if (strategy.basis_a.rows() != base.dim_a() ||
        strategy.basis_b.rows() != base.dim_b()) {
      throw std::invalid_argument(
          "strategy basis dimensions do not match the ensemble");
    }
    const Matrix u = kron(strategy.basis_a, strategy.basis_b);
    const int outcomes = static_cast<int>(u.cols());
    std::vector<double> prob[2];
    for (int i = 0; i < 2; ++i) {
      const Matrix& rho =
          (i == 0 ? base.rho0() : base.rho1()).matrix();
      prob[i].resize(outcomes);
      cdf[i].resize(outcomes);
      double acc = 0.0;
      for (int o = 0; o < outcomes; ++o) {
        const double p =
            std::max(0.0, (u.col(o).adjoint() * rho * u.col(o))(0).real());
        prob[i][o] = p;
        acc += p;
        cdf[i][o] = acc;
      }
      for (int o = 0; o < outcomes; ++o) cdf[i][o] /= acc;
    }
    delta.resize(outcomes);
    const double eta0 = base.eta0();
    const double eta1 = base.eta1();
    for (int o = 0; o < outcomes; ++o) {
      const double w0 = eta0 * prob[0][o];
      const double w1 = eta1 * prob[1][o];
      const double total = w0 + w1;
      delta[o] = total > 0.0 ? (w0 - w1) / total : 0.0;
    }
  }
};

int decode_with_context(const HidingInstance& inst, const GlobalContext& ctx,
                        SplitMix64& rng) {
  int recovered_parity = 0;
  for (std::uint8_t b : inst.string) {
    const int outcome = rng.next_bool(ctx.p_outcome0[b]) ? 0 : 1;
    recovered_parity ^= outcome;
  }
  return inst.broadcast ^ recovered_parity;
}

int decode_with_context(const HidingInstance& inst,
                        const AdversaryContext& ctx, SplitMix64& rng) {
  // P(parity = 0 | outcomes) = (1 + prod delta_l) / 2; guess the likelier
  // parity, ties toward 0.
  double bias_product = 1.0;
  for (std::uint8_t b : inst.string) {
    const int outcome = sample_cdf(ctx.cdf[b], rng.next_double());
    bias_product *= ctx.delta[outcome];
  }
  const int guessed_parity = bias_product >= 0.0 ? 0 : 1;
  return inst.broadcast ^ guessed_parity;
}

}  // namespace

int parity(const std::vector<std::uint8_t>& bits) {
  int p = 0;
  for (std::uint8_t b : bits) p ^= (b & 1);
  return p;
}

HidingInstance hide(const TwoStateEnsemble& base, int copies, int secret_bit,
                    SplitMix64& rng) {
  if (copies < 1) throw std::invalid_argument("need at least one copy");
  if (secret_bit != 0 && secret_bit != 1) {
    throw std::invalid_argument("secret bit must be 0 or 1");
  }
  HidingInstance inst;
  inst.base = &base;
  inst.copies = copies;
  inst.secret_bit = secret_bit;
  inst.string.resize(copies);
  for (int l = 0; l < copies; ++l) {
    inst.string[l] = rng.next_bool(base.eta0()) ? 0 : 1;
  }
  inst.broadcast = secret_bit ^ parity(inst.string);
  return inst;
}

AdversaryStrategy AdversaryStrategy::computational(int dim_a, int dim_b) {
  AdversaryStrategy s;
  s.basis_a = Matrix::Identity(dim_a, dim_a);
  s.basis_b = Matrix::Identity(dim_b, dim_b);
  return s;
}

void AdversaryStrategy::validate() const {
  for (const Matrix* basis : {&basis_a, &basis_b}) {
    if (basis->rows() != basis->cols() || basis->rows() == 0) {
      throw std::invalid_argument("strategy basis must be square");
    }
    const Matrix gram = basis->adjoint() * (*basis);
    if (max_abs(gram - Matrix::Identity(basis->rows(), basis->cols())) >
        kUnitaryTol) {
      throw std::invalid_argument("strategy basis is not unitary");
    }
  }
}

int global_decode(const HidingInstance& inst, SplitMix64& rng) {
  if (!are_orthogonal(*inst.base, kOrthogonalityTol)) {
    throw std::invalid_argument(
        "global decoder requires orthogonal base states");
  }
  return decode_with_context(inst, GlobalContext(*inst.base), rng);
}

int adversary_decode(const HidingInstance& inst,
                     const AdversaryStrategy& strategy, SplitMix64& rng) {
  return decode_with_context(inst, AdversaryContext(*inst.base, strategy),
                             rng);
}

SimReport run_sim(const TwoStateEnsemble& base, int m, std::uint64_t trials,
                  const AdversaryStrategy& strategy, std::uint64_t seed,
                  double tr_abs_h) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (m < 0 || m > 39) throw std::invalid_argument("m must be in [0, 39]");
  if (!are_orthogonal(base, kOrthogonalityTol)) {
    throw std::invalid_argument(
        "simulation requires orthogonal base states");
  }

  std::int64_t copies = 1;
  for (int k = 0; k < m; ++k) copies *= 3;

  const GlobalContext global_ctx(base);
  const AdversaryContext adversary_ctx(base, strategy);

  std::uint64_t global_hits = 0;
  std::uint64_t adversary_hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng = trial_stream(seed, t);
    const int secret = rng.next_bool(0.5) ? 0 : 1;
    const HidingInstance inst =
        hide(base, static_cast<int>(copies), secret, rng);
    global_hits += decode_with_context(inst, global_ctx, rng) == secret;
    adversary_hits += decode_with_context(inst, adversary_ctx, rng) == secret;
  }

  SimReport report;
  report.trials = trials;
  report.m = m;
  report.copies = copies;
  report.seed = seed;
  report.global_success =
      static_cast<double>(global_hits) / static_cast<double>(trials);
  report.adversary_success =
      static_cast<double>(adversary_hits) / static_cast<double>(trials);
  report.adversary_stderr =
      std::sqrt(report.adversary_success * (1.0 - report.adversary_success) /
                static_cast<double>(trials));
  report.bound = 0.5 + lift_contraction_iterate(tr_abs_h, m);
  return report;
}

std::string SimReport::to_json() const {
  std::string out = "{";
  out += "\"trials\": " + std::to_string(trials);
  out += ", \"m\": " + std::to_string(m);
  out += ", \"L\": " + std::to_string(copies);
  out += ", \"seed\": " + std::to_string(seed);
  out += ", \"global_success\": " + format_double(global_success);
  out += ", \"adversary_success\": " + format_double(adversary_success);
  out += ", \"adversary_stderr\": " + format_double(adversary_stderr);
  out += ", \"bound\": " + format_double(bound);
  out += "}";
  return out;
}

std::string SimReport::to_csv() const {
  std::string out =
      "trials,m,L,seed,global_success,adversary_success,adversary_stderr,"
      "bound\n";
  out += std::to_string(trials) + "," + std::to_string(m) + "," +
         std::to_string(copies) + "," + std::to_string(seed) + "," +
         format_double(global_success) + "," + format_double(adversary_success) +
         "," + format_double(adversary_stderr) + "," + format_double(bound) +
         "\n";
  return out;
}

}  // namespace qdh
