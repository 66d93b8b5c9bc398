// Copyright 2026 The qpoly Authors
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

#include "qpoly/stream_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpoly/error.hpp"

namespace qpoly {

RetirementSchedule liveness(const Circuit& circuit) {
  const std::size_t n = circuit.n_qubits;
  const std::size_t g_count = circuit.gates.size();
  RetirementSchedule s;
  s.first_use.assign(n, std::nullopt);
  s.last_use.assign(n, std::nullopt);
  for (std::size_t i = 0; i < g_count; ++i) {
    const Gate& g = circuit.gates[i];
    for (std::size_t j = 0; j < g.arity(); ++j) {
      const std::size_t q = g.qubits[j];
      if (q >= n) continue;
      if (!s.first_use[q]) s.first_use[q] = i;
      s.last_use[q] = i;
    }
  }
  if (circuit.measured_qubit < n) {
    const std::size_t m = circuit.measured_qubit;
    if (!s.first_use[m]) s.first_use[m] = g_count;
    s.last_use[m] = g_count;
  }

  // live(i) = #{q : first <= i <= last}, by a difference array over steps.
  std::vector<long> delta(g_count + 2, 0);
  for (std::size_t q = 0; q < n; ++q) {
    if (!s.first_use[q]) continue;
    ++delta[*s.first_use[q]];
    --delta[*s.last_use[q] + 1];
  }
  long live = 0;
  for (std::size_t i = 0; i <= g_count; ++i) {
    live += delta[i];
    s.peak_window = std::max(s.peak_window, static_cast<std::size_t>(live));
  }
  return s;
}

namespace {

using Amp = WindowState::Amplitude;

// Inserts bit b at position j of x.
std::size_t insert_bit(std::size_t x, std::size_t j, std::size_t b) {
  const std::size_t low = x & ((std::size_t{1} << j) - 1);
  return ((x >> j) << (j + 1)) | (b << j) | low;
}

struct Mat2 {
  Amp a, b, c, d;  // [[a, b], [c, d]]
};

Mat2 gate_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::kRy: {
      const double c = std::cos(g.angle / 2);
      const double s = std::sin(g.angle / 2);
      return {c, -s, s, c};
    }
    case GateKind::kRz:
      return {std::polar(1.0, -g.angle / 2), 0.0, 0.0, std::polar(1.0, g.angle / 2)};
    case GateKind::kX:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::kCx:
      break;
  }
  throw InvalidArgument("not a single-qubit gate");
}

Mat2 pauli_matrix(Pauli p) {
  const Amp i1{0.0, 1.0};
  switch (p) {
    case Pauli::kX:
      return {0.0, 1.0, 1.0, 0.0};
    case Pauli::kY:
      return {0.0, -i1, i1, 0.0};
    case Pauli::kZ:
      return {1.0, 0.0, 0.0, -1.0};
  }
  throw InvalidArgument("unknown Pauli");
}

// rho -> U rho U^dagger on local bit j.
void conjugate_1q(std::vector<Amp>& rho, std::size_t dim, std::size_t j, const Mat2& u) {
  const std::size_t bit = std::size_t{1} << j;
  for (std::size_t r = 0; r < dim; ++r) {
    if (r & bit) continue;
    Amp* lo = &rho[r * dim];
    Amp* hi = &rho[(r | bit) * dim];
    for (std::size_t c = 0; c < dim; ++c) {
      const Amp x = lo[c];
      const Amp y = hi[c];
      lo[c] = u.a * x + u.b * y;
      hi[c] = u.c * x + u.d * y;
    }
  }
  const Amp ca = std::conj(u.a), cb = std::conj(u.b), cc = std::conj(u.c), cd = std::conj(u.d);
  for (std::size_t r = 0; r < dim; ++r) {
    Amp* row = &rho[r * dim];
    for (std::size_t c = 0; c < dim; ++c) {
      if (c & bit) continue;
      const Amp x = row[c];
      const Amp y = row[c | bit];
      row[c] = x * ca + y * cb;
      row[c | bit] = x * cc + y * cd;
    }
  }
}

}  // namespace

std::size_t WindowState::local(std::size_t qubit) const {
  const auto it = std::find(active_.begin(), active_.end(), qubit);
  if (it == active_.end()) {
    throw InvalidArgument("qubit " + std::to_string(qubit) + " is not in the window");
  }
  return static_cast<std::size_t>(it - active_.begin());
}

Amp WindowState::trace() const {
  Amp t = 0.0;
  const std::size_t n = dim();
  for (std::size_t r = 0; r < n; ++r) t += rho_[r * n + r];
  return t;
}

double WindowState::hermiticity_error() const {
  const std::size_t n = dim();
  double worst = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      worst = std::max(worst, std::abs(rho_[r * n + c] - std::conj(rho_[c * n + r])));
    }
  }
  return worst;
}

void WindowState::adjoin(std::size_t qubit) {
  if (std::find(active_.begin(), active_.end(), qubit) != active_.end()) {
    throw InvalidArgument("qubit " + std::to_string(qubit) + " is already in the window");
  }
  const std::size_t old_dim = dim();
  const std::size_t new_dim = old_dim * 2;
  // New qubit is the top bit, so |0><0| (x) rho keeps rho in the top-left block.
  std::vector<Amp> next(new_dim * new_dim, Amp{0.0, 0.0});
  for (std::size_t r = 0; r < old_dim; ++r) {
    std::copy_n(&rho_[r * old_dim], old_dim, &next[r * new_dim]);
  }
  rho_ = std::move(next);
  active_.push_back(qubit);
}

void WindowState::retire(std::size_t qubit) {
  const std::size_t j = local(qubit);
  const std::size_t new_dim = dim() / 2;
  const std::size_t old_dim = dim();
  std::vector<Amp> next(new_dim * new_dim, Amp{0.0, 0.0});
  for (std::size_t r = 0; r < new_dim; ++r) {
    for (std::size_t c = 0; c < new_dim; ++c) {
      Amp acc = 0.0;
      for (std::size_t b = 0; b < 2; ++b) {
        acc += rho_[insert_bit(r, j, b) * old_dim + insert_bit(c, j, b)];
      }
      next[r * new_dim + c] = acc;
    }
  }
  rho_ = std::move(next);
  active_.erase(active_.begin() + static_cast<std::ptrdiff_t>(j));
}

void WindowState::apply(const Gate& g) {
  const std::size_t n = dim();
  if (g.kind != GateKind::kCx) {
    conjugate_1q(rho_, n, local(g.qubits[0]), gate_matrix(g));
    return;
  }
  const std::size_t cbit = std::size_t{1} << local(g.qubits[0]);
  const std::size_t tbit = std::size_t{1} << local(g.qubits[1]);
  // CX is a permutation, so conjugation just swaps rows then columns.
  for (std::size_t r = 0; r < n; ++r) {
    if ((r & cbit) && !(r & tbit)) {
      std::swap_ranges(&rho_[r * n], &rho_[r * n] + n, &rho_[(r | tbit) * n]);
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    Amp* row = &rho_[r * n];
    for (std::size_t c = 0; c < n; ++c) {
      if ((c & cbit) && !(c & tbit)) std::swap(row[c], row[c | tbit]);
    }
  }
}

void WindowState::apply_pauli(std::size_t qubit, Pauli pauli) {
  conjugate_1q(rho_, dim(), local(qubit), pauli_matrix(pauli));
}

void WindowState::apply_pauli_channel(std::span<const std::size_t> qubits, double p) {
  if (p == 0.0) return;
  std::vector<Amp> twirled = rho_;
  const std::size_t n = dim();
  // (X r X + Y r Y + Z r Z) / 3 on one qubit maps the 2x2 block
  // [[a, b], [c, d]] to [[(a + 2d)/3, -b/3], [-c/3, (2a + d)/3]].
  for (std::size_t q : qubits) {
    const std::size_t bit = std::size_t{1} << local(q);
    for (std::size_t r = 0; r < n; ++r) {
      if (r & bit) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c & bit) continue;
        Amp& a = twirled[r * n + c];
        Amp& b = twirled[r * n + (c | bit)];
        Amp& cc = twirled[(r | bit) * n + c];
        Amp& d = twirled[(r | bit) * n + (c | bit)];
        const Amp a0 = a, d0 = d;
        a = (a0 + 2.0 * d0) / 3.0;
        d = (2.0 * a0 + d0) / 3.0;
        b /= -3.0;
        cc /= -3.0;
      }
    }
  }
  for (std::size_t i = 0; i < rho_.size(); ++i) rho_[i] = (1.0 - p) * rho_[i] + p * twirled[i];
}

double WindowState::expect_z(std::size_t qubit) const {
  const std::size_t bit = std::size_t{1} << local(qubit);
  const std::size_t n = dim();
  double acc = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double p = rho_[r * n + r].real();
    acc += (r & bit) ? -p : p;
  }
  return std::clamp(acc, -1.0, 1.0);
}

namespace {

void check_window_cap(std::size_t cap) {
  if (cap == 0 || cap > kMaxWindowCap) {
    throw InvalidArgument("window cap must lie in [1, " + std::to_string(kMaxWindowCap) + "]");
  }
}

void check_stream_runnable(const Circuit& circuit, const RetirementSchedule& s, std::size_t cap) {
  const auto violations = validate(circuit);
  if (!violations.empty()) throw CircuitError(format_violations(violations));
  if (s.peak_window <= cap) return;
  // Locate the first gate where the live set overflows.
  std::size_t live = 0;
  const std::size_t g_count = circuit.gates.size();
  for (std::size_t i = 0; i <= g_count; ++i) {
    for (std::size_t q = 0; q < circuit.n_qubits; ++q) {
      if (s.first_use[q] == i) ++live;
    }
    if (live > cap) {
      const std::string where =
          i < g_count ? "gate index " + std::to_string(i) : "the final measurement";
      throw CapacityError("window overflow at " + where + ": " + std::to_string(live) +
                          " live qubits exceed the cap of " + std::to_string(cap) +
                          "; compile with forward aggregation order to keep the window small");
    }
    for (std::size_t q = 0; q < circuit.n_qubits; ++q) {
      if (s.last_use[q] == i) --live;
    }
  }
}

double run_checked(const Circuit& circuit, const RetirementSchedule& s,
                   std::span<const PauliInsertion> insertions, const WindowObserver& observer,
                   const NoiseModel* noise = nullptr) {
  const std::size_t g_count = circuit.gates.size();
  // Qubits grouped by the step at which they join and leave.
  std::vector<std::vector<std::size_t>> joins(g_count + 1), leaves(g_count + 1);
  for (std::size_t q = 0; q < circuit.n_qubits; ++q) {
    if (!s.first_use[q]) continue;
    joins[*s.first_use[q]].push_back(q);
    leaves[*s.last_use[q]].push_back(q);
  }

  WindowState state;
  auto next = insertions.begin();
  for (std::size_t i = 0; i < g_count; ++i) {
    for (std::size_t q : joins[i]) state.adjoin(q);
    const Gate& g = circuit.gates[i];
    state.apply(g);
    if (noise) {
      const std::size_t arity = g.arity();
      state.apply_pauli_channel(std::span(g.qubits.data(), arity),
                                arity == 2 ? noise->p2 : noise->p1);
    }
    for (; next != insertions.end() && next->after_gate == i; ++next) {
      state.apply_pauli(next->qubit, next->pauli);
    }
    for (std::size_t q : leaves[i]) state.retire(q);
    if (observer) observer(state, i);
  }
  for (std::size_t q : joins[g_count]) state.adjoin(q);
  if (observer) observer(state, g_count);
  return state.expect_z(circuit.measured_qubit);
}

}  // namespace

double run_window(const Circuit& circuit, std::size_t window_cap,
                  std::span<const PauliInsertion> insertions, const WindowObserver& observer) {
  check_window_cap(window_cap);
  const RetirementSchedule s = liveness(circuit);
  check_stream_runnable(circuit, s, window_cap);
  return run_checked(circuit, s, insertions, observer);
}

double run_window_noisy(const Circuit& circuit, const NoiseModel& noise, std::size_t window_cap) {
  noise.check();
  check_window_cap(window_cap);
  const RetirementSchedule s = liveness(circuit);
  check_stream_runnable(circuit, s, window_cap);
  if (noise.is_noiseless()) return run_checked(circuit, s, {}, nullptr);
  return run_checked(circuit, s, {}, nullptr, &noise);
}

ShotOutcome sample_output_stream(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                                 const std::optional<NoiseModel>& noise, std::size_t window_cap,
                                 StreamNoise method) {
  if (shots == 0) throw InvalidArgument("shot count must be >= 1");
  check_window_cap(window_cap);
  const RetirementSchedule s = liveness(circuit);
  check_stream_runnable(circuit, s, window_cap);
  if (!noise || noise->is_noiseless()) {
    return sample_from_expectation(run_checked(circuit, s, {}, nullptr), shots, seed);
  }
  noise->check();
  if (method == StreamNoise::kChannel) {
    return sample_from_expectation(run_checked(circuit, s, {}, nullptr, &*noise), shots, seed);
  }
  return sample_trajectories(circuit, shots, seed, *noise,
                             [&](std::span<const PauliInsertion> ins) {
                               return run_checked(circuit, s, ins, nullptr);
                             });
}

}  // namespace qpoly
