#pragma once

// Adversarial strategies against the OT and commitment constructions.
// The USD receiver lives in rot (ReceiverStrategy::usd).

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qot/bitcommit.hpp"
#include "qot/campaign.hpp"
#include "qot/qsim.hpp"
#include "qot/rng.hpp"

namespace qot::attacks {

using qsim::DensityMatrix;
using qsim::Matrix;
using qsim::StateVector;
using rot::Bit;

// ---- Purification (no-go) attack on commitment over OT ---------------

struct NoGoInstance {
  std::size_t two_k = 2;
  double theta = std::numbers::pi / 4;
  Bit parity0 = 0;
  Bit parity1 = 1;

  void validate() const;
};

inline constexpr std::size_t kMaxNoGoQubits = 10;

// rho_b: uniform mixture of |Psi_r1> ... |Psi_r2k> over strings r with parity parity_b.
std::pair<DensityMatrix, DensityMatrix> nogo_reduced_states(const NoGoInstance& inst);

double nogo_fidelity(const NoGoInstance& inst);

struct CheatingUnitary {
  StateVector phi0;  // purification of rho0 (system qubits first)
  StateVector phi1;  // purification of rho1
  Matrix unitary;    // acts on the purifying register only
};

// Uhlmann construction: with purifications written as system x ancilla
// matrices X0, X1 and SVD X0^dagger X1 = P S Q^dagger, U = conj(Q P^dagger)
// attains |<(I x U) phi0 | phi1>| = F(rho0, rho1).
CheatingUnitary nogo_cheating_unitary(const DensityMatrix& rho0, const DensityMatrix& rho1);

// |<(I x U) phi0 | phi1>|, by applying U to the ancilla of phi0.
double achieved_overlap(const CheatingUnitary& cheat);

struct CheatReport {
  double fidelity = 0;
  double achieved_overlap = 0;
  double detection_probability = 0;  // 1 - overlap^2
};

CheatReport nogo_cheat_report(const NoGoInstance& inst);

// ---- Share-flip forgeries against commitment over OT -------------------

// Opens 1 - b by flipping one share per round. When compensate is set the
// sender also flips one revealed r bit in the matching set so that the
// ciphertext check still passes; guesses[i] picks the set (0 = X, 1 = Y)
// and the flipped position within it.
bc::OpenMessage forge_share_flip_open(const bc::SenderState& sender, bool compensate,
                                      std::span<const Bit> guesses = {});

// ---- Probe entanglement against the Bell-pair commitment -------------

struct ProbeAttackReport {
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t qubits = 0;
  std::uint64_t detections = 0;
  std::uint64_t successful_runs = 0;  // runs with no detection at all
  double per_qubit_detection = 0;
  double detection_ci_low = 0;
  double detection_ci_high = 0;
  double run_success = 0;
  double success_ci_low = 0;
  double success_ci_high = 0;
};

// Three-qubit register (probe, I, II) = (|000> - |111>)/sqrt 2 after the
// committer copies qubit I onto her probe, followed by the r-dependent
// rotation of qubit I.
StateVector probe_entangled_state(Bit r);

// Distribution of Bob's outcome on (I, II) for the probed state.
std::vector<double> p3_probe_distribution(Bit r, rot::BasisChoice basis);
// Distribution on the honest, unprobed pair.
std::vector<double> p3_honest_distribution(Bit r, rot::BasisChoice basis);

ProbeAttackReport probe_attack_p3(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                  Execution exec = Execution::parallel);

struct ProbeP4Options {
  bool with_probe = true;
  std::optional<double> forced_alpha;
};

ProbeAttackReport probe_attack_p4(std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                  const ProbeP4Options& options = {}, Execution exec = Execution::parallel);

// ---- Qubit omission against the direct commitment ----------------------

struct OmissionOutcome {
  bool detected_at_commit = false;
  bool open_zero_accepted = false;
  bool open_one_accepted = false;
  std::vector<std::size_t> withheld;  // index within each string

  bool binding_broken() const { return open_zero_accepted && open_one_accepted; }
};

// Withholds one qubit per string and later picks its declared value to make
// F(r) equal whichever bit is being opened.
OmissionOutcome omission_attack_p5(std::size_t n, std::size_t m, bool perfect_detectors, RngStream& rng);

}  // namespace qot::attacks
