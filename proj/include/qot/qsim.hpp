#pragma once

// Dense state-vector and density-matrix engine for a handful of qubits.
//
// Qubit 0 is the most significant bit of a basis index, so the ket
// |q0 q1 ... q(n-1)> has index q0*2^(n-1) + ... + q(n-1).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qot/rng.hpp"

namespace qot::qsim {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kEigenTol = 1e-10;
inline constexpr double kProbabilityTol = 1e-9;
// Purifications of 10-qubit states need 20.
inline constexpr int kMaxQubits = 20;

class StateVector {
 public:
  // Throws std::domain_error unless amps has length 2^num_qubits and unit norm.
  StateVector(int num_qubits, Vector amps);

  static StateVector basis(int num_qubits, std::size_t index);
  // Normalizes the given amplitudes; the length must be a power of two.
  static StateVector normalized(const Vector& amps);
  static StateVector normalized(std::initializer_list<Complex> amps);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amps() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  // <this|other>
  Complex inner(const StateVector& other) const;

 private:
  int num_qubits_;
  Vector amps_;
};

StateVector tensor(const StateVector& a, const StateVector& b);
// |<a|b>| == 1 within tol.
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = kConstructionTol);

class Unitary2x2 {
 public:
  explicit Unitary2x2(const Eigen::Matrix2cd& entries);

  static Unitary2x2 identity();
  const Eigen::Matrix2cd& entries() const { return entries_; }
  Unitary2x2 inverse() const;
  Unitary2x2 operator*(const Unitary2x2& rhs) const;

 private:
  Eigen::Matrix2cd entries_;
};

// Real plane rotation [[cos a, -sin a], [sin a, cos a]]; maps |0> to
// cos a |0> + sin a |1>.
Unitary2x2 rotation_plane(double angle);

struct NonorthogonalPair {
  StateVector psi0;
  StateVector psi1;
};

// psi0 = |0>, psi1 = rotation_plane(theta)|0>, so <psi0|psi1> = cos theta.
NonorthogonalPair make_nonorthogonal_pair(double theta);

enum class BellKind { phi_plus, phi_minus, psi_plus, psi_minus };

StateVector bell_state(BellKind kind);
std::string to_string(BellKind kind);

StateVector apply_on_qubit(const StateVector& state, int qubit, const Unitary2x2& u);
StateVector apply_controlled_x(const StateVector& state, int control, int target);
// Applies u to the trailing log2(u.rows()) qubits.
StateVector apply_on_trailing(const StateVector& state, const Matrix& u);

class DensityMatrix {
 public:
  // Validates Hermiticity, trace one and positive semidefiniteness.
  DensityMatrix(int num_qubits, Matrix entries);

  static DensityMatrix pure(const StateVector& s);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

 private:
  int num_qubits_;
  Matrix entries_;
};

class ProjectiveBasis {
 public:
  // Elements must be pairwise orthonormal within kConstructionTol.
  ProjectiveBasis(std::vector<StateVector> states, std::vector<std::string> labels);

  std::size_t size() const { return states_.size(); }
  std::size_t dim() const { return states_.front().dim(); }
  const StateVector& state(std::size_t i) const { return states_[i]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::size_t index_of(const std::string& label) const;

 private:
  std::vector<StateVector> states_;
  std::vector<std::string> labels_;
};

class Povm {
 public:
  // Each effect PSD and the effects summing to the identity, within kConstructionTol.
  Povm(std::vector<Matrix> effects, std::vector<std::string> labels);

  std::size_t size() const { return effects_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(effects_.front().rows()); }
  const Matrix& effect(std::size_t i) const { return effects_[i]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::size_t index_of(const std::string& label) const;

 private:
  std::vector<Matrix> effects_;
  std::vector<std::string> labels_;
};

struct ProjectiveOutcome {
  std::string label;
  std::size_t index;
  StateVector post_state;
};

// Throws std::domain_error when the basis does not span the state's space.
std::vector<double> born_probabilities(const StateVector& state, const ProjectiveBasis& basis);
std::vector<double> born_probabilities(const DensityMatrix& rho, const ProjectiveBasis& basis);
ProjectiveOutcome measure_projective(const StateVector& state, const ProjectiveBasis& basis, RngStream& rng);
// Allocation-free variant for hot loops.
std::size_t measure_projective_index(const StateVector& state, const ProjectiveBasis& basis, RngStream& rng);

std::vector<double> povm_probabilities(const StateVector& state, const Povm& povm);
const std::string& measure_povm(const StateVector& state, const Povm& povm, RngStream& rng);
std::size_t measure_povm_index(const StateVector& state, const Povm& povm, RngStream& rng);

// Draws an index from a discrete distribution summing to one.
std::size_t sample_index(std::span<const double> probabilities, RngStream& rng);

inline const std::string kConclusive0 = "conclusive-0";
inline const std::string kConclusive1 = "conclusive-1";
inline const std::string kInconclusive = "inconclusive";

// Unambiguous discrimination of the make_nonorthogonal_pair(theta) states,
// succeeding with probability 1 - cos theta on either input.
Povm usd_povm(double theta);

struct EnsembleMember {
  double probability;
  StateVector state;
};

DensityMatrix density_from_ensemble(std::span<const EnsembleMember> members);
// keep lists the qubits to retain, in increasing order of significance in the result.
DensityMatrix partial_trace(const DensityMatrix& dm, std::span<const int> keep);
DensityMatrix partial_trace(const StateVector& state, std::span<const int> keep);

// Root fidelity tr sqrt(sqrt(a) b sqrt(a)).
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

// State on 2n qubits (system first, ancilla second) whose reduction to the
// first n qubits is dm.
StateVector purify(const DensityMatrix& dm);

// Square root of a Hermitian PSD matrix; negative eigenvalue noise is clipped.
Matrix psd_sqrt(const Matrix& m);
double min_eigenvalue(const Matrix& hermitian);

}  // namespace qot::qsim
