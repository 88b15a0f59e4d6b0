#include "qot/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qot::qsim {

namespace {

int qubits_for_dim(std::size_t dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::domain_error("dimension is not a power of two >= 2");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

void check_qubit_count(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::domain_error("qubit count out of supported range");
  }
}

// Outcomes below this Born weight are treated as impossible when sampling.
constexpr double kNegligible = 1e-15;

// Bit of qubit q inside basis index i for an n-qubit register.
inline std::size_t qubit_bit(std::size_t i, int q, int n) { return (i >> (n - 1 - q)) & 1U; }

}  // namespace

StateVector::StateVector(int num_qubits, Vector amps) : num_qubits_(num_qubits), amps_(std::move(amps)) {
  check_qubit_count(num_qubits);
  if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << num_qubits)) {
    throw std::domain_error("StateVector: amplitude count must be 2^num_qubits");
  }
  if (std::abs(amps_.squaredNorm() - 1.0) > kConstructionTol) {
    throw std::domain_error("StateVector: amplitudes are not normalized");
  }
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  check_qubit_count(num_qubits);
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw std::domain_error("StateVector::basis: index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(num_qubits, std::move(v));
}

StateVector StateVector::normalized(const Vector& amps) {
  const int n = qubits_for_dim(static_cast<std::size_t>(amps.size()));
  const double norm = amps.norm();
  if (norm == 0.0) throw std::domain_error("StateVector::normalized: zero vector");
  return StateVector(n, amps / norm);
}

StateVector StateVector::normalized(std::initializer_list<Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (const Complex& a : amps) v(i++) = a;
  return normalized(v);
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw std::domain_error("inner: dimension mismatch");
  return amps_.dot(other.amps_);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Vector v(static_cast<Eigen::Index>(a.dim() * b.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      v(static_cast<Eigen::Index>(i * b.dim() + j)) = a[i] * b[j];
    }
  }
  return StateVector(a.num_qubits() + b.num_qubits(), std::move(v));
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return std::abs(1.0 - std::abs(a.inner(b))) <= tol;
}

Unitary2x2::Unitary2x2(const Eigen::Matrix2cd& entries) : entries_(entries) {
  const Eigen::Matrix2cd product = entries_.adjoint() * entries_;
  if ((product - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > kConstructionTol) {
    throw std::domain_error("Unitary2x2: matrix is not unitary");
  }
}

Unitary2x2 Unitary2x2::identity() { return Unitary2x2(Eigen::Matrix2cd::Identity()); }

Unitary2x2 Unitary2x2::inverse() const { return Unitary2x2(entries_.adjoint()); }

Unitary2x2 Unitary2x2::operator*(const Unitary2x2& rhs) const { return Unitary2x2(entries_ * rhs.entries_); }

Unitary2x2 rotation_plane(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix2cd m;
  m << c, -s, s, c;
  return Unitary2x2(m);
}

NonorthogonalPair make_nonorthogonal_pair(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + kConstructionTol)) {
    throw std::domain_error("make_nonorthogonal_pair: theta must lie in [0, pi/2]");
  }
  StateVector zero = StateVector::basis(1, 0);
  StateVector rotated = apply_on_qubit(zero, 0, rotation_plane(theta));
  return {std::move(zero), std::move(rotated)};
}

StateVector bell_state(BellKind kind) {
  const double h = std::numbers::sqrt2 / 2;
  Vector v = Vector::Zero(4);
  switch (kind) {
    case BellKind::phi_plus: v << h, 0, 0, h; break;
    case BellKind::phi_minus: v << h, 0, 0, -h; break;
    case BellKind::psi_plus: v << 0, h, h, 0; break;
    case BellKind::psi_minus: v << 0, h, -h, 0; break;
  }
  return StateVector(2, std::move(v));
}

std::string to_string(BellKind kind) {
  switch (kind) {
    case BellKind::phi_plus: return "Phi+";
    case BellKind::phi_minus: return "Phi-";
    case BellKind::psi_plus: return "Psi+";
    case BellKind::psi_minus: return "Psi-";
  }
  return "?";
}

StateVector apply_on_qubit(const StateVector& state, int qubit, const Unitary2x2& u) {
  const int n = state.num_qubits();
  if (qubit < 0 || qubit >= n) throw std::domain_error("apply_on_qubit: qubit index out of range");
  const std::size_t stride = std::size_t{1} << (n - 1 - qubit);
  const auto& m = u.entries();
  Vector out = state.amps();
  for (std::size_t base = 0; base < state.dim(); base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const auto i0 = static_cast<Eigen::Index>(base + off);
      const auto i1 = static_cast<Eigen::Index>(base + off + stride);
      const Complex a = out(i0);
      const Complex b = out(i1);
      out(i0) = m(0, 0) * a + m(0, 1) * b;
      out(i1) = m(1, 0) * a + m(1, 1) * b;
    }
  }
  return StateVector(n, std::move(out));
}

StateVector apply_controlled_x(const StateVector& state, int control, int target) {
  const int n = state.num_qubits();
  if (control < 0 || control >= n || target < 0 || target >= n || control == target) {
    throw std::domain_error("apply_controlled_x: invalid qubit indices");
  }
  const std::size_t flip = std::size_t{1} << (n - 1 - target);
  Vector out = state.amps();
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (qubit_bit(i, control, n) == 1 && qubit_bit(i, target, n) == 0) {
      std::swap(out(static_cast<Eigen::Index>(i)), out(static_cast<Eigen::Index>(i | flip)));
    }
  }
  return StateVector(n, std::move(out));
}

StateVector apply_on_trailing(const StateVector& state, const Matrix& u) {
  const auto sub = static_cast<std::size_t>(u.rows());
  if (u.rows() != u.cols() || sub > state.dim() || state.dim() % sub != 0) {
    throw std::domain_error("apply_on_trailing: incompatible operator size");
  }
  const std::size_t lead = state.dim() / sub;
  // Row-major view: amplitude(s, a) = amps[s * sub + a].
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> in(state.amps().data(), static_cast<Eigen::Index>(lead), static_cast<Eigen::Index>(sub));
  RowMajor result = in * u.transpose();
  Vector out = Eigen::Map<const Vector>(result.data(), result.size());
  return StateVector(state.num_qubits(), std::move(out));
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigen decomposition failed");
  return solver.eigenvalues().minCoeff();
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigen decomposition failed");
  // Eigenvalues within round-off of zero are zeroed; their square roots would
  // otherwise be of order 1e-8.
  const double floor = 1e-14 * std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
  const Eigen::VectorXd roots =
      solver.eigenvalues().unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

DensityMatrix::DensityMatrix(int num_qubits, Matrix entries) : num_qubits_(num_qubits), entries_(std::move(entries)) {
  check_qubit_count(num_qubits);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw std::domain_error("DensityMatrix: shape must be 2^n x 2^n");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kConstructionTol) {
    throw std::domain_error("DensityMatrix: not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex(1.0)) > kConstructionTol) {
    throw std::domain_error("DensityMatrix: trace is not one");
  }
  if (min_eigenvalue(entries_) < -kEigenTol) {
    throw std::domain_error("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& s) {
  return DensityMatrix(s.num_qubits(), s.amps() * s.amps().adjoint());
}

ProjectiveBasis::ProjectiveBasis(std::vector<StateVector> states, std::vector<std::string> labels)
    : states_(std::move(states)), labels_(std::move(labels)) {
  if (states_.empty() || states_.size() != labels_.size()) {
    throw std::domain_error("ProjectiveBasis: need one label per element");
  }
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].dim() != states_[0].dim()) throw std::domain_error("ProjectiveBasis: mixed dimensions");
    for (std::size_t j = i + 1; j < states_.size(); ++j) {
      if (std::abs(states_[i].inner(states_[j])) > kConstructionTol) {
        throw std::domain_error("ProjectiveBasis: elements " + labels_[i] + " and " + labels_[j] +
                                " are not orthogonal");
      }
    }
  }
}

std::size_t ProjectiveBasis::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::out_of_range("ProjectiveBasis: unknown label " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

Povm::Povm(std::vector<Matrix> effects, std::vector<std::string> labels)
    : effects_(std::move(effects)), labels_(std::move(labels)) {
  if (effects_.empty() || effects_.size() != labels_.size()) {
    throw std::domain_error("Povm: need one label per effect");
  }
  const Eigen::Index dim = effects_.front().rows();
  Matrix total = Matrix::Zero(dim, dim);
  for (const Matrix& e : effects_) {
    if (e.rows() != dim || e.cols() != dim) throw std::domain_error("Povm: mixed effect shapes");
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > kConstructionTol) {
      throw std::domain_error("Povm: effect is not Hermitian");
    }
    if (min_eigenvalue(e) < -kConstructionTol) throw std::domain_error("Povm: effect is not PSD");
    total += e;
  }
  if ((total - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > kConstructionTol) {
    throw std::domain_error("Povm: effects do not sum to the identity");
  }
}

std::size_t Povm::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::out_of_range("Povm: unknown label " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

namespace {

void check_spanning(std::size_t state_dim, const ProjectiveBasis& basis) {
  if (basis.dim() != state_dim || basis.size() != state_dim) {
    throw std::domain_error("measurement basis does not span the state space");
  }
}

double born(const StateVector& state, const StateVector& element) { return std::norm(element.inner(state)); }

double quadratic_form(const StateVector& state, const Matrix& e) {
  const auto& v = state.amps();
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Complex row = 0.0;
    for (Eigen::Index j = 0; j < v.size(); ++j) row += e(i, j) * v(j);
    acc += std::conj(v(i)) * row;
  }
  return acc.real();
}

}  // namespace

std::vector<double> born_probabilities(const StateVector& state, const ProjectiveBasis& basis) {
  check_spanning(state.dim(), basis);
  std::vector<double> p(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) p[i] = born(state, basis.state(i));
  return p;
}

std::vector<double> born_probabilities(const DensityMatrix& rho, const ProjectiveBasis& basis) {
  check_spanning(rho.dim(), basis);
  std::vector<double> p(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Vector& b = basis.state(i).amps();
    p[i] = b.dot(rho.entries() * b).real();
  }
  return p;
}

std::size_t sample_index(std::span<const double> probabilities, RngStream& rng) {
  double total = 0.0;
  for (double p : probabilities) {
    if (p < -kProbabilityTol) throw std::domain_error("sample_index: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kProbabilityTol) throw std::domain_error("sample_index: probabilities do not sum to one");
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= kNegligible) continue;
    last_positive = i;
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  // Rounding left u above the cumulative sum; never return a zero-probability outcome.
  return last_positive;
}

std::size_t measure_projective_index(const StateVector& state, const ProjectiveBasis& basis, RngStream& rng) {
  check_spanning(state.dim(), basis);
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double p = born(state, basis.state(i));
    if (p <= kNegligible) continue;
    last_positive = i;
    cumulative += p;
    if (u < cumulative) return i;
  }
  return last_positive;
}

ProjectiveOutcome measure_projective(const StateVector& state, const ProjectiveBasis& basis, RngStream& rng) {
  const std::vector<double> p = born_probabilities(state, basis);
  double total = 0.0;
  for (double x : p) total += x;
  if (std::abs(total - 1.0) > kProbabilityTol) {
    throw std::domain_error("measure_projective: Born probabilities do not sum to one");
  }
  const std::size_t i = sample_index(p, rng);
  return {basis.label(i), i, basis.state(i)};
}

std::vector<double> povm_probabilities(const StateVector& state, const Povm& povm) {
  if (povm.dim() != state.dim()) throw std::domain_error("POVM dimension does not match the state");
  std::vector<double> p(povm.size());
  for (std::size_t i = 0; i < povm.size(); ++i) p[i] = quadratic_form(state, povm.effect(i));
  return p;
}

std::size_t measure_povm_index(const StateVector& state, const Povm& povm, RngStream& rng) {
  if (povm.dim() != state.dim()) throw std::domain_error("POVM dimension does not match the state");
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    const double p = quadratic_form(state, povm.effect(i));
    if (p <= kNegligible) continue;
    last_positive = i;
    cumulative += p;
    if (u < cumulative) return i;
  }
  return last_positive;
}

const std::string& measure_povm(const StateVector& state, const Povm& povm, RngStream& rng) {
  return povm.label(measure_povm_index(state, povm, rng));
}

Povm usd_povm(double theta) {
  if (!(theta > 0.0 && theta <= std::numbers::pi / 2 + kConstructionTol)) {
    throw std::domain_error("usd_povm: theta must lie in (0, pi/2]");
  }
  const StateVector one = StateVector::basis(1, 1);
  // Orthogonal complements of psi0 = |0> and psi1 = R(theta)|0>.
  const Vector perp0 = one.amps();
  const Vector perp1 = apply_on_qubit(one, 0, rotation_plane(theta)).amps();
  const double scale = 1.0 / (1.0 + std::cos(theta));
  Matrix e0 = scale * perp1 * perp1.adjoint();
  Matrix e1 = scale * perp0 * perp0.adjoint();
  Matrix inconclusive = Matrix::Identity(2, 2) - e0 - e1;
  return Povm({std::move(e0), std::move(e1), std::move(inconclusive)}, {kConclusive0, kConclusive1, kInconclusive});
}

DensityMatrix density_from_ensemble(std::span<const EnsembleMember> members) {
  if (members.empty()) throw std::domain_error("density_from_ensemble: empty ensemble");
  double total = 0.0;
  const std::size_t dim = members.front().state.dim();
  Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& m : members) {
    if (m.probability < 0.0) throw std::domain_error("density_from_ensemble: negative probability");
    if (m.state.dim() != dim) throw std::domain_error("density_from_ensemble: mixed dimensions");
    total += m.probability;
    rho.noalias() += m.probability * m.state.amps() * m.state.amps().adjoint();
  }
  if (std::abs(total - 1.0) > kProbabilityTol) {
    throw std::domain_error("density_from_ensemble: probabilities do not sum to one");
  }
  return DensityMatrix(members.front().state.num_qubits(), std::move(rho));
}

namespace {

struct Split {
  std::vector<int> keep;
  std::vector<int> rest;
};

Split split_qubits(int n, std::span<const int> keep) {
  if (keep.empty()) throw std::domain_error("partial_trace: keep set is empty");
  Split s;
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int q : keep) {
    if (q < 0 || q >= n || kept[static_cast<std::size_t>(q)]) {
      throw std::domain_error("partial_trace: invalid keep set");
    }
    kept[static_cast<std::size_t>(q)] = true;
  }
  s.keep.assign(keep.begin(), keep.end());
  std::sort(s.keep.begin(), s.keep.end());
  for (int q = 0; q < n; ++q) {
    if (!kept[static_cast<std::size_t>(q)]) s.rest.push_back(q);
  }
  return s;
}

std::size_t compose_index(std::size_t keep_index, std::size_t rest_index, const Split& s, int n) {
  std::size_t full = 0;
  const int nk = static_cast<int>(s.keep.size());
  const int nr = static_cast<int>(s.rest.size());
  for (int i = 0; i < nk; ++i) {
    const std::size_t bit = (keep_index >> (nk - 1 - i)) & 1U;
    full |= bit << (n - 1 - s.keep[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < nr; ++i) {
    const std::size_t bit = (rest_index >> (nr - 1 - i)) & 1U;
    full |= bit << (n - 1 - s.rest[static_cast<std::size_t>(i)]);
  }
  return full;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& dm, std::span<const int> keep) {
  const int n = dm.num_qubits();
  const Split s = split_qubits(n, keep);
  const std::size_t dk = std::size_t{1} << s.keep.size();
  const std::size_t dr = std::size_t{1} << s.rest.size();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t i = 0; i < dk; ++i) {
    for (std::size_t j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < dr; ++r) {
        acc += dm.entries()(static_cast<Eigen::Index>(compose_index(i, r, s, n)),
                            static_cast<Eigen::Index>(compose_index(j, r, s, n)));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  return DensityMatrix(static_cast<int>(s.keep.size()), std::move(out));
}

DensityMatrix partial_trace(const StateVector& state, std::span<const int> keep) {
  const int n = state.num_qubits();
  const Split s = split_qubits(n, keep);
  const std::size_t dk = std::size_t{1} << s.keep.size();
  const std::size_t dr = std::size_t{1} << s.rest.size();
  Matrix x(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dr));
  for (std::size_t i = 0; i < dk; ++i) {
    for (std::size_t r = 0; r < dr; ++r) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r)) = state[compose_index(i, r, s, n)];
    }
  }
  Matrix rho = x * x.adjoint();
  return DensityMatrix(static_cast<int>(s.keep.size()), std::move(rho));
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::domain_error("fidelity: dimension mismatch");
  // tr sqrt(sqrt(a) b sqrt(a)) equals the trace norm of sqrt(a) sqrt(b).
  const Matrix product = psd_sqrt(a.entries()) * psd_sqrt(b.entries());
  Eigen::JacobiSVD<Matrix> svd(product);
  if (svd.info() != Eigen::Success) throw std::runtime_error("fidelity: SVD failed");
  return std::clamp(svd.singularValues().sum(), 0.0, 1.0);
}

StateVector purify(const DensityMatrix& dm) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(dm.entries());
  if (solver.info() != Eigen::Success) throw std::runtime_error("purify: eigen decomposition failed");
  const auto dim = static_cast<Eigen::Index>(dm.dim());
  // amplitude(s, a) = sqrt(lambda_a) * v_a[s]
  const double floor = 1e-14 * std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
  Vector amps(dim * dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    for (Eigen::Index a = 0; a < dim; ++a) {
      const double lambda = solver.eigenvalues()(a);
      amps(s * dim + a) = (lambda > floor ? std::sqrt(lambda) : 0.0) * solver.eigenvectors()(s, a);
    }
  }
  return StateVector::normalized(amps);
}

}  // namespace qot::qsim
