#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "probinfo/discrete.hpp"
#include "probinfo/oracle.hpp"
#include "probinfo/random.hpp"

namespace probinfo {

using Complex = std::complex<double>;

/// Dense square complex matrix, row major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(const std::vector<double>& d);
  /// |v><v|
  static CMatrix projector(const std::vector<Complex>& v);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  CMatrix adjoint() const;
  CMatrix operator*(const CMatrix& o) const;
  CMatrix operator+(const CMatrix& o) const;
  CMatrix scaled(Complex s) const;
  std::vector<Complex> apply(const std::vector<Complex>& v) const;
  /// <v|M|v>
  Complex expectation(const std::vector<Complex>& v) const;
  /// Kronecker product this (x) o.
  CMatrix kron(const CMatrix& o) const;
  /// max |M_ij - M*_ji|
  double hermitian_residual() const;
  /// Eigenvalues of a Hermitian matrix in ascending order (Jacobi on the
  /// real symmetric embedding).
  std::vector<double> eigenvalues() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

inline constexpr double kPsdFloor = 1e-9;
inline constexpr double kCompletenessTolerance = 1e-9;
inline constexpr std::size_t kMaxDimension = 64;
/// Measured probabilities are rounded to multiples of 2^-40.
inline constexpr int kProbabilityGridBits = 40;

class Povm {
 public:
  /// Labels default to binary indices of length ceil(log2 k).
  Povm(std::string name, std::vector<CMatrix> ops, std::vector<BitString> labels = {});

  static Povm basis(std::size_t qubits);
  /// k copies of I/k on n qubits.
  static Povm trivial(std::size_t qubits, std::size_t k = 2);
  /// Three symmetric qubit outcomes (2/3)|t_k><t_k|.
  static Povm trine();

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return ops_.front().dim(); }
  std::size_t qubits() const;
  const std::vector<CMatrix>& operators() const noexcept { return ops_; }
  const std::vector<BitString>& labels() const noexcept { return labels_; }
  /// ASCII bits of the name: the relativizing context.
  BitString encoding() const;
  /// {U E_k U^dagger}
  Povm conjugated(const CMatrix& u, std::string name) const;

 private:
  std::string name_;
  std::vector<CMatrix> ops_;
  std::vector<BitString> labels_;
};

/// Binary index labels of length ceil(log2 k).
std::vector<BitString> default_labels(std::size_t k);

struct PovmReport {
  double hermitian_residual = 0.0;
  double min_eigenvalue = 0.0;
  std::size_t min_eigenvalue_index = 0;
  double completeness_residual = 0.0;
};

/// Throws PovmError naming the failing operator (or the completeness
/// residual) when an invariant fails.
PovmReport validate_povm(const Povm& e);

struct PureState {
  std::vector<Complex> amplitudes;
  std::optional<std::uint64_t> seed;

  std::size_t dim() const noexcept { return amplitudes.size(); }
  double norm() const;
};

/// Throws InputError unless the vector has unit norm within 1e-12.
PureState make_state(std::vector<Complex> amplitudes);
PureState basis_state(std::size_t qubits, std::size_t index);
/// Equal superposition of the listed basis indices.
PureState superposition(std::size_t qubits, const std::vector<std::size_t>& indices);
/// Normalized complex standard-normal vector; qubits <= 6.
PureState haar_sample(std::size_t qubits, std::uint64_t seed);
/// Unitary from the QR factorization of a seeded complex Gaussian matrix.
CMatrix haar_unitary(std::size_t dim, std::uint64_t seed);

/// <psi|E_k|psi> per outcome, clamped at zero below 1e-12.
std::vector<double> outcome_probabilities(const Povm& e, const PureState& psi);
/// Throws InputError on a dimension mismatch.
SemiMeasure measure_state(const Povm& e, const PureState& psi);

struct MeasurementStats {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Mean and standard error of 2^{ii(E psi : E psi)} over Haar states.
  double mean = 0.0;
  double std_error = 0.0;
  double upper = 0.0;
  /// Largest 2^{ii} over basis states and small superpositions.
  double adversarial = 0.0;
  std::string adversarial_state;
  std::string context;
};

/// Evaluated relative to the POVM: cfg.with_context(e.encoding()).
MeasurementStats measurement_info_experiment(const Povm& e, std::size_t samples, std::uint64_t seed,
                                             const OracleConfig& cfg);

/// {"name", "labels"?, "operators": [M_1, ...]} with each M_k a list of rows
/// and each entry an [re, im] pair.
Povm povm_from_json(std::string_view text);
std::string to_json(const Povm& e);

}  // namespace probinfo
