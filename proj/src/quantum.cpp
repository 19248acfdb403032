#include "probinfo/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <json.hpp>
#include <random>

#include "parallel.hpp"
#include "probinfo/errors.hpp"
#include "probinfo/random.hpp"

namespace probinfo {

using nlohmann::ordered_json;

// --------------------------------------------------------------- matrices ---

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(const std::vector<double>& d) {
  CMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::projector(const std::vector<Complex>& v) {
  CMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  }
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  }
  return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  if (o.dim_ != dim_) throw InputError("matrix dimensions differ");
  CMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const Complex a = (*this)(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < dim_; ++j) m(i, j) += a * o(k, j);
    }
  }
  return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
  if (o.dim_ != dim_) throw InputError("matrix dimensions differ");
  CMatrix m = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] += o.data_[k];
  return m;
}

CMatrix CMatrix::scaled(Complex s) const {
  CMatrix m = *this;
  for (auto& x : m.data_) x *= s;
  return m;
}

std::vector<Complex> CMatrix::apply(const std::vector<Complex>& v) const {
  if (v.size() != dim_) throw InputError("vector length does not match matrix dimension");
  std::vector<Complex> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

Complex CMatrix::expectation(const std::vector<Complex>& v) const {
  const auto mv = apply(v);
  Complex s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += std::conj(v[i]) * mv[i];
  return s;
}

CMatrix CMatrix::kron(const CMatrix& o) const {
  CMatrix m(dim_ * o.dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t k = 0; k < o.dim_; ++k) {
        for (std::size_t l = 0; l < o.dim_; ++l) m(i * o.dim_ + k, j * o.dim_ + l) = (*this)(i, j) * o(k, l);
      }
    }
  }
  return m;
}

double CMatrix::hermitian_residual() const {
  double r = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) r = std::max(r, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  }
  return r;
}

// H = A + iB has the real symmetric embedding [[A, -B], [B, A]], whose
// spectrum is that of H with every eigenvalue doubled.
std::vector<double> CMatrix::eigenvalues() const {
  const std::size_t n = 2 * dim_;
  std::vector<double> a(n * n);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      // Symmetrize so rounding in the input cannot stall the sweep.
      const Complex h = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
      at(i, j) = at(i + dim_, j + dim_) = h.real();
      at(i + dim_, j) = h.imag();
      at(i, j + dim_) = -h.imag();
    }
  }
  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::fabs(x));
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::fabs(at(p, q)));
    }
    if (off <= 1e-15 * std::max(scale, 1e-300)) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < n; i += 2) out.push_back(0.5 * (ev[i] + ev[i + 1]));
  return out;
}

// ------------------------------------------------------------------ POVMs ---

std::vector<BitString> default_labels(std::size_t k) {
  std::size_t width = 0;
  while ((std::size_t{1} << width) < k) ++width;
  std::vector<BitString> out;
  for (std::size_t i = 0; i < k; ++i) {
    std::string s(width, '0');
    for (std::size_t b = 0; b < width; ++b) s[width - 1 - b] = ((i >> b) & 1U) ? '1' : '0';
    out.push_back(BitString::from_trusted(std::move(s)));
  }
  return out;
}

Povm::Povm(std::string name, std::vector<CMatrix> ops, std::vector<BitString> labels)
    : name_(std::move(name)), ops_(std::move(ops)), labels_(std::move(labels)) {
  if (ops_.empty()) throw InputError("POVM " + name_ + " has no operators");
  const std::size_t d = ops_.front().dim();
  if (d == 0 || d > kMaxDimension || !std::has_single_bit(d)) {
    throw InputError("POVM dimension " + std::to_string(d) + " is not a power of two up to 64");
  }
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    if (ops_[k].dim() != d) throw InputError("POVM operator " + std::to_string(k) + " has a different dimension");
  }
  if (labels_.empty()) labels_ = default_labels(ops_.size());
  if (labels_.size() != ops_.size()) throw InputError("POVM label count does not match operators");
  for (std::size_t a = 0; a < labels_.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      if (labels_[a] == labels_[b]) throw InputError("POVM label \"" + labels_[a].str() + "\" repeats");
    }
  }
}

std::size_t Povm::qubits() const { return static_cast<std::size_t>(std::countr_zero(dim())); }

Povm Povm::basis(std::size_t qubits) {
  if (qubits > 6) throw InputError("at most 6 qubits");
  const std::size_t d = std::size_t{1} << qubits;
  std::vector<CMatrix> ops;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> diag(d, 0.0);
    diag[i] = 1.0;
    ops.push_back(CMatrix::diagonal(diag));
  }
  return Povm("basis" + std::to_string(qubits) + "q", std::move(ops));
}

Povm Povm::trivial(std::size_t qubits, std::size_t k) {
  if (qubits > 6) throw InputError("at most 6 qubits");
  if (k == 0) throw InputError("trivial POVM needs an outcome");
  const std::size_t d = std::size_t{1} << qubits;
  std::vector<CMatrix> ops(k, CMatrix::identity(d).scaled(1.0 / static_cast<double>(k)));
  return Povm("trivial" + std::to_string(qubits) + "q" + std::to_string(k), std::move(ops));
}

Povm Povm::trine() {
  std::vector<CMatrix> ops;
  for (int k = 0; k < 3; ++k) {
    const double a = 2.0 * M_PI * k / 3.0;
    ops.push_back(CMatrix::projector({std::cos(a / 2.0), std::sin(a / 2.0)}).scaled(2.0 / 3.0));
  }
  return Povm("trine", std::move(ops));
}

BitString Povm::encoding() const {
  std::string bits;
  for (unsigned char c : name_) {
    for (int b = 7; b >= 0; --b) bits.push_back(((c >> b) & 1) ? '1' : '0');
  }
  return BitString::from_trusted(std::move(bits));
}

Povm Povm::conjugated(const CMatrix& u, std::string name) const {
  const CMatrix ud = u.adjoint();
  std::vector<CMatrix> ops;
  for (const auto& e : ops_) ops.push_back(u * e * ud);
  return Povm(std::move(name), std::move(ops), labels_);
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

PovmReport validate_povm(const Povm& e) {
  PovmReport r;
  const std::size_t d = e.dim();
  CMatrix sum(d);
  r.min_eigenvalue = INFINITY;
  for (std::size_t k = 0; k < e.operators().size(); ++k) {
    const CMatrix& m = e.operators()[k];
    const double h = m.hermitian_residual();
    r.hermitian_residual = std::max(r.hermitian_residual, h);
    if (h > kCompletenessTolerance) {
      throw PovmError("POVM " + e.name() + " operator " + std::to_string(k) + " is not Hermitian (residual " +
                      num(h) + ")");
    }
    const double lo = m.eigenvalues().front();
    if (lo < r.min_eigenvalue) {
      r.min_eigenvalue = lo;
      r.min_eigenvalue_index = k;
    }
    if (lo < -kPsdFloor) {
      throw PovmError("POVM " + e.name() + " operator " + std::to_string(k) + " has eigenvalue " + num(lo));
    }
    sum = sum + m;
  }
  std::size_t wi = 0, wj = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double dev = std::abs(sum(i, j) - Complex(i == j ? 1.0 : 0.0));
      if (dev > r.completeness_residual) {
        r.completeness_residual = dev;
        wi = i;
        wj = j;
      }
    }
  }
  if (r.completeness_residual > kCompletenessTolerance) {
    throw PovmError("POVM " + e.name() + " operators do not sum to the identity: residual " +
                    num(r.completeness_residual) + " at entry (" + std::to_string(wi) + ", " + std::to_string(wj) +
                    ")");
  }
  return r;
}

// ----------------------------------------------------------------- states ---

double PureState::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

PureState make_state(std::vector<Complex> amplitudes) {
  PureState s{std::move(amplitudes), std::nullopt};
  if (s.amplitudes.empty() || std::fabs(s.norm() - 1.0) > 1e-12) throw InputError("state is not a unit vector");
  return s;
}

PureState basis_state(std::size_t qubits, std::size_t index) {
  const std::size_t d = std::size_t{1} << qubits;
  if (index >= d) throw InputError("basis index out of range");
  std::vector<Complex> v(d);
  v[index] = 1.0;
  return {std::move(v), std::nullopt};
}

PureState superposition(std::size_t qubits, const std::vector<std::size_t>& indices) {
  const std::size_t d = std::size_t{1} << qubits;
  if (indices.empty()) throw InputError("superposition needs an index");
  std::vector<Complex> v(d);
  const double a = 1.0 / std::sqrt(static_cast<double>(indices.size()));
  for (auto i : indices) {
    if (i >= d) throw InputError("basis index out of range");
    v[i] = a;
  }
  return make_state(std::move(v));
}

PureState haar_sample(std::size_t qubits, std::uint64_t seed) {
  if (qubits > 6) throw InputError("at most 6 qubits");
  std::mt19937_64 rng(seed);
  std::vector<Complex> v(std::size_t{1} << qubits);
  double s = 0.0;
  for (auto& a : v) {
    auto [re, im] = normal_pair(rng);
    a = {re, im};
    s += std::norm(a);
  }
  const double r = 1.0 / std::sqrt(s);
  for (auto& a : v) a *= r;
  return {std::move(v), seed};
}

CMatrix haar_unitary(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
  for (auto& c : cols) {
    for (auto& a : c) {
      auto [re, im] = normal_pair(rng);
      a = {re, im};
    }
  }
  // Modified Gram-Schmidt: R gets a positive diagonal, so Q is Haar.
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < dim; ++i) dot += std::conj(cols[j][i]) * cols[k][i];
      for (std::size_t i = 0; i < dim; ++i) cols[k][i] -= dot * cols[j][i];
    }
    double n = 0.0;
    for (const auto& a : cols[k]) n += std::norm(a);
    n = std::sqrt(n);
    for (auto& a : cols[k]) a /= n;
  }
  CMatrix u(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) u(i, j) = cols[j][i];
  }
  return u;
}

// ------------------------------------------------------------ measurement ---

std::vector<double> outcome_probabilities(const Povm& e, const PureState& psi) {
  if (psi.dim() != e.dim()) {
    throw InputError("state dimension " + std::to_string(psi.dim()) + " does not match POVM dimension " +
                     std::to_string(e.dim()));
  }
  std::vector<double> p;
  for (const auto& m : e.operators()) {
    const double v = m.expectation(psi.amplitudes).real();
    p.push_back(v < 1e-12 ? 0.0 : v);
  }
  return p;
}

SemiMeasure measure_state(const Povm& e, const PureState& psi) {
  const auto p = outcome_probabilities(e, psi);
  std::map<BitString, Rational> w;
  Rational total = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    // Snap to a dyadic grid so float noise does not leak into exact weights.
    Rational q(static_cast<long>(std::llround(std::ldexp(p[k], kProbabilityGridBits))));
    q /= Rational(mpz_class(1) << kProbabilityGridBits);
    if (q == 0) continue;
    total += q;
    w[e.labels()[k]] = q;
  }
  if (total > 1) {
    for (auto& [x, q] : w) q /= total;
  }
  return SemiMeasure(std::move(w));
}

MeasurementStats measurement_info_experiment(const Povm& e, std::size_t samples, std::uint64_t seed,
                                             const OracleConfig& cfg) {
  if (samples < 2) throw InputError("need at least two samples");
  const OracleConfig ctx = cfg.with_context(e.encoding());
  auto stat = [&](const PureState& psi) {
    const SemiMeasure p = measure_state(e, psi);
    return exp2_or_zero(discrete_info(p, p, ctx));
  };
  MeasurementStats s;
  s.samples = samples;
  s.seed = seed;
  s.context = e.name();
  std::vector<double> v(samples);
  detail::parallel_for(samples, [&](std::size_t k) { v[k] = stat(haar_sample(e.qubits(), derive_seed(seed, k))); });
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(samples);
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.std_error = std::sqrt(ss / static_cast<double>(samples - 1) / static_cast<double>(samples));
  s.upper = s.mean + 3.0 * s.std_error;

  const std::size_t n = e.qubits(), d = e.dim();
  std::vector<std::pair<std::string, PureState>> adversaries;
  for (std::size_t i = 0; i < d; ++i) adversaries.emplace_back("e" + std::to_string(i), basis_state(n, i));
  if (d > 1) adversaries.emplace_back("(e0+e1)/sqrt2", superposition(n, {0, 1}));
  std::vector<std::size_t> all(d);
  for (std::size_t i = 0; i < d; ++i) all[i] = i;
  adversaries.emplace_back("uniform", superposition(n, all));
  s.adversarial = -1.0;
  for (const auto& [name, psi] : adversaries) {
    const double x = stat(psi);
    if (x > s.adversarial) {
      s.adversarial = x;
      s.adversarial_state = name;
    }
  }
  return s;
}

// ------------------------------------------------------------------- JSON ---

Povm povm_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& x) {
    throw FormatError(std::string("POVM: ") + x.what());
  }
  if (!j.is_object() || !j.contains("operators") || !j["operators"].is_array()) {
    throw FormatError("POVM needs an \"operators\" array");
  }
  std::vector<CMatrix> ops;
  for (const auto& m : j["operators"]) {
    const std::size_t d = m.size();
    CMatrix c(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (!m[i].is_array() || m[i].size() != d) throw InputError("POVM operators must be square");
      for (std::size_t k = 0; k < d; ++k) {
        const auto& z = m[i][k];
        if (!z.is_array() || z.size() != 2) throw FormatError("POVM entries must be [re, im] pairs");
        c(i, k) = {z[0].get<double>(), z[1].get<double>()};
      }
    }
    ops.push_back(std::move(c));
  }
  std::vector<BitString> labels;
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) labels.emplace_back(l.get<std::string>());
  }
  return Povm(j.value("name", "povm"), std::move(ops), std::move(labels));
}

std::string to_json(const Povm& e) {
  ordered_json ops = ordered_json::array();
  for (const auto& m : e.operators()) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t k = 0; k < m.dim(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
      rows.push_back(row);
    }
    ops.push_back(rows);
  }
  ordered_json labels = ordered_json::array();
  for (const auto& l : e.labels()) labels.push_back(l.str());
  return ordered_json{{"name", e.name()}, {"labels", labels}, {"operators", ops}}.dump(2) + "\n";
}

}  // namespace probinfo
