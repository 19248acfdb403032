#include "probinfo/space.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "probinfo/errors.hpp"
#include "probinfo/random.hpp"

namespace probinfo {

using nlohmann::ordered_json;

// ------------------------------------------------------------------ basis ---

BitString pi_encode(const Rational& point, std::size_t n, const BasisSpace& space) {
  std::string bits;
  bits.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) bits.push_back(space.membership(point, i) ? '1' : '0');
  return BitString::from_trusted(std::move(bits));
}

std::optional<std::size_t> separating_index(const Rational& a, const Rational& b, std::size_t cap,
                                            const BasisSpace& space) {
  for (std::size_t i = 1; i <= cap; ++i) {
    if (space.membership(a, i) != space.membership(b, i)) return i;
  }
  return std::nullopt;
}

struct RealLineSpace::SigmaMemo {
  std::mutex lock;
  std::unordered_map<BitString, RegionSet> regions;
};

RealLineSpace::RealLineSpace(Rational lo, Rational hi)
    : lo_(std::move(lo)), hi_(std::move(hi)), memo_(std::make_shared<SigmaMemo>()) {
  if (!(lo_ < hi_)) throw InputError("window needs lo < hi");
}

std::string RealLineSpace::name() const { return "dyadic(" + to_string(lo_) + "," + to_string(hi_) + ")"; }

namespace {

std::pair<Rational, Rational> unit_cell(std::size_t i) {
  if (i == 0) throw InputError("basis indices start at 1");
  std::size_t j = 0;
  while ((std::size_t{2} << j) <= i) ++j;
  const unsigned long r = i - (std::size_t{1} << j);
  const Rational w = pow2(-static_cast<long>(j));
  return {Rational(r) * w, Rational(r + 1) * w};
}

}  // namespace

RegionSet RealLineSpace::basis_set(std::size_t i) const {
  auto [a, b] = unit_cell(i);
  const Rational s = hi_ - lo_;
  return RegionSet(Interval::open(lo_ + s * a, lo_ + s * b));
}

bool RealLineSpace::member(const Rational& point, std::size_t i) const {
  auto [a, b] = unit_cell(i);
  const Rational u = (point - lo_) / (hi_ - lo_);
  if (u == a || u == b) {
    throw BoundaryError("point " + to_string(point) + " lies on the boundary of basis set " + std::to_string(i));
  }
  return a < u && u < b;
}

RegionSet RealLineSpace::sigma(const BitString& x) const {
  if (x.size() > kSigmaMemoDepth) {
    RegionSet r = sigma(x.prefix(kSigmaMemoDepth));
    for (std::size_t i = kSigmaMemoDepth; i < x.size() && !r.empty(); ++i) {
      const RegionSet nu = basis_set(i + 1);
      r = x.bit(i) ? r.intersect(nu) : r.minus(nu);
    }
    return r;
  }
  {
    std::lock_guard g(memo_->lock);
    if (auto it = memo_->regions.find(x); it != memo_->regions.end()) return it->second;
  }
  RegionSet r = RegionSet::line();
  if (!x.empty()) {
    r = sigma(x.prefix(x.size() - 1));
    if (!r.empty()) {
      const RegionSet nu = basis_set(x.size());
      r = x.bit(x.size() - 1) ? r.intersect(nu) : r.minus(nu);
    }
  }
  std::lock_guard g(memo_->lock);
  return memo_->regions.emplace(x, std::move(r)).first->second;
}

BasisSpace RealLineSpace::basis_space() const {
  RealLineSpace self = *this;
  BasisSpace b;
  b.name = name();
  b.membership = [self](const Rational& p, std::size_t i) { return self.member(p, i); };
  b.subset_hint = [self](std::size_t j, std::size_t i) -> std::optional<bool> {
    return self.basis_set(j).subset_of(self.basis_set(i));
  };
  return b;
}

RegionSet sigma_region(const BitString& x, const RealLineSpace& space) { return space.sigma(x); }

// --------------------------------------------------------------- measures ---

class SpaceMeasure::Model {
 public:
  virtual ~Model() = default;
  virtual double mass(const Interval& i) const = 0;
  virtual double total() const { return 1.0; }
  virtual bool has_density() const { return true; }
  virtual double density(double x) const = 0;
  virtual std::pair<double, double> support() const = 0;
  virtual ordered_json json() const = 0;
  virtual bool samplable() const { return false; }
  virtual Rational sample(std::mt19937_64&) const { throw InputError("measure cannot be sampled"); }
  // Midpoint cells over the support, weighted by exact cell mass.
  virtual void nodes(std::size_t cells, double scale, std::vector<std::pair<double, Rational>>& out) const {
    auto [a, b] = support();
    const double h = (b - a) / static_cast<double>(cells);
    for (std::size_t k = 0; k < cells; ++k) {
      const double lo = a + h * static_cast<double>(k);
      const double hi = k + 1 == cells ? b : lo + h;
      Interval cell{rational_from_double(lo), rational_from_double(hi), true, false};
      if (k == 0) cell.lo.reset();
      if (k + 1 == cells) cell.hi.reset();
      const double w = mass(cell);
      if (w > 0.0) out.emplace_back(scale * w, rational_from_double(0.5 * (lo + hi)));
    }
  }

  Kind kind = Kind::gaussian;
  std::string encoding;
};

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lo_of(const Interval& i) { return i.lo ? i.lo->get_d() : -kInf; }
double hi_of(const Interval& i) { return i.hi ? i.hi->get_d() : kInf; }


class GaussianModel : public SpaceMeasure::Model {
 public:
  GaussianModel(Rational mean, Rational variance) : mean_(std::move(mean)), var_(std::move(variance)) {
    if (sgn(var_) <= 0) throw InputError("gaussian variance must be positive");
    sd_ = std::sqrt(var_.get_d());
  }

  // Tail-accurate: differences of erfc on the side away from the mean.
  double mass(const Interval& i) const override {
    const double za = z(i.lo, -kInf), zb = z(i.hi, kInf);
    if (za >= zb) return 0.0;
    if (za >= 0.0) return 0.5 * (std::erfc(za) - std::erfc(zb));
    if (zb <= 0.0) return 0.5 * (std::erfc(-zb) - std::erfc(-za));
    return 1.0 - 0.5 * std::erfc(-za) - 0.5 * std::erfc(zb);
  }
  double density(double x) const override {
    const double t = (x - mean_.get_d()) / sd_;
    return std::exp(-0.5 * t * t) / (sd_ * std::sqrt(2.0 * M_PI));
  }
  std::pair<double, double> support() const override {
    return {mean_.get_d() - 9.0 * sd_, mean_.get_d() + 9.0 * sd_};
  }
  ordered_json json() const override {
    return {{"kind", "gaussian"}, {"parameters", {{"mean", to_string(mean_)}, {"variance", to_string(var_)}}}};
  }
  bool samplable() const override { return true; }
  Rational sample(std::mt19937_64& rng) const override {
    return rational_from_double(mean_.get_d() + sd_ * normal_pair(rng).first);
  }

  Rational mean_, var_;

 private:
  double z(const std::optional<Rational>& t, double inf) const {
    if (!t) return inf;
    return Rational(*t - mean_).get_d() / (sd_ * std::sqrt(2.0));
  }
  double sd_;
};

class PulseModel : public GaussianModel {
 public:
  PulseModel(BitString alpha, unsigned n, Rational mean)
      : GaussianModel(std::move(mean), Rational(1, static_cast<unsigned long>(n) * n)), alpha_(std::move(alpha)), n_(n) {}
  ordered_json json() const override {
    return {{"kind", "pulse"}, {"parameters", {{"alpha", alpha_.str()}, {"n", n_}}}};
  }
  BitString alpha_;
  unsigned n_;
};

class UniformModel : public SpaceMeasure::Model {
 public:
  UniformModel(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    if (!(a_ < b_)) throw InputError("uniform needs a < b");
  }
  double mass(const Interval& i) const override {
    Rational lo = i.lo && *i.lo > a_ ? *i.lo : a_;
    Rational hi = i.hi && *i.hi < b_ ? *i.hi : b_;
    if (!(lo < hi)) return 0.0;
    return Rational((hi - lo) / (b_ - a_)).get_d();
  }
  double density(double x) const override {
    return x > a_.get_d() && x < b_.get_d() ? 1.0 / Rational(b_ - a_).get_d() : 0.0;
  }
  std::pair<double, double> support() const override { return {a_.get_d(), b_.get_d()}; }
  ordered_json json() const override {
    return {{"kind", "uniform"}, {"parameters", {{"a", to_string(a_)}, {"b", to_string(b_)}}}};
  }
  bool samplable() const override { return true; }
  Rational sample(std::mt19937_64& rng) const override {
    return a_ + Rational(b_ - a_) * rational_from_double(unit_draw(rng));
  }
  Rational a_, b_;
};

class PointModel : public SpaceMeasure::Model {
 public:
  explicit PointModel(Rational x) : x_(std::move(x)) {}
  double mass(const Interval& i) const override { return i.contains(x_) ? 1.0 : 0.0; }
  bool has_density() const override { return false; }
  double density(double) const override { throw DomainError("point measure has no density"); }
  std::pair<double, double> support() const override { return {x_.get_d(), x_.get_d()}; }
  ordered_json json() const override { return {{"kind", "point"}, {"parameters", {{"x", to_string(x_)}}}}; }
  bool samplable() const override { return true; }
  Rational sample(std::mt19937_64&) const override { return x_; }
  void nodes(std::size_t, double scale, std::vector<std::pair<double, Rational>>& out) const override {
    out.emplace_back(scale, x_);
  }
  Rational x_;
};

class MixtureModel : public SpaceMeasure::Model {
 public:
  MixtureModel(std::vector<Rational> w, std::vector<SpaceMeasure> parts) : w_(std::move(w)), parts_(std::move(parts)) {
    for (const auto& x : w_) wd_.push_back(x.get_d());
  }
  double mass(const Interval& i) const override {
    double s = 0.0;
    for (std::size_t k = 0; k < parts_.size(); ++k) s += wd_[k] * parts_[k].probability(i);
    return s;
  }
  double total() const override {
    double s = 0.0;
    for (std::size_t k = 0; k < parts_.size(); ++k) s += wd_[k] * parts_[k].total();
    return s;
  }
  bool has_density() const override {
    return std::all_of(parts_.begin(), parts_.end(), [](const SpaceMeasure& m) { return m.has_density(); });
  }
  double density(double x) const override {
    double s = 0.0;
    for (std::size_t k = 0; k < parts_.size(); ++k) s += wd_[k] * parts_[k].density(x);
    return s;
  }
  std::pair<double, double> support() const override {
    std::pair<double, double> s{kInf, -kInf};
    for (const auto& p : parts_) {
      auto [a, b] = p.support();
      s = {std::min(s.first, a), std::max(s.second, b)};
    }
    return s;
  }
  ordered_json json() const override;
  bool samplable() const override {
    return std::all_of(parts_.begin(), parts_.end(), [](const SpaceMeasure& m) { return m.samplable(); });
  }
  Rational sample(std::mt19937_64& rng) const override {
    double t = unit_draw(rng) * total();
    std::size_t k = 0;
    for (; k + 1 < parts_.size(); ++k) {
      if (t < wd_[k] * parts_[k].total()) break;
      t -= wd_[k] * parts_[k].total();
    }
    return parts_[k].sample(rng);
  }
  void nodes(std::size_t cells, double scale, std::vector<std::pair<double, Rational>>& out) const override {
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      for (auto& n : parts_[k].quadrature(cells)) out.emplace_back(scale * wd_[k] * n.first, std::move(n.second));
    }
  }
  std::vector<Rational> w_;
  bool envelope = false;
  std::vector<double> wd_;
  std::vector<SpaceMeasure> parts_;
};

class GridModel : public SpaceMeasure::Model {
 public:
  GridModel(double step, long first, std::vector<double> v) : h_(step), first_(first), v_(std::move(v)) {
    if (!(h_ > 0.0) || v_.size() < 2) throw InputError("grid density needs a positive step and two values");
    cum_.assign(v_.size(), 0.0);
    for (std::size_t k = 1; k < v_.size(); ++k) cum_[k] = cum_[k - 1] + 0.5 * h_ * (v_[k - 1] + v_[k]);
  }
  double mass(const Interval& i) const override { return std::max(0.0, cdf(hi_of(i)) - cdf(lo_of(i))); }
  double total() const override { return cum_.back(); }
  double density(double x) const override {
    const double u = x / h_ - static_cast<double>(first_);
    if (u <= 0.0 || u >= static_cast<double>(v_.size() - 1)) return 0.0;
    const auto k = static_cast<std::size_t>(u);
    const double f = u - static_cast<double>(k);
    return v_[k] + f * (v_[k + 1] - v_[k]);
  }
  std::pair<double, double> support() const override {
    return {h_ * static_cast<double>(first_), h_ * static_cast<double>(first_ + static_cast<long>(v_.size()) - 1)};
  }
  ordered_json json() const override {
    return {{"kind", "grid"}, {"parameters", {{"step", h_}, {"first", first_}, {"values", v_}}}, {"encoding", encoding}};
  }

 private:
  double cdf(double t) const {
    const double u = t / h_ - static_cast<double>(first_);
    if (u <= 0.0) return 0.0;
    if (u >= static_cast<double>(v_.size() - 1)) return cum_.back();
    const auto k = static_cast<std::size_t>(u);
    const double d = (u - static_cast<double>(k)) * h_;
    return cum_[k] + d * v_[k] + 0.5 * d * d * (v_[k + 1] - v_[k]) / h_;
  }
  double h_;
  long first_;
  std::vector<double> v_;
  std::vector<double> cum_;
};

}  // namespace

SpaceMeasure SpaceMeasure::gaussian(const Rational& mean, const Rational& variance) {
  auto m = std::make_shared<GaussianModel>(mean, variance);
  m->kind = Kind::gaussian;
  m->encoding = "gaussian(" + to_string(mean) + "," + to_string(variance) + ")";
  return SpaceMeasure(std::move(m));
}

SpaceMeasure SpaceMeasure::uniform(const Rational& a, const Rational& b) {
  auto m = std::make_shared<UniformModel>(a, b);
  m->kind = Kind::uniform;
  m->encoding = "uniform(" + to_string(a) + "," + to_string(b) + ")";
  return SpaceMeasure(std::move(m));
}

SpaceMeasure SpaceMeasure::pulse(const BitString& alpha, unsigned n) {
  if (n == 0) throw InputError("pulse width index must be positive");
  Rational mean = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha.bit(i)) mean += pow2(-static_cast<long>(i + 1));
  }
  auto m = std::make_shared<PulseModel>(alpha, n, mean);
  m->kind = Kind::pulse;
  m->encoding = "pulse(" + alpha.str() + "," + std::to_string(n) + ")";
  return SpaceMeasure(std::move(m));
}

SpaceMeasure SpaceMeasure::point(const Rational& x) {
  auto m = std::make_shared<PointModel>(x);
  m->kind = Kind::point;
  m->encoding = "point(" + to_string(x) + ")";
  return SpaceMeasure(std::move(m));
}

SpaceMeasure SpaceMeasure::mixture(const std::vector<Rational>& w, const std::vector<SpaceMeasure>& parts) {
  if (w.size() != parts.size() || parts.empty()) throw InputError("mixture weight count does not match components");
  Rational sum = 0;
  std::string enc = "mix(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sgn(w[i]) < 0) throw InputError("negative mixture weight");
    sum += w[i];
    enc += (i ? "," : "") + to_string(w[i]) + "*" + parts[i].encoding();
  }
  if (sum > 1) throw InputError("mixture weights sum to " + to_string(sum));
  auto m = std::make_shared<MixtureModel>(w, parts);
  m->kind = Kind::mixture;
  m->encoding = enc + ")";
  return SpaceMeasure(std::move(m));
}

SpaceMeasure SpaceMeasure::envelope(const std::vector<Rational>& w, const std::vector<SpaceMeasure>& parts) {
  if (w.size() != parts.size() || parts.empty()) throw InputError("envelope weight count does not match components");
  std::string enc = "env(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sgn(w[i]) < 0) throw InputError("negative envelope weight");
    enc += (i ? "," : "") + to_string(w[i]) + "*" + parts[i].encoding();
  }
  auto m = std::make_shared<MixtureModel>(w, parts);
  m->kind = Kind::mixture;
  m->encoding = enc + ")";
  m->envelope = true;
  return SpaceMeasure(std::move(m));
}

bool SpaceMeasure::samplable() const { return model_->samplable(); }
Rational SpaceMeasure::sample(std::mt19937_64& rng) const { return model_->sample(rng); }
std::vector<std::pair<double, Rational>> SpaceMeasure::quadrature(std::size_t cells) const {
  if (cells == 0) throw InputError("quadrature needs at least one cell");
  std::vector<std::pair<double, Rational>> out;
  model_->nodes(cells, 1.0, out);
  return out;
}

SpaceMeasure SpaceMeasure::grid(double step, long first, std::vector<double> values, std::string encoding) {
  auto m = std::make_shared<GridModel>(step, first, std::move(values));
  m->kind = Kind::grid;
  m->encoding = std::move(encoding);
  return SpaceMeasure(std::move(m));
}

SpaceMeasure::Kind SpaceMeasure::kind() const { return model_->kind; }
const std::string& SpaceMeasure::encoding() const { return model_->encoding; }

std::pair<Rational, Rational> SpaceMeasure::gaussian_parameters() const {
  const auto* g = dynamic_cast<const GaussianModel*>(model_.get());
  if (g == nullptr) throw DomainError(encoding() + " is not gaussian");
  return {g->mean_, g->var_};
}

double SpaceMeasure::probability(const Interval& i) const {
  if (i.empty()) return 0.0;
  return model_->mass(i);
}

double SpaceMeasure::probability(const RegionSet& r) const {
  double s = 0.0;
  for (const auto& i : r.intervals()) s += model_->mass(i);
  return s;
}

double SpaceMeasure::total() const { return model_->total(); }
bool SpaceMeasure::has_density() const { return model_->has_density(); }
double SpaceMeasure::density(double x) const { return model_->density(x); }
std::pair<double, double> SpaceMeasure::support() const { return model_->support(); }
std::string SpaceMeasure::json() const { return model_->json().dump(); }

ordered_json MixtureModel::json() const {
  ordered_json w = ordered_json::array(), c = ordered_json::array();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    w.push_back(to_string(w_[i]));
    c.push_back(ordered_json::parse(parts_[i].json()));
  }
  return {{"kind", envelope ? "envelope" : "mixture"}, {"parameters", {{"weights", w}, {"components", c}}}};
}

// ------------------------------------------------------------ dual, info ---

CantorMeasure dual_measure(const SpaceMeasure& p, const RealLineSpace& space) {
  auto f = [p, space](const BitString& x) { return p.probability(space.sigma(x)); };
  std::string enc = p.encoding() + "@" + space.name();
  return CantorMeasure("dual:" + enc, f, kUnboundedDepth, enc);
}

InfoValue space_info(const SpaceMeasure& p, const SpaceMeasure& q, std::size_t depth,
                     const RealLineSpace& space, const OracleConfig& cfg) {
  return depth_info(dual_measure(p, space), dual_measure(q, space), depth, cfg);
}

// ------------------------------------------------------------ convolution ---

namespace {

bool gaussian_like(const SpaceMeasure& m) {
  return m.kind() == SpaceMeasure::Kind::gaussian || m.kind() == SpaceMeasure::Kind::pulse;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

// Masses of the cells [(k - 1/2) h, (k + 1/2) h] for k in [k0, k1].
std::vector<double> cell_masses(const SpaceMeasure& m, long k0, long k1, double h) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k1 - k0 + 1));
  for (long k = k0; k <= k1; ++k) {
    Interval cell{rational_from_double((static_cast<double>(k) - 0.5) * h),
                  rational_from_double((static_cast<double>(k) + 0.5) * h), true, false};
    out.push_back(m.probability(cell));
  }
  return out;
}

}  // namespace

SpaceMeasure convolve(const SpaceMeasure& p, const SpaceMeasure& kernel, const ConvolutionGrid& grid) {
  if (grid.closed_form && gaussian_like(p) && gaussian_like(kernel)) {
    auto [mp, vp] = p.gaussian_parameters();
    auto [mk, vk] = kernel.gaussian_parameters();
    return SpaceMeasure::gaussian(mp + mk, vp + vk);
  }
  if (!(grid.step > 0.0)) throw InputError("grid step must be positive");
  if (!p.has_density() || !kernel.has_density()) throw DomainError("convolution inputs must have densities");
  const double h = grid.step;

  auto [ka, kb] = kernel.support();
  double center = 0.5 * (ka + kb);
  double half = 0.5 * (kb - ka);
  if (gaussian_like(kernel)) {
    auto [mk, vk] = kernel.gaussian_parameters();
    center = mk.get_d();
    half = 8.0 * std::sqrt(vk.get_d());
  }
  if (grid.half_width > 0.0) half = grid.half_width;
  const long j0 = static_cast<long>(std::floor((center - half) / h));
  const long j1 = static_cast<long>(std::ceil((center + half) / h));
  auto q = cell_masses(kernel, j0, j1, h);
  double kept = 0.0;
  for (double v : q) kept += v;
  const double leak = kernel.total() - kept;
  if (leak > 1e-3) {
    throw GridError("kernel mass " + fmt(leak) + " falls outside half-width " + fmt(half) + "; widen the grid");
  }

  auto [pa, pb] = p.support();
  const long i0 = static_cast<long>(std::floor(pa / h)) - 1;
  const long i1 = static_cast<long>(std::ceil(pb / h)) + 1;
  auto w = cell_masses(p, i0, i1, h);

  std::vector<double> r(w.size() + q.size() - 1, 0.0);
  for (std::size_t a = 0; a < w.size(); ++a) {
    if (w[a] == 0.0) continue;
    for (std::size_t b = 0; b < q.size(); ++b) r[a + b] += w[a] * q[b];
  }
  // Pad with zeros so the interpolant vanishes at both ends.
  std::vector<double> dens;
  dens.reserve(r.size() + 2);
  dens.push_back(0.0);
  for (double v : r) dens.push_back(v / h);
  dens.push_back(0.0);
  double integral = 0.0;
  for (std::size_t k = 1; k < dens.size(); ++k) integral += 0.5 * h * (dens[k - 1] + dens[k]);
  if (integral > 0.0) {
    const double scale = p.total() / integral;
    for (double& v : dens) v *= scale;
  }
  std::string enc = "conv(" + p.encoding() + "," + kernel.encoding() + ";h=" + fmt(h) + ",w=" + fmt(half) + ")";
  return SpaceMeasure::grid(h, i0 + j0 - 1, std::move(dens), std::move(enc));
}

double l1_distance(const SpaceMeasure& f, const SpaceMeasure& g, double lo, double hi, std::size_t n) {
  return l1_distance([&](double x) { return f.density(x); }, [&](double x) { return g.density(x); }, lo, hi, n);
}

double l1_distance(const std::function<double(double)>& f, const std::function<double(double)>& g, double lo,
                   double hi, std::size_t n) {
  if (n % 2 == 1) ++n;
  const double h = (hi - lo) / static_cast<double>(n);
  double s = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double x = lo + h * static_cast<double>(k);
    const double c = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    s += c * std::fabs(f(x) - g(x));
  }
  return s * h / 3.0;
}

double triangle_density(double x) {
  if (x <= 0.0 || x >= 2.0) return 0.0;
  return x <= 1.0 ? x : 2.0 - x;
}

// ---------------------------------------------------------------- catalog ---

namespace {

SpaceMeasure measure_from(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("measure entry needs \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  const nlohmann::json par = j.value("parameters", nlohmann::json::object());
  auto rat = [&](const char* key) {
    if (!par.contains(key)) throw ConfigError("measure " + kind + " needs parameter \"" + key + "\"");
    const auto& v = par[key];
    return v.is_string() ? parse_rational(v.get<std::string>()) : rational_from_double(v.get<double>());
  };
  if (kind == "gaussian") return SpaceMeasure::gaussian(rat("mean"), rat("variance"));
  if (kind == "uniform") return SpaceMeasure::uniform(rat("a"), rat("b"));
  if (kind == "point") return SpaceMeasure::point(rat("x"));
  if (kind == "pulse") {
    if (!par.contains("alpha") || !par.contains("n")) throw ConfigError("pulse needs \"alpha\" and \"n\"");
    return SpaceMeasure::pulse(BitString(par["alpha"].get<std::string>()), par["n"].get<unsigned>());
  }
  if (kind == "mixture" || kind == "envelope") {
    if (!par.contains("weights") || !par.contains("components")) {
      throw ConfigError(kind + " needs \"weights\" and \"components\"");
    }
    std::vector<Rational> w;
    std::vector<SpaceMeasure> parts;
    for (const auto& x : par["weights"]) w.push_back(parse_rational(x.get<std::string>()));
    for (const auto& c : par["components"]) parts.push_back(measure_from(c));
    return kind == "mixture" ? SpaceMeasure::mixture(w, parts) : SpaceMeasure::envelope(w, parts);
  }
  if (kind == "grid") {
    return SpaceMeasure::grid(par.at("step").get<double>(), par.at("first").get<long>(),
                              par.at("values").get<std::vector<double>>(), j.value("encoding", "grid"));
  }
  throw ConfigError("unknown measure kind \"" + kind + "\"");
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

const SpaceMeasure& SpaceCatalog::at(const std::string& name) const {
  for (const auto& [n, m] : measures) {
    if (n == name) return m;
  }
  throw CatalogError("no measure named \"" + name + "\" in the space catalog");
}

SpaceMeasure space_measure_from_json(std::string_view text) {
  try {
    return measure_from(parse_json(text));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad measure entry: ") + e.what());
  }
}

SpaceCatalog space_catalog_from_json(std::string_view text) {
  auto j = parse_json(text);
  try {
    Rational lo = 0, hi = 1;
    if (j.contains("window")) {
      lo = parse_rational(j["window"].at(0).get<std::string>());
      hi = parse_rational(j["window"].at(1).get<std::string>());
    }
    SpaceCatalog c{RealLineSpace(lo, hi), {}};
    for (const auto& m : j.value("measures", nlohmann::json::array())) {
      c.measures.emplace_back(m.at("name").get<std::string>(), measure_from(m));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad space catalog: ") + e.what());
  }
}

std::string to_json(const SpaceCatalog& c) {
  ordered_json j;
  j["basis"] = "dyadic";
  j["window"] = {to_string(c.space.lo()), to_string(c.space.hi())};
  ordered_json ms = ordered_json::array();
  for (const auto& [name, m] : c.measures) {
    ordered_json e;
    e["name"] = name;
    auto body = ordered_json::parse(m.json());
    e["kind"] = body["kind"];
    e["parameters"] = body["parameters"];
    e["encoding"] = m.encoding();
    ms.push_back(e);
  }
  j["measures"] = ms;
  return j.dump(2) + "\n";
}

}  // namespace probinfo
