#include "probinfo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "probinfo/errors.hpp"
#include "probinfo/logsum.hpp"

namespace probinfo {

std::string_view to_string(Resolution r) {
  switch (r) {
    case Resolution::resolved: return "resolved";
    case Resolution::partial: return "partial";
    case Resolution::unresolved: return "unresolved";
  }
  return "unknown";
}

namespace detail {

class OracleMemo {
 public:
  std::mutex mu;
  std::map<BitString, std::shared_ptr<const OutputTable>> tables;
  std::shared_ptr<const RelativeTable> relative;
  std::shared_ptr<const InfoKernel> kernel;
};

}  // namespace detail

// --------------------------------------------------------------- kernel ---

InfoKernel::InfoKernel(std::shared_ptr<const OutputTable> table) : table_(std::move(table)) {
  for (const auto& [s, stats] : table_->outputs) {
    auto parts = try_pair_decode(s);
    if (!parts) continue;
    auto ka = complexity(parts->first);
    auto kb = complexity(parts->second);
    if (!ka || !kb) continue;
    const long e = static_cast<long>(*ka) + static_cast<long>(*kb) - static_cast<long>(stats.min_len);
    rows_[parts->first].emplace_back(parts->second, e);
    ++terms_;
  }
  for (auto& [a, row] : rows_) std::sort(row.begin(), row.end());
}

std::optional<std::size_t> InfoKernel::complexity(const BitString& x) const {
  auto it = table_->outputs.find(x);
  if (it == table_->outputs.end()) return std::nullopt;
  return it->second.min_len;
}

std::optional<long> InfoKernel::exponent(const BitString& a, const BitString& b) const {
  auto ka = complexity(a);
  if (!ka) return std::nullopt;
  auto kb = complexity(b);
  if (!kb) return std::nullopt;
  auto kab = complexity(pair_encode(a, b));
  if (!kab) return std::nullopt;
  return static_cast<long>(*ka) + static_cast<long>(*kb) - static_cast<long>(*kab);
}

const InfoKernel::Row* InfoKernel::row(const BitString& a) const {
  auto it = rows_.find(a);
  return it == rows_.end() ? nullptr : &it->second;
}

// --------------------------------------------------------------- config ---

OracleConfig::OracleConfig(MachineSpec machine, std::size_t max_len, std::uint64_t budget,
                           BitString context)
    : machine_(std::move(machine)),
      bounds_{max_len, budget},
      context_(std::move(context)),
      memo_(std::make_shared<detail::OracleMemo>()) {
  if (max_len > kHardCap) {
    throw InputError("maxLen " + std::to_string(max_len) + " exceeds the hard cap");
  }
  if (budget < 1) throw InputError("budget must be at least 1 step");
}

OracleConfig OracleConfig::with_context(BitString context) const {
  return OracleConfig(machine_, bounds_.max_len, bounds_.budget, std::move(context));
}

InfoValue OracleConfig::stamp() const {
  InfoValue v;
  v.bounds = bounds_;
  v.machine = machine_.name();
  return v;
}

std::shared_ptr<const OutputTable> OracleConfig::table(const BitString& aux) const {
  {
    std::lock_guard lock(memo_->mu);
    if (auto it = memo_->tables.find(aux); it != memo_->tables.end()) return it->second;
  }
  auto t = std::make_shared<OutputTable>();
  t->exponent = bounds_.max_len;
  for (const auto& h : enumerate(machine_, bounds_.max_len, bounds_.budget, aux)) {
    auto [it, inserted] = t->outputs.try_emplace(h.output);
    it->second.mass += std::uint64_t{1} << (bounds_.max_len - h.program.size());
    if (inserted || h.program.size() < it->second.min_len) it->second.min_len = h.program.size();
  }
  std::lock_guard lock(memo_->mu);
  // Idempotent: a concurrent builder produced the same table.
  return memo_->tables.try_emplace(aux, std::move(t)).first->second;
}

std::shared_ptr<const RelativeTable> OracleConfig::relative(std::size_t max_aux) const {
  {
    std::lock_guard lock(memo_->mu);
    if (memo_->relative && memo_->relative->max_aux >= max_aux) return memo_->relative;
  }
  auto t = std::make_shared<RelativeTable>();
  t->max_aux = max_aux;
  t->exponent = bounds_.max_len;
  for (const auto& h : enumerate_relative(machine_, bounds_.max_len, bounds_.budget, max_aux)) {
    t->by_prefix[h.aux_read][h.output] += std::uint64_t{1} << (bounds_.max_len - h.program.size());
  }
  std::lock_guard lock(memo_->mu);
  if (!memo_->relative || memo_->relative->max_aux < max_aux) memo_->relative = std::move(t);
  return memo_->relative;
}

std::shared_ptr<const InfoKernel> OracleConfig::kernel() const {
  {
    std::lock_guard lock(memo_->mu);
    if (memo_->kernel) return memo_->kernel;
  }
  auto k = std::make_shared<const InfoKernel>(table(context_));
  std::lock_guard lock(memo_->mu);
  if (!memo_->kernel) memo_->kernel = std::move(k);
  return memo_->kernel;
}

// --------------------------------------------------------------- queries ---

Rational alg_prob(const BitString& x, const BitString& aux, const OracleConfig& cfg) {
  auto t = cfg.table(aux);
  auto it = t->outputs.find(x);
  if (it == t->outputs.end()) return Rational(0);
  Rational q(mpz_class(static_cast<unsigned long>(it->second.mass)), mpz_class(1));
  return q / pow2(static_cast<long>(t->exponent));
}

std::optional<std::size_t> complexity(const BitString& x, const BitString& aux,
                                      const OracleConfig& cfg) {
  auto t = cfg.table(aux);
  auto it = t->outputs.find(x);
  if (it == t->outputs.end()) return std::nullopt;
  return it->second.min_len;
}

std::optional<std::size_t> complexity(const BitString& x, const OracleConfig& cfg) {
  return complexity(x, cfg.context(), cfg);
}

InfoValue mutual_info(const BitString& x, const BitString& y, const OracleConfig& cfg) {
  InfoValue v = cfg.stamp();
  auto e = cfg.kernel()->exponent(x, y);
  if (!e) {
    v.value = std::numeric_limits<double>::quiet_NaN();
    v.resolution = Resolution::unresolved;
    v.note = "no program within bounds for one of K(x), K(y), K(x,y)";
    return v;
  }
  v.value = static_cast<double>(*e);
  v.resolution = Resolution::resolved;
  v.coverage = 1.0;
  return v;
}

std::unordered_map<BitString, std::uint64_t> bounded_prob(const BitString& x,
                                                          const OracleConfig& cfg) {
  std::unordered_map<BitString, std::uint64_t> u;
  if (x.size() <= kRelativeAuxCap) {
    auto rel = cfg.relative(kRelativeAuxCap);
    for (std::size_t n = 0; n <= x.size(); ++n) {
      auto it = rel->by_prefix.find(x.prefix(n));
      if (it == rel->by_prefix.end()) continue;
      for (const auto& [a, mass] : it->second) u[a] += mass;
    }
    return u;
  }
  for (const auto& h : enumerate(cfg.machine(), cfg.max_len(), cfg.budget(), x)) {
    if (h.aux_bits_read <= x.size()) {
      u[h.output] += std::uint64_t{1} << (cfg.max_len() - h.program.size());
    }
  }
  return u;
}

InfoValue bounded_info(const BitString& x, const BitString& y, const OracleConfig& cfg) {
  const auto ux = bounded_prob(x, cfg);
  const auto uy = bounded_prob(y, cfg);
  const auto kernel = cfg.kernel();
  const long L = static_cast<long>(cfg.max_len());

  // Exponents satisfy e >= -L, so u(a) v(b) 2^(e+L) is an integer and the
  // sum divided by 2^(3L) is the exact value.
  mpz_class total = 0;
  mpz_class resolved_mass = 0;
  long terms = 0;
  for_each_resolved_term(*kernel, ux, uy, [&](std::uint64_t wa, std::uint64_t wb, long e) {
    mpz_class t = static_cast<unsigned long>(wa);
    t *= static_cast<unsigned long>(wb);
    resolved_mass += t;
    mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), static_cast<mp_bitcnt_t>(e + L));
    total += t;
    ++terms;
  });

  InfoValue v = cfg.stamp();
  mpz_class mass_x = 0;
  mpz_class mass_y = 0;
  for (const auto& [a, w] : ux) mass_x += static_cast<unsigned long>(w);
  for (const auto& [b, w] : uy) mass_y += static_cast<unsigned long>(w);
  if (terms == 0) {
    v.value = std::numeric_limits<double>::quiet_NaN();
    v.resolution = Resolution::unresolved;
    v.note = "no resolved term";
    return v;
  }
  Rational sum(total, mpz_class(1));
  sum /= pow2(3 * L);
  v.value = log2_rational(sum);
  const mpz_class all = mass_x * mass_y;
  Rational share(resolved_mass, all);
  share.canonicalize();
  v.coverage = share.get_d();
  v.resolution = resolved_mass == all ? Resolution::resolved : Resolution::partial;
  return v;
}

}  // namespace probinfo

namespace probinfo {

namespace {

template <class W>
bool empty_support(const std::map<BitString, W>& u, const std::map<BitString, W>& v, InfoValue& out) {
  if (!u.empty() && !v.empty()) return false;
  out.value = -std::numeric_limits<double>::infinity();
  out.resolution = Resolution::resolved;
  out.coverage = 1.0;
  out.note = "empty support";
  return true;
}

void mark_unresolved(InfoValue& v) {
  v.value = std::numeric_limits<double>::quiet_NaN();
  v.resolution = Resolution::unresolved;
  v.coverage = 0.0;
  v.note = "no resolved term";
}

}  // namespace

InfoValue weighted_info(const std::map<BitString, Rational>& u,
                        const std::map<BitString, Rational>& v, const OracleConfig& cfg) {
  InfoValue out = cfg.stamp();
  if (empty_support(u, v, out)) return out;
  Rational total = 0, resolved = 0;
  long terms = 0;
  for_each_resolved_term(*cfg.kernel(), u, v, [&](const Rational& wa, const Rational& wb, long e) {
    Rational t = wa * wb;
    resolved += t;
    total += t * pow2(e);
    ++terms;
  });
  if (terms == 0) {
    mark_unresolved(out);
    return out;
  }
  Rational mu = 0, mv = 0;
  for (const auto& [a, w] : u) mu += w;
  for (const auto& [b, w] : v) mv += w;
  out.value = log2_rational(total);
  Rational all = mu * mv;
  out.coverage = Rational(resolved / all).get_d();
  out.resolution = resolved == all ? Resolution::resolved : Resolution::partial;
  return out;
}

InfoValue weighted_info(const std::map<BitString, double>& u, const std::map<BitString, double>& v,
                        const OracleConfig& cfg) {
  InfoValue out = cfg.stamp();
  if (empty_support(u, v, out)) return out;
  Log2SumAccumulator total, resolved;
  for_each_resolved_term(*cfg.kernel(), u, v, [&](double wa, double wb, long e) {
    if (wa <= 0.0 || wb <= 0.0) return;
    const double lw = std::log2(wa) + std::log2(wb);
    resolved.add_log2(lw);
    total.add_log2(lw + static_cast<double>(e));
  });
  if (total.count() == 0) {
    mark_unresolved(out);
    return out;
  }
  Log2SumAccumulator mu, mv;
  for (const auto& [a, w] : u) mu.add(w);
  for (const auto& [b, w] : v) mv.add(w);
  out.value = total.log2_sum();
  out.coverage = std::min(1.0, std::exp2(resolved.log2_sum() - mu.log2_sum() - mv.log2_sum()));
  out.resolution = out.coverage >= 1.0 - 1e-12 ? Resolution::resolved : Resolution::partial;
  return out;
}

}  // namespace probinfo

namespace probinfo {

double exp2_or_zero(const InfoValue& v) {
  if (!v.numeric() || std::isnan(v.value)) return 0.0;
  return std::exp2(v.value);
}

Gap make_gap(InfoValue before, InfoValue after) {
  Gap g;
  if (!before.numeric() || !after.numeric()) {
    g.value = std::numeric_limits<double>::quiet_NaN();
  } else if (before.value == after.value) {
    g.value = 0.0;
  } else {
    g.value = before.value - after.value;
  }
  g.before = std::move(before);
  g.after = std::move(after);
  return g;
}

}  // namespace probinfo
