#pragma once

// Test-only oracle for table machines: scans the table rows directly
// instead of walking the machine, so it shares no code path with the
// enumeration engine or the oracle memo.

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "probinfo/machine.hpp"
#include "probinfo/rational.hpp"

namespace probinfo::testing {

class TableScanOracle {
 public:
  TableScanOracle(const MachineSpec& m, std::size_t max_len) : rows_(m.table()), max_len_(max_len) {}

  // Output of row r under aux, or nullopt if the row needs more aux bits.
  std::optional<std::string> output(const TableEntry& r, const std::string& aux) const {
    if (r.aux_reads > aux.size()) return std::nullopt;
    return r.output.str() + aux.substr(0, r.aux_reads);
  }

  Rational m(const std::string& x, const std::string& aux) const {
    Rational total = 0;
    for (const auto& r : rows_) {
      if (r.program.size() > max_len_) continue;
      auto o = output(r, aux);
      if (o && *o == x) total += Rational(1, 1) / pow2(static_cast<long>(r.program.size()));
    }
    return total;
  }

  std::optional<std::size_t> K(const std::string& x, const std::string& aux = "") const {
    std::optional<std::size_t> best;
    for (const auto& r : rows_) {
      if (r.program.size() > max_len_) continue;
      auto o = output(r, aux);
      if (o && *o == x && (!best || r.program.size() < *best)) best = r.program.size();
    }
    return best;
  }

  static std::string pair(const std::string& x, const std::string& y) {
    return std::string(x.size(), '1') + "0" + x + std::string(y.size(), '1') + "0" + y;
  }

  std::optional<long> i(const std::string& x, const std::string& y) const {
    auto kx = K(x), ky = K(y), kxy = K(pair(x, y));
    if (!kx || !ky || !kxy) return std::nullopt;
    return static_cast<long>(*kx) + static_cast<long>(*ky) - static_cast<long>(*kxy);
  }

  // om(.|x) as exact rationals.
  std::map<std::string, Rational> om(const std::string& x) const {
    std::map<std::string, Rational> u;
    for (const auto& r : rows_) {
      if (r.program.size() > max_len_ || r.aux_reads > x.size()) continue;
      u[*output(r, x)] += Rational(1, 1) / pow2(static_cast<long>(r.program.size()));
    }
    return u;
  }

  // Exact sum_{a,b} om(a|x) om(b|y) 2^{i(a:b)} over resolved terms.
  std::optional<Rational> bounded_sum(const std::string& x, const std::string& y) const {
    Rational s = 0;
    bool any = false;
    for (const auto& [a, wa] : om(x)) {
      for (const auto& [b, wb] : om(y)) {
        if (auto e = i(a, b)) {
          s += wa * wb * pow2(*e);
          any = true;
        }
      }
    }
    if (!any) return std::nullopt;
    return s;
  }

 private:
  std::vector<TableEntry> rows_;
  std::size_t max_len_;
};

}  // namespace probinfo::testing
