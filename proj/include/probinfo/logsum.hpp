#pragma once

#include <cmath>
#include <limits>

namespace probinfo {

/// Streaming log2-domain accumulator: keeps the running maximum exponent and
/// the sum of 2^(t - max) so terms spanning hundreds of binary orders of
/// magnitude add without overflow or underflow.
class Log2SumAccumulator {
 public:
  void add_log2(double t) {
    if (t == -std::numeric_limits<double>::infinity()) return;
    if (count_ == 0 || t > max_) {
      scaled_ = (count_ == 0 ? 0.0 : scaled_ * std::exp2(max_ - t)) + 1.0;
      max_ = t;
    } else {
      scaled_ += std::exp2(t - max_);
    }
    ++count_;
  }

  void add(double value) {
    if (value > 0.0) add_log2(std::log2(value));
  }

  void merge(const Log2SumAccumulator& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    if (other.max_ > max_) {
      scaled_ = scaled_ * std::exp2(max_ - other.max_) + other.scaled_;
      max_ = other.max_;
    } else {
      scaled_ += other.scaled_ * std::exp2(other.max_ - max_);
    }
    count_ += other.count_;
  }

  /// log2 of the accumulated sum; -infinity when nothing was added.
  double log2_sum() const {
    if (count_ == 0) return -std::numeric_limits<double>::infinity();
    return max_ + std::log2(scaled_);
  }

  long count() const { return count_; }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double scaled_ = 0.0;
  long count_ = 0;
};

}  // namespace probinfo
