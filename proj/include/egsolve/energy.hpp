#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <vector>

#include "egsolve/errors.hpp"

namespace egsolve {

namespace detail {

// Raw encoding of the energy domain: finite credits are their own value,
// top is INT64_MAX. Integer order then coincides with the domain order.
inline constexpr int64_t kRawTop = INT64_MAX;

// a - b truncated at zero, absorbing on top. The result is not capped here;
// capping against the arena's credit bound happens in the lift.
inline int64_t raw_ominus(int64_t a, int64_t b) {
  if (a == kRawTop) return kRawTop;
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw OverflowError("energy subtraction out of range");
  }
  if (r < 0) r = 0;
  if (r == kRawTop) {
    throw OverflowError("energy value collides with the top sentinel");
  }
  return r;
}

}  // namespace detail

// Element of the energy value domain: a nonnegative credit or the absorbing
// maximal element ("top"). The domain's total order is exposed through the
// usual comparison operators.
class EnergyValue {
 public:
  constexpr EnergyValue() = default;  // finite zero

  static constexpr EnergyValue finite(int64_t n) {
    assert(n >= 0 && n < detail::kRawTop);
    return EnergyValue(n);
  }
  static constexpr EnergyValue top() { return EnergyValue(detail::kRawTop); }
  static constexpr EnergyValue from_raw(int64_t raw) {
    assert(raw >= 0);
    return EnergyValue(raw);
  }

  constexpr bool is_top() const { return raw_ == detail::kRawTop; }
  constexpr bool is_finite() const { return !is_top(); }

  // The credit amount; only meaningful for finite values.
  constexpr int64_t amount() const {
    assert(is_finite());
    return raw_;
  }
  constexpr int64_t raw() const { return raw_; }

  friend constexpr auto operator<=>(EnergyValue, EnergyValue) = default;

 private:
  explicit constexpr EnergyValue(int64_t raw) : raw_(raw) {}
  int64_t raw_ = 0;
};

// Truncated subtraction on the energy domain: top stays top, finite values
// map to max(0, a - b). The result may exceed any arena's credit bound.
inline EnergyValue ominus(EnergyValue a, int64_t b) {
  return EnergyValue::from_raw(detail::raw_ominus(a.raw(), b));
}

// Dense per-vertex energy assignment. An id of the arena it was computed for
// travels along so misuse across arenas can be caught; 0 means unbound
// (e.g. a claim parsed from a file).
class ProgressMeasure {
 public:
  ProgressMeasure() = default;
  explicit ProgressMeasure(size_t num_vertices, uint64_t arena_id = 0)
      : raw_(num_vertices, 0), arena_id_(arena_id) {}
  static ProgressMeasure from_raw(std::vector<int64_t> raw,
                                  uint64_t arena_id = 0) {
    ProgressMeasure m;
    m.raw_ = std::move(raw);
    m.arena_id_ = arena_id;
    return m;
  }

  size_t size() const { return raw_.size(); }
  uint64_t arena_id() const { return arena_id_; }

  EnergyValue operator[](uint32_t v) const {
    return EnergyValue::from_raw(raw_[v]);
  }
  void set(uint32_t v, EnergyValue value) { raw_[v] = value.raw(); }

  const std::vector<int64_t>& raw() const { return raw_; }
  std::vector<int64_t>& raw() { return raw_; }

  friend bool operator==(const ProgressMeasure& a, const ProgressMeasure& b) {
    return a.raw_ == b.raw_;
  }

 private:
  std::vector<int64_t> raw_;
  uint64_t arena_id_ = 0;
};

}  // namespace egsolve
