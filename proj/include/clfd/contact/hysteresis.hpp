#pragma once

#include <optional>
#include <vector>

namespace clfd::contact {

/// Dual contact thresholds: engage below d_make, release above d_break.
struct HysteresisParams {
  double d_make = 0.005;   // m
  double d_break = 0.010;  // m

  bool valid() const { return d_make > 0.0 && d_break > d_make; }
};

/// Per-frame pair distance; nullopt marks frames where either cloud is absent.
using DistanceSeries = std::vector<std::optional<double>>;

/// Two-threshold automaton over the series. Out of contact, switch in iff
/// d < d_make; in contact, switch out iff d > d_break. Absent frames hold the
/// previous state.
std::vector<bool> hysteresis_forward(const DistanceSeries& d,
                                     const HysteresisParams& p, bool initial);

/// Runs the automaton forward (initial state: first present distance below
/// d_make) and on the reversed series (initial state from the last present
/// distance), then keeps the run with fewer transitions; ties go forward.
std::vector<bool> bidirectional_contacts(const DistanceSeries& d,
                                         const HysteresisParams& p);

int count_transitions(const std::vector<bool>& states);

}  // namespace clfd::contact
