#include "clfd/contact/hysteresis.hpp"

#include <algorithm>

#include "clfd/errors.hpp"

namespace clfd::contact {

std::vector<bool> hysteresis_forward(const DistanceSeries& d,
                                     const HysteresisParams& p, bool initial) {
  if (!p.valid())
    throw InvalidArgument("hysteresis requires d_break > d_make > 0");
  std::vector<bool> out(d.size());
  bool state = initial;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i]) {
      if (!state && *d[i] < p.d_make)
        state = true;
      else if (state && *d[i] > p.d_break)
        state = false;
    }
    out[i] = state;
  }
  return out;
}

int count_transitions(const std::vector<bool>& states) {
  int n = 0;
  for (std::size_t i = 1; i < states.size(); ++i)
    if (states[i] != states[i - 1]) ++n;
  return n;
}

std::vector<bool> bidirectional_contacts(const DistanceSeries& d,
                                         const HysteresisParams& p) {
  if (d.empty()) throw InvalidArgument("bidirectional_contacts: empty series");

  const auto initial_state = [&](const DistanceSeries& s) {
    for (const auto& v : s)
      if (v) return *v < p.d_make;
    return false;
  };

  const std::vector<bool> fwd = hysteresis_forward(d, p, initial_state(d));

  DistanceSeries rev(d.rbegin(), d.rend());
  std::vector<bool> bwd = hysteresis_forward(rev, p, initial_state(rev));
  std::reverse(bwd.begin(), bwd.end());

  if (fwd == bwd) return fwd;
  return count_transitions(bwd) < count_transitions(fwd) ? bwd : fwd;
}

}  // namespace clfd::contact
