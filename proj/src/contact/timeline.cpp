#include "clfd/contact/timeline.hpp"

#include "clfd/errors.hpp"

namespace clfd::contact {

std::vector<Event> events_from_states(const std::vector<bool>& states) {
  std::vector<Event> events;
  for (std::size_t i = 1; i < states.size(); ++i) {
    if (states[i] && !states[i - 1])
      events.push_back({static_cast<int>(i), EventKind::Make});
    else if (!states[i] && states[i - 1])
      events.push_back({static_cast<int>(i) - 1, EventKind::Break});
  }
  return events;
}

DistanceSeries distance_series(const Demonstration& demo, const std::string& a,
                               const std::string& b) {
  const auto known = [&](const std::string& name) {
    return name == kHandName || demo.meta.find(name) != nullptr;
  };
  if (!known(a)) throw UnknownObject("unknown object '" + a + "'");
  if (!known(b)) throw UnknownObject("unknown object '" + b + "'");

  DistanceSeries out(demo.frames.size());
  for (std::size_t t = 0; t < demo.frames.size(); ++t) {
    const PointCloud* ca = demo.frames[t].find(a);
    const PointCloud* cb = demo.frames[t].find(b);
    if (ca && cb && !ca->empty() && !cb->empty())
      out[t] = min_distance(*ca, *cb);
  }
  return out;
}

ContactTimeline contact_timeline(const Demonstration& demo,
                                 const std::string& a, const std::string& b,
                                 const HysteresisParams& params) {
  ContactTimeline tl;
  tl.pair = {a, b};
  tl.states = bidirectional_contacts(distance_series(demo, a, b), params);
  tl.events = events_from_states(tl.states);
  return tl;
}

}  // namespace clfd::contact
