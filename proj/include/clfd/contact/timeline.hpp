#pragma once

#include <string>
#include <utility>
#include <vector>

#include "clfd/contact/hysteresis.hpp"
#include "clfd/demo.hpp"

namespace clfd::contact {

enum class EventKind { Make, Break };

/// A contact transition. Make events carry the first in-contact frame of a
/// run; Break events carry the last in-contact frame.
struct Event {
  int frame = 0;
  EventKind kind = EventKind::Make;

  bool operator==(const Event&) const = default;
};

struct ContactTimeline {
  std::pair<std::string, std::string> pair;
  std::vector<bool> states;  // true = in contact, one per frame
  std::vector<Event> events;
};

std::vector<Event> events_from_states(const std::vector<bool>& states);

/// Per-frame min_distance between the two objects' segmented clouds;
/// nullopt where either cloud is missing. Pass kHandName for the hand.
/// Expects an ingestion-filtered demonstration (see filter_demonstration).
/// Throws UnknownObject when a name is not in the demonstration.
DistanceSeries distance_series(const Demonstration& demo, const std::string& a,
                               const std::string& b);

/// Full timeline for one pair: distances, bidirectional hysteresis, events.
ContactTimeline contact_timeline(const Demonstration& demo,
                                 const std::string& a, const std::string& b,
                                 const HysteresisParams& params);

}  // namespace clfd::contact
