#pragma once

#include <map>
#include <string>
#include <vector>

#include "clfd/contact/timeline.hpp"
#include "clfd/learning/policy.hpp"

namespace clfd::learning {

/// Maps hand-object contact timelines to an ordered primitive skeleton
/// (kinds, targets, spans; no learned parameters). Every Make event opens a
/// MakeContact at its frame, the in-contact run becomes MaintainContact, and
/// every Break event closes with BreakContact at the run's last frame.
/// Throws OverlappingContacts when two objects are hand-held at once.
std::vector<Primitive> segment_primitives(
    const std::map<std::string, contact::ContactTimeline>& hand_timelines);

}  // namespace clfd::learning
