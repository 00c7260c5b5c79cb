#include "clfd/learning/segmentation.hpp"

#include <algorithm>

#include "clfd/errors.hpp"

namespace clfd::learning {

const char* to_string(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::MakeContact: return "make_contact";
    case PrimitiveKind::MaintainContact: return "maintain_contact";
    case PrimitiveKind::BreakContact: return "break_contact";
  }
  return "?";
}

std::vector<Primitive> segment_primitives(
    const std::map<std::string, contact::ContactTimeline>& hand_timelines) {
  std::size_t frames = 0;
  for (const auto& [name, tl] : hand_timelines)
    frames = std::max(frames, tl.states.size());
  for (std::size_t t = 0; t < frames; ++t) {
    int held = 0;
    std::string names;
    for (const auto& [name, tl] : hand_timelines) {
      if (t < tl.states.size() && tl.states[t]) {
        ++held;
        names += (names.empty() ? "" : ", ") + name;
      }
    }
    if (held > 1)
      throw OverlappingContacts("frame " + std::to_string(t) +
                                ": simultaneous hand contact on " + names);
  }

  std::vector<Primitive> out;
  for (const auto& [name, tl] : hand_timelines) {
    std::size_t t = 0;
    while (t < tl.states.size()) {
      if (!tl.states[t]) {
        ++t;
        continue;
      }
      const int start = static_cast<int>(t);
      while (t < tl.states.size() && tl.states[t]) ++t;
      const int end = static_cast<int>(t) - 1;

      // a run beginning at frame 0 had no observed Make transition; a run
      // reaching the last frame never breaks
      if (start > 0)
        out.push_back({PrimitiveKind::MakeContact, name, {start, start}, {}});
      out.push_back({PrimitiveKind::MaintainContact, name, {start, end}, {}});
      if (t < tl.states.size())
        out.push_back({PrimitiveKind::BreakContact, name, {end, end}, {}});
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const Primitive& a, const Primitive& b) {
                     if (a.span.first != b.span.first)
                       return a.span.first < b.span.first;
                     if (a.target != b.target) return a.target < b.target;
                     return static_cast<int>(a.kind) < static_cast<int>(b.kind);
                   });
  return out;
}

}  // namespace clfd::learning
