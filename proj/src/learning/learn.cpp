#include "clfd/learning/learn.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "clfd/errors.hpp"

namespace clfd::learning {

namespace {

ObjectPair canonical(const std::string& a, const std::string& b) {
  return a <= b ? ObjectPair{a, b} : ObjectPair{b, a};
}

bool present(const Demonstration& demo, const std::string& name, int frame) {
  const PointCloud* c = demo.frames[frame].find(name);
  return c != nullptr && !c->empty();
}

const Pose& pose_at(const PoseTracks& tracks, const std::string& name,
                    int frame) {
  auto it = tracks.find(name);
  if (it == tracks.end() || frame >= static_cast<int>(it->second.size()) ||
      !it->second[frame])
    throw MissingPoseTrack("no pose for '" + name + "' at frame " +
                           std::to_string(frame));
  return it->second[frame]->pose;
}

bool has_pose(const PoseTracks& tracks, const std::string& name, int frame) {
  auto it = tracks.find(name);
  return it != tracks.end() && frame < static_cast<int>(it->second.size()) &&
         it->second[frame].has_value();
}

/// Nearest non-held object by cloud distance at `frame`; objects in hand
/// contact with the target take priority via the in_contact set.
std::string pick_reference(const Demonstration& demo,
                           const std::string& target,
                           const std::set<std::string>& in_contact, int frame,
                           const PoseTracks& tracks) {
  const PointCloud* target_cloud = demo.frames[frame].find(target);
  std::string best;
  double best_dist = std::numeric_limits<double>::infinity();
  bool best_in_contact = false;
  for (const auto& obj : demo.meta.objects) {
    if (obj.name == target) continue;
    if (!present(demo, obj.name, frame) || !has_pose(tracks, obj.name, frame))
      continue;
    const bool contacting = in_contact.count(obj.name) > 0;
    double dist = std::numeric_limits<double>::infinity();
    if (target_cloud != nullptr && !target_cloud->empty())
      dist = min_distance(*target_cloud, *demo.frames[frame].find(obj.name));
    if (std::make_pair(!contacting, dist) <
        std::make_pair(!best_in_contact, best_dist)) {
      best = obj.name;
      best_dist = dist;
      best_in_contact = contacting;
    }
  }
  if (best.empty())
    throw MissingReference("no reference object available at frame " +
                           std::to_string(frame));
  return best;
}

std::set<std::string> contacting_objects(const ContactTimelines& timelines,
                                         const std::string& target,
                                         int frame) {
  std::set<std::string> out;
  for (const auto& [pair, tl] : timelines.objects) {
    if (frame >= static_cast<int>(tl.states.size()) || !tl.states[frame])
      continue;
    if (pair.first == target) out.insert(pair.second);
    if (pair.second == target) out.insert(pair.first);
  }
  return out;
}

std::set<ObjectPair> contact_set_at(const ContactTimelines& timelines,
                                    int frame) {
  std::set<ObjectPair> out;
  for (const auto& [pair, tl] : timelines.objects)
    if (frame < static_cast<int>(tl.states.size()) && tl.states[frame])
      out.insert(pair);
  return out;
}

}  // namespace

ContactTimelines analyze_contacts(const Demonstration& demo,
                                  const contact::HysteresisParams& params) {
  ContactTimelines out;
  const auto& objects = demo.meta.objects;
  for (const auto& obj : objects)
    out.hand[obj.name] =
        contact::contact_timeline(demo, kHandName, obj.name, params);
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (std::size_t j = i + 1; j < objects.size(); ++j) {
      const ObjectPair key = canonical(objects[i].name, objects[j].name);
      out.objects[key] =
          contact::contact_timeline(demo, key.first, key.second, params);
    }
  }
  return out;
}

PoseTracks track_all_objects(const Demonstration& demo,
                             const icp::IcpParams& params) {
  PoseTracks tracks;
  for (const auto& obj : demo.meta.objects) {
    auto model = demo.models.find(obj.name);
    if (model == demo.models.end())
      throw UnknownObject("no model cloud for '" + obj.name + "'");
    tracks[obj.name] =
        icp::track_poses(model->second, demo.frames, obj.name, params);
  }
  return tracks;
}

Policy learn_policy(const Demonstration& demo,
                    const std::vector<Primitive>& primitives,
                    const ContactTimelines& timelines,
                    const PoseTracks& pose_tracks, const LearnParams& params) {
  Policy policy;
  policy.frame_rate = demo.meta.frame_rate;
  policy.collision_eps = params.collision_eps;
  policy.collision_min_pts = params.collision_min_pts;
  policy.primitives = primitives;

  for (const auto& obj : demo.meta.objects) {
    auto model = demo.models.find(obj.name);
    if (model == demo.models.end())
      throw UnknownObject("no model cloud for '" + obj.name + "'");
    ObjectModel om;
    om.cloud = model->second;
    om.collision = build_collision_model(om.cloud, params.collision_eps,
                                         params.collision_min_pts);
    om.symmetry_axis = obj.symmetry_axis;
    om.symmetry_point = obj.symmetry_point;
    om.model_path = obj.model_path;
    policy.object_models[obj.name] = om;
  }

  const int frame_count = static_cast<int>(demo.frames.size());
  for (auto& prim : policy.primitives) {
    const std::string& target = prim.target;
    switch (prim.kind) {
      case PrimitiveKind::MakeContact: {
        const int f = prim.span.first;
        const Frame& frame = demo.frames[f];
        if (!frame.hand || frame.hand->empty())
          throw NoContactPoints("no hand cloud at make frame " +
                                std::to_string(f));
        MakeContactParams mp;
        const Pose& pose = pose_at(pose_tracks, target, f);
        mp.locations = contact::contact_locations(
            policy.object_models.at(target).cloud, pose, *frame.hand,
            params.d_contact, params.location_eps, params.location_min_pts);
        if (mp.locations.empty())
          throw NoContactPoints("contact points did not cluster at frame " +
                                std::to_string(f));
        const Eigen::Vector3d hand_model =
            invert(pose).apply(centroid(*frame.hand));
        Eigen::Vector3d dir = mp.locations.front().point - hand_model;
        mp.approach_dir =
            dir.norm() > 1e-12 ? dir.normalized() : Eigen::Vector3d::UnitZ();
        prim.params = std::move(mp);
        break;
      }
      case PrimitiveKind::BreakContact: {
        const int f = prim.span.first;
        BreakContactParams bp;
        bp.reference = pick_reference(demo, target, {}, f, pose_tracks);
        bp.final_pose = relative_to(pose_at(pose_tracks, target, f),
                                    pose_at(pose_tracks, bp.reference, f));
        prim.params = std::move(bp);
        break;
      }
      case PrimitiveKind::MaintainContact: {
        const auto [start, end] = prim.span;
        MaintainContactParams mp;

        // key moments: span ends, object-object contact changes, and object
        // appearance changes
        std::set<int> moments = {start, end};
        for (int f = std::max(start, 1); f <= end; ++f) {
          for (const auto& [pair, tl] : timelines.objects) {
            if (f < static_cast<int>(tl.states.size()) &&
                tl.states[f] != tl.states[f - 1])
              moments.insert(f);
          }
          for (const auto& obj : demo.meta.objects) {
            if (present(demo, obj.name, f) != present(demo, obj.name, f - 1))
              moments.insert(f);
          }
        }

        for (int f : moments) {
          KeyMoment km;
          km.frame = f;
          km.timestamp = (f - start) / demo.meta.frame_rate;
          km.contact_set = contact_set_at(timelines, f);
          km.reference = pick_reference(
              demo, target, contacting_objects(timelines, target, f), f,
              pose_tracks);
          const Pose target_pose = pose_at(pose_tracks, target, f);
          for (const auto& obj : demo.meta.objects) {
            if (obj.name == target || !has_pose(pose_tracks, obj.name, f))
              continue;
            km.relative_poses[{target, obj.name}] =
                relative_to(target_pose, pose_at(pose_tracks, obj.name, f));
          }
          mp.key_moments.push_back(std::move(km));
        }

        mp.track_reference = pick_reference(
            demo, target, contacting_objects(timelines, target, start), start,
            pose_tracks);
        for (int f = start; f <= end && f < frame_count; ++f) {
          if (!has_pose(pose_tracks, target, f) ||
              !has_pose(pose_tracks, mp.track_reference, f))
            continue;
          mp.dense_track.emplace_back(
              (f - start) / demo.meta.frame_rate,
              relative_to(pose_at(pose_tracks, target, f),
                          pose_at(pose_tracks, mp.track_reference, f)));
        }
        prim.params = std::move(mp);
        break;
      }
    }
  }
  return policy;
}

Policy override_place_pose(Policy policy, std::size_t primitive_index,
                           const Pose& pose) {
  if (primitive_index >= policy.primitives.size())
    throw InvalidArgument("primitive index out of range");
  Primitive& prim = policy.primitives[primitive_index];
  if (prim.kind != PrimitiveKind::BreakContact)
    throw WrongPrimitiveKind("place-pose override requires a BreakContact");
  std::get<BreakContactParams>(prim.params).manual_override = pose;
  return policy;
}

}  // namespace clfd::learning
