#include "clfd/io/policy_io.hpp"

#include <fstream>

#include "clfd/io/cloud_io.hpp"
#include "json_util.hpp"

namespace clfd::io {

namespace {

constexpr int kSupportedVersion = 1;

using learning::BreakContactParams;
using learning::MaintainContactParams;
using learning::MakeContactParams;
using learning::ObjectPair;
using learning::Primitive;
using learning::PrimitiveKind;

json pair_to_json(const ObjectPair& p) {
  return json::array({p.first, p.second});
}

ObjectPair pair_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw FormatError("object pair must be a 2-element array");
  return {j[0].get<std::string>(), j[1].get<std::string>()};
}

json locations_to_json(const std::vector<contact::ContactLocation>& locs) {
  json out = json::array();
  for (const auto& l : locs)
    out.push_back({{"point", to_json(l.point)}, {"support", l.support}});
  return out;
}

std::vector<contact::ContactLocation> locations_from_json(const json& j) {
  std::vector<contact::ContactLocation> out;
  for (const auto& l : j)
    out.push_back({vec3_from_json(l.at("point")), l.at("support").get<int>()});
  return out;
}

PrimitiveKind kind_from_string(const std::string& s) {
  if (s == "make_contact") return PrimitiveKind::MakeContact;
  if (s == "maintain_contact") return PrimitiveKind::MaintainContact;
  if (s == "break_contact") return PrimitiveKind::BreakContact;
  throw FormatError("unknown primitive kind '" + s + "'");
}

json params_to_json(const Primitive& prim) {
  json out;
  switch (prim.kind) {
    case PrimitiveKind::MakeContact: {
      const auto& p = std::get<MakeContactParams>(prim.params);
      out["locations"] = locations_to_json(p.locations);
      if (p.manual_override)
        out["manual_override"] = locations_to_json(*p.manual_override);
      out["approach_dir"] = to_json(p.approach_dir);
      break;
    }
    case PrimitiveKind::MaintainContact: {
      const auto& p = std::get<MaintainContactParams>(prim.params);
      out["track_reference"] = p.track_reference;
      json kms = json::array();
      for (const auto& km : p.key_moments) {
        json k;
        k["frame"] = km.frame;
        k["timestamp"] = km.timestamp;
        k["reference"] = km.reference;
        json contacts = json::array();
        for (const auto& pair : km.contact_set)
          contacts.push_back(pair_to_json(pair));
        k["contact_set"] = contacts;
        json rels = json::array();
        for (const auto& [pair, pose] : km.relative_poses)
          rels.push_back({{"pair", pair_to_json(pair)},
                          {"pose", to_json(pose)}});
        k["relative_poses"] = rels;
        kms.push_back(k);
      }
      out["key_moments"] = kms;
      json track = json::array();
      for (const auto& [t, pose] : p.dense_track)
        track.push_back({{"t", t}, {"pose", to_json(pose)}});
      out["dense_track"] = track;
      break;
    }
    case PrimitiveKind::BreakContact: {
      const auto& p = std::get<BreakContactParams>(prim.params);
      out["reference"] = p.reference;
      out["final_pose"] = to_json(p.final_pose);
      if (p.manual_override)
        out["manual_override"] = to_json(*p.manual_override);
      break;
    }
  }
  return out;
}

void params_from_json(Primitive& prim, const json& j) {
  switch (prim.kind) {
    case PrimitiveKind::MakeContact: {
      MakeContactParams p;
      p.locations = locations_from_json(j.at("locations"));
      if (j.contains("manual_override"))
        p.manual_override = locations_from_json(j["manual_override"]);
      p.approach_dir = vec3_from_json(j.at("approach_dir"));
      prim.params = std::move(p);
      break;
    }
    case PrimitiveKind::MaintainContact: {
      MaintainContactParams p;
      p.track_reference = j.at("track_reference").get<std::string>();
      for (const auto& k : j.at("key_moments")) {
        learning::KeyMoment km;
        km.frame = k.at("frame").get<int>();
        km.timestamp = k.at("timestamp").get<double>();
        km.reference = k.at("reference").get<std::string>();
        for (const auto& pair : k.at("contact_set"))
          km.contact_set.insert(pair_from_json(pair));
        for (const auto& rel : k.at("relative_poses"))
          km.relative_poses[pair_from_json(rel.at("pair"))] =
              pose_from_json(rel.at("pose"));
        p.key_moments.push_back(std::move(km));
      }
      for (const auto& entry : j.at("dense_track"))
        p.dense_track.emplace_back(entry.at("t").get<double>(),
                                   pose_from_json(entry.at("pose")));
      prim.params = std::move(p);
      break;
    }
    case PrimitiveKind::BreakContact: {
      BreakContactParams p;
      p.reference = j.at("reference").get<std::string>();
      p.final_pose = pose_from_json(j.at("final_pose"));
      if (j.contains("manual_override"))
        p.manual_override = pose_from_json(j["manual_override"]);
      prim.params = std::move(p);
      break;
    }
  }
}

}  // namespace

void save_policy(const learning::Policy& policy,
                 const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  const fs::path dir = path.parent_path().empty() ? "." : path.parent_path();
  fs::create_directories(dir / "models");

  json root;
  root["format_version"] = kSupportedVersion;
  root["frame_rate"] = policy.frame_rate;
  root["collision"] = {{"eps", policy.collision_eps},
                       {"min_pts", policy.collision_min_pts}};

  json objects;
  for (const auto& [name, model] : policy.object_models) {
    json o;
    o["model"] = "models/" + name + ".ply";
    if (model.symmetry_axis) {
      o["symmetry_axis"] = to_json(*model.symmetry_axis);
      o["symmetry_point"] = to_json(model.symmetry_point);
    }
    objects[name] = o;
    save_ply(dir / "models" / (name + ".ply"), model.cloud);
  }
  root["objects"] = objects;

  json prims = json::array();
  for (const auto& prim : policy.primitives) {
    json p;
    p["kind"] = learning::to_string(prim.kind);
    p["target"] = prim.target;
    p["span"] = json::array({prim.span.first, prim.span.second});
    p["params"] = params_to_json(prim);
    prims.push_back(p);
  }
  root["primitives"] = prims;

  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << root.dump(2) << "\n";
}

learning::Policy load_policy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }

  const int version = root.value("format_version", -1);
  if (version != kSupportedVersion)
    throw FormatError(path.string() + ": format version " +
                      std::to_string(version) + " found, supported: " +
                      std::to_string(kSupportedVersion));

  learning::Policy policy;
  policy.frame_rate = root.at("frame_rate").get<double>();
  policy.collision_eps = root.at("collision").at("eps").get<double>();
  policy.collision_min_pts = root.at("collision").at("min_pts").get<int>();

  const auto dir = path.parent_path().empty() ? std::filesystem::path(".")
                                              : path.parent_path();
  for (const auto& [name, o] : root.at("objects").items()) {
    learning::ObjectModel model;
    model.model_path = o.at("model").get<std::string>();
    model.cloud = load_ply(dir / model.model_path, name);
    model.collision = build_collision_model(model.cloud, policy.collision_eps,
                                            policy.collision_min_pts);
    if (o.contains("symmetry_axis"))
      model.symmetry_axis = vec3_from_json(o["symmetry_axis"]);
    if (o.contains("symmetry_point"))
      model.symmetry_point = vec3_from_json(o["symmetry_point"]);
    policy.object_models[name] = std::move(model);
  }

  for (const auto& p : root.at("primitives")) {
    Primitive prim;
    prim.kind = kind_from_string(p.at("kind").get<std::string>());
    prim.target = p.at("target").get<std::string>();
    prim.span = {p.at("span")[0].get<int>(), p.at("span")[1].get<int>()};
    params_from_json(prim, p.at("params"));
    policy.primitives.push_back(std::move(prim));
  }
  return policy;
}

}  // namespace clfd::io
