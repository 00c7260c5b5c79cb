#include "clfd/io/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "json_util.hpp"

namespace clfd::io {

namespace {

using Vec3 = Eigen::Vector3d;

constexpr double kPi = 3.14159265358979323846;

double deg(double d) { return d * kPi / 180.0; }

// ---------------------------------------------------------------------------
// shape sampling

void sample_box_surface(const Vec3& half, const Vec3& center, int n,
                        std::mt19937_64& rng, std::vector<Vec3>& out) {
  const double ax = half.y() * half.z();
  const double ay = half.x() * half.z();
  const double az = half.x() * half.y();
  const double total = 2.0 * (ax + ay + az);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> s(-1.0, 1.0);
  for (int i = 0; i < n; ++i) {
    const double pick = u(rng) * total;
    const double sign = u(rng) < 0.5 ? -1.0 : 1.0;
    Vec3 p;
    if (pick < 2.0 * ax)
      p = Vec3(sign * half.x(), s(rng) * half.y(), s(rng) * half.z());
    else if (pick < 2.0 * (ax + ay))
      p = Vec3(s(rng) * half.x(), sign * half.y(), s(rng) * half.z());
    else
      p = Vec3(s(rng) * half.x(), s(rng) * half.y(), sign * half.z());
    out.push_back(center + p);
  }
}

void sample_disk(double r_outer, double r_inner, double z, int n,
                 std::mt19937_64& rng, std::vector<Vec3>& out) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    const double r = std::sqrt(u(rng) * (r_outer * r_outer -
                                         r_inner * r_inner) +
                               r_inner * r_inner);
    const double a = u(rng) * 2.0 * kPi;
    out.emplace_back(r * std::cos(a), r * std::sin(a), z);
  }
}

void sample_frustum(double r0, double z0, double r1, double z1, int n,
                    std::mt19937_64& rng, std::vector<Vec3>& out) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    const double t = u(rng);
    const double r = r0 + t * (r1 - r0);
    const double z = z0 + t * (z1 - z0);
    const double a = u(rng) * 2.0 * kPi;
    out.emplace_back(r * std::cos(a), r * std::sin(a), z);
  }
}

struct BoxPart {
  Vec3 half;
  Vec3 center;
};

std::vector<BoxPart> basin_boxes(const ShapeSpec& s) {
  const double ix = s.basin_inner_half.x();
  const double iy = s.basin_inner_half.y();
  const double th = s.thickness;
  const double h = s.height;
  const double fl = s.basin_floor_thickness;
  return {
      {{ix + th, iy + th, fl / 2.0}, {0.0, 0.0, -fl / 2.0}},
      {{th / 2.0, iy + th, h / 2.0}, {ix + th / 2.0, 0.0, h / 2.0}},
      {{th / 2.0, iy + th, h / 2.0}, {-(ix + th / 2.0), 0.0, h / 2.0}},
      {{ix, th / 2.0, h / 2.0}, {0.0, iy + th / 2.0, h / 2.0}},
      {{ix, th / 2.0, h / 2.0}, {0.0, -(iy + th / 2.0), h / 2.0}},
  };
}

}  // namespace

PointCloud sample_shape(const ShapeSpec& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PointCloud cloud;
  cloud.label = shape.name;
  auto& pts = cloud.points;
  pts.reserve(shape.samples);

  switch (shape.kind) {
    case ShapeSpec::Kind::Box:
      sample_box_surface(shape.box_size / 2.0, shape.box_center, shape.samples,
                         rng, pts);
      break;
    case ShapeSpec::Kind::Cylinder: {
      const double r = shape.radius;
      const double h = shape.height;
      const double lateral = 2.0 * kPi * r * h;
      const double cap = kPi * r * r;
      const double total = lateral + 2.0 * cap;
      const int n_lat =
          static_cast<int>(std::round(shape.samples * lateral / total));
      const int n_cap = (shape.samples - n_lat) / 2;
      sample_frustum(r, -h / 2.0, r, h / 2.0, n_lat, rng, pts);
      sample_disk(r, 0.0, -h / 2.0, n_cap, rng, pts);
      sample_disk(r, 0.0, h / 2.0, shape.samples - n_lat - n_cap, rng, pts);
      break;
    }
    case ShapeSpec::Kind::Bowl: {
      // lathed profile; origin at the interior bottom center
      const double rb = shape.bottom_radius;
      const double rt = shape.radius;
      const double h = shape.height;
      const double th = shape.thickness;
      const double slant_i = std::hypot(h, rt - rb);
      const double slant_e = std::hypot(h + th, rt - rb);
      const double a_int = kPi * (rb + rt) * slant_i;
      const double a_ext = kPi * (rb + rt + 2.0 * th) * slant_e;
      const double a_ibot = kPi * rb * rb;
      const double a_ebot = kPi * (rb + th) * (rb + th);
      const double a_rim = kPi * ((rt + th) * (rt + th) - rt * rt);
      const double total = a_int + a_ext + a_ibot + a_ebot + a_rim;
      const auto share = [&](double a) {
        return static_cast<int>(std::round(shape.samples * a / total));
      };
      sample_frustum(rb, 0.0, rt, h, share(a_int), rng, pts);
      sample_frustum(rb + th, -th, rt + th, h, share(a_ext), rng, pts);
      sample_disk(rb, 0.0, 0.0, share(a_ibot), rng, pts);
      sample_disk(rb + th, 0.0, -th, share(a_ebot), rng, pts);
      sample_disk(rt + th, rt, h, share(a_rim), rng, pts);
      break;
    }
    case ShapeSpec::Kind::Basin: {
      const auto boxes = basin_boxes(shape);
      double total = 0.0;
      std::vector<double> areas;
      for (const auto& b : boxes) {
        areas.push_back(8.0 * (b.half.x() * b.half.y() +
                               b.half.y() * b.half.z() +
                               b.half.x() * b.half.z()));
        total += areas.back();
      }
      for (std::size_t i = 0; i < boxes.size(); ++i) {
        const int n = static_cast<int>(
            std::round(shape.samples * areas[i] / total));
        sample_box_surface(boxes[i].half, boxes[i].center, n, rng, pts);
      }
      break;
    }
  }
  return cloud;
}

// ---------------------------------------------------------------------------
// script evaluation

namespace {

Pose interpolate(const Pose& a, const Pose& b, double t) {
  Pose out;
  out.rotation = a.rotation.slerp(t, b.rotation);
  out.translation = a.translation + t * (b.translation - a.translation);
  return out;
}

const ShapeSpec* find_shape(const ScenarioSpec& spec, const std::string& name) {
  for (const auto& s : spec.shapes)
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace

Pose object_pose_at(const ScenarioSpec& spec, const std::string& name,
                    double t) {
  const ShapeSpec* shape = find_shape(spec, name);
  if (shape == nullptr) throw UnknownObject("no shape named '" + name + "'");
  Pose pose = shape->initial_pose;
  for (const auto& move : spec.moves) {
    if (move.object != name) continue;
    if (t >= move.t1)
      pose = move.to;
    else if (t > move.t0)
      pose = interpolate(move.from, move.to, (t - move.t0) /
                                                 (move.t1 - move.t0));
  }
  return pose;
}

bool object_present_at(const ScenarioSpec& spec, const std::string& name,
                       double t) {
  const ShapeSpec* shape = find_shape(spec, name);
  if (shape == nullptr) throw UnknownObject("no shape named '" + name + "'");
  bool present = shape->initially_present;
  for (const auto& ev : spec.presence) {
    if (ev.object == name && t >= ev.time) present = ev.present;
  }
  return present;
}

namespace {

Vec3 hand_anchor(const ScenarioSpec& spec, const HandTouchEvent& ev,
                 double t) {
  const Pose pose = object_pose_at(spec, ev.object, t);
  return pose.apply(ev.local_point + ev.approach.normalized() *
                                         (spec.hand_radius +
                                          spec.contact_gap));
}

Vec3 hand_position_at(const ScenarioSpec& spec, double t) {
  // events are validated as sorted and non-overlapping
  const double travel = spec.hand_travel;
  for (const auto& ev : spec.hand) {
    if (t >= ev.t_touch && t <= ev.t_release) return hand_anchor(spec, ev, t);
    if (t >= ev.t_touch - travel && t < ev.t_touch) {
      const double a = (t - (ev.t_touch - travel)) / travel;
      const Vec3 target = hand_anchor(spec, ev, ev.t_touch);
      return spec.hand_home + a * (target - spec.hand_home);
    }
    if (t > ev.t_release && t < ev.t_release + travel) {
      const double a = (t - ev.t_release) / travel;
      const Vec3 from = hand_anchor(spec, ev, ev.t_release);
      return from + a * (spec.hand_home - from);
    }
  }
  return spec.hand_home;
}

int first_frame_at(double t, double rate) {
  return static_cast<int>(std::ceil(t * rate - 1e-9));
}

int last_frame_at(double t, double rate) {
  return static_cast<int>(std::floor(t * rate + 1e-9));
}

}  // namespace

std::pair<Demonstration, GroundTruth> generate_demo(const ScenarioSpec& spec) {
  if (spec.frame_rate <= 0.0 || spec.frame_count < 1)
    throw InvalidScript("scenario needs a positive frame rate and count");
  if (spec.noise_sigma < 0.0)
    throw InvalidScript("noise sigma must be >= 0");

  std::vector<HandTouchEvent> events = spec.hand;
  std::sort(events.begin(), events.end(),
            [](const auto& a, const auto& b) { return a.t_touch < b.t_touch; });
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].t_release <= events[i].t_touch)
      throw InvalidScript("hand event on '" + events[i].object +
                          "' releases before it touches");
    if (i > 0 && events[i].t_touch < events[i - 1].t_release)
      throw InvalidScript("overlapping hand events on '" +
                          events[i - 1].object + "' and '" +
                          events[i].object + "'");
    if (find_shape(spec, events[i].object) == nullptr)
      throw InvalidScript("hand event on unknown object '" +
                          events[i].object + "'");
  }
  ScenarioSpec ordered = spec;
  ordered.hand = events;

  // model clouds are "captured" in the scene frame at the object's initial
  // pose, so per-frame tracking starts from an identity estimate
  Demonstration demo;
  demo.meta.frame_rate = spec.frame_rate;
  for (std::size_t i = 0; i < spec.shapes.size(); ++i) {
    const ShapeSpec& shape = spec.shapes[i];
    const Pose initial = object_pose_at(ordered, shape.name, 0.0);
    ObjectMeta om;
    om.name = shape.name;
    om.model_path = "models/" + shape.name + ".ply";
    if (shape.symmetry_axis) {
      om.symmetry_axis =
          (initial.rotation * *shape.symmetry_axis).normalized();
      om.symmetry_point = initial.translation;
    }
    demo.meta.objects.push_back(om);
    demo.models[shape.name] = transform_cloud(
        initial, sample_shape(shape, spec.seed * 1315423911ULL + i + 1));
  }

  // hand blob: sphere surface
  PointCloud hand_model;
  hand_model.label = kHandName;
  {
    std::mt19937_64 rng(spec.seed * 2654435761ULL + 77);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < spec.hand_samples; ++i) {
      Vec3 v(g(rng), g(rng), g(rng));
      if (v.norm() < 1e-9) v = Vec3::UnitZ();
      hand_model.points.push_back(v.normalized() * spec.hand_radius);
    }
  }

  GroundTruth truth;
  truth.poses.resize(spec.frame_count);
  std::mt19937_64 noise_rng(spec.seed ^ 0x51ab0cafeULL);
  std::normal_distribution<double> noise(0.0, spec.noise_sigma);
  const auto jitter = [&](PointCloud& c) {
    if (spec.noise_sigma <= 0.0) return;
    for (auto& p : c.points)
      p += Vec3(noise(noise_rng), noise(noise_rng), noise(noise_rng));
  };

  for (int f = 0; f < spec.frame_count; ++f) {
    const double t = f / spec.frame_rate;
    Frame frame;
    frame.index = f;
    for (const auto& shape : spec.shapes) {
      if (!object_present_at(ordered, shape.name, t)) continue;
      const Pose pose = object_pose_at(ordered, shape.name, t);
      const Pose initial = object_pose_at(ordered, shape.name, 0.0);
      // truth pose is model frame -> scene frame, matching what tracking
      // should estimate for the captured model cloud
      truth.poses[f][shape.name] = compose(pose, invert(initial));
      PointCloud cloud = transform_cloud(truth.poses[f][shape.name],
                                         demo.models[shape.name]);
      jitter(cloud);
      frame.clouds[shape.name] = std::move(cloud);
    }
    PointCloud hand = hand_model;
    const Vec3 hp = hand_position_at(ordered, t);
    for (auto& p : hand.points) p += hp;
    jitter(hand);
    frame.hand = std::move(hand);
    demo.frames.push_back(std::move(frame));
  }

  for (const auto& ev : ordered.hand) {
    ContactInterval ci;
    ci.a = kHandName;
    ci.b = ev.object;
    ci.start_frame = std::max(0, first_frame_at(ev.t_touch, spec.frame_rate));
    ci.end_frame = std::min(spec.frame_count - 1,
                            last_frame_at(ev.t_release, spec.frame_rate));
    truth.hand_contacts.push_back(ci);
  }
  truth.object_contacts = spec.scripted_contacts;

  // scripted segmentation, same event conventions as the learner's output
  using learning::PrimitiveKind;
  std::vector<ContactInterval> episodes = truth.hand_contacts;
  std::sort(episodes.begin(), episodes.end(),
            [](const auto& a, const auto& b) {
              return a.start_frame < b.start_frame;
            });
  for (const auto& ep : episodes) {
    if (ep.start_frame > 0)
      truth.primitives.push_back({PrimitiveKind::MakeContact, ep.b,
                                  ep.start_frame, ep.start_frame});
    truth.primitives.push_back({PrimitiveKind::MaintainContact, ep.b,
                                ep.start_frame, ep.end_frame});
    if (ep.end_frame < spec.frame_count - 1)
      truth.primitives.push_back({PrimitiveKind::BreakContact, ep.b,
                                  ep.end_frame, ep.end_frame});
  }

  return {std::move(demo), std::move(truth)};
}

// ---------------------------------------------------------------------------
// truth / scenario serialization

void save_truth(const GroundTruth& truth, const std::filesystem::path& path) {
  json root;
  json poses = json::array();
  for (const auto& frame : truth.poses) {
    json fp;
    for (const auto& [name, pose] : frame) fp[name] = to_json(pose);
    poses.push_back(fp);
  }
  root["poses"] = poses;

  const auto intervals_to_json = [](const std::vector<ContactInterval>& v) {
    json out = json::array();
    for (const auto& ci : v)
      out.push_back({{"a", ci.a},
                     {"b", ci.b},
                     {"start", ci.start_frame},
                     {"end", ci.end_frame}});
    return out;
  };
  root["hand_contacts"] = intervals_to_json(truth.hand_contacts);
  root["object_contacts"] = intervals_to_json(truth.object_contacts);

  json prims = json::array();
  for (const auto& p : truth.primitives)
    prims.push_back({{"kind", learning::to_string(p.kind)},
                     {"target", p.target},
                     {"start", p.start},
                     {"end", p.end}});
  root["primitives"] = prims;

  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << root.dump(2) << "\n";
}

GroundTruth load_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }

  GroundTruth truth;
  for (const auto& fp : root.at("poses")) {
    std::map<std::string, Pose> frame;
    for (const auto& [name, pose] : fp.items())
      frame[name] = pose_from_json(pose);
    truth.poses.push_back(std::move(frame));
  }
  const auto intervals_from_json = [](const json& j) {
    std::vector<ContactInterval> out;
    for (const auto& ci : j)
      out.push_back({ci.at("a").get<std::string>(),
                     ci.at("b").get<std::string>(), ci.at("start").get<int>(),
                     ci.at("end").get<int>()});
    return out;
  };
  truth.hand_contacts = intervals_from_json(root.at("hand_contacts"));
  truth.object_contacts = intervals_from_json(root.at("object_contacts"));
  for (const auto& p : root.at("primitives")) {
    const auto kind = p.at("kind").get<std::string>();
    learning::PrimitiveKind k;
    if (kind == "make_contact")
      k = learning::PrimitiveKind::MakeContact;
    else if (kind == "maintain_contact")
      k = learning::PrimitiveKind::MaintainContact;
    else if (kind == "break_contact")
      k = learning::PrimitiveKind::BreakContact;
    else
      throw FormatError(path.string() + ": unknown primitive kind '" + kind +
                        "'");
    truth.primitives.push_back(
        {k, p.at("target").get<std::string>(), p.at("start").get<int>(),
         p.at("end").get<int>()});
  }
  return truth;
}

namespace {

json shape_to_json(const ShapeSpec& s) {
  json j;
  j["name"] = s.name;
  switch (s.kind) {
    case ShapeSpec::Kind::Box: j["kind"] = "box"; break;
    case ShapeSpec::Kind::Cylinder: j["kind"] = "cylinder"; break;
    case ShapeSpec::Kind::Bowl: j["kind"] = "bowl"; break;
    case ShapeSpec::Kind::Basin: j["kind"] = "basin"; break;
  }
  j["box_size"] = to_json(s.box_size);
  j["box_center"] = to_json(s.box_center);
  j["radius"] = s.radius;
  j["bottom_radius"] = s.bottom_radius;
  j["height"] = s.height;
  j["thickness"] = s.thickness;
  j["basin_inner_half"] = json::array(
      {s.basin_inner_half.x(), s.basin_inner_half.y()});
  j["basin_floor_thickness"] = s.basin_floor_thickness;
  j["samples"] = s.samples;
  if (s.symmetry_axis) j["symmetry_axis"] = to_json(*s.symmetry_axis);
  j["initial_pose"] = to_json(s.initial_pose);
  j["initially_present"] = s.initially_present;
  return j;
}

ShapeSpec shape_from_json(const json& j) {
  ShapeSpec s;
  s.name = j.at("name").get<std::string>();
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "box")
    s.kind = ShapeSpec::Kind::Box;
  else if (kind == "cylinder")
    s.kind = ShapeSpec::Kind::Cylinder;
  else if (kind == "bowl")
    s.kind = ShapeSpec::Kind::Bowl;
  else if (kind == "basin")
    s.kind = ShapeSpec::Kind::Basin;
  else
    throw FormatError("unknown shape kind '" + kind + "'");
  if (j.contains("box_size")) s.box_size = vec3_from_json(j["box_size"]);
  if (j.contains("box_center")) s.box_center = vec3_from_json(j["box_center"]);
  s.radius = j.value("radius", s.radius);
  s.bottom_radius = j.value("bottom_radius", s.bottom_radius);
  s.height = j.value("height", s.height);
  s.thickness = j.value("thickness", s.thickness);
  if (j.contains("basin_inner_half"))
    s.basin_inner_half = {j["basin_inner_half"][0].get<double>(),
                          j["basin_inner_half"][1].get<double>()};
  s.basin_floor_thickness =
      j.value("basin_floor_thickness", s.basin_floor_thickness);
  s.samples = j.value("samples", s.samples);
  if (j.contains("symmetry_axis"))
    s.symmetry_axis = vec3_from_json(j["symmetry_axis"]);
  if (j.contains("initial_pose"))
    s.initial_pose = pose_from_json(j["initial_pose"]);
  s.initially_present = j.value("initially_present", true);
  return s;
}

}  // namespace

void save_scenario(const ScenarioSpec& spec,
                   const std::filesystem::path& path) {
  json root;
  root["frame_rate"] = spec.frame_rate;
  root["frame_count"] = spec.frame_count;
  root["noise_sigma"] = spec.noise_sigma;
  root["seed"] = spec.seed;
  root["hand_radius"] = spec.hand_radius;
  root["hand_samples"] = spec.hand_samples;
  root["hand_home"] = to_json(spec.hand_home);
  root["hand_travel"] = spec.hand_travel;
  root["contact_gap"] = spec.contact_gap;

  json shapes = json::array();
  for (const auto& s : spec.shapes) shapes.push_back(shape_to_json(s));
  root["shapes"] = shapes;

  json moves = json::array();
  for (const auto& m : spec.moves)
    moves.push_back({{"object", m.object},
                     {"t0", m.t0},
                     {"t1", m.t1},
                     {"from", to_json(m.from)},
                     {"to", to_json(m.to)}});
  root["moves"] = moves;

  json hand = json::array();
  for (const auto& h : spec.hand)
    hand.push_back({{"object", h.object},
                    {"t_touch", h.t_touch},
                    {"t_release", h.t_release},
                    {"local_point", to_json(h.local_point)},
                    {"approach", to_json(h.approach)}});
  root["hand"] = hand;

  json presence = json::array();
  for (const auto& p : spec.presence)
    presence.push_back(
        {{"object", p.object}, {"time", p.time}, {"present", p.present}});
  root["presence"] = presence;

  json contacts = json::array();
  for (const auto& c : spec.scripted_contacts)
    contacts.push_back({{"a", c.a},
                        {"b", c.b},
                        {"start", c.start_frame},
                        {"end", c.end_frame}});
  root["scripted_contacts"] = contacts;

  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << root.dump(2) << "\n";
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }

  ScenarioSpec spec;
  spec.frame_rate = root.value("frame_rate", spec.frame_rate);
  spec.frame_count = root.at("frame_count").get<int>();
  spec.noise_sigma = root.value("noise_sigma", spec.noise_sigma);
  spec.seed = root.value("seed", spec.seed);
  spec.hand_radius = root.value("hand_radius", spec.hand_radius);
  spec.hand_samples = root.value("hand_samples", spec.hand_samples);
  if (root.contains("hand_home"))
    spec.hand_home = vec3_from_json(root["hand_home"]);
  spec.hand_travel = root.value("hand_travel", spec.hand_travel);
  spec.contact_gap = root.value("contact_gap", spec.contact_gap);

  for (const auto& s : root.at("shapes"))
    spec.shapes.push_back(shape_from_json(s));
  for (const auto& m : root.value("moves", json::array()))
    spec.moves.push_back({m.at("object").get<std::string>(),
                          m.at("t0").get<double>(), m.at("t1").get<double>(),
                          pose_from_json(m.at("from")),
                          pose_from_json(m.at("to"))});
  for (const auto& h : root.value("hand", json::array()))
    spec.hand.push_back({h.at("object").get<std::string>(),
                         h.at("t_touch").get<double>(),
                         h.at("t_release").get<double>(),
                         vec3_from_json(h.at("local_point")),
                         vec3_from_json(h.at("approach"))});
  for (const auto& p : root.value("presence", json::array()))
    spec.presence.push_back({p.at("object").get<std::string>(),
                             p.at("time").get<double>(),
                             p.at("present").get<bool>()});
  for (const auto& c : root.value("scripted_contacts", json::array()))
    spec.scripted_contacts.push_back(
        {c.at("a").get<std::string>(), c.at("b").get<std::string>(),
         c.at("start").get<int>(), c.at("end").get<int>()});
  return spec;
}

// ---------------------------------------------------------------------------
// built-in scenarios

namespace {

/// Shared desk-scale kitchen geometry. The scene frame is the robot base
/// frame; the table top is the z = 0 plane.
struct DishwashGeometry {
  Vec3 sink_pos{0.44, 0.15, 0.01};  // basin floor top center
  Eigen::Vector2d basin_inner_half{0.14, 0.12};
  double basin_wall_height = 0.13;
  double basin_wall_thickness = 0.012;
  double basin_floor_thickness = 0.01;

  Vec3 outlet_pos{0.44, 0.15, 0.345};
  double outlet_size = 0.04;

  Vec3 lever_pos{0.30, 0.31, 0.22};  // hinge point
  Vec3 lever_size{0.10, 0.02, 0.02};
  Vec3 lever_center{0.05, 0.0, 0.0};
  double lever_on_angle = deg(45.0);

  double water_radius = 0.012;
  double bowl_rinse_z = 0.20;

  double bowl_top_radius = 0.06;
  double bowl_bottom_radius = 0.035;
  double bowl_height = 0.05;
  double bowl_thickness = 0.004;
  Vec3 bowl_start{0.40, -0.20, 0.007};
  Vec3 bowl_lift{0.40, -0.20, 0.25};
  Vec3 bowl_rinse{0.44, 0.15, 0.20};
  Vec3 bowl_place{0.44, 0.12, 0.017};

  double water_top() const { return outlet_pos.z() - outlet_size / 2.0; }
  double water_bottom() const { return bowl_rinse_z + 0.003; }
  double water_height() const { return water_top() - water_bottom(); }
  Vec3 water_pos() const {
    return {outlet_pos.x(), outlet_pos.y(),
            (water_top() + water_bottom()) / 2.0};
  }
};

const DishwashGeometry kDish;

ShapeSpec dish_bowl_shape(double scale) {
  ShapeSpec bowl;
  bowl.name = "bowl";
  bowl.kind = ShapeSpec::Kind::Bowl;
  bowl.radius = kDish.bowl_top_radius * scale;
  bowl.bottom_radius = kDish.bowl_bottom_radius * scale;
  bowl.height = kDish.bowl_height * scale;
  bowl.thickness = kDish.bowl_thickness;
  bowl.samples = 1400;
  bowl.symmetry_axis = Vec3::UnitZ();
  return bowl;
}

}  // namespace

ScenarioSpec make_dishwash_scenario(std::uint64_t seed) {
  ScenarioSpec spec;
  spec.seed = seed;
  spec.frame_rate = 30.0;
  spec.frame_count = 480;  // 16 s

  ShapeSpec sink;
  sink.name = "sink";
  sink.kind = ShapeSpec::Kind::Basin;
  sink.basin_inner_half = kDish.basin_inner_half;
  sink.height = kDish.basin_wall_height;
  sink.thickness = kDish.basin_wall_thickness;
  sink.basin_floor_thickness = kDish.basin_floor_thickness;
  sink.samples = 3000;
  sink.initial_pose = Pose::from_translation(kDish.sink_pos);
  spec.shapes.push_back(sink);

  ShapeSpec outlet;
  outlet.name = "outlet";
  outlet.kind = ShapeSpec::Kind::Box;
  outlet.box_size = Vec3::Constant(kDish.outlet_size);
  outlet.samples = 500;
  outlet.initial_pose = Pose::from_translation(kDish.outlet_pos);
  spec.shapes.push_back(outlet);

  ShapeSpec lever;
  lever.name = "lever";
  lever.kind = ShapeSpec::Kind::Box;
  lever.box_size = kDish.lever_size;
  lever.box_center = kDish.lever_center;
  lever.samples = 500;
  lever.initial_pose = Pose::from_translation(kDish.lever_pos);
  spec.shapes.push_back(lever);

  ShapeSpec water;
  water.name = "water";
  water.kind = ShapeSpec::Kind::Cylinder;
  water.radius = kDish.water_radius;
  water.height = kDish.water_height();
  water.samples = 700;
  water.symmetry_axis = Vec3::UnitZ();
  water.initial_pose = Pose::from_translation(kDish.water_pos());
  water.initially_present = false;
  spec.shapes.push_back(water);

  ShapeSpec bowl = dish_bowl_shape(1.0);
  bowl.initial_pose = Pose::from_translation(kDish.bowl_start);
  spec.shapes.push_back(bowl);

  const Pose lever_mount = Pose::from_translation(kDish.lever_pos);
  const Pose lever_on = compose(
      lever_mount, Pose::from_rotation(Vec3::UnitY(), kDish.lever_on_angle));

  // faucet on
  spec.hand.push_back({"lever", 1.0, 2.5, Vec3(0.09, 0.0, 0.01),
                       Vec3(0.0, 0.0, 1.0)});
  spec.moves.push_back({"lever", 1.21, 2.33, lever_mount, lever_on});
  const double t_water_on = 1.21 + (2.33 - 1.21) * (30.0 / 45.0);
  spec.presence.push_back({"water", t_water_on, true});

  // pick, rinse, place
  spec.hand.push_back(
      {"bowl", 4.0, 11.5,
       Vec3(kDish.bowl_top_radius, 0.0, kDish.bowl_height),
       Vec3(0.0, 0.0, 1.0)});
  const Pose bowl_start_pose = Pose::from_translation(kDish.bowl_start);
  const Pose bowl_lift_pose = Pose::from_translation(kDish.bowl_lift);
  const Pose bowl_rinse_pose = Pose::from_translation(kDish.bowl_rinse);
  const Pose bowl_place_pose = Pose::from_translation(kDish.bowl_place);
  spec.moves.push_back({"bowl", 4.5, 5.2, bowl_start_pose, bowl_lift_pose});
  spec.moves.push_back({"bowl", 5.2, 6.0, bowl_lift_pose, bowl_rinse_pose});
  spec.moves.push_back({"bowl", 9.5, 11.0, bowl_rinse_pose, bowl_place_pose});

  // faucet off
  spec.hand.push_back({"lever", 13.0, 14.5, Vec3(0.09, 0.0, 0.01),
                       Vec3(0.0, 0.0, 1.0)});
  spec.moves.push_back({"lever", 13.21, 14.33, lever_on, lever_mount});
  const double t_water_off = 13.21 + (14.33 - 13.21) * (15.0 / 45.0);
  spec.presence.push_back({"water", t_water_off, false});

  // scripted object-object contacts, crossing frames computed from the
  // piecewise-linear motions above against d_make = 5 mm / d_break = 10 mm
  spec.scripted_contacts.push_back({"bowl", "water", 180, 286});
  spec.scripted_contacts.push_back({"bowl", "sink", 330, 479});

  return spec;
}

ScenarioSpec make_random_scenario(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  const auto uniform_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  ScenarioSpec spec;
  spec.seed = seed;
  spec.frame_rate = 30.0;
  spec.frame_count = uniform_int(100, 600);

  const int n_obj = uniform_int(1, 3);
  const Vec3 cells[3] = {{0.35, -0.30, 0.08}, {0.50, -0.02, 0.10},
                         {0.30, 0.26, 0.12}};
  for (int i = 0; i < n_obj; ++i) {
    ShapeSpec s;
    s.name = "object" + std::to_string(i);
    s.samples = 500;
    const int kind = uniform_int(0, 2);
    if (kind == 0) {
      s.kind = ShapeSpec::Kind::Box;
      s.box_size = Vec3(uniform(0.04, 0.09), uniform(0.04, 0.09),
                        uniform(0.04, 0.09));
    } else if (kind == 1) {
      s.kind = ShapeSpec::Kind::Cylinder;
      s.radius = uniform(0.02, 0.04);
      s.height = uniform(0.06, 0.12);
      s.symmetry_axis = Vec3::UnitZ();
    } else {
      s.kind = ShapeSpec::Kind::Bowl;
      s.radius = uniform(0.05, 0.07);
      s.bottom_radius = s.radius * 0.6;
      s.height = uniform(0.04, 0.06);
      s.symmetry_axis = Vec3::UnitZ();
    }
    const Vec3 jitter(uniform(-0.02, 0.02), uniform(-0.02, 0.02), 0.0);
    s.initial_pose = Pose::from_translation(cells[i] + jitter);
    spec.shapes.push_back(s);
  }

  const auto touch_point = [&](const ShapeSpec& s) -> Vec3 {
    switch (s.kind) {
      case ShapeSpec::Kind::Box:
        return s.box_center + Vec3(0, 0, s.box_size.z() / 2.0);
      case ShapeSpec::Kind::Cylinder:
        return {0, 0, s.height / 2.0};
      case ShapeSpec::Kind::Bowl:
        return {s.radius, 0, s.height};
      default:
        return Vec3::Zero();
    }
  };

  const double total = spec.frame_count / spec.frame_rate;
  double cursor = uniform(0.8, 1.5);
  std::vector<Pose> current_pose;
  for (const auto& s : spec.shapes) current_pose.push_back(s.initial_pose);

  while (cursor + 4.0 < total) {
    const int idx = uniform_int(0, n_obj - 1);
    ShapeSpec& shape = spec.shapes[idx];
    const double touch = cursor + uniform(0.1, 0.4);
    const double hold = uniform(1.0, 2.5);
    const double release = touch + hold;
    if (release + 1.5 > total) break;
    spec.hand.push_back(
        {shape.name, touch, release, touch_point(shape), Vec3(0, 0, 1)});

    if (hold > 1.4 && uniform(0.0, 1.0) < 0.6) {
      // carry the object inside its cell while held
      const Pose from = current_pose[idx];
      Pose to = from;
      to.translation += Vec3(uniform(-0.05, 0.05), uniform(-0.05, 0.05),
                             uniform(0.0, 0.08));
      spec.moves.push_back(
          {shape.name, touch + 0.3, release - 0.3, from, to});
      current_pose[idx] = to;
    }
    cursor = release + uniform(1.0, 2.0);
  }
  return spec;
}

sim::WorldState make_dishwash_world(const DishwashVariant& variant) {
  // object frames match the demonstration's captured model frames (clouds
  // anchored at the demo's initial locations); scene variation then shows up
  // as a pure shift in each object's pose
  sim::WorldState world;
  const Pose sink_shift = Pose::from_translation(
      {variant.sink_shift.x(), variant.sink_shift.y(), 0.0});
  const Pose bowl_shift = Pose::from_translation(
      {variant.bowl_shift.x(), variant.bowl_shift.y(), 0.0});

  const auto anchored = [](PointCloud cloud, const Vec3& at) {
    return transform_cloud(Pose::from_translation(at), std::move(cloud));
  };

  {
    sim::SceneObject table;
    table.name = "table";
    table.collision.parts.push_back(
        make_box({0.55, 0.65, 0.02}, {0.40, 0.0, -0.02}));
    table.pose = Pose::identity();
    world.objects["table"] = table;
  }
  {
    ShapeSpec spec;
    spec.name = "sink";
    spec.kind = ShapeSpec::Kind::Basin;
    spec.basin_inner_half = kDish.basin_inner_half;
    spec.height = kDish.basin_wall_height;
    spec.thickness = kDish.basin_wall_thickness;
    spec.basin_floor_thickness = kDish.basin_floor_thickness;
    spec.samples = 3000;
    sim::SceneObject sink;
    sink.name = "sink";
    sink.cloud = anchored(sample_shape(spec, 101), kDish.sink_pos);
    for (const auto& b : basin_boxes(spec))
      sink.collision.parts.push_back(
          make_box(b.half, b.center + kDish.sink_pos));
    sink.pose = sink_shift;
    world.objects["sink"] = sink;
  }
  {
    ShapeSpec spec;
    spec.name = "outlet";
    spec.kind = ShapeSpec::Kind::Box;
    spec.box_size = Vec3::Constant(kDish.outlet_size);
    spec.samples = 500;
    sim::SceneObject outlet;
    outlet.name = "outlet";
    outlet.cloud = anchored(sample_shape(spec, 102), kDish.outlet_pos);
    outlet.collision.parts.push_back(
        make_box(spec.box_size / 2.0, kDish.outlet_pos));
    outlet.pose = sink_shift;
    world.objects["outlet"] = outlet;
  }
  {
    ShapeSpec spec;
    spec.name = "lever";
    spec.kind = ShapeSpec::Kind::Box;
    spec.box_size = kDish.lever_size;
    spec.box_center = kDish.lever_center;
    spec.samples = 500;
    sim::SceneObject lever;
    lever.name = "lever";
    lever.cloud = anchored(sample_shape(spec, 103), kDish.lever_pos);
    lever.collision.parts.push_back(
        make_box(spec.box_size / 2.0, kDish.lever_center + kDish.lever_pos));
    lever.pose = sink_shift;
    world.objects["lever"] = lever;

    sim::FaucetRule rule;
    rule.lever = "lever";
    rule.water = "water";
    rule.hinge_axis = Vec3::UnitY();
    rule.on_angle = deg(30.0);
    rule.lever_off_pose = lever.pose;
    world.faucet = rule;
  }
  {
    ShapeSpec spec;
    spec.name = "water";
    spec.kind = ShapeSpec::Kind::Cylinder;
    spec.radius = kDish.water_radius;
    spec.height = kDish.water_height();
    spec.samples = 700;
    sim::SceneObject water;
    water.name = "water";
    water.cloud = anchored(sample_shape(spec, 104), kDish.water_pos());
    water.collision = build_collision_model(water.cloud);
    water.pose = sink_shift;
    water.collidable = false;
    water.present = false;
    water.symmetry_axis = Vec3::UnitZ();
    water.symmetry_point = kDish.water_pos();
    world.objects["water"] = water;
  }
  {
    ShapeSpec spec = dish_bowl_shape(variant.bowl_scale);
    sim::SceneObject bowl;
    bowl.name = "bowl";
    bowl.cloud = anchored(
        sample_shape(spec, variant.bowl_scale == 1.0 ? 105 : 106),
        kDish.bowl_start);
    bowl.collision = build_collision_model(bowl.cloud);
    bowl.pose = bowl_shift;
    bowl.symmetry_axis = Vec3::UnitZ();
    bowl.symmetry_point = kDish.bowl_start;
    world.objects["bowl"] = bowl;
  }

  world.robot_config = dishwash_home_config();
  sim::apply_rules(world);
  return world;
}

planning::JointConfig dishwash_home_config() {
  planning::JointConfig q(7);
  q << 0.0, -0.5, 0.0, -2.0, 0.0, 2.0, 0.8;
  return q;
}

}  // namespace clfd::io
