#include "clfd/planning/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "clfd/errors.hpp"

namespace clfd::planning {

JointConfig sample_at(const JointTrajectory& traj, double t) {
  if (traj.samples.empty())
    throw DegenerateTrajectory("sample_at on empty trajectory");
  if (t <= traj.samples.front().first) return traj.samples.front().second;
  if (t >= traj.samples.back().first) return traj.samples.back().second;
  auto it = std::upper_bound(
      traj.samples.begin(), traj.samples.end(), t,
      [](double v, const auto& s) { return v < s.first; });
  const auto& [t1, q1] = *it;
  const auto& [t0, q0] = *(it - 1);
  const double alpha = (t - t0) / (t1 - t0);
  return q0 + alpha * (q1 - q0);
}

namespace {

struct JointProfile {
  double start = 0.0;
  double sign = 1.0;
  double delta = 0.0;   // absolute value
  double peak_vel = 0.0;
  double accel = 0.0;
  double t_acc = 0.0;
  double total = 0.0;

  double at(double tau) const {
    if (delta == 0.0) return start;
    tau = std::clamp(tau, 0.0, total);
    if (tau < t_acc) return start + sign * 0.5 * accel * tau * tau;
    if (tau < total - t_acc)
      return start + sign * (0.5 * accel * t_acc * t_acc +
                             peak_vel * (tau - t_acc));
    const double rem = total - tau;
    return start + sign * (delta - 0.5 * accel * rem * rem);
  }
};

// minimal duration of one joint's rest-to-rest move
double min_move_time(double delta, double vel, double acc) {
  if (delta <= 0.0) return 0.0;
  if (delta <= vel * vel / acc) return 2.0 * std::sqrt(delta / acc);
  return delta / vel + vel / acc;
}

// peak velocity that covers delta in exactly T at the given acceleration
double synced_peak_vel(double delta, double acc, double T) {
  const double disc =
      std::max(0.0, acc * acc * T * T - 4.0 * acc * delta);
  return 0.5 * (acc * T - std::sqrt(disc));
}

}  // namespace

JointTrajectory time_parameterize(const JointPath& path,
                                  const KinematicChain& chain,
                                  double sample_dt) {
  if (path.waypoints.size() < 2)
    throw InvalidArgument("time_parameterize needs >= 2 waypoints");
  const Eigen::Index dof = static_cast<Eigen::Index>(chain.dof());
  for (const auto& w : path.waypoints)
    if (w.size() != dof) throw DimensionMismatch("waypoint size mismatch");

  struct Segment {
    double start_time = 0.0;
    double duration = 0.0;
    std::vector<JointProfile> profiles;
  };
  std::vector<Segment> segments;
  double clock = 0.0;

  for (std::size_t s = 0; s + 1 < path.waypoints.size(); ++s) {
    const JointConfig& w0 = path.waypoints[s];
    const JointConfig& w1 = path.waypoints[s + 1];
    double T = 0.0;
    for (Eigen::Index j = 0; j < dof; ++j) {
      T = std::max(T, min_move_time(std::abs(w1[j] - w0[j]),
                                    chain.joints[j].vel_limit,
                                    chain.joints[j].acc_limit));
    }
    if (T <= 0.0) continue;  // identical waypoints contribute no motion

    Segment seg;
    seg.start_time = clock;
    seg.duration = T;
    seg.profiles.resize(dof);
    for (Eigen::Index j = 0; j < dof; ++j) {
      JointProfile& p = seg.profiles[j];
      p.start = w0[j];
      p.delta = std::abs(w1[j] - w0[j]);
      p.sign = w1[j] >= w0[j] ? 1.0 : -1.0;
      p.accel = chain.joints[j].acc_limit;
      p.total = T;
      p.peak_vel = synced_peak_vel(p.delta, p.accel, T);
      p.t_acc = p.peak_vel / p.accel;
    }
    segments.push_back(std::move(seg));
    clock += T;
  }

  JointTrajectory traj;
  traj.duration = clock;
  if (segments.empty()) {
    traj.samples.emplace_back(0.0, path.waypoints.front());
    return traj;
  }

  // sample grid: uniform steps plus exact segment boundaries
  std::vector<double> times;
  const int steps = static_cast<int>(std::floor(clock / sample_dt + 1e-9));
  for (int k = 0; k <= steps; ++k) times.push_back(k * sample_dt);
  for (const Segment& seg : segments) {
    times.push_back(seg.start_time);
    times.push_back(seg.start_time + seg.duration);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [](double a, double b) { return b - a < 1e-12; }),
              times.end());
  if (clock - times.back() >= 1e-12) times.push_back(clock);

  std::size_t seg_idx = 0;
  for (double t : times) {
    const double tc = std::min(t, clock);
    while (seg_idx + 1 < segments.size() &&
           tc > segments[seg_idx].start_time + segments[seg_idx].duration)
      ++seg_idx;
    const Segment& seg = segments[seg_idx];
    JointConfig q(dof);
    for (Eigen::Index j = 0; j < dof; ++j)
      q[j] = seg.profiles[j].at(tc - seg.start_time);
    traj.samples.emplace_back(tc, q);
  }
  traj.samples.back().first = clock;
  return traj;
}

JointTrajectory match_duration(const JointTrajectory& traj, double target) {
  if (target < 0.0) throw InvalidArgument("match_duration: negative target");
  if (traj.duration >= target) return traj;
  if (traj.duration <= 0.0)
    throw DegenerateTrajectory(
        "cannot stretch a zero-duration trajectory to a positive target");

  const double scale = target / traj.duration;
  JointTrajectory out = traj;
  for (auto& [t, q] : out.samples) t *= scale;
  out.samples.back().first = target;  // pin against fp drift
  out.duration = target;
  return out;
}

std::vector<std::pair<double, JointConfig>> resample(
    const JointTrajectory& traj, double rate) {
  if (rate <= 0.0) throw InvalidArgument("resample: rate must be > 0");
  // the epsilon tolerates duration*rate landing a hair under an integer
  const long long count =
      static_cast<long long>(std::floor(traj.duration * rate + 1e-9));
  std::vector<std::pair<double, JointConfig>> out;
  out.reserve(count + 1);
  for (long long k = 0; k <= count; ++k) {
    const double t = std::min(static_cast<double>(k) / rate, traj.duration);
    out.emplace_back(t, sample_at(traj, t));
  }
  return out;
}

}  // namespace clfd::planning
