#include "clfd/demo.hpp"

namespace clfd {

namespace {

PointCloud filter_if_possible(const PointCloud& c, int k, double std_ratio) {
  if (static_cast<int>(c.size()) <= k) return c;
  return remove_statistical_outliers(c, k, std_ratio);
}

}  // namespace

Demonstration filter_demonstration(const Demonstration& demo, int k,
                                   double std_ratio) {
  Demonstration out = demo;
  for (auto& frame : out.frames) {
    for (auto& [name, cloud] : frame.clouds)
      cloud = filter_if_possible(cloud, k, std_ratio);
    if (frame.hand) frame.hand = filter_if_possible(*frame.hand, k, std_ratio);
  }
  return out;
}

}  // namespace clfd
