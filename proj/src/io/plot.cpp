#include "clfd/io/plot.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "clfd/errors.hpp"

namespace clfd::io {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 420.0;
constexpr double kMarginL = 60.0;
constexpr double kMarginR = 20.0;
constexpr double kMarginT = 24.0;
constexpr double kMarginB = 36.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Axes {
  double x0, x1, y0, y1;

  double px(double x) const {
    return kMarginL + (x - x0) / (x1 - x0) * (kWidth - kMarginL - kMarginR);
  }
  double py(double y) const {
    return kHeight - kMarginB -
           (y - y0) / (y1 - y0) * (kHeight - kMarginT - kMarginB);
  }
};

class Svg {
 public:
  explicit Svg(const std::filesystem::path& path) : out_(path) {
    if (!out_) throw FormatError("cannot write " + path.string());
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
         << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
         << kHeight << "\">\n";
    out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }
  ~Svg() { out_ << "</svg>\n"; }

  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& color, double width = 1.5) {
    out_ << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"" << width << "\" points=\"";
    for (const auto& [x, y] : pts) out_ << x << "," << y << " ";
    out_ << "\"/>\n";
  }
  void line(double x1, double y1, double x2, double y2,
            const std::string& color, const std::string& dash = "") {
    out_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
         << "\" y2=\"" << y2 << "\" stroke=\"" << color << "\"";
    if (!dash.empty()) out_ << " stroke-dasharray=\"" << dash << "\"";
    out_ << "/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& color,
            double opacity) {
    out_ << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w
         << "\" height=\"" << h << "\" fill=\"" << color << "\" opacity=\""
         << opacity << "\"/>\n";
  }
  void text(double x, double y, const std::string& s,
            const std::string& color = "#333") {
    out_ << "<text x=\"" << x << "\" y=\"" << y
         << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"" << color
         << "\">" << s << "</text>\n";
  }

 private:
  std::ofstream out_;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

struct PairSeries {
  std::vector<double> frames;
  std::vector<double> distances;
  std::vector<std::pair<int, int>> contact_runs;  // frame spans
};

void plot_timeline(std::ifstream& in, const std::filesystem::path& svg_out,
                   double d_make, double d_break) {
  std::map<std::string, PairSeries> pairs;
  double max_frame = 1.0, max_dist = d_break * 2.0;
  std::string line;
  std::map<std::string, int> run_open;
  while (std::getline(in, line)) {
    const auto f = split(line);
    if (f.size() < 5) continue;
    const std::string key = f[1] + "/" + f[2];
    PairSeries& s = pairs[key];
    const double frame = std::stod(f[0]);
    max_frame = std::max(max_frame, frame);
    if (!f[3].empty()) {
      s.frames.push_back(frame);
      s.distances.push_back(std::stod(f[3]));
      max_dist = std::max(max_dist, s.distances.back());
    }
    const bool state = f[4] == "1";
    auto it = run_open.find(key);
    if (state && it == run_open.end()) {
      run_open[key] = static_cast<int>(frame);
    } else if (!state && it != run_open.end()) {
      s.contact_runs.emplace_back(it->second, static_cast<int>(frame) - 1);
      run_open.erase(it);
    }
  }
  for (const auto& [key, start] : run_open)
    pairs[key].contact_runs.emplace_back(start, static_cast<int>(max_frame));

  Svg svg(svg_out);
  Axes ax{0.0, max_frame, 0.0, std::min(max_dist, 0.2)};

  int color = 0;
  double legend_y = kMarginT + 12.0;
  for (const auto& [key, s] : pairs) {
    const std::string c = kColors[color % 8];
    for (const auto& [a, b] : s.contact_runs)
      svg.rect(ax.px(a), kMarginT, std::max(1.0, ax.px(b) - ax.px(a)),
               kHeight - kMarginT - kMarginB, c, 0.08);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < s.frames.size(); ++i)
      pts.emplace_back(ax.px(s.frames[i]),
                       ax.py(std::min(s.distances[i], ax.y1)));
    svg.polyline(pts, c);
    svg.text(kWidth - 240.0, legend_y, key, c);
    legend_y += 14.0;
    ++color;
  }
  svg.line(ax.px(0), ax.py(d_make), ax.px(max_frame), ax.py(d_make),
           "#444444", "4,3");
  svg.text(ax.px(0) + 4, ax.py(d_make) - 4, "d_make");
  svg.line(ax.px(0), ax.py(d_break), ax.px(max_frame), ax.py(d_break),
           "#444444", "6,3");
  svg.text(ax.px(0) + 4, ax.py(d_break) - 4, "d_break");
  svg.text(kMarginL, kHeight - 10, "frame");
  svg.text(8, kMarginT + 6, "distance [m]");
}

void plot_log(std::ifstream& in, const std::vector<std::string>& header,
              const std::filesystem::path& svg_out) {
  std::vector<int> joint_cols;
  for (std::size_t i = 1; i < header.size(); ++i)
    if (header[i].size() >= 2 && header[i][0] == 'q' &&
        std::isdigit(static_cast<unsigned char>(header[i][1])))
      joint_cols.push_back(static_cast<int>(i));

  std::vector<double> times;
  std::vector<std::vector<double>> series(joint_cols.size());
  std::string line;
  double ymin = 0.0, ymax = 0.0;
  const std::size_t need =
      joint_cols.empty() ? 1u : static_cast<std::size_t>(joint_cols.back()) + 1;
  while (std::getline(in, line)) {
    const auto f = split(line);
    if (f.size() < need) continue;
    times.push_back(std::stod(f[0]));
    for (std::size_t j = 0; j < joint_cols.size(); ++j) {
      const double v = std::stod(f[joint_cols[j]]);
      series[j].push_back(v);
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (times.empty()) throw FormatError("log CSV has no rows");

  Svg svg(svg_out);
  Axes ax{times.front(), std::max(times.back(), times.front() + 1e-9),
          ymin - 0.1, ymax + 0.1};
  for (std::size_t j = 0; j < series.size(); ++j) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < times.size(); ++i)
      pts.emplace_back(ax.px(times[i]), ax.py(series[j][i]));
    svg.polyline(pts, kColors[j % 8]);
    svg.text(kWidth - 80.0, kMarginT + 12.0 + 14.0 * j,
             "q" + std::to_string(j), kColors[j % 8]);
  }
  svg.text(kMarginL, kHeight - 10, "time [s]");
  svg.text(8, kMarginT + 6, "joint position");
}

}  // namespace

void plot_csv(const std::filesystem::path& csv,
              const std::filesystem::path& svg_out, double d_make,
              double d_break) {
  std::ifstream in(csv);
  if (!in) throw FormatError("cannot open " + csv.string());
  std::string header_line;
  if (!std::getline(in, header_line))
    throw FormatError(csv.string() + ": empty file");
  const auto header = split(header_line);
  if (!header.empty() && header[0] == "frame") {
    plot_timeline(in, svg_out, d_make, d_break);
  } else if (!header.empty() && header[0] == "time") {
    plot_log(in, header, svg_out);
  } else {
    throw FormatError(csv.string() + ": unrecognized CSV header");
  }
}

}  // namespace clfd::io
