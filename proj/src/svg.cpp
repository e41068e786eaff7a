#include <algorithm>
#include <sstream>

#include "jitsched/io.hpp"

namespace jitsched {

namespace {

constexpr int kMargin = 40;
constexpr int kLabelWidth = 90;
constexpr int kRowHeight = 22;
constexpr int kLaneGap = 18;
constexpr int kAxisHeight = 30;

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Segment {
  std::size_t job;
  Interval interval;
  bool placed;      // scheduled on this machine
  bool ineligible;  // drawn from the job's duration elsewhere
  std::size_t row = 0;
};

std::optional<Time> any_duration(const Instance& instance, std::size_t job) {
  for (std::size_t i = 0; i < instance.machine_count(); ++i) {
    if (auto p = instance.table().at(i, job)) return p;
  }
  return std::nullopt;
}

}  // namespace

std::string render_svg(const Instance& instance, const Schedule* schedule, const RenderOptions& options) {
  const std::size_t m = instance.machine_count();
  if (options.machine && *options.machine >= m) {
    throw UsageError("machine filter " + std::to_string(*options.machine) + " outside [0, " + std::to_string(m) + ")");
  }
  std::vector<Placement> placed(instance.job_count());
  if (schedule) placed = placements_of(instance, *schedule);

  std::vector<std::size_t> machines;
  if (options.machine) {
    machines.push_back(*options.machine);
  } else {
    for (std::size_t i = 0; i < m; ++i) machines.push_back(i);
  }

  Time t_min = 0;
  Time t_max = 1;
  std::vector<std::vector<Segment>> lanes;
  std::vector<std::size_t> rows_per_lane;
  for (std::size_t i : machines) {
    std::vector<Segment> segs;
    for (std::size_t j = 0; j < instance.job_count(); ++j) {
      if (auto iv = interval_of(instance, j, i)) {
        segs.push_back({j, *iv, placed[j] == i, false});
      } else if (options.show_ineligible) {
        if (auto p = any_duration(instance, j)) {
          const Time d = instance.job(j).deadline;
          segs.push_back({j, Interval{d - *p, d}, false, true});
        }
      }
    }
    std::stable_sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) {
      if (a.interval.start != b.interval.start) return a.interval.start < b.interval.start;
      if (a.interval.end != b.interval.end) return a.interval.end < b.interval.end;
      return a.job < b.job;
    });
    // Greedy first-fit packing: one row per set of pairwise disjoint segments.
    std::vector<Time> row_end;
    for (auto& s : segs) {
      t_min = std::min(t_min, s.interval.start);
      t_max = std::max(t_max, s.interval.end);
      std::size_t r = 0;
      while (r < row_end.size() && row_end[r] > s.interval.start) ++r;
      if (r == row_end.size()) row_end.push_back(s.interval.end);
      else row_end[r] = std::max(row_end[r], s.interval.end);
      s.row = r;
    }
    rows_per_lane.push_back(std::max<std::size_t>(row_end.size(), 1));
    lanes.push_back(std::move(segs));
  }

  const Time span = t_max - t_min;
  const Time unit = span <= 50 ? 24 : std::max<Time>(1, 1200 / span);
  const auto x_of = [&](Time t) { return kMargin + kLabelWidth + (t - t_min) * unit; };
  const Time width = x_of(t_max) + kMargin;

  Time height = kMargin;
  for (std::size_t rows : rows_per_lane) height += static_cast<Time>(rows) * kRowHeight + kLaneGap;
  height += kAxisHeight + kMargin;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\" font-family=\"monospace\" font-size=\"10\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

  Time y = kMargin;
  for (std::size_t lane = 0; lane < lanes.size(); ++lane) {
    const std::size_t machine = machines[lane];
    const Time lane_height = static_cast<Time>(rows_per_lane[lane]) * kRowHeight;
    svg << "<g class=\"machine\" id=\"machine-" << machine << "\">\n";
    svg << "<text x=\"" << kMargin << "\" y=\"" << y + kRowHeight / 2 + 4 << "\" font-weight=\"bold\">machine "
        << machine << "</text>\n";
    svg << "<line x1=\"" << x_of(t_min) << "\" y1=\"" << y + lane_height << "\" x2=\"" << x_of(t_max) << "\" y2=\""
        << y + lane_height << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    for (const auto& s : lanes[lane]) {
      const Time yc = y + static_cast<Time>(s.row) * kRowHeight + kRowHeight / 2;
      const std::string color = s.placed ? "black" : (s.ineligible ? "#cccccc" : "#999999");
      const int stroke = s.placed ? 3 : 1;
      const std::string id = escape(instance.job(s.job).id);
      if (s.interval.empty()) {
        const Time x = x_of(s.interval.end);
        svg << "<line class=\"tick\" x1=\"" << x << "\" y1=\"" << yc - 6 << "\" x2=\"" << x << "\" y2=\"" << yc + 6
            << "\" stroke=\"" << color << "\" stroke-width=\"" << stroke << "\"><title>" << id << "</title></line>\n";
      } else {
        svg << "<line class=\"interval\" x1=\"" << x_of(s.interval.start) << "\" y1=\"" << yc << "\" x2=\""
            << x_of(s.interval.end) << "\" y2=\"" << yc << "\" stroke=\"" << color << "\" stroke-width=\"" << stroke
            << "\"" << (s.ineligible ? " stroke-dasharray=\"4,3\"" : "") << "><title>" << id << "</title></line>\n";
      }
      svg << "<text x=\"" << x_of(s.interval.start) + 2 << "\" y=\"" << yc - 4 << "\" fill=\"" << color << "\""
          << (s.placed ? " font-weight=\"bold\"" : "") << ">" << id << "</text>\n";
    }
    svg << "</g>\n";
    y += lane_height + kLaneGap;
  }

  const Time step = span <= 50 ? 1 : (span <= 250 ? 5 : (span / 50 + 9) / 10 * 10);
  svg << "<g class=\"axis\">\n";
  svg << "<line x1=\"" << x_of(t_min) << "\" y1=\"" << y << "\" x2=\"" << x_of(t_max) << "\" y2=\"" << y
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (Time t = t_min; t <= t_max; t += step) {
    svg << "<line x1=\"" << x_of(t) << "\" y1=\"" << y << "\" x2=\"" << x_of(t) << "\" y2=\"" << y + 4
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << x_of(t) << "\" y=\"" << y + 16 << "\" text-anchor=\"middle\">" << t << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace jitsched
