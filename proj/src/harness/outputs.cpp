#include "risdm/harness/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace risdm {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw std::invalid_argument("records_to_csv: no records");
  std::string out =
      "axis,value,algorithm,stream,seed,secrecy_rate_bits,crlb_theta_rad2,crlb_phi_rad2,status\n";
  for (const ExperimentRecord& r : records) {
    out += r.axis;
    out += ',';
    out += format_number(r.value);
    out += ',';
    out += r.algorithm;
    out += ',';
    out += r.stream;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += format_number(r.secrecy_rate);
    out += ',';
    out += format_number(r.crlb_theta);
    out += ',';
    out += format_number(r.crlb_phi);
    out += ',';
    out += r.status;
    out += '\n';
  }
  return out;
}

namespace {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (value, mean sr)
};

std::vector<Series> mean_series(const std::vector<ExperimentRecord>& records) {
  // label -> value -> (sum, count)
  std::map<std::string, std::map<double, std::pair<double, int>>> acc;
  for (const ExperimentRecord& r : records) {
    if (r.status != "ok" || !std::isfinite(r.secrecy_rate)) continue;
    auto& cell = acc[r.algorithm + "/" + r.stream][r.value];
    cell.first += r.secrecy_rate;
    cell.second += 1;
  }
  std::vector<Series> out;
  for (const auto& [label, by_value] : acc) {
    Series s;
    s.label = label;
    for (const auto& [value, cell] : by_value) {
      s.points.emplace_back(value, cell.first / cell.second);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::string records_to_svg(const std::vector<ExperimentRecord>& records) {
  std::vector<Series> series = mean_series(records);
  const double width = 720, height = 440;
  const double ml = 70, mr = 180, mt = 30, mb = 50;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_max = 0.0;
  for (const Series& s : series) {
    for (auto [x, y] : s.points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_max = std::max(y_max, y);
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = 0.0;
    x_max = 1.0;
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.05;

  auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double y) { return mt + ph - y / y_max * ph; };

  static const char* kPalette[8] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  std::string axis_label = records.empty() ? "" : records.front().axis;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_number(width) +
         "\" height=\"" + format_number(height) + "\" viewBox=\"0 0 " + format_number(width) +
         " " + format_number(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // frame
  svg += "<rect x=\"" + format_number(ml) + "\" y=\"" + format_number(mt) + "\" width=\"" +
         format_number(pw) + "\" height=\"" + format_number(ph) +
         "\" fill=\"none\" stroke=\"#333\"/>\n";
  // axis ticks: 5 on each axis
  for (int i = 0; i <= 4; ++i) {
    double xv = x_min + (x_max - x_min) * i / 4.0;
    double yv = y_max * i / 4.0;
    svg += "<text x=\"" + format_number(px(xv)) + "\" y=\"" + format_number(mt + ph + 18) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + format_number(xv) + "</text>\n";
    svg += "<text x=\"" + format_number(ml - 6) + "\" y=\"" + format_number(py(yv) + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + format_number(yv) + "</text>\n";
  }
  svg += "<text x=\"" + format_number(ml + pw / 2) + "\" y=\"" + format_number(height - 12) +
         "\" font-size=\"13\" text-anchor=\"middle\">" + axis_label + "</text>\n";
  svg += "<text x=\"16\" y=\"" + format_number(mt + ph / 2) +
         "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         format_number(mt + ph / 2) + ")\">secrecy rate (bits/s/Hz)</text>\n";

  int color = 0;
  for (const Series& s : series) {
    const char* c = kPalette[color % 8];
    std::string pts;
    for (auto [x, y] : s.points) {
      pts += format_number(px(x)) + "," + format_number(py(y)) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(c) +
           "\" stroke-width=\"1.7\" points=\"" + pts + "\"/>\n";
    for (auto [x, y] : s.points) {
      svg += "<circle cx=\"" + format_number(px(x)) + "\" cy=\"" + format_number(py(y)) +
             "\" r=\"2.4\" fill=\"" + std::string(c) + "\"/>\n";
    }
    double ly = mt + 16 + 18 * color;
    svg += "<line x1=\"" + format_number(ml + pw + 12) + "\" y1=\"" + format_number(ly - 4) +
           "\" x2=\"" + format_number(ml + pw + 34) + "\" y2=\"" + format_number(ly - 4) +
           "\" stroke=\"" + std::string(c) + "\" stroke-width=\"1.7\"/>\n";
    svg += "<text x=\"" + format_number(ml + pw + 40) + "\" y=\"" + format_number(ly) +
           "\" font-size=\"11\">" + s.label + "</text>\n";
    ++color;
  }
  svg += "</svg>\n";
  return svg;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
}

void emit_outputs(const std::vector<ExperimentRecord>& records,
                  const std::filesystem::path& csv_path,
                  const std::filesystem::path* svg_path) {
  write_text_file(csv_path, records_to_csv(records));
  if (svg_path) write_text_file(*svg_path, records_to_svg(records));
}

}  // namespace risdm
